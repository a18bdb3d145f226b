//! Exact dyadic and rational arithmetic.
//!
//! [`Rational`] is a thin canonical wrapper over `num_rational::BigRational`.
//! [`Dyadic`] stores `numerator / 2^exponent` with an odd numerator (or a zero
//! exponent), which is the natural coordinate type for breakpoints of
//! elements of Thompson's group F.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(Error::usage("zero denominator"));
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `num / den` for small literals; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Rational::new(num, den).expect("nonzero denominator")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Rational> {
        if other.is_zero() {
            return Err(Error::usage("division by zero"));
        }
        Ok(Rational(&self.0 / &other.0))
    }

    /// `self * 2^e` for any integer exponent.
    pub fn mul_pow2(&self, e: i64) -> Rational {
        let p = BigInt::one() << e.unsigned_abs();
        if e >= 0 {
            Rational(&self.0 * BigRational::from_integer(p))
        } else {
            Rational(&self.0 / BigRational::from_integer(p))
        }
    }

    /// True iff the denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        is_power_of_two(self.denom())
    }

    pub fn to_dyadic(&self) -> Result<Dyadic> {
        Dyadic::try_from_rational(self)
            .ok_or_else(|| Error::usage(format!("{self} is not a dyadic rational")))
    }

    /// If `self = 2^e` for some integer `e`, returns `e`.
    pub fn log2_exact(&self) -> Option<i64> {
        if !self.0.is_positive() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        if n.is_one() && is_power_of_two(d) {
            Some(-(d.bits() as i64 - 1))
        } else if d.is_one() && is_power_of_two(n) {
            Some(n.bits() as i64 - 1)
        } else {
            None
        }
    }

    pub fn min(self, other: Rational) -> Rational {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub(crate) fn inner(&self) -> &BigRational {
        &self.0
    }
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.sign() == Sign::Plus && (n & (n - BigInt::one())).is_zero()
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<&Dyadic> for Rational {
    fn from(d: &Dyadic) -> Self {
        d.to_rational()
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::checked_div`] otherwise.
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n`, `p/q` and `m/2^k` (signs allowed on the numerator).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::usage(format!("malformed number `{s}`"));
        let parse_int = |t: &str| -> Result<BigInt> {
            let t = t.trim();
            if t.is_empty() || !t.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s)?)),
            Some((n, d)) => {
                let numer = parse_int(n)?;
                let denom = match d.trim().split_once('^') {
                    Some((base, exp)) => {
                        if base.trim() != "2" {
                            return Err(bad());
                        }
                        let e: u32 = exp.trim().parse().map_err(|_| bad())?;
                        BigInt::one() << e
                    }
                    None => parse_int(d)?,
                };
                if denom.is_negative() {
                    return Err(bad());
                }
                Rational::new(numer, denom)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A dyadic rational `numerator / 2^exponent` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        let mut d = Dyadic {
            numerator: numerator.into(),
            exponent,
        };
        d.normalize();
        d
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn zero() -> Self {
        Dyadic::from_integer(0)
    }

    pub fn one() -> Self {
        Dyadic::from_integer(1)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exponent as u64) as u32;
        if shift > 0 {
            self.numerator >>= shift;
            self.exponent -= shift;
        }
    }

    pub fn try_from_rational(r: &Rational) -> Option<Dyadic> {
        if !r.is_dyadic() {
            return None;
        }
        let exp = (r.denom().bits() - 1) as u32;
        Some(Dyadic::new(r.numer().clone(), exp))
    }

    pub fn to_rational(&self) -> Rational {
        Rational(BigRational::new(
            self.numerator.clone(),
            BigInt::one() << self.exponent,
        ))
    }

    /// `self * 2^e`.
    pub fn mul_pow2(&self, e: i64) -> Dyadic {
        if e >= 0 {
            Dyadic::new(&self.numerator << e as u64, self.exponent)
        } else {
            let down = e.unsigned_abs();
            Dyadic::new(self.numerator.clone(), self.exponent + down as u32)
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        (
            &self.numerator << (e - self.exponent),
            &other.numerator << (e - other.exponent),
            e,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic::new(self.numerator.abs(), self.exponent)
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.numerator * &rhs.numerator, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic::new(-&self.numerator, self.exponent)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_rational(), f)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Rational>()?.to_dyadic()
    }
}

/// The dyadic `m / 2^k` in the open interval `(a, b)` with the smallest `k`,
/// ties broken by the smallest `m >= 0` and then the smallest `|m|`, that is
/// not a member of `avoid`.
pub fn dyadic_in_interval(a: &Rational, b: &Rational, avoid: &[Rational]) -> Result<Dyadic> {
    if a >= b {
        return Err(Error::usage(format!("empty interval ({a}, {b})")));
    }
    let budget = avoid.len() + 1;
    for k in 0u32.. {
        let scale = BigInt::one() << k;
        let lo_r = a.inner() * BigRational::from_integer(scale.clone());
        let hi_r = b.inner() * BigRational::from_integer(scale);
        // integers m with lo_r < m < hi_r
        let lo: BigInt = lo_r.floor().to_integer() + 1;
        let hi: BigInt = hi_r.ceil().to_integer() - 1;
        if lo > hi {
            continue;
        }
        let zero = BigInt::zero();
        let mut tried = 0usize;
        let try_m = |m: &BigInt| -> Option<Dyadic> {
            let d = Dyadic::new(m.clone(), k);
            let r = d.to_rational();
            if avoid.contains(&r) {
                None
            } else {
                Some(d)
            }
        };
        // non-negative candidates, ascending
        let mut m = if lo > zero { lo.clone() } else { zero.clone() };
        while m <= hi && tried < budget {
            if let Some(d) = try_m(&m) {
                return Ok(d);
            }
            tried += 1;
            m += 1;
        }
        // negative candidates by increasing magnitude
        let mut m = if hi < zero { hi.clone() } else { BigInt::from(-1) };
        while m >= lo && tried < budget {
            if let Some(d) = try_m(&m) {
                return Ok(d);
            }
            tried += 1;
            m -= 1;
        }
    }
    unreachable!("dyadics are dense")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(r("1/2") + r("1/4"), r("3/4"));
        assert_eq!(r("1/3") * r("3/2"), r("1/2"));
        assert_eq!(r("5/8") - r("5/8"), Rational::zero());
        assert!(r("1").checked_div(&Rational::zero()).is_err());
    }

    #[test]
    fn parses_textual_forms() {
        assert_eq!(r("3/2^3"), r("3/8"));
        assert_eq!(r("-6/4"), Rational::frac(-3, 2));
        assert_eq!(r(" 7 "), Rational::from(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/3^2".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert_eq!(r("3/8").to_string(), "3/8");
    }

    #[test]
    fn dyadic_detection() {
        assert!(r("3/8").is_dyadic());
        assert!(!r("1/3").is_dyadic());
        assert!(Rational::zero().is_dyadic());
        assert_eq!(r("3/8").to_dyadic().unwrap(), Dyadic::new(3, 3));
        assert!(r("1/3").to_dyadic().is_err());
        assert_eq!(Dyadic::new(12, 5), Dyadic::new(3, 3));
        assert_eq!(Dyadic::new(0, 7).exponent(), 0);
    }

    #[test]
    fn log2() {
        assert_eq!(r("1/4").log2_exact(), Some(-2));
        assert_eq!(r("8").log2_exact(), Some(3));
        assert_eq!(r("1").log2_exact(), Some(0));
        assert_eq!(r("3/4").log2_exact(), None);
        assert_eq!(r("-2").log2_exact(), None);
    }

    // Enumeration oracle: walk exponents and numerators in the documented order.
    fn oracle(a: &Rational, b: &Rational, avoid: &[Rational]) -> Rational {
        for k in 0..40i64 {
            let mut cands: Vec<i64> = (-4096..=4096)
                .filter(|m| {
                    let x = Rational::frac(*m, 1).mul_pow2(-k);
                    &x > a && &x < b && !avoid.contains(&x)
                })
                .collect();
            cands.sort_by_key(|m| (*m < 0, m.abs()));
            if let Some(m) = cands.first() {
                return Rational::frac(*m, 1).mul_pow2(-k);
            }
        }
        panic!("oracle exhausted")
    }

    #[test]
    fn dyadic_point_picking() {
        let pick = |a: &str, b: &str, av: &[&str]| {
            let av: Vec<Rational> = av.iter().map(|s| r(s)).collect();
            dyadic_in_interval(&r(a), &r(b), &av).unwrap().to_rational()
        };
        assert_eq!(pick("0", "1", &[]), r("1/2"));
        assert_eq!(pick("0", "1", &["1/2"]), r("1/4"));
        assert_eq!(pick("5/8", "1", &[]), r("3/4"));
        for (a, b, av) in [
            ("0", "1", vec!["1/2", "1/4"]),
            ("-3", "-1/3", vec!["-1"]),
            ("-1/3", "1/5", vec!["0"]),
            ("1/3", "2/5", vec![]),
        ] {
            let avr: Vec<Rational> = av.iter().map(|s| r(s)).collect();
            assert_eq!(pick(a, b, &av), oracle(&r(a), &r(b), &avr), "({a},{b})");
        }
        assert!(dyadic_in_interval(&r("1"), &r("1"), &[]).is_err());
    }
}
