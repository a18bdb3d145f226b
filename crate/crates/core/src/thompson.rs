//! Thompson's group F as piecewise-linear homeomorphisms of `[0,1]`.
//!
//! A [`PLMap`] stores its breakpoints as `(t, f(t))` pairs of dyadic
//! rationals. The representation is canonical (no collinear breakpoints), so
//! structural equality is group equality.
//!
//! ```
//! use oscillate::thompson::PLMap;
//! use oscillate::exactnum::Rational;
//!
//! let x1 = PLMap::generator(1);
//! assert_eq!(x1.evaluate(&Rational::frac(3, 4)).unwrap(), Rational::frac(5, 8));
//! assert!(x1.compose(&x1.inverse()).is_identity());
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::{dyadic_in_interval, Dyadic, Rational};
use crate::regions::IntervalRegion;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PLMap {
    points: Vec<(Dyadic, Dyadic)>,
    slopes: Vec<i64>,
}

fn slope_exponent(p: &(Dyadic, Dyadic), q: &(Dyadic, Dyadic)) -> Option<i64> {
    let dx = (&q.0 - &p.0).to_rational();
    let dy = (&q.1 - &p.1).to_rational();
    if dx.is_zero() || dy.is_zero() || dx.is_negative() || dy.is_negative() {
        return None;
    }
    (&dy / &dx).log2_exact()
}

impl PLMap {
    /// Validates and canonicalizes a breakpoint list.
    pub fn new(points: Vec<(Dyadic, Dyadic)>) -> Result<Self> {
        let (zero, one) = (Dyadic::zero(), Dyadic::one());
        match (points.first(), points.last()) {
            (Some(first), Some(last))
                if points.len() >= 2
                    && first.0 == zero
                    && first.1 == zero
                    && last.0 == one
                    && last.1 == one => {}
            _ => {
                return Err(Error::usage(
                    "breakpoints must start at (0,0) and end at (1,1)",
                ))
            }
        }
        let mut slopes = Vec::with_capacity(points.len() - 1);
        for w in points.windows(2) {
            let e = slope_exponent(&w[0], &w[1]).ok_or_else(|| {
                Error::usage(format!(
                    "slope between ({},{}) and ({},{}) is not a positive power of 2",
                    w[0].0, w[0].1, w[1].0, w[1].1
                ))
            })?;
            slopes.push(e);
        }
        Ok(PLMap::canonical(points, slopes))
    }

    fn canonical(points: Vec<(Dyadic, Dyadic)>, slopes: Vec<i64>) -> Self {
        let mut pts = vec![points[0].clone()];
        let mut sl: Vec<i64> = Vec::new();
        for (i, s) in slopes.iter().enumerate() {
            if sl.last() == Some(s) {
                *pts.last_mut().unwrap() = points[i + 1].clone();
            } else {
                sl.push(*s);
                pts.push(points[i + 1].clone());
            }
        }
        PLMap {
            points: pts,
            slopes: sl,
        }
    }

    pub fn identity() -> Self {
        PLMap {
            points: vec![(Dyadic::zero(), Dyadic::zero()), (Dyadic::one(), Dyadic::one())],
            slopes: vec![0],
        }
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    pub fn slope_exponents(&self) -> &[i64] {
        &self.slopes
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2 && self.slopes[0] == 0
    }

    /// The generator `x_n`.
    pub fn generator(n: u32) -> Self {
        let d = |num: i64, e: u32| Dyadic::new(num, e);
        let p = 1i64 << n;
        let mut points = vec![(Dyadic::zero(), Dyadic::zero())];
        let mut slopes = vec![];
        if n > 0 {
            points.push((d(p - 1, n), d(p - 1, n)));
            slopes.push(0);
        }
        points.extend([
            (d(2 * p - 1, n + 1), d(4 * p - 3, n + 2)),
            (d(4 * p - 1, n + 2), d(4 * p - 2, n + 2)),
            (Dyadic::one(), Dyadic::one()),
        ]);
        slopes.extend([-1, 0, 1]);
        PLMap::canonical(points, slopes)
    }

    /// The generator `x_{[a,b],n}` of the copy of F supported on `[a,b]`.
    pub fn rel_generator(a: &Dyadic, b: &Dyadic, n: u32) -> Result<Self> {
        PLMap::generator(n).rescale(a, b)
    }

    /// The image of `self` under the isomorphism `F → F_{[a,b]}`: conjugation
    /// by the affine map `t ↦ a + (b-a)t`, extended by the identity.
    pub fn rescale(&self, a: &Dyadic, b: &Dyadic) -> Result<Self> {
        if !(&Dyadic::zero() <= a && a < b && b <= &Dyadic::one()) {
            return Err(Error::usage(format!("[{a},{b}] is not a subinterval of [0,1]")));
        }
        let len = b - a;
        let map = |t: &Dyadic| a + &(&len * t);
        let mut pts = Vec::with_capacity(self.points.len() + 2);
        let mut slopes = Vec::with_capacity(self.slopes.len() + 2);
        if !a.is_zero() {
            pts.push((Dyadic::zero(), Dyadic::zero()));
            slopes.push(0);
        }
        pts.extend(self.points.iter().map(|(x, y)| (map(x), map(y))));
        slopes.extend(&self.slopes);
        if b != &Dyadic::one() {
            pts.push((Dyadic::one(), Dyadic::one()));
            slopes.push(0);
        }
        Ok(PLMap::canonical(pts, slopes))
    }

    fn piece_index(&self, t: &Rational) -> usize {
        let idx = self
            .points
            .partition_point(|(x, _)| &x.to_rational() <= t);
        idx.saturating_sub(1).min(self.slopes.len() - 1)
    }

    /// `f(p)` for `p ∈ [0,1]`.
    pub fn evaluate(&self, p: &Rational) -> Result<Rational> {
        if p.is_negative() || p > &Rational::one() {
            return Err(Error::usage(format!("{p} is outside [0,1]")));
        }
        Ok(self.eval_unchecked(p))
    }

    pub(crate) fn eval_unchecked(&self, p: &Rational) -> Rational {
        let i = self.piece_index(p);
        let (x, y) = &self.points[i];
        y.to_rational() + (p - &x.to_rational()).mul_pow2(self.slopes[i])
    }

    fn eval_dyadic(&self, t: &Dyadic) -> Dyadic {
        let idx = self.points.partition_point(|(x, _)| x <= t);
        let i = idx.saturating_sub(1).min(self.slopes.len() - 1);
        let (x, y) = &self.points[i];
        y + &(t - x).mul_pow2(self.slopes[i])
    }

    fn eval_inverse_dyadic(&self, s: &Dyadic) -> Dyadic {
        let idx = self.points.partition_point(|(_, y)| y <= s);
        let i = idx.saturating_sub(1).min(self.slopes.len() - 1);
        let (x, y) = &self.points[i];
        x + &(s - y).mul_pow2(-self.slopes[i])
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &PLMap) -> PLMap {
        let mut ts: Vec<Dyadic> = other.points.iter().map(|(x, _)| x.clone()).collect();
        ts.extend(self.points.iter().map(|(x, _)| other.eval_inverse_dyadic(x)));
        ts.sort();
        ts.dedup();
        let pts: Vec<(Dyadic, Dyadic)> = ts
            .into_iter()
            .map(|t| {
                let v = self.eval_dyadic(&other.eval_dyadic(&t));
                (t, v)
            })
            .collect();
        let slopes = pts
            .windows(2)
            .map(|w| slope_exponent(&w[0], &w[1]).expect("composition of F elements"))
            .collect();
        PLMap::canonical(pts, slopes)
    }

    pub fn inverse(&self) -> PLMap {
        PLMap {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
            slopes: self.slopes.iter().map(|e| -e).collect(),
        }
    }

    pub fn pow(&self, m: i64) -> PLMap {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut acc = PLMap::identity();
        for _ in 0..m.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// `{t : f(t) ≠ t}`; isolated fixed points puncture the region.
    pub fn support(&self) -> IntervalRegion {
        let mut fixed: Vec<(Rational, Rational)> = Vec::new();
        for (i, e) in self.slopes.iter().enumerate() {
            let (x0, y0) = (&self.points[i].0.to_rational(), &self.points[i].1.to_rational());
            let x1 = self.points[i + 1].0.to_rational();
            if *e == 0 {
                if x0 == y0 {
                    fixed.push((x0.clone(), x1));
                }
                continue;
            }
            // y0 + s(t - x0) = t  ⇔  t = x0 + (x0 - y0)/(s - 1)
            let s = Rational::one().mul_pow2(*e);
            let root = x0 + &(&(x0 - y0) / &(s - Rational::one()));
            if x0 <= &root && root <= x1 {
                fixed.push((root.clone(), root));
            }
        }
        fixed.sort();
        let mut gaps = Vec::new();
        let mut cursor: Option<Rational> = None;
        for (l, r) in fixed {
            if let Some(c) = &cursor {
                if c < &l {
                    gaps.push((c.clone(), l.clone()));
                }
                if &r > c {
                    cursor = Some(r);
                }
            } else {
                cursor = Some(r);
            }
        }
        IntervalRegion::from_intervals(gaps)
    }

    /// Image of an open region.
    pub fn apply_region(&self, r: &IntervalRegion) -> IntervalRegion {
        r.map_endpoints(|p| self.eval_unchecked(p))
    }

    /// `max_t |f(t) - t|`, attained at a breakpoint.
    pub fn displacement(&self) -> Rational {
        self.points
            .iter()
            .map(|(x, y)| (y - x).abs().to_rational())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// An element mapping the dyadic partition `xs` onto `ys` pointwise, with
    /// at most two linear pieces per panel. Panel `rigid` (1-based, `[xs[i-1],
    /// xs[i]]`) must already agree with `ys` and is mapped by the identity.
    pub fn cfp_interpolate(xs: &[Dyadic], ys: &[Dyadic], rigid: Option<usize>) -> Result<PLMap> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::usage("partitions must have equal length ≥ 2"));
        }
        for part in [xs, ys] {
            if part[0] != Dyadic::zero() || part[part.len() - 1] != Dyadic::one() {
                return Err(Error::usage("partitions must run from 0 to 1"));
            }
            if part.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::usage("partitions must be strictly increasing"));
            }
        }
        if let Some(i) = rigid {
            if i == 0 || i >= xs.len() || xs[i - 1] != ys[i - 1] || xs[i] != ys[i] {
                return Err(Error::usage(format!("panel {i} is not fixed by the partitions")));
            }
        }
        let mut pts = vec![(Dyadic::zero(), Dyadic::zero())];
        let mut slopes = Vec::new();
        for k in 1..xs.len() {
            let (a, b, c, d) = (&xs[k - 1], &xs[k], &ys[k - 1], &ys[k]);
            let (l1, l2) = (b - a, d - c);
            let ratio = &l2.to_rational() / &l1.to_rational();
            if let Some(e) = ratio.log2_exact() {
                pts.push((b.clone(), d.clone()));
                slopes.push(e);
                continue;
            }
            // 2^e < ratio < 2^{e+1}; slope 2^e on [a, a+h], 2^{e+1} after
            let mut e = 0i64;
            while Rational::one().mul_pow2(e) > ratio {
                e -= 1;
            }
            while Rational::one().mul_pow2(e + 1) < ratio {
                e += 1;
            }
            let h = (&l1.mul_pow2(e + 1) - &l2).mul_pow2(-e);
            let mid = a + &h;
            let mid_image = c + &h.mul_pow2(e);
            pts.push((mid, mid_image));
            slopes.push(e);
            pts.push((b.clone(), d.clone()));
            slopes.push(e + 1);
        }
        Ok(PLMap::canonical(pts, slopes))
    }

    /// `x_{[a',b'],0}^m` for a dyadic `[a',b'] ⊆ window` around `p`, with the
    /// least `m ≥ 1` sending `p` outside `forbid ∪ {p}`. The support lies in
    /// `window`.
    pub fn make_mover(window: (&Rational, &Rational), p: &Rational, forbid: &[Rational]) -> Result<PLMap> {
        let (a, b) = window;
        if !(a < p && p < b) {
            return Err(Error::Infeasible(format!("{p} is not inside ({a},{b})")));
        }
        let left = match Dyadic::try_from_rational(a) {
            Some(d) => d,
            None => dyadic_in_interval(a, p, &[])?,
        };
        let right = match Dyadic::try_from_rational(b) {
            Some(d) => d,
            None => dyadic_in_interval(p, b, &[])?,
        };
        let step = PLMap::rel_generator(&left, &right, 0)?;
        let mut f = step.clone();
        for _ in 0..=forbid.len() {
            let q = f.eval_unchecked(p);
            if &q != p && !forbid.contains(&q) {
                return Ok(f);
            }
            f = step.compose(&f);
        }
        Err(Error::Infeasible(format!(
            "orbit of {p} under x[{left},{right}]_0 stayed inside the forbidden set"
        )))
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pl{{")?;
        for (x, y) in &self.points {
            write!(f, "({x},{y})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PLMap {
    type Err = Error;

    /// Parses `pl{(0,0)(1/2,1/4)(3/4,1/2)(1,1)}`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s
            .strip_prefix("pl{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::usage(format!("malformed map `{s}`")))?;
        let mut pts = Vec::new();
        for chunk in body.split(')').filter(|c| !c.is_empty()) {
            let inner = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::usage(format!("malformed breakpoint `{chunk})`")))?;
            let (x, y) = inner
                .split_once(',')
                .ok_or_else(|| Error::usage(format!("malformed breakpoint `{chunk})`")))?;
            pts.push((x.parse::<Dyadic>()?, y.parse::<Dyadic>()?));
        }
        PLMap::new(pts)
    }
}
