//! Open-set algebra for the two spaces the engine works over.
//!
//! * [`IntervalRegion`]: finite unions of open intervals inside `(0,1)` with
//!   rational endpoints. Intervals that share an endpoint stay separate, so a
//!   punctured set such as `(1/4,3/4)∖{1/2}` is represented exactly.
//! * [`DiscreteRegion`]: finite or cofinite subsets of ℕ.
//!
//! Both implement [`RegionAlgebra`], the contract the oscillation engine and
//! the solvers are generic over.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::{dyadic_in_interval, Rational};

/// Region operations shared by every space instance.
pub trait RegionAlgebra:
    Clone + PartialEq + Eq + Ord + std::hash::Hash + fmt::Debug + fmt::Display
{
    type Point: Clone + Ord + std::hash::Hash + fmt::Debug + fmt::Display;

    fn empty() -> Self;

    /// The ambient space with the global fixed points of the group removed.
    fn ambient() -> Self;

    /// Points fixed by every group element (`{0,1}` for F, none for ℕ).
    fn fixed_points() -> Vec<Self::Point>;

    fn union(&self, other: &Self) -> Self;

    fn intersect(&self, other: &Self) -> Self;

    /// `within ∩ int(X ∖ (self ∪ Fix))`.
    fn interior_complement(&self, within: &Self) -> Self;

    /// Open part of `self ∖ other`.
    fn difference(&self, other: &Self) -> Self {
        other.interior_complement(self)
    }

    /// `closure(self) ∖ self`; always finite.
    fn boundary_points(&self) -> Vec<Self::Point>;

    fn is_empty(&self) -> bool;

    fn contains(&self, p: &Self::Point) -> bool;

    fn is_subset(&self, other: &Self) -> bool {
        &self.intersect(other) == self
    }

    fn is_infinite(&self) -> bool;

    /// A neighbourhood `O ⊆ self` of `q` such that every member of `family`
    /// either contains `O` or is disjoint from it.
    fn neighborhood(&self, q: &Self::Point, family: &[Self]) -> Result<Self>;

    /// Deterministic point of `self` outside `avoid`.
    fn pick_point(&self, avoid: &[Self::Point]) -> Option<Self::Point>;

    /// Interior of the closure (fills isolated punctures).
    fn regularize(&self) -> Self;
}

/// Finite union of disjoint open intervals in `(0,1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalRegion {
    intervals: Vec<(Rational, Rational)>,
}

impl IntervalRegion {
    /// Builds the union of the given open intervals, clipped to `(0,1)`.
    pub fn from_intervals<I>(intervals: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let zero = Rational::zero();
        let one = Rational::one();
        let mut v: Vec<(Rational, Rational)> = intervals
            .into_iter()
            .map(|(a, b)| (a.max(zero.clone()), b.min(one.clone())))
            .filter(|(a, b)| a < b)
            .collect();
        v.sort();
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match out.last_mut() {
                Some(last) if a < last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        IntervalRegion { intervals: out }
    }

    pub fn interval(a: Rational, b: Rational) -> Self {
        IntervalRegion::from_intervals([(a, b)])
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    /// The connected component containing `p`.
    pub fn component_of(&self, p: &Rational) -> Option<(Rational, Rational)> {
        self.intervals
            .iter()
            .find(|(a, b)| a < p && p < b)
            .cloned()
    }

    /// `(0,1)` minus the closure of `self`.
    fn exterior(&self) -> IntervalRegion {
        let mut gaps = Vec::new();
        let mut cursor = Rational::zero();
        for (a, b) in &self.intervals {
            if &cursor < a {
                gaps.push((cursor.clone(), a.clone()));
            }
            if b > &cursor {
                cursor = b.clone();
            }
        }
        gaps.push((cursor, Rational::one()));
        IntervalRegion::from_intervals(gaps)
    }

    /// Images of this region under an increasing homeomorphism given on points.
    pub fn map_endpoints(&self, f: impl Fn(&Rational) -> Rational) -> IntervalRegion {
        IntervalRegion::from_intervals(self.intervals.iter().map(|(a, b)| (f(a), f(b))))
    }

    /// Total length.
    pub fn measure(&self) -> Rational {
        self.intervals
            .iter()
            .fold(Rational::zero(), |acc, (a, b)| acc + (b - a))
    }
}

impl RegionAlgebra for IntervalRegion {
    type Point = Rational;

    fn empty() -> Self {
        IntervalRegion { intervals: vec![] }
    }

    fn ambient() -> Self {
        IntervalRegion::interval(Rational::zero(), Rational::one())
    }

    fn fixed_points() -> Vec<Rational> {
        vec![Rational::zero(), Rational::one()]
    }

    fn union(&self, other: &Self) -> Self {
        IntervalRegion::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }

    fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.intervals, &other.intervals);
        while i < x.len() && j < y.len() {
            let lo = (&x[i].0).max(&y[j].0);
            let hi = (&x[i].1).min(&y[j].1);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if x[i].1 < y[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalRegion::from_intervals(out)
    }

    fn interior_complement(&self, within: &Self) -> Self {
        within.intersect(&self.exterior())
    }

    fn boundary_points(&self) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self
            .intervals
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        pts.dedup();
        pts
    }

    fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    fn contains(&self, p: &Rational) -> bool {
        self.component_of(p).is_some()
    }

    fn is_infinite(&self) -> bool {
        !self.is_empty()
    }

    fn neighborhood(&self, q: &Rational, family: &[Self]) -> Result<Self> {
        let (mut lo, mut hi) = self
            .component_of(q)
            .ok_or_else(|| Error::usage(format!("{q} is not in {self}")))?;
        for v in family {
            if let Some((a, b)) = v.component_of(q) {
                lo = lo.max(a);
                hi = hi.min(b);
                continue;
            }
            for (a, b) in &v.intervals {
                if a == q || b == q {
                    return Err(Error::usage(format!("{q} lies on the boundary of {v}")));
                }
                if b < q && b > &lo {
                    lo = b.clone();
                }
                if a > q && a < &hi {
                    hi = a.clone();
                }
            }
        }
        Ok(IntervalRegion::interval(lo, hi))
    }

    fn pick_point(&self, avoid: &[Rational]) -> Option<Rational> {
        let (a, b) = self.intervals.first()?;
        dyadic_in_interval(a, b, avoid).ok().map(|d| d.to_rational())
    }

    fn regularize(&self) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        for (a, b) in &self.intervals {
            match out.last_mut() {
                Some(last) if &last.1 == a => last.1 = b.clone(),
                _ => out.push((a.clone(), b.clone())),
            }
        }
        IntervalRegion { intervals: out }
    }
}

impl fmt::Display for IntervalRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "empty");
        }
        for (i, (a, b)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, "u")?;
            }
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IntervalRegion {
    type Err = Error;

    /// Parses `(a,b)u(c,d)…`, or `empty`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "empty" || s == "∅" || s == "{}" {
            return Ok(IntervalRegion::empty());
        }
        let mut out = Vec::new();
        for part in s.split('u') {
            let inner = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| Error::usage(format!("malformed interval `{part}`")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::usage(format!("malformed interval `{part}`")))?;
            let (a, b): (Rational, Rational) = (a.parse()?, b.parse()?);
            if a >= b || a.is_negative() || b > Rational::one() {
                return Err(Error::usage(format!("interval `{part}` is not inside (0,1)")));
            }
            out.push((a, b));
        }
        Ok(IntervalRegion::from_intervals(out))
    }
}

/// A finite or cofinite subset of ℕ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiscreteRegion {
    Finite(BTreeSet<u64>),
    /// Everything except the listed elements.
    Cofinite(BTreeSet<u64>),
}

impl DiscreteRegion {
    pub fn finite(elems: impl IntoIterator<Item = u64>) -> Self {
        DiscreteRegion::Finite(elems.into_iter().collect())
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Self {
        DiscreteRegion::Cofinite(excluded.into_iter().collect())
    }

    pub fn complement(&self) -> Self {
        match self {
            DiscreteRegion::Finite(s) => DiscreteRegion::Cofinite(s.clone()),
            DiscreteRegion::Cofinite(s) => DiscreteRegion::Finite(s.clone()),
        }
    }

    /// Image under a bijection of ℕ that fixes all but finitely many points.
    pub fn map_points(&self, f: impl Fn(u64) -> u64) -> Self {
        match self {
            DiscreteRegion::Finite(s) => DiscreteRegion::Finite(s.iter().map(|&x| f(x)).collect()),
            DiscreteRegion::Cofinite(s) => {
                DiscreteRegion::Cofinite(s.iter().map(|&x| f(x)).collect())
            }
        }
    }

    /// Elements of a finite region; `None` for cofinite ones.
    pub fn elements(&self) -> Option<&BTreeSet<u64>> {
        match self {
            DiscreteRegion::Finite(s) => Some(s),
            DiscreteRegion::Cofinite(_) => None,
        }
    }
}

impl RegionAlgebra for DiscreteRegion {
    type Point = u64;

    fn empty() -> Self {
        DiscreteRegion::Finite(BTreeSet::new())
    }

    fn ambient() -> Self {
        DiscreteRegion::Cofinite(BTreeSet::new())
    }

    fn fixed_points() -> Vec<u64> {
        vec![]
    }

    fn union(&self, other: &Self) -> Self {
        use DiscreteRegion::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Cofinite(a), Cofinite(b)) => Cofinite(a & b),
            (Finite(f), Cofinite(c)) | (Cofinite(c), Finite(f)) => Cofinite(c - f),
        }
    }

    fn intersect(&self, other: &Self) -> Self {
        use DiscreteRegion::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a & b),
            (Cofinite(a), Cofinite(b)) => Cofinite(a | b),
            (Finite(f), Cofinite(c)) | (Cofinite(c), Finite(f)) => Finite(f - c),
        }
    }

    fn interior_complement(&self, within: &Self) -> Self {
        within.intersect(&self.complement())
    }

    fn boundary_points(&self) -> Vec<u64> {
        vec![]
    }

    fn is_empty(&self) -> bool {
        matches!(self, DiscreteRegion::Finite(s) if s.is_empty())
    }

    fn contains(&self, p: &u64) -> bool {
        match self {
            DiscreteRegion::Finite(s) => s.contains(p),
            DiscreteRegion::Cofinite(s) => !s.contains(p),
        }
    }

    fn is_infinite(&self) -> bool {
        matches!(self, DiscreteRegion::Cofinite(_))
    }

    fn neighborhood(&self, q: &u64, family: &[Self]) -> Result<Self> {
        if !self.contains(q) {
            return Err(Error::usage(format!("{q} is not in {self}")));
        }
        Ok(family.iter().fold(self.clone(), |acc, v| {
            if v.contains(q) {
                acc.intersect(v)
            } else {
                acc.intersect(&v.complement())
            }
        }))
    }

    fn pick_point(&self, avoid: &[u64]) -> Option<u64> {
        match self {
            DiscreteRegion::Finite(s) => s.iter().find(|x| !avoid.contains(x)).copied(),
            DiscreteRegion::Cofinite(s) => (0..).find(|x| !s.contains(x) && !avoid.contains(x)),
        }
    }

    fn regularize(&self) -> Self {
        self.clone()
    }
}

impl fmt::Display for DiscreteRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, s) = match self {
            DiscreteRegion::Finite(s) => ("finite", s),
            DiscreteRegion::Cofinite(s) => ("cofinite", s),
        };
        let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        write!(f, "{tag}{{{}}}", items.join(","))
    }
}

impl fmt::Debug for DiscreteRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DiscreteRegion {
    type Err = Error;

    /// Parses `finite{1,2}` or `cofinite{3}`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::usage(format!("malformed discrete region `{s}`"));
        let (cofinite, rest) = if let Some(r) = s.strip_prefix("cofinite") {
            (true, r)
        } else if let Some(r) = s.strip_prefix("finite") {
            (false, r)
        } else {
            return Err(bad());
        };
        let body = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let elems: BTreeSet<u64> = if body.is_empty() {
            BTreeSet::new()
        } else {
            body.split(',')
                .map(|t| t.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        Ok(if cofinite {
            DiscreteRegion::Cofinite(elems)
        } else {
            DiscreteRegion::Finite(elems)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ir(s: &str) -> IntervalRegion {
        s.parse().unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn boolean_examples() {
        assert_eq!(ir("(1/2,1)").intersect(&ir("(5/8,1)")), ir("(5/8,1)"));
        assert!(ir("(0,1/4)u(1/2,3/4)")
            .intersect(&ir("(1/4,1/2)u(3/4,1)"))
            .is_empty());
        let r = ir("(0,1/3)u(1/2,5/8)");
        assert_eq!(r.intersect(&r), r);
        assert_eq!(ir("(0,1/2)").union(&ir("(1/4,1)")), ir("(0,1)"));
        assert_eq!(
            ir("(0,1/2)").union(&ir("(1/2,1)")).intervals().len(),
            2,
            "shared endpoints must not merge"
        );
        assert_eq!(ir("(0,1)").difference(&ir("(1/4,1/2)")), ir("(0,1/4)u(1/2,1)"));
    }

    #[test]
    fn interior_complement_examples() {
        let x = IntervalRegion::ambient();
        assert_eq!(ir("(3/8,1/2)").interior_complement(&x), ir("(0,3/8)u(1/2,1)"));
        assert!(ir("(0,1)").interior_complement(&x).is_empty());
        let punctured = ir("(0,1/4)u(1/4,1/2)u(1/2,3/4)u(3/4,1)");
        assert!(punctured.interior_complement(&x).is_empty());
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(ir("(5/8,1)").boundary_points(), vec![q("5/8"), q("1")]);
        assert_eq!(
            ir("(0,1/4)u(1/4,1)").boundary_points(),
            vec![q("0"), q("1/4"), q("1")]
        );
        assert!(IntervalRegion::empty().boundary_points().is_empty());
        assert!(DiscreteRegion::finite([1, 2]).boundary_points().is_empty());
    }

    #[test]
    fn queries() {
        assert!(!ir("(5/8,1)").is_empty());
        assert!(ir("(1/2,1)").contains(&q("3/4")));
        assert!(!ir("(1/2,1)").contains(&q("1/2")));
        assert!(!DiscreteRegion::finite([1, 2, 3]).is_infinite());
        assert!(DiscreteRegion::cofinite([1]).is_infinite());
        assert!(ir("(5/8,1)").is_subset(&ir("(1/2,1)")));
        assert!(!ir("(1/2,1)").is_subset(&ir("(5/8,1)")));
    }

    #[test]
    fn neighborhoods() {
        let base = ir("(1/2,1)");
        assert_eq!(base.neighborhood(&q("3/4"), &[]).unwrap(), base);
        assert_eq!(base.neighborhood(&q("3/4"), &[ir("(5/8,1)")]).unwrap(), ir("(5/8,1)"));
        assert_eq!(
            base.neighborhood(&q("9/16"), &[ir("(5/8,1)")]).unwrap(),
            ir("(1/2,5/8)")
        );
        assert!(base.neighborhood(&q("5/8"), &[ir("(5/8,1)")]).is_err());
        let d = DiscreteRegion::ambient();
        let cell = d
            .neighborhood(&7, &[DiscreteRegion::finite([1, 2]), DiscreteRegion::cofinite([2])])
            .unwrap();
        assert_eq!(cell, DiscreteRegion::cofinite([1, 2]));
    }

    #[test]
    fn parse_and_print() {
        for s in ["(5/8,1)", "(0,1/4)u(1/2,3/4)", "empty"] {
            assert_eq!(ir(s).to_string(), s);
        }
        for s in ["cofinite{1,2}", "finite{3,4,5}", "finite{}"] {
            assert_eq!(s.parse::<DiscreteRegion>().unwrap().to_string(), s);
        }
        assert!("(1/2,1/4)".parse::<IntervalRegion>().is_err());
        assert!("finite{a}".parse::<DiscreteRegion>().is_err());
    }

    #[test]
    fn regularize_fills_punctures_only() {
        assert_eq!(ir("(0,1/4)u(1/4,3/8)u(1/2,1)").regularize(), ir("(0,3/8)u(1/2,1)"));
    }
}
