//! Finitary permutations of ℕ.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::regions::{DiscreteRegion, RegionAlgebra};

/// A permutation of ℕ moving finitely many points. Only moved points are
/// stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinPerm {
    map: BTreeMap<u64, u64>,
}

impl FinPerm {
    pub fn identity() -> Self {
        FinPerm::default()
    }

    /// Builds a permutation from disjoint or overlapping cycles, composed
    /// right to left.
    pub fn from_cycles(cycles: &[Vec<u64>]) -> Result<Self> {
        let mut out = FinPerm::identity();
        for c in cycles {
            let mut seen = c.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != c.len() {
                return Err(Error::usage(format!("cycle {c:?} repeats a point")));
            }
            let mut map = BTreeMap::new();
            for (i, &x) in c.iter().enumerate() {
                map.insert(x, c[(i + 1) % c.len()]);
            }
            map.retain(|k, v| k != v);
            out = out.compose(&FinPerm { map });
        }
        Ok(out)
    }

    pub fn transposition(a: u64, b: u64) -> Self {
        FinPerm::from_cycles(&[vec![a, b]]).unwrap_or_default()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, p: u64) -> u64 {
        self.map.get(&p).copied().unwrap_or(p)
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &FinPerm) -> FinPerm {
        let mut map = BTreeMap::new();
        for &x in self.map.keys().chain(other.map.keys()) {
            let y = self.apply(other.apply(x));
            if y != x {
                map.insert(x, y);
            }
        }
        FinPerm { map }
    }

    pub fn inverse(&self) -> FinPerm {
        FinPerm {
            map: self.map.iter().map(|(&k, &v)| (v, k)).collect(),
        }
    }

    pub fn moved_points(&self) -> impl Iterator<Item = u64> + '_ {
        self.map.keys().copied()
    }

    pub fn support(&self) -> DiscreteRegion {
        DiscreteRegion::finite(self.moved_points())
    }

    pub fn apply_region(&self, r: &DiscreteRegion) -> DiscreteRegion {
        r.map_points(|x| self.apply(x))
    }

    /// Cycles of length ≥ 2, each starting at its least element, sorted.
    pub fn cycles(&self) -> Vec<Vec<u64>> {
        let mut done = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if done.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            done.insert(start);
            let mut x = self.apply(start);
            while x != start {
                cycle.push(x);
                done.insert(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// The transposition `(p q)` for the least `q ∈ window ∖ (forbid ∪ {p})`,
    /// or the 3-cycle `(p q r)` on the two least such points when `even`.
    pub fn make_mover(window: &DiscreteRegion, p: u64, forbid: &[u64], even: bool) -> Result<FinPerm> {
        if !window.contains(&p) {
            return Err(Error::Infeasible(format!("{p} is not in {window}")));
        }
        let mut avoid = forbid.to_vec();
        avoid.push(p);
        let q = window
            .pick_point(&avoid)
            .ok_or_else(|| Error::Infeasible(format!("no room to move {p} inside {window}")))?;
        if !even {
            return Ok(FinPerm::transposition(p, q));
        }
        avoid.push(q);
        let r = window
            .pick_point(&avoid)
            .ok_or_else(|| Error::Infeasible(format!("no room for an even mover of {p} inside {window}")))?;
        FinPerm::from_cycles(&[vec![p, q, r]])
    }
}

impl fmt::Display for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm(")?;
        for c in self.cycles() {
            let items: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FinPerm {
    type Err = Error;

    /// Parses `perm((1 2 3)(4 5))`; `perm()` is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("malformed permutation `{s}`"));
        let body = s
            .trim()
            .strip_prefix("perm")
            .map(str::trim_start)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut cycles = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let (cycle, tail) = inner.split_once(')').ok_or_else(bad)?;
            let pts = cycle
                .split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(pts);
            rest = tail.trim_start();
        }
        FinPerm::from_cycles(&cycles)
    }
}
