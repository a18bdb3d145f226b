#![allow(dead_code)]

use oscillate::exactnum::{Dyadic, Rational};
use oscillate::finperm::FinPerm;
use oscillate::oscillation::classify;
use oscillate::regions::{DiscreteRegion, IntervalRegion, RegionAlgebra};
use oscillate::thompson::PLMap;
use oscillate::words::{GroupElement, Syllable, Word};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn interval_region() -> impl Strategy<Value = IntervalRegion> + Clone {
    prop::collection::vec((0i64..=16, 0i64..=16), 0..4).prop_map(|pairs| {
        IntervalRegion::from_intervals(
            pairs
                .into_iter()
                .map(|(a, b)| (Rational::frac(a.min(b), 16), Rational::frac(a.max(b), 16))),
        )
    })
}

pub fn discrete_region() -> impl Strategy<Value = DiscreteRegion> + Clone {
    (any::<bool>(), prop::collection::btree_set(0u64..12, 0..6)).prop_map(|(co, s)| {
        if co {
            DiscreteRegion::Cofinite(s)
        } else {
            DiscreteRegion::Finite(s)
        }
    })
}

fn pl_factor() -> impl Strategy<Value = PLMap> + Clone {
    let dy = |k: i64| Dyadic::new(k, 2);
    prop_oneof![
        (0u32..3).prop_map(PLMap::generator),
        (0i64..4, 1i64..=4, 0u32..2).prop_map(move |(a, len, n)| {
            let b = (a + len).min(4);
            let a = a.min(b - 1);
            PLMap::rel_generator(&dy(a), &dy(b), n).unwrap()
        }),
    ]
}

/// Products of up to three generators and relative generators, each `±1`.
pub fn pl_map() -> impl Strategy<Value = PLMap> + Clone {
    prop::collection::vec((pl_factor(), any::<bool>()), 0..4).prop_map(|fs| {
        fs.into_iter().fold(PLMap::identity(), |acc, (g, inv)| {
            acc.compose(&if inv { g.inverse() } else { g })
        })
    })
}

pub fn fin_perm() -> impl Strategy<Value = FinPerm> + Clone {
    prop::collection::vec((0u64..9, 0u64..9), 0..4).prop_map(|ts| {
        ts.into_iter()
            .filter(|(a, b)| a != b)
            .fold(FinPerm::identity(), |acc, (a, b)| acc.compose(&FinPerm::transposition(a, b)))
    })
}

fn syllable<G: GroupElement>(elem: impl Strategy<Value = G>, arity: usize) -> impl Strategy<Value = Syllable<G>> + Clone {
    prop_oneof![
        (1..=arity, prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)])
            .prop_map(|(index, power)| Syllable::Var { index, power }),
        elem.prop_map(Syllable::Const),
    ]
}

/// Words of arity 2 with up to `len` syllables.
pub fn word<G: GroupElement>(elem: impl Strategy<Value = G> + Clone, len: usize) -> impl Strategy<Value = Word<G>> + Clone {
    prop::collection::vec(syllable(elem, 2), 0..=len).prop_map(|s| Word::new(2, s).unwrap())
}

pub fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn reduction_idempotent<G: GroupElement>(w: &Word<G>) -> Result<(), TestCaseError> {
    let again = Word::new(w.arity(), w.syllables().iter().cloned()).unwrap();
    prop_assert_eq!(&again, w);
    prop_assert!(w.multiply(&w.invert()).is_identity());
    Ok(())
}

pub fn substitution_homomorphism<G: GroupElement>(u: &Word<G>, v: &Word<G>, tuple: &[G]) -> Result<(), TestCaseError> {
    let uv = u.multiply(v).substitute(tuple).unwrap();
    let (gu, gv) = (u.substitute(tuple).unwrap(), v.substitute(tuple).unwrap());
    prop_assert_eq!(uv, gu.compose(&gv));
    prop_assert_eq!(u.invert().substitute(tuple).unwrap(), gu.inverse());
    Ok(())
}

pub fn support_of_product<G: GroupElement>(f: &G, g: &G) -> Result<(), TestCaseError> {
    let s = f.compose(g).support();
    prop_assert!(s.is_subset(&f.support().union(&g.support())));
    Ok(())
}

pub fn apply_region_distributes<G: GroupElement>(g: &G, a: &G::Region, b: &G::Region) -> Result<(), TestCaseError> {
    prop_assert_eq!(g.apply_region(&a.union(b)), g.apply_region(a).union(&g.apply_region(b)));
    prop_assert_eq!(g.apply_region(&a.intersect(b)), g.apply_region(a).intersect(&g.apply_region(b)));
    Ok(())
}

/// Every Transition edge strictly lowers the number of constants.
pub fn constant_count_drops<G: GroupElement>(w: &Word<G>) -> Result<(), TestCaseError> {
    let c = classify(w).unwrap();
    for k in 1..c.levels.len() {
        for n in &c.levels[k] {
            prop_assert!(!n.parents.is_empty());
            for &p in &n.parents {
                let parent = &c.levels[k - 1][p];
                prop_assert!(
                    n.constant_count < parent.constant_count,
                    "level {}: {} -> {}",
                    k,
                    parent.constant_count,
                    n.constant_count
                );
            }
        }
    }
    Ok(())
}

/// A Transition result is never Rigid when the constants multiply to a nontrivial element.
pub fn no_rigid_with_nontrivial_product<G: GroupElement>(w: &Word<G>) -> Result<(), TestCaseError> {
    if w.is_identity() || w.is_constant() {
        return Ok(());
    }
    let c = classify(w).unwrap();
    if !w.product_of_constants().is_identity() {
        prop_assert!(c.is_solvable_class(), "{} is {}", w, c.verdict);
    }
    Ok(())
}

pub fn lattice_laws<R: RegionAlgebra>(a: &R, b: &R, c: &R) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.union(b), b.union(a));
    prop_assert_eq!(a.intersect(b), b.intersect(a));
    prop_assert_eq!(a.union(&b.union(c)), a.union(b).union(c));
    prop_assert_eq!(a.intersect(&b.intersect(c)), a.intersect(b).intersect(c));
    prop_assert_eq!(&a.union(&a.intersect(b)), a);
    prop_assert_eq!(&a.intersect(&a.union(b)), a);
    prop_assert_eq!(a.intersect(&b.union(c)), a.intersect(b).union(&a.intersect(c)));
    prop_assert_eq!(&a.union(&R::empty()), a);
    prop_assert_eq!(&a.intersect(&R::ambient()), a);
    prop_assert!(a.intersect(b).is_subset(a));
    let x = R::ambient();
    prop_assert!(a.interior_complement(&x).intersect(a).is_empty());
    prop_assert_eq!(
        a.union(b).interior_complement(&x),
        a.interior_complement(&x).intersect(&b.interior_complement(&x))
    );
    Ok(())
}

fn partition(len: usize) -> impl Strategy<Value = Vec<Dyadic>> + Clone {
    prop::collection::btree_set(1i64..64, len - 2).prop_map(|inner| {
        let mut v = vec![Dyadic::zero()];
        v.extend(inner.into_iter().map(|k| Dyadic::new(k, 6)));
        v.push(Dyadic::one());
        v
    })
}

/// Two dyadic partitions of equal length, optionally sharing a rigid panel.
pub fn partition_pair() -> impl Strategy<Value = (Vec<Dyadic>, Vec<Dyadic>, Option<usize>)> + Clone {
    (2usize..=6)
        .prop_flat_map(|len| (partition(len), partition(len), prop::option::of(1..len)))
        .prop_map(|(xs, mut ys, rigid)| {
            if let Some(i) = rigid {
                // Force the shared panel [xs_{i-1}, xs_i] by moving ys onto it.
                ys[i - 1] = xs[i - 1].clone();
                ys[i] = xs[i].clone();
                let mut sorted = true;
                for k in 0..ys.len() - 1 {
                    sorted &= ys[k].to_rational() < ys[k + 1].to_rational();
                }
                if !sorted {
                    return (xs.clone(), xs, rigid);
                }
            }
            (xs, ys, rigid)
        })
}

/// The interpolant hits every point, has power-of-two slopes, and fixes the rigid panel.
pub fn cfp_exact(xs: &[Dyadic], ys: &[Dyadic], rigid: Option<usize>) -> Result<(), TestCaseError> {
    let f = PLMap::cfp_interpolate(xs, ys, rigid).unwrap();
    for (x, y) in xs.iter().zip(ys) {
        prop_assert_eq!(f.evaluate(&x.to_rational()).unwrap(), y.to_rational());
    }
    for w in f.breakpoints().windows(2) {
        let slope = &(&w[1].1.to_rational() - &w[0].1.to_rational()) / &(&w[1].0.to_rational() - &w[0].0.to_rational());
        prop_assert!(slope.log2_exact().is_some(), "slope {}", slope);
    }
    if let Some(i) = rigid {
        let panel = IntervalRegion::interval(xs[i - 1].to_rational(), xs[i].to_rational());
        prop_assert!(f.support().intersect(&panel).is_empty());
    }
    Ok(())
}
