//! Finitary permutations of the naturals.

use oscillate::finperm::FinPerm;
use oscillate::regions::{DiscreteRegion, RegionAlgebra};

fn main() {
    let s: FinPerm = "perm((1 2 3))".parse().unwrap();
    let t = FinPerm::transposition(3, 4);
    println!("s = {s}, t = {t}");
    println!("s t = {}", s.compose(&t));
    println!("t s = {}", t.compose(&s));
    println!("s^-1 = {}", s.inverse());
    println!("s(3) = {}, supp s = {}", s.apply(3), s.support());
    println!("s even: {}, t even: {}", s.is_even(), t.is_even());

    let r = DiscreteRegion::cofinite([1]);
    println!("s maps {r} to {}", s.apply_region(&r));

    // A permutation moving 5 inside a window, but not onto 6.
    let window = DiscreteRegion::finite(5..10);
    let m = FinPerm::make_mover(&window, 5, &[6], true).unwrap();
    println!("even mover {m}: 5 -> {}", m.apply(5));
    assert!(m.support().is_subset(&window));
}
