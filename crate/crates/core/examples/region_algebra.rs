//! Open regions of (0,1) and of the naturals.

use oscillate::exactnum::Rational;
use oscillate::regions::{DiscreteRegion, IntervalRegion, RegionAlgebra};

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn main() {
    let a: IntervalRegion = "(0,1/2)u(3/4,1)".parse().unwrap();
    let b: IntervalRegion = "(1/4,7/8)".parse().unwrap();
    println!("A = {a}, B = {b}");
    println!("A u B = {}", a.union(&b));
    println!("A n B = {}", a.intersect(&b));
    println!("A \\ B = {}", a.difference(&b));
    println!("int((0,1) \\ A) = {}", a.interior_complement(&IntervalRegion::ambient()));
    println!("boundary of A: {:?}", a.boundary_points());
    println!("measure of A: {}", a.measure());

    // (0,1/2) u (1/2,1) regularizes to (0,1).
    let punctured: IntervalRegion = "(0,1/2)u(1/2,1)".parse().unwrap();
    println!("regularize {punctured} = {}", punctured.regularize());

    // A neighbourhood of 3/4 that every family member contains or misses.
    let family: Vec<IntervalRegion> = ["(1/2,5/8)", "(5/8,1)", "(0,3/4)u(7/8,1)"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let o = IntervalRegion::ambient().neighborhood(&r("13/16"), &family).unwrap();
    println!("neighbourhood of 13/16 = {o}");
    println!("a point of A away from 1/4: {:?}", a.pick_point(&[r("1/4")]));

    let f = DiscreteRegion::finite([1, 2, 5]);
    let c = DiscreteRegion::cofinite([2, 3]);
    println!("{f} n {c} = {}", f.intersect(&c));
    println!("{f} u {c} = {}", f.union(&c));
    println!("complement of {c} = {}", c.complement());
    println!("{c} is infinite: {}", c.is_infinite());
}
