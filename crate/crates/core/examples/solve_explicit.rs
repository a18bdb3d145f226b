//! Solving an explicitly oscillating word, with and without a displacement bound.

use oscillate::catalog;
use oscillate::exactnum::Rational;
use oscillate::oscillation::word_osc_region;
use oscillate::solver::{solve_explicit, verify, Separating, SolveOptions};

fn main() {
    for name in ["w1", "w3", "commutator"] {
        let w = catalog::by_name(name).unwrap();
        let o = word_osc_region(&w);
        let cert = solve_explicit(&w, &o, &SolveOptions::default()).unwrap();
        let e = &cert.entries[0];
        println!("{name}: base point {:?}, trajectory {:?}", e.base_point.as_ref().unwrap(), e.trajectory);
        for (i, g) in cert.tuple.iter().enumerate() {
            println!("  g{} supp {}", i + 1, g.support());
        }
        println!("  w(g) = {}", w.substitute(&cert.tuple).unwrap());
    }

    let eps = Rational::frac(1, 8);
    let w3 = catalog::w3();
    let cert = solve_explicit(&w3, &word_osc_region(&w3), &SolveOptions::with_epsilon(eps.clone())).unwrap();
    for c in verify(&cert) {
        println!("  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
    }
    let disp = Separating::displacement(&cert.tuple[0]).unwrap();
    println!("displacement {disp} <= {eps}");
}
