//! Solving words that only oscillate after expansion.

use oscillate::catalog;
use oscillate::oscillation::classify;
use oscillate::solver::{solve_oscillating, solve_via_witness, SolveOptions};

fn main() {
    let opts = SolveOptions::default();
    for name in ["w2", "w6"] {
        let w = catalog::by_name(name).unwrap();
        let c = classify(&w).unwrap();
        for (k, &i) in c.p_os.iter().enumerate() {
            let cert = solve_via_witness(&w, &c, i, &opts).unwrap();
            let e = &cert.entries[0];
            println!(
                "{name} witness {k} ({}): base point {}, {} checks passed",
                e.route,
                e.base_point.as_ref().unwrap(),
                cert.checks.iter().filter(|c| c.passed).count()
            );
        }
    }

    // With a nontrivial product of constants the unit tuple already works.
    let cert = solve_oscillating(&catalog::w4(), &opts).unwrap();
    println!("w4 via {}", cert.entries[0].route);

    match solve_oscillating(&catalog::w5(), &opts) {
        Ok(_) => println!("w5 solved"),
        Err(e) => println!("w5: {e}"),
    }
}
