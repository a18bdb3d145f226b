//! One tuple for several inequalities at once.

use oscillate::catalog;
use oscillate::exactnum::Rational;
use oscillate::solver::{solve_system, Separating, SolveOptions};

fn main() {
    let words = [catalog::w1(), catalog::w3()];
    let cert = solve_system(&words, None, &SolveOptions::with_epsilon(Rational::frac(1, 4))).unwrap();
    for (w, e) in words.iter().zip(&cert.entries) {
        println!("{} via {}", w, e.route);
        println!("  base point {}, value {}", e.base_point.as_ref().unwrap(), w.substitute(&cert.tuple).unwrap());
    }
    println!("g = {}", cert.tuple[0]);
    println!("displacement {}", Separating::displacement(&cert.tuple[0]).unwrap());
    println!("all checks pass: {}", cert.passed());

    // Pin each word's base point to a chosen region.
    let regions = ["(5/8,3/4)".parse().unwrap(), "(3/4,1)".parse().unwrap()];
    let cert = solve_system(&words, Some(&regions), &SolveOptions::default()).unwrap();
    for e in &cert.entries {
        println!("base point {}", e.base_point.as_ref().unwrap());
    }
}
