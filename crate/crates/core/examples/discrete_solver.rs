//! Inequalities over finitary permutations.

use oscillate::finperm::FinPerm;
use oscillate::solver::{solve_discrete, SolveOptions};
use oscillate::words::{Syllable, Word};

fn y(index: usize, power: i64) -> Syllable<FinPerm> {
    Syllable::Var { index, power }
}

fn main() {
    let t = Syllable::Const(FinPerm::transposition(1, 2));
    let cases = [
        ("commutator", Word::new(2, [y(1, 1), y(2, 1), y(1, -1), y(2, -1)]).unwrap()),
        ("y1 y2 t y1^-1 t", Word::new(2, [y(1, 1), y(2, 1), t.clone(), y(1, -1), t.clone()]).unwrap()),
        ("y1 y2 t", Word::new(2, [y(1, 1), y(2, 1), t.clone()]).unwrap()),
        ("y t y^-1 t", Word::new(1, [y(1, 1), t.clone(), y(1, -1), t]).unwrap()),
    ];
    for even in [false, true] {
        println!("even = {even}");
        for (name, w) in &cases {
            let opts = SolveOptions {
                even,
                ..SolveOptions::default()
            };
            match solve_discrete(w, &opts) {
                Ok(c) => {
                    let tuple: Vec<String> = c.tuple.iter().map(|g| g.to_string()).collect();
                    println!("  {name}: {} via {}", tuple.join(", "), c.entries[0].route);
                }
                Err(e) => println!("  {name}: {e}"),
            }
        }
    }
}
