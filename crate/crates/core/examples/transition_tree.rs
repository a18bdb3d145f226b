//! Classification by repeated cell expansion.

use oscillate::catalog;
use oscillate::oscillation::{classify, Verdict};

fn main() {
    for name in ["w1", "w2", "w4", "w5", "w6"] {
        let w = catalog::by_name(name).unwrap();
        let c = classify(&w).unwrap();
        println!("{name}: {}", c.verdict);
        for (k, level) in c.levels.iter().enumerate().skip(1) {
            for n in level {
                let mark = if n.explicitly_oscillating { " *" } else { "" };
                println!("  level {k} {}: {} consts, word {}{mark}", n.region, n.constant_count, short(&n.word.to_string()));
            }
        }
        if c.verdict == Verdict::Oscillating {
            println!("  hat region {}", c.hat_region().unwrap());
        }
    }
}

fn short(s: &str) -> String {
    if s.len() > 60 {
        format!("{}...", &s[..60])
    } else {
        s.to_string()
    }
}
