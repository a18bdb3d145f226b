//! Oscillation regions and the region families built from constants.

use oscillate::catalog;
use oscillate::finperm::FinPerm;
use oscillate::oscillation::{gab_cells, is_explicitly_oscillating, v_family, word_osc_region, FamilyVariant};
use oscillate::regions::{IntervalRegion, RegionAlgebra};
use oscillate::words::{Syllable, Word};

fn main() {
    for name in ["w1", "w2", "w3", "w4", "w5", "commutator"] {
        let w = catalog::by_name(name).unwrap();
        println!("O_{name} = {}", word_osc_region(&w));
    }

    let w1 = catalog::w1();
    let v: IntervalRegion = "(5/8,1)".parse().unwrap();
    println!("w1 explicitly oscillating on {v}: {}", is_explicitly_oscillating(&w1, &v));

    let f = w1.to_form11().unwrap();
    let fam = v_family(&f.constants, &v, FamilyVariant::Signed);
    println!("signed family over {v}:");
    for m in &fam.members {
        println!("  {m}");
    }
    println!("union {}", fam.union());

    // Over the naturals O_w is finite and cells may be too small to separate.
    let t = FinPerm::transposition(1, 2);
    let w = Word::new(
        1,
        [
            Syllable::Var { index: 1, power: 1 },
            Syllable::Const(t.clone()),
            Syllable::Var { index: 1, power: -1 },
            Syllable::Const(t),
        ],
    )
    .unwrap();
    let g = gab_cells(&w.to_form11().unwrap());
    println!("{w}: O_w = {}", word_osc_region(&w));
    for (pattern, cell) in &g.cells {
        println!("  cell {pattern:?}: {cell} (infinite: {})", cell.is_infinite());
    }
    println!("  separation holds: {}", g.separation_holds);
}
