//! Words with constants, their reduction and normal forms.

use oscillate::catalog;
use oscillate::thompson::PLMap;
use oscillate::words::{Letter, Syllable, Word};

fn main() {
    let x1 = catalog::x(1);
    let w = Word::new(
        1,
        [
            Syllable::Var { index: 1, power: 1 },
            Syllable::Var { index: 1, power: -1 },
            Syllable::Const(x1.clone()),
            Syllable::Const(x1.inverse()),
            Syllable::Var { index: 1, power: 2 },
        ],
    )
    .unwrap();
    println!("freely reduced: {w}");

    let w1 = catalog::w1();
    println!("w1 = {w1}");
    println!("constants {}, letters {}", w1.constant_count(), w1.letter_count());
    println!("w1^-1 = {}", w1.invert());
    println!("w1(x0) = {}", w1.substitute(&[catalog::x(0)]).unwrap());
    println!("product of constants = {}", w1.product_of_constants());

    // Cyclic rotation so the word ends in a constant.
    let u = Word::<PLMap>::var(1, 1, 1).unwrap().multiply(&Word::constant(1, x1.clone()));
    let u = u.multiply(&Word::var(1, 1, 1).unwrap());
    let (rotated, conj) = u.rotate_to_constant_tail();
    println!("{u} rotates to {rotated} via {conj}");

    let f11 = w1.to_form11().unwrap();
    println!("n = {}, blocks {:?}", f11.n(), f11.blocks);
    let f12 = f11.to_form12();
    let letters: Vec<String> = f12
        .letters
        .iter()
        .map(|l| match l {
            Letter::Var { index, inverse: false } => format!("y{index}"),
            Letter::Var { index, inverse: true } => format!("y{index}'"),
            Letter::Const { j, .. } => format!("v{j}"),
        })
        .collect();
    println!("letters in application order: {}", letters.join(" "));
    println!("L_j = {:?}, length {}", f12.ells, f12.length());
}
