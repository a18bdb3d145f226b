//! Worked example words over Thompson's group F.

use crate::exactnum::Dyadic;
use crate::thompson::PLMap;
use crate::words::{Syllable, Word};

fn d(s: &str) -> Dyadic {
    s.parse().expect("catalog literal")
}

/// `x_n`.
pub fn x(n: u32) -> PLMap {
    PLMap::generator(n)
}

/// `x_{[a,b],n}`.
pub fn xr(a: &str, b: &str, n: u32) -> PLMap {
    PLMap::rel_generator(&d(a), &d(b), n).expect("catalog literal")
}

/// `g` squeezed into `[a,b]`.
pub fn scaled(g: &PLMap, a: &str, b: &str) -> PLMap {
    g.rescale(&d(a), &d(b)).expect("catalog literal")
}

fn y(index: usize, power: i64) -> Syllable<PLMap> {
    Syllable::Var { index, power }
}

fn c(g: PLMap) -> Syllable<PLMap> {
    Syllable::Const(g)
}

fn product(parts: &[PLMap]) -> PLMap {
    parts.iter().fold(PLMap::identity(), |acc, g| acc.compose(g))
}

/// `y x1 y⁻¹ x2 y² x1⁻¹`.
pub fn w1() -> Word<PLMap> {
    Word::new(1, [y(1, 1), c(x(1)), y(1, -1), c(x(2)), y(1, 2), c(x(1).inverse())]).unwrap()
}

/// `x[0,1/2]_0⁻¹ y x[1/2,1]_1⁻¹ y⁻¹ x[0,1/2]_1 y x[0,1/2]_2⁻¹`.
pub fn w2() -> Word<PLMap> {
    Word::new(
        1,
        [
            c(xr("0", "1/2", 0).inverse()),
            y(1, 1),
            c(xr("1/2", "1", 1).inverse()),
            y(1, -1),
            c(xr("0", "1/2", 1)),
            y(1, 1),
            c(xr("0", "1/2", 2).inverse()),
        ],
    )
    .unwrap()
}

/// `y x1 y⁻¹ x1⁻¹`.
pub fn w3() -> Word<PLMap> {
    Word::new(1, [y(1, 1), c(x(1)), y(1, -1), c(x(1).inverse())]).unwrap()
}

/// `y x1 y⁻¹ x[0,1/2]_0 y² x1⁻¹`.
pub fn w4() -> Word<PLMap> {
    Word::new(
        1,
        [y(1, 1), c(x(1)), y(1, -1), c(xr("0", "1/2", 0)), y(1, 2), c(x(1).inverse())],
    )
    .unwrap()
}

/// `y⁻¹ x1 y x[0,1/2]_0 y⁻¹ x1⁻¹ y x[0,1/2]_0⁻¹`.
pub fn w5() -> Word<PLMap> {
    let a = xr("0", "1/2", 0);
    Word::new(
        1,
        [
            y(1, -1),
            c(x(1)),
            y(1, 1),
            c(a.clone()),
            y(1, -1),
            c(x(1).inverse()),
            y(1, 1),
            c(a.inverse()),
        ],
    )
    .unwrap()
}

/// The twelve constants of [`w6`], `v_1..v_12`, with `v = x0` and `v' = x0²`
/// as the full-support elements.
pub fn w6_constants() -> Vec<PLMap> {
    let v = x(0);
    let vp = x(0).pow(2);
    let q = |a: &str, b: &str| xr(a, b, 0);
    let v1 = product(&[scaled(&vp, "0", "1/4"), q("1/4", "1/2"), q("1/2", "3/4"), scaled(&v, "3/4", "1")]);
    let v6 = product(&[
        scaled(&vp, "0", "1/4"),
        q("1/4", "1/2").inverse(),
        q("1/2", "3/4").inverse(),
        scaled(&v, "3/4", "1"),
    ]);
    let v7 = product(&[q("0", "1/4"), scaled(&vp, "1/4", "1/2"), scaled(&v, "1/2", "3/4"), q("3/4", "1")]);
    let v12 = product(&[
        q("0", "1/4").inverse(),
        scaled(&vp, "1/4", "1/2"),
        scaled(&v, "1/2", "3/4"),
        q("3/4", "1").inverse(),
    ]);
    let v2 = product(&[q("0", "1/4").inverse(), q("1/2", "3/4").inverse()]);
    let v3 = product(&[xr("0", "1/2", 1).inverse(), xr("1/2", "1", 1).inverse()]);
    let v4 = product(&[q("0", "1/4"), q("1/2", "3/4")]);
    let v5 = product(&[xr("0", "1/2", 1), xr("1/2", "1", 1)]);
    vec![
        v1,
        v2.clone(),
        v3.clone(),
        v4.clone(),
        v5.clone(),
        v6,
        v7,
        v2,
        v3,
        v4,
        v5,
        v12,
    ]
}

/// `v12 y2⁻¹ y1⁻¹ v11 y1 v10 y1⁻¹ v9 y1 v8 y2 v7 y1 y2 v6 y2⁻¹ y1⁻¹ v5 y1 v4 y1⁻¹ v3 y1 v2 y2 v1`.
pub fn w6() -> Word<PLMap> {
    let v = w6_constants();
    let k = |i: usize| c(v[i - 1].clone());
    Word::new(
        2,
        [
            k(12),
            y(2, -1),
            y(1, -1),
            k(11),
            y(1, 1),
            k(10),
            y(1, -1),
            k(9),
            y(1, 1),
            k(8),
            y(2, 1),
            k(7),
            y(1, 1),
            y(2, 1),
            k(6),
            y(2, -1),
            y(1, -1),
            k(5),
            y(1, 1),
            k(4),
            y(1, -1),
            k(3),
            y(1, 1),
            k(2),
            y(2, 1),
            k(1),
        ],
    )
    .unwrap()
}

/// `y1 y2 y1⁻¹ y2⁻¹`.
pub fn commutator() -> Word<PLMap> {
    Word::new(2, [y(1, 1), y(2, 1), y(1, -1), y(2, -1)]).unwrap()
}

/// The catalog by name.
pub fn by_name(name: &str) -> Option<Word<PLMap>> {
    Some(match name {
        "w1" => w1(),
        "w2" => w2(),
        "w3" => w3(),
        "w4" => w4(),
        "w5" => w5(),
        "w6" => w6(),
        "commutator" => commutator(),
        _ => return None,
    })
}
