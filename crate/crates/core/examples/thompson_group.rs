//! Thompson's group F as piecewise-linear maps of [0,1].

use oscillate::exactnum::{Dyadic, Rational};
use oscillate::thompson::PLMap;

fn d(s: &str) -> Dyadic {
    s.parse().unwrap()
}

fn main() {
    let x0 = PLMap::generator(0);
    let x1 = PLMap::generator(1);
    println!("x0 = {x0}");
    println!("x1 = {x1}");
    println!("supp x1 = {}", x1.support());

    // x_j x_i = x_i x_{j+1} for i < j.
    for (i, j) in [(0, 1), (0, 2), (1, 3)] {
        let lhs = PLMap::generator(j).compose(&PLMap::generator(i));
        let rhs = PLMap::generator(i).compose(&PLMap::generator(j + 1));
        println!("x{j} x{i} = x{i} x{} : {}", j + 1, lhs == rhs);
    }

    let a = PLMap::rel_generator(&d("0"), &d("1/2"), 0).unwrap();
    println!("x[0,1/2]_0 = {a}, supp {}", a.support());
    let p: Rational = "3/8".parse().unwrap();
    println!("x[0,1/2]_0(3/8) = {}", a.evaluate(&p).unwrap());
    println!("displacement of x1 = {}", x1.displacement());

    let c = x0.compose(&x1).compose(&x0.inverse()).compose(&x1.inverse());
    println!("[x0, x1] = {c}");
    println!("image of (1/4,1/2) under x0: {}", x0.apply_region(&"(1/4,1/2)".parse().unwrap()));

    // An element of F through prescribed dyadic points.
    let xs = [d("0"), d("1/4"), d("1/2"), d("3/4"), d("1")];
    let ys = [d("0"), d("1/8"), d("3/8"), d("7/8"), d("1")];
    let g = PLMap::cfp_interpolate(&xs, &ys, None).unwrap();
    println!("interpolant {g}");
    for (x, y) in xs.iter().zip(&ys) {
        assert_eq!(g.evaluate(&x.to_rational()).unwrap(), y.to_rational());
    }

    // Move 5/8 inside (1/2,3/4) to somewhere other than 9/16.
    let (lo, hi): (Rational, Rational) = ("1/2".parse().unwrap(), "3/4".parse().unwrap());
    let q: Rational = "5/8".parse().unwrap();
    let m = PLMap::make_mover((&lo, &hi), &q, &["9/16".parse().unwrap()]).unwrap();
    println!("mover {m}: 5/8 -> {}", m.evaluate(&q).unwrap());
}
