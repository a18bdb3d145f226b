//! Exact rationals and dyadic rationals.

use oscillate::exactnum::{dyadic_in_interval, Dyadic, Rational};

fn main() {
    let a: Rational = "3/8".parse().unwrap();
    let b = Rational::frac(5, 12);
    println!("{a} + {b} = {}", &a + &b);
    println!("{a} * {b} = {}", &a * &b);
    println!("{a} / {b} = {}", &a / &b);
    println!("{a} * 2^-3 = {}", a.mul_pow2(-3));

    println!("is {a} dyadic? {}", a.is_dyadic());
    println!("is {b} dyadic? {}", b.is_dyadic());
    match b.to_dyadic() {
        Ok(d) => println!("{b} as dyadic: {d}"),
        Err(e) => println!("{b} as dyadic: {e}"),
    }

    let d: Dyadic = "13/32".parse().unwrap();
    println!("{d} = {} / 2^{}", d.numerator(), d.exponent());
    println!("log2(1/16) = {:?}", Rational::frac(1, 16).log2_exact());

    // Simplest dyadic strictly between two rationals, skipping a forbidden one.
    let lo = Rational::frac(1, 3);
    let hi = Rational::frac(2, 3);
    let avoid = [Rational::frac(1, 2)];
    let p = dyadic_in_interval(&lo, &hi, &avoid).unwrap();
    println!("a dyadic in ({lo},{hi}) other than 1/2: {p}");
}
