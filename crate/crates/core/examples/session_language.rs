//! The session language: parsing, printing and diagnostics.

use oscillate::cli::{parse, SessionFile};
use oscillate::oscillation::classify;

const SOURCE: &str = "
space interval;
const a = x[0,1/2]_0;
const b = (a * x1)^-1;          # products, powers, inverses
word w4[1] = y1 * x1 * y1^-1 * a * y1^2 * x1^-1;
word c[2] = y1 * y2 * y1^-1 * y2^-1 * b * b^-1;
";

fn main() {
    let file = parse(SOURCE).unwrap();
    print!("{file}");
    assert_eq!(parse(&file.to_string()).unwrap(), file);

    if let SessionFile::Interval(s) = &file {
        let w4 = s.word("w4").unwrap();
        println!("w4 is {}", classify(w4).unwrap().verdict);
        println!("a * x0 = {}", s.parse_element("a * x0").unwrap());
    }

    for bad in [
        "space interval;\nword bad[1] = y1 *;",
        "space interval;\nconst a = x[0,1/3]_0;",
        "space discrete;\nconst a = x1;",
        "space interval;\nword w[1] = y1 * y2;",
        "space interval;\nconst x3 = x1;",
        "space interval;\nconst a = q;",
    ] {
        println!("{:?} -> {}", bad.lines().last().unwrap(), parse(bad).unwrap_err());
    }
}
