//! Driving the `osc` tool in-process.
//!
//! The same commands run from a shell:
//!
//! ```text
//! osc classify examples/data/words.osc '*'
//! osc --out w3.json solve examples/data/words.osc w3 --epsilon 1/8
//! osc verify w3.json
//! ```

use std::path::Path;

use oscillate::cli::run;

fn osc(args: &[&str]) -> i32 {
    println!("$ osc {}", args.join(" "));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("osc").chain(args.iter().copied()), &mut out, &mut err);
    print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    println!("[exit {code}]\n");
    code
}

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let words = data.join("words.osc");
    let words = words.to_str().unwrap();
    let perms = data.join("perms.osc");
    let perms = perms.to_str().unwrap();
    let cert = std::env::temp_dir().join("osc-example-w3.json");
    let cert = cert.to_str().unwrap();

    osc(&["classify", words, "w1"]);
    osc(&["classify", words, "w5"]);
    osc(&["--out", cert, "solve", words, "w3", "--epsilon", "1/8"]);
    osc(&["verify", cert]);
    osc(&["solve-system", words, "w1", "w3"]);
    osc(&["eval", words, "w3", "x0"]);
    osc(&["--format", "machine", "classify", perms, "twisted"]);
    osc(&["show", perms]);
}
