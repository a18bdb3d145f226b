//! Certificates as JSON documents, re-checked independently.

use oscillate::catalog;
use oscillate::cli::report::{certificate_doc, certificate_from_doc, to_json, CertificateDoc};
use oscillate::solver::{solve_oscillating, verify, SolveOptions};
use oscillate::thompson::PLMap;

fn main() {
    let cert = solve_oscillating(&catalog::w3(), &SolveOptions::default()).unwrap();
    let json = to_json(&certificate_doc(&cert));
    println!("{json}");

    let doc: CertificateDoc = serde_json::from_str(&json).unwrap();
    let back = certificate_from_doc::<PLMap>(&doc).unwrap();
    println!("re-read certificate verifies: {}", verify(&back).iter().all(|c| c.passed));

    // Replacing the tuple with the identity breaks the first check.
    let mut forged = back.clone();
    forged.tuple = vec![PLMap::identity()];
    for c in verify(&forged) {
        println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
}
