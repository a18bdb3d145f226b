//! Prints the built-in word catalog as a session file and checks that it
//! parses back to the same words.
//!
//! ```text
//! cargo run --example catalog_session > catalog.osc
//! ```

use oscillate::catalog;
use oscillate::cli::{parse, Session, SessionFile};
use oscillate::thompson::PLMap;

fn main() {
    let mut session = Session::<PLMap>::default();
    for (i, v) in catalog::w6_constants().into_iter().enumerate() {
        session.consts.push((format!("v{}", i + 1), v));
    }
    for name in ["w1", "w2", "w3", "w4", "w5", "w6", "commutator"] {
        session.words.push((name.to_string(), catalog::by_name(name).unwrap()));
    }
    let text = session.to_string();
    print!("{text}");

    let SessionFile::Interval(back) = parse(&text).expect("printed sessions parse") else {
        unreachable!("printed as an interval session")
    };
    assert_eq!(back, session);
    eprintln!("round trip ok: {} constants, {} words", back.consts.len(), back.words.len());
}
