//! Text and machine renderings of classifications and certificates.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::oscillation::{Classification, TransitionNode};
use crate::solver::{Certificate, Check, Entry};
use crate::words::{GroupElement, Point, Syllable, Word};

use super::session::{named, Session, SpaceElement};

pub const FORMAT_VERSION: u32 = 1;

fn syllables_text<G: GroupElement>(raw: &[Syllable<G>]) -> String {
    if raw.is_empty() {
        return "1".into();
    }
    raw.iter()
        .map(|s| match s {
            Syllable::Var { index, power: 1 } => format!("y{index}"),
            Syllable::Var { index, power } => format!("y{index}^{power}"),
            Syllable::Const(g) => g.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn pattern_text(p: &[bool]) -> String {
    p.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub level: usize,
    pub region: String,
    pub parents: Vec<usize>,
    pub pattern: String,
    pub raw: String,
    pub derived: String,
    pub word: String,
    pub conjugator: String,
    pub constant_count: usize,
    pub explicitly_oscillating: bool,
    pub contribution: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub format_version: u32,
    pub space: String,
    pub name: String,
    pub verdict: String,
    pub word: String,
    pub osc_region: String,
    pub hat_region: Option<String>,
    pub constant_product_nontrivial: bool,
    pub levels: Vec<Vec<NodeDoc>>,
    pub p_os: Vec<usize>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchDoc {
    pub format_version: u32,
    pub space: String,
    pub classifications: Vec<ClassificationDoc>,
}

fn node_doc<G: GroupElement>(n: &TransitionNode<G>) -> NodeDoc {
    NodeDoc {
        level: n.level,
        region: n.region.to_string(),
        parents: n.parents.clone(),
        pattern: pattern_text(&n.pattern),
        raw: syllables_text(&n.raw),
        derived: n.derived.to_string(),
        word: n.word.to_string(),
        conjugator: n.conjugator.to_string(),
        constant_count: n.constant_count,
        explicitly_oscillating: n.explicitly_oscillating,
        contribution: n.contribution.to_string(),
    }
}

pub fn classification_doc<G: GroupElement>(name: &str, c: &Classification<G>) -> ClassificationDoc {
    ClassificationDoc {
        format_version: FORMAT_VERSION,
        space: G::SPACE.into(),
        name: name.into(),
        verdict: c.verdict.to_string(),
        word: c.word.to_string(),
        osc_region: c.osc_region.to_string(),
        hat_region: c.hat_region().ok().map(|r| r.to_string()),
        constant_product_nontrivial: c.constant_product_nontrivial,
        levels: c.levels.iter().map(|l| l.iter().map(node_doc).collect()).collect(),
        p_os: c.p_os.clone(),
        notes: c.notes.clone(),
    }
}

/// Human-readable classification report.
pub fn classification_text<G: SpaceElement>(session: &Session<G>, name: &str, c: &Classification<G>) -> String {
    use crate::oscillation::Verdict::*;
    let mut out = String::new();
    let head = match c.verdict {
        ExplicitlyOscillating => format!("{}, O_w = {}", c.verdict, c.osc_region),
        Oscillating => format!(
            "{}, O_w = {}, Ô_w = {}",
            c.verdict,
            c.osc_region,
            c.hat_region().map(|r| r.to_string()).unwrap_or_else(|e| e.to_string())
        ),
        _ => format!("{}, O_w = {}", c.verdict, c.osc_region),
    };
    let _ = writeln!(out, "{name}: {head}");
    let _ = writeln!(out, "  w = {}", named(session, &c.word));
    let _ = writeln!(out, "  product of constants nontrivial: {}", c.constant_product_nontrivial);
    for (k, level) in c.levels.iter().enumerate().skip(1) {
        let _ = writeln!(out, "  level {k}:");
        for (i, n) in level.iter().enumerate() {
            let mark = if n.explicitly_oscillating { "  [oscillating]" } else { "" };
            let _ = writeln!(
                out,
                "    [{i}] eps={} cell {}  from {:?}{mark}",
                pattern_text(&n.pattern),
                n.region,
                n.parents
            );
            let _ = writeln!(out, "        derived {}", named(session, &n.derived));
            if n.word != n.derived {
                let _ = writeln!(out, "        rotated {}", named(session, &n.word));
            }
            if n.explicitly_oscillating {
                let _ = writeln!(out, "        contributes {}", n.contribution);
            }
        }
    }
    for note in &c.notes {
        let _ = writeln!(out, "  note: {note}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub word: String,
    pub arity: usize,
    pub route: String,
    pub solved: String,
    pub conjugator: String,
    pub cell: Option<String>,
    pub base_point: Option<String>,
    pub trajectory: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub format_version: u32,
    pub space: String,
    pub entries: Vec<EntryDoc>,
    pub tuple: Vec<String>,
    pub support_bound: String,
    pub invariant_family: Vec<String>,
    pub epsilon: Option<String>,
    pub checks: Vec<CheckDoc>,
}

fn check_doc(c: &Check) -> CheckDoc {
    CheckDoc {
        name: c.name.clone(),
        passed: c.passed,
        detail: c.detail.clone(),
    }
}

pub fn certificate_doc<G: GroupElement>(c: &Certificate<G>) -> CertificateDoc {
    CertificateDoc {
        format_version: FORMAT_VERSION,
        space: G::SPACE.into(),
        entries: c
            .entries
            .iter()
            .map(|e| EntryDoc {
                word: e.word.to_string(),
                arity: e.word.arity(),
                route: e.route.clone(),
                solved: e.solved.to_string(),
                conjugator: e.conjugator.to_string(),
                cell: e.cell.as_ref().map(|r| r.to_string()),
                base_point: e.base_point.as_ref().map(|p| p.to_string()),
                trajectory: e.trajectory.iter().map(|p| p.to_string()).collect(),
            })
            .collect(),
        tuple: c.tuple.iter().map(|g| g.to_string()).collect(),
        support_bound: c.support_bound.to_string(),
        invariant_family: c.invariant_family.iter().map(|r| r.to_string()).collect(),
        epsilon: c.epsilon.as_ref().map(|e| e.to_string()),
        checks: c.checks.iter().map(check_doc).collect(),
    }
}

fn word_from<G: SpaceElement>(text: &str, arity: usize) -> Result<Word<G>> {
    Session::<G>::default().parse_word(text, arity)
}

/// Rebuilds a certificate from its document. Recorded checks are kept as
/// read; callers re-run [`crate::solver::verify`].
pub fn certificate_from_doc<G: SpaceElement>(d: &CertificateDoc) -> Result<Certificate<G>> {
    if d.format_version != FORMAT_VERSION {
        return Err(Error::usage(format!("unsupported format_version {}", d.format_version)));
    }
    if d.space != G::SPACE {
        return Err(Error::usage(format!("certificate is over `{}`, expected `{}`", d.space, G::SPACE)));
    }
    let mut entries = Vec::new();
    for e in &d.entries {
        let point = |s: &String| G::parse_point(s);
        entries.push(Entry {
            word: word_from(&e.word, e.arity)?,
            route: e.route.clone(),
            solved: word_from(&e.solved, e.arity)?,
            conjugator: word_from(&e.conjugator, e.arity)?,
            cell: e.cell.as_deref().map(G::parse_region).transpose()?,
            base_point: e.base_point.as_ref().map(point).transpose()?,
            trajectory: e.trajectory.iter().map(point).collect::<Result<Vec<Point<G>>>>()?,
        });
    }
    Ok(Certificate {
        entries,
        tuple: d.tuple.iter().map(|s| G::parse_element(s)).collect::<Result<_>>()?,
        support_bound: G::parse_region(&d.support_bound)?,
        invariant_family: d.invariant_family.iter().map(|s| G::parse_region(s)).collect::<Result<_>>()?,
        epsilon: d.epsilon.as_deref().map(str::parse::<Rational>).transpose()?,
        checks: d
            .checks
            .iter()
            .map(|c| Check {
                name: c.name.clone(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
    })
}

pub fn checks_text(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let _ = writeln!(out, "  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    out
}

/// Human-readable certificate summary.
pub fn certificate_text<G: SpaceElement>(session: &Session<G>, names: &[String], c: &Certificate<G>) -> String {
    let mut out = String::new();
    for (i, e) in c.entries.iter().enumerate() {
        let name = names.get(i).map_or("w", String::as_str);
        let _ = writeln!(out, "{name}: {} via {}", named(session, &e.word), e.route);
        if !e.conjugator.is_identity() {
            let _ = writeln!(out, "  conjugator {}", named(session, &e.conjugator));
        }
        if let Some(cell) = &e.cell {
            let _ = writeln!(out, "  cell {cell}");
        }
        if let Some(p) = &e.base_point {
            let _ = writeln!(out, "  base point {p}");
        }
        if !e.trajectory.is_empty() {
            let t: Vec<String> = e.trajectory.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "  trajectory {}", t.join(" -> "));
        }
    }
    for (i, g) in c.tuple.iter().enumerate() {
        let _ = writeln!(out, "g{} = {g}", i + 1);
        let _ = writeln!(out, "  supp {}", g.support());
    }
    let _ = writeln!(out, "support bound {}", c.support_bound);
    if let Some(e) = &c.epsilon {
        let _ = writeln!(out, "epsilon {e}");
    }
    out.push_str("checks:\n");
    out.push_str(&checks_text(&c.checks));
    out
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
