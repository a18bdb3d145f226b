//! The `osc` command-line tool.
//!
//! Exit codes: `0` success or verified, `1` a mathematically negative
//! outcome (a rigid word, a failed check), `2` an error.

pub mod report;
pub mod session;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::finperm::FinPerm;
use crate::oscillation::classify;
use crate::solver::{self, Certificate, SolveOptions};
use crate::thompson::PLMap;
use crate::words::Word;

pub use session::{parse, Session, SessionFile, SpaceElement};

use report::{certificate_doc, certificate_from_doc, certificate_text, classification_doc, classification_text, to_json};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "osc", about = "Oscillation analysis and solving of mixed inequalities")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write the report here. `solve` and `solve-system` always write the
    /// machine certificate to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a word, or every word with `*`.
    Classify { session: PathBuf, word: String },
    /// Find a tuple with `w(g) ≠ 1`.
    Solve {
        session: PathBuf,
        word: String,
        /// Base region `O′ ⊆ O_w` for an explicitly oscillating word.
        #[arg(long)]
        region: Option<String>,
        /// Displacement bound for the tuple (interval space).
        #[arg(long)]
        epsilon: Option<String>,
        /// Use only even permutations (discrete space).
        #[arg(long)]
        even: bool,
    },
    /// One tuple for several inequalities.
    SolveSystem {
        session: PathBuf,
        #[arg(required = true)]
        words: Vec<String>,
        /// One base region per word, in order.
        #[arg(long = "region")]
        regions: Vec<String>,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        even: bool,
    },
    /// Re-check a stored certificate.
    Verify { certificate: PathBuf },
    /// Evaluate a word at explicit elements.
    Eval {
        session: PathBuf,
        word: String,
        elements: Vec<String>,
    },
    /// Print constants and words in canonical form.
    Show { session: PathBuf, name: Option<String> },
}

/// Exit status plus what to print.
struct Outcome {
    code: i32,
    report: String,
    certificate: Option<String>,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome {
            code: 0,
            report,
            certificate: None,
        }
    }
}

/// Runs the tool on `args` (program name first), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let written = match (&cli.out, o.certificate) {
                (Some(path), Some(cert)) => std::fs::write(path, cert).map(|_| out.write_all(o.report.as_bytes())),
                (Some(path), None) => std::fs::write(path, &o.report).map(Ok),
                (None, _) => Ok(out.write_all(o.report.as_bytes())),
            };
            match written {
                Ok(_) => o.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = match (&e, session_path(&cli.command)) {
                (Error::Parse { .. }, Some(p)) => writeln!(err, "{}:{e}", p.display()),
                _ => writeln!(err, "error: {e}"),
            };
            match e {
                Error::Rejected(_) => 1,
                _ => 2,
            }
        }
    }
}

fn load(path: &Path) -> Result<SessionFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::usage(format!("{}: {e}", path.display())))?;
    parse(&text)
}

fn session_path(c: &Command) -> Option<&Path> {
    match c {
        Command::Classify { session, .. }
        | Command::Solve { session, .. }
        | Command::SolveSystem { session, .. }
        | Command::Eval { session, .. }
        | Command::Show { session, .. } => Some(session),
        Command::Verify { .. } => None,
    }
}

fn options(epsilon: &Option<String>, even: bool) -> Result<SolveOptions> {
    let mut opts = SolveOptions::default();
    if let Some(e) = epsilon {
        let e: Rational = e.parse()?;
        if e <= Rational::zero() {
            return Err(Error::usage("epsilon must be positive"));
        }
        opts.epsilon = Some(e);
    }
    opts.even = even;
    Ok(opts)
}

/// Space-specific solving entry point.
pub trait Space: SpaceElement {
    fn solve(w: &Word<Self>, opts: &SolveOptions) -> Result<Certificate<Self>>;
}

impl Space for PLMap {
    fn solve(w: &Word<Self>, opts: &SolveOptions) -> Result<Certificate<Self>> {
        solver::solve_oscillating(w, opts)
    }
}

impl Space for FinPerm {
    fn solve(w: &Word<Self>, opts: &SolveOptions) -> Result<Certificate<Self>> {
        solver::solve_discrete(w, opts)
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    if let Command::Verify { certificate } = &cli.command {
        return verify_file(certificate, cli.format);
    }
    let path = session_path(&cli.command).expect("every other command reads a session");
    match load(path)? {
        SessionFile::Interval(s) => dispatch(&s, cli),
        SessionFile::Discrete(s) => dispatch(&s, cli),
    }
}

fn dispatch<G: Space>(s: &Session<G>, cli: &Cli) -> Result<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Classify { word, .. } => classify_cmd(s, word, fmt),
        Command::Solve {
            word,
            region,
            epsilon,
            even,
            ..
        } => {
            let w = s.word_or_err(word)?;
            let opts = options(epsilon, *even)?;
            let cert = match region {
                Some(r) => solver::solve_explicit(w, &G::parse_region(r)?, &opts)?,
                None => G::solve(w, &opts)?,
            };
            certificate_outcome(s, &[word.clone()], &cert, fmt)
        }
        Command::SolveSystem {
            words,
            regions,
            epsilon,
            even,
            ..
        } => {
            let ws = words
                .iter()
                .map(|n| s.word_or_err(n).cloned())
                .collect::<Result<Vec<_>>>()?;
            let rs = regions.iter().map(|r| G::parse_region(r)).collect::<Result<Vec<_>>>()?;
            let opts = options(epsilon, *even)?;
            let cert = solver::solve_system(&ws, (!rs.is_empty()).then_some(&rs[..]), &opts)?;
            certificate_outcome(s, words, &cert, fmt)
        }
        Command::Eval { word, elements, .. } => {
            let w = s.word_or_err(word)?;
            if elements.len() != w.arity() {
                return Err(Error::usage(format!("{word} takes {} elements, got {}", w.arity(), elements.len())));
            }
            let tuple = elements.iter().map(|e| s.parse_element(e)).collect::<Result<Vec<G>>>()?;
            let g = w.substitute(&tuple)?;
            Ok(Outcome::ok(match fmt {
                Format::Text => format!("{g}\n  supp {}\n", g.support()),
                Format::Machine => to_json(&serde_json::json!({
                    "format_version": report::FORMAT_VERSION,
                    "space": G::SPACE,
                    "word": w.to_string(),
                    "tuple": tuple.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "value": g.to_string(),
                    "support": g.support().to_string(),
                    "identity": g.is_identity(),
                })),
            }))
        }
        Command::Show { name, .. } => show(s, name.as_deref(), fmt),
        Command::Verify { .. } => unreachable!(),
    }
}

fn classify_cmd<G: Space>(s: &Session<G>, word: &str, fmt: Format) -> Result<Outcome> {
    let names: Vec<&str> = if word == "*" {
        s.words.iter().map(|(n, _)| n.as_str()).collect()
    } else {
        vec![word]
    };
    let mut docs = Vec::new();
    let mut text = String::new();
    let mut code = 0;
    for name in &names {
        let c = classify(s.word_or_err(name)?)?;
        if !c.is_solvable_class() {
            code = 1;
        }
        text.push_str(&classification_text(s, name, &c));
        docs.push(classification_doc(name, &c));
    }
    let report = match fmt {
        Format::Text => text,
        Format::Machine if word == "*" => to_json(&report::BatchDoc {
            format_version: report::FORMAT_VERSION,
            space: G::SPACE.into(),
            classifications: docs,
        }),
        Format::Machine => to_json(&docs[0]),
    };
    Ok(Outcome {
        code,
        report,
        certificate: None,
    })
}

fn certificate_outcome<G: Space>(s: &Session<G>, names: &[String], cert: &Certificate<G>, fmt: Format) -> Result<Outcome> {
    let json = to_json(&certificate_doc(cert));
    let reread: Certificate<G> = certificate_from_doc(&serde_json::from_str(&json).map_err(|e| Error::usage(e.to_string()))?)?;
    let checks = solver::verify(&reread);
    if !checks.iter().all(|c| c.passed) {
        return Err(Error::Infeasible(format!(
            "emitted certificate does not verify:\n{}",
            report::checks_text(&checks)
        )));
    }
    let report = match fmt {
        Format::Text => certificate_text(s, names, cert),
        Format::Machine => json.clone(),
    };
    Ok(Outcome {
        code: 0,
        report,
        certificate: Some(json),
    })
}

fn verify_file(path: &Path, fmt: Format) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::usage(format!("{}: {e}", path.display())))?;
    let doc: report::CertificateDoc =
        serde_json::from_str(&text).map_err(|e| Error::usage(format!("{}: {e}", path.display())))?;
    let checks = match doc.space.as_str() {
        "interval" => solver::verify(&certificate_from_doc::<PLMap>(&doc)?),
        "discrete" => solver::verify(&certificate_from_doc::<FinPerm>(&doc)?),
        other => return Err(Error::usage(format!("unknown space `{other}`"))),
    };
    let passed = checks.iter().all(|c| c.passed);
    let report = match fmt {
        Format::Text => format!(
            "{}\n{}",
            if passed { "verified" } else { "NOT verified" },
            report::checks_text(&checks)
        ),
        Format::Machine => to_json(&serde_json::json!({
            "format_version": report::FORMAT_VERSION,
            "verified": passed,
            "checks": checks.iter().map(|c| serde_json::json!({
                "name": c.name, "passed": c.passed, "detail": c.detail,
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome {
        code: if passed { 0 } else { 1 },
        report,
        certificate: None,
    })
}

fn show<G: Space>(s: &Session<G>, name: Option<&str>, fmt: Format) -> Result<Outcome> {
    let keep = |n: &str| name.map_or(true, |m| m == n);
    if let Some(m) = name {
        if s.constant(m).is_none() && s.word(m).is_none() {
            return Err(Error::usage(format!("unknown name `{m}`")));
        }
    }
    let consts: Vec<_> = s.consts.iter().filter(|(n, _)| keep(n)).collect();
    let words: Vec<_> = s.words.iter().filter(|(n, _)| keep(n)).collect();
    let report = match fmt {
        Format::Text => {
            let mut out = String::new();
            for (n, g) in consts {
                out.push_str(&format!("const {n} = {g}\n  supp {}\n", g.support()));
            }
            for (n, w) in words {
                out.push_str(&format!("word {n}[{}] = {w}\n", w.arity()));
                out.push_str(&format!("  constants {}, letters {}\n", w.constant_count(), w.letter_count()));
            }
            out
        }
        Format::Machine => to_json(&serde_json::json!({
            "format_version": report::FORMAT_VERSION,
            "space": G::SPACE,
            "consts": consts.iter().map(|(n, g)| serde_json::json!({
                "name": n, "element": g.to_string(), "support": g.support().to_string(),
            })).collect::<Vec<_>>(),
            "words": words.iter().map(|(n, w)| serde_json::json!({
                "name": n, "arity": w.arity(), "word": w.to_string(),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome::ok(report))
}
