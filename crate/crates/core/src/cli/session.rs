//! Session files: named constants and words over one space.
//!
//! ```text
//! # comments run to end of line
//! space interval;
//! const a = x[0,1/2]_0;
//! const b = (a * x1)^-1;
//! word w1[1] = y1 * x1 * y1^-1 * x2 * y1^2 * x1^-1;
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Dyadic;
use crate::finperm::FinPerm;
use crate::solver::Separating;
use crate::thompson::PLMap;
use crate::words::{GroupElement, Syllable, Word};

/// Largest variable index accepted in source text.
pub const MAX_VARIABLES: usize = 9;

/// A literal group element as written in source.
#[derive(Clone, Debug, PartialEq)]
pub enum Literal {
    Generator(u32),
    Relative(Dyadic, Dyadic, u32),
    Pl(String),
    Perm(String),
}

/// Group elements that can be written in a session file.
pub trait SpaceElement: Separating {
    fn from_literal(lit: &Literal) -> std::result::Result<Self, String>;

    /// A built-in name for `self`, if any.
    fn builtin_name(&self) -> Option<String> {
        None
    }
}

impl SpaceElement for PLMap {
    fn from_literal(lit: &Literal) -> std::result::Result<Self, String> {
        match lit {
            Literal::Generator(n) => Ok(PLMap::generator(*n)),
            Literal::Relative(a, b, n) => PLMap::rel_generator(a, b, *n).map_err(|e| e.to_string()),
            Literal::Pl(text) => text.parse().map_err(|e: Error| e.to_string()),
            Literal::Perm(_) => Err("permutations need `space discrete`".into()),
        }
    }

    fn builtin_name(&self) -> Option<String> {
        (0..8).find(|&n| &PLMap::generator(n) == self).map(|n| format!("x{n}"))
    }
}

impl SpaceElement for FinPerm {
    fn from_literal(lit: &Literal) -> std::result::Result<Self, String> {
        match lit {
            Literal::Perm(text) => text.parse().map_err(|e: Error| e.to_string()),
            _ => Err("Thompson elements need `space interval`".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Lit(Literal),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    /// Consumes a bracketed group starting at the current opening bracket.
    fn group(&mut self, open: char, close: char) -> Result<String> {
        let (line, column) = (self.line, self.column);
        let mut depth = 0;
        let mut out = String::new();
        while let Some(c) = self.bump() {
            out.push(c);
            if c == open {
                depth += 1;
            } else if c == close {
                depth -= 1;
                if depth == 0 {
                    return Ok(out);
                }
            }
        }
        Err(err(line, column, format!("unclosed `{open}`")))
    }

    fn tokens(mut self) -> Result<Vec<Token>> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let (line, column) = (self.line, self.column);
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
                continue;
            }
            let tok = if c.is_ascii_digit() {
                let mut s = String::new();
                while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                    s.push(d);
                    self.bump();
                }
                Tok::Int(s.parse().map_err(|_| err(line, column, "integer out of range"))?)
            } else if c.is_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(d) = self.peek().filter(|d| d.is_alphanumeric() || *d == '_') {
                    s.push(d);
                    self.bump();
                }
                match (s.as_str(), self.peek()) {
                    ("pl", Some('{')) => Tok::Lit(Literal::Pl(format!("pl{}", self.group('{', '}')?))),
                    ("perm", Some('(')) => Tok::Lit(Literal::Perm(format!("perm{}", self.group('(', ')')?))),
                    ("x", Some('[')) => self.relative()?,
                    _ => Tok::Ident(s),
                }
            } else if "*^-()=;[],".contains(c) {
                self.bump();
                Tok::Sym(c)
            } else {
                return Err(err(line, column, format!("unexpected character `{c}`")));
            };
            out.push(Token { tok, line, column });
        }
        Ok(out)
    }

    /// `x[a,b]_n` after the `x`.
    fn relative(&mut self) -> Result<Tok> {
        let (bl, bc) = (self.line, self.column);
        let body = self.group('[', ']')?;
        let inner = &body[1..body.len() - 1];
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| err(bl, bc, "expected `[a,b]`"))?;
        let endpoint = |s: &str| -> Result<Dyadic> {
            let r: crate::exactnum::Rational = s.trim().parse().map_err(|_| err(bl, bc, format!("bad endpoint `{}`", s.trim())))?;
            r.to_dyadic()
                .map_err(|_| err(bl, bc, format!("endpoint {r} is not dyadic")))
        };
        let (a, b) = (endpoint(a)?, endpoint(b)?);
        if self.peek() != Some('_') {
            return Err(err(self.line, self.column, "expected `_<n>` after `x[a,b]`"));
        }
        self.bump();
        let mut s = String::new();
        while let Some(d) = self.peek().filter(char::is_ascii_digit) {
            s.push(d);
            self.bump();
        }
        let n = s
            .parse()
            .map_err(|_| err(self.line, self.column, "expected a generator index"))?;
        Ok(Tok::Lit(Literal::Relative(a, b, n)))
    }
}

#[derive(Clone, Debug)]
enum Expr {
    Lit(Literal, usize, usize),
    Name(String, usize, usize),
    One,
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.eof, |t| (t.line, t.column))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize)> {
        match self.next() {
            Some(Token { tok: Tok::Ident(s), line, column }) => Ok((s, line, column)),
            _ => {
                self.pos -= 1;
                self.fail("expected a name")
            }
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.next() {
            Some(Token { tok: Tok::Int(n), .. }) => Ok(if neg { -n } else { n }),
            _ => {
                self.pos -= 1;
                self.fail("expected an integer")
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut factors = vec![self.power()?];
        while self.eat('*') {
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.eat('^') {
            base = Expr::Power(Box::new(base), self.int()?);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(t) = self.next() else {
            return self.fail("expected an expression");
        };
        match t.tok {
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Int(1) => Ok(Expr::One),
            Tok::Lit(l) => Ok(Expr::Lit(l, t.line, t.column)),
            Tok::Ident(s) => Ok(Expr::Name(s, t.line, t.column)),
            _ => Err(err(t.line, t.column, "expected an expression")),
        }
    }
}

/// Constants and words over one space.
#[derive(Clone, Debug, PartialEq)]
pub struct Session<G: GroupElement> {
    pub consts: Vec<(String, G)>,
    pub words: Vec<(String, Word<G>)>,
}

impl<G: GroupElement> Default for Session<G> {
    fn default() -> Self {
        Session {
            consts: vec![],
            words: vec![],
        }
    }
}

/// A parsed session file.
#[derive(Clone, Debug, PartialEq)]
pub enum SessionFile {
    Interval(Session<PLMap>),
    Discrete(Session<FinPerm>),
}

fn generator_index(name: &str, prefix: char) -> Option<u32> {
    let rest = name.strip_prefix(prefix)?;
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

impl<G: SpaceElement> Session<G> {
    pub fn constant(&self, name: &str) -> Option<&G> {
        self.consts.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn word(&self, name: &str) -> Option<&Word<G>> {
        self.words.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    pub fn word_or_err(&self, name: &str) -> Result<&Word<G>> {
        self.word(name).ok_or_else(|| Error::usage(format!("unknown word `{name}`")))
    }

    /// `arity = None` evaluates a constant expression.
    fn eval(&self, e: &Expr, arity: Option<usize>) -> Result<Word<G>> {
        let t = arity.unwrap_or(0);
        Ok(match e {
            Expr::One => Word::identity(t),
            Expr::Lit(l, line, col) => Word::constant(t, G::from_literal(l).map_err(|m| err(*line, *col, m))?),
            Expr::Name(name, line, col) => {
                if let Some(g) = self.constant(name) {
                    Word::constant(t, g.clone())
                } else if let Some(i) = generator_index(name, 'y') {
                    let i = i as usize;
                    match arity {
                        None => return Err(err(*line, *col, format!("variable `{name}` in a constant expression"))),
                        Some(a) if i == 0 || i > a => {
                            return Err(err(*line, *col, format!("`{name}` exceeds the declared arity {a}")))
                        }
                        Some(_) => Word::var(t, i, 1)?,
                    }
                } else if let Some(n) = generator_index(name, 'x') {
                    Word::constant(t, G::from_literal(&Literal::Generator(n)).map_err(|m| err(*line, *col, m))?)
                } else {
                    return Err(err(*line, *col, format!("unknown name `{name}`")));
                }
            }
            Expr::Product(fs) => {
                let mut acc = Word::identity(t);
                for f in fs {
                    acc = acc.multiply(&self.eval(f, arity)?);
                }
                acc
            }
            Expr::Power(b, k) => {
                let base = self.eval(b, arity)?;
                let unit = if *k < 0 { base.invert() } else { base };
                let mut acc = Word::identity(t);
                for _ in 0..k.unsigned_abs() {
                    acc = acc.multiply(&unit);
                }
                acc
            }
        })
    }

    /// Evaluates standalone constant-expression text against the bindings.
    pub fn parse_element(&self, text: &str) -> Result<G> {
        let mut p = parser(text)?;
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.fail("unexpected trailing input");
        }
        Ok(self.eval(&e, None)?.product_of_constants())
    }

    /// Evaluates standalone word text of the given arity.
    pub fn parse_word(&self, text: &str, arity: usize) -> Result<Word<G>> {
        let mut p = parser(text)?;
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.fail("unexpected trailing input");
        }
        self.eval(&e, Some(arity))
    }

    fn statements(&mut self, p: &mut Parser) -> Result<()> {
        while p.peek().is_some() {
            let (kw, line, col) = p.ident()?;
            match kw.as_str() {
                "const" => {
                    let (name, nl, nc) = p.ident()?;
                    self.check_fresh(&name, nl, nc)?;
                    p.expect('=')?;
                    let e = p.expr()?;
                    p.expect(';')?;
                    let g = self.eval(&e, None)?.product_of_constants();
                    self.consts.push((name, g));
                }
                "word" => {
                    let (name, nl, nc) = p.ident()?;
                    self.check_fresh(&name, nl, nc)?;
                    p.expect('[')?;
                    let arity = p.int()?;
                    if !(0..=MAX_VARIABLES as i64).contains(&arity) {
                        return p.fail(format!("arity must be between 0 and {MAX_VARIABLES}"));
                    }
                    p.expect(']')?;
                    p.expect('=')?;
                    let e = p.expr()?;
                    p.expect(';')?;
                    let w = self.eval(&e, Some(arity as usize))?;
                    self.words.push((name, w));
                }
                "space" => return Err(err(line, col, "only one `space` declaration is allowed")),
                other => return Err(err(line, col, format!("expected `const` or `word`, found `{other}`"))),
            }
        }
        Ok(())
    }

    fn check_fresh(&self, name: &str, line: usize, col: usize) -> Result<()> {
        if generator_index(name, 'x').is_some() || generator_index(name, 'y').is_some() || name == "pl" || name == "perm" {
            return Err(err(line, col, format!("`{name}` is reserved")));
        }
        if self.constant(name).is_some() || self.word(name).is_some() {
            return Err(err(line, col, format!("`{name}` is already defined")));
        }
        Ok(())
    }
}

fn parser(src: &str) -> Result<Parser> {
    let toks = Lexer::new(src).tokens()?;
    let lines: Vec<&str> = src.split('\n').collect();
    let eof = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    Ok(Parser { toks, pos: 0, eof })
}

/// Parses a session file.
pub fn parse(src: &str) -> Result<SessionFile> {
    let mut p = parser(src)?;
    let (kw, line, col) = p.ident().map_err(|_| {
        let (l, c) = p.here();
        err(l, c, "a session starts with `space interval;` or `space discrete;`")
    })?;
    if kw != "space" {
        return Err(err(line, col, "a session starts with `space interval;` or `space discrete;`"));
    }
    let (space, sl, sc) = p.ident()?;
    p.expect(';')?;
    match space.as_str() {
        "interval" => {
            let mut s = Session::<PLMap>::default();
            s.statements(&mut p)?;
            Ok(SessionFile::Interval(s))
        }
        "discrete" => {
            let mut s = Session::<FinPerm>::default();
            s.statements(&mut p)?;
            Ok(SessionFile::Discrete(s))
        }
        other => Err(err(sl, sc, format!("unknown space `{other}`"))),
    }
}

impl<G: SpaceElement> fmt::Display for Session<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space {};", G::SPACE)?;
        for (name, g) in &self.consts {
            writeln!(f, "const {name} = {g};")?;
        }
        for (name, w) in &self.words {
            writeln!(f, "word {name}[{}] = {};", w.arity(), named(self, w))?;
        }
        Ok(())
    }
}

impl fmt::Display for SessionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionFile::Interval(s) => s.fmt(f),
            SessionFile::Discrete(s) => s.fmt(f),
        }
    }
}

/// Prints a word in source syntax, reusing constant names where they match.
pub fn named<G: SpaceElement>(session: &Session<G>, w: &Word<G>) -> String {
    if w.is_identity() {
        return "1".into();
    }
    let parts: Vec<String> = w
        .syllables()
        .iter()
        .map(|s| match s {
            Syllable::Var { index, power: 1 } => format!("y{index}"),
            Syllable::Var { index, power } => format!("y{index}^{power}"),
            Syllable::Const(g) => match session.consts.iter().find(|(_, h)| h == g) {
                Some((name, _)) => name.clone(),
                None => match session.consts.iter().find(|(_, h)| &h.inverse() == g) {
                    Some((name, _)) => format!("{name}^-1"),
                    None => match (g.builtin_name(), g.inverse().builtin_name()) {
                        (Some(n), _) => n,
                        (None, Some(n)) => format!("{n}^-1"),
                        (None, None) => g.to_string(),
                    },
                },
            },
        })
        .collect();
    parts.join(" * ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_words_parse() {
        let src = "space interval;\n\
                   word w1[1] = y1 * x1 * y1^-1 * x2 * y1^2 * x1^-1;\n\
                   const a = x[0,1/2]_0;\n\
                   word w4[1] = y1 * x1 * y1^-1 * a * y1^2 * x1^-1;\n";
        let SessionFile::Interval(s) = parse(src).unwrap() else { panic!() };
        assert_eq!(s.word("w1").unwrap(), &catalog::w1());
        assert_eq!(s.word("w4").unwrap(), &catalog::w4());
        assert_eq!(s.constant("a").unwrap(), &catalog::xr("0", "1/2", 0));
    }

    #[test]
    fn diagnostics_are_located() {
        let e = parse("space interval;\nword bad[1] = y1 *;").unwrap_err();
        assert_eq!(e, err(2, 19, "expected an expression"));
        let e = parse("space interval;\nconst a = x[0,1/3]_0;").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, message, .. } if message.contains("not dyadic")));
        let e = parse("space discrete;\nconst a = x1;").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 11, .. }));
        let e = parse("space interval;\nword w[1] = y2;").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 13, .. }));
    }

    #[test]
    fn printing_round_trips() {
        let src = "space discrete; # finitary\nconst t = perm((1 2));\nword w[2] = y1 * t * (y2 * t)^-2 * 1;";
        let parsed = parse(src).unwrap();
        assert_eq!(parse(&parsed.to_string()).unwrap(), parsed);
    }
}
