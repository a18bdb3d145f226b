//! Words with constants: elements of the free product of a free group on
//! `y1..yt` with a group `G`.
//!
//! A [`Word`] is read left to right as a composition, so its rightmost
//! syllable acts first. Words are always kept reduced.

use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::finperm::FinPerm;
use crate::regions::{DiscreteRegion, IntervalRegion, RegionAlgebra};
use crate::thompson::PLMap;

/// Point type of the space a group acts on.
pub type Point<G> = <<G as GroupElement>::Region as RegionAlgebra>::Point;

/// The operations every group of constants must supply.
pub trait GroupElement: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + fmt::Display {
    type Region: RegionAlgebra;

    /// `"interval"` or `"discrete"`.
    const SPACE: &'static str;

    fn parse_element(s: &str) -> Result<Self>;

    fn parse_point(s: &str) -> Result<Point<Self>>;

    fn parse_region(s: &str) -> Result<Self::Region>;

    fn identity() -> Self;

    /// `self ∘ other`: `other` acts first.
    fn compose(&self, other: &Self) -> Self;

    fn inverse(&self) -> Self;

    fn is_identity(&self) -> bool;

    fn apply(&self, p: &Point<Self>) -> Point<Self>;

    fn support(&self) -> Self::Region;

    fn apply_region(&self, r: &Self::Region) -> Self::Region;

    fn pow(&self, m: i64) -> Self {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..m.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }
}

impl GroupElement for PLMap {
    type Region = IntervalRegion;
    const SPACE: &'static str = "interval";

    fn parse_element(s: &str) -> Result<Self> {
        s.parse()
    }
    fn parse_point(s: &str) -> Result<Rational> {
        s.parse()
    }
    fn parse_region(s: &str) -> Result<IntervalRegion> {
        s.parse()
    }

    fn identity() -> Self {
        PLMap::identity()
    }
    fn compose(&self, other: &Self) -> Self {
        PLMap::compose(self, other)
    }
    fn inverse(&self) -> Self {
        PLMap::inverse(self)
    }
    fn is_identity(&self) -> bool {
        PLMap::is_identity(self)
    }
    fn apply(&self, p: &Rational) -> Rational {
        self.eval_unchecked(p)
    }
    fn support(&self) -> IntervalRegion {
        PLMap::support(self)
    }
    fn apply_region(&self, r: &IntervalRegion) -> IntervalRegion {
        PLMap::apply_region(self, r)
    }
    fn pow(&self, m: i64) -> Self {
        PLMap::pow(self, m)
    }
}

impl GroupElement for FinPerm {
    type Region = DiscreteRegion;
    const SPACE: &'static str = "discrete";

    fn parse_element(s: &str) -> Result<Self> {
        s.parse()
    }
    fn parse_point(s: &str) -> Result<u64> {
        s.trim()
            .parse()
            .map_err(|_| Error::usage(format!("`{s}` is not a natural number")))
    }
    fn parse_region(s: &str) -> Result<DiscreteRegion> {
        s.parse()
    }

    fn identity() -> Self {
        FinPerm::identity()
    }
    fn compose(&self, other: &Self) -> Self {
        FinPerm::compose(self, other)
    }
    fn inverse(&self) -> Self {
        FinPerm::inverse(self)
    }
    fn is_identity(&self) -> bool {
        FinPerm::is_identity(self)
    }
    fn apply(&self, p: &u64) -> u64 {
        FinPerm::apply(self, *p)
    }
    fn support(&self) -> DiscreteRegion {
        FinPerm::support(self)
    }
    fn apply_region(&self, r: &DiscreteRegion) -> DiscreteRegion {
        FinPerm::apply_region(self, r)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Syllable<G> {
    /// `y_index^power`, index is 1-based.
    Var { index: usize, power: i64 },
    Const(G),
}

/// A reduced word in `F_t * G`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<G> {
    arity: usize,
    syllables: Vec<Syllable<G>>,
}

fn push_reduced<G: GroupElement>(stack: &mut Vec<Syllable<G>>, s: Syllable<G>) {
    match s {
        Syllable::Var { power: 0, .. } => {}
        Syllable::Const(ref g) if g.is_identity() => {}
        Syllable::Var { index, power } => match stack.last_mut() {
            Some(Syllable::Var { index: i, power: p }) if *i == index => {
                *p += power;
                if *p == 0 {
                    stack.pop();
                }
            }
            _ => stack.push(Syllable::Var { index, power }),
        },
        Syllable::Const(g) => match stack.last_mut() {
            Some(Syllable::Const(h)) => {
                let prod = h.compose(&g);
                if prod.is_identity() {
                    stack.pop();
                } else {
                    *h = prod;
                }
            }
            _ => stack.push(Syllable::Const(g)),
        },
    }
}

impl<G: GroupElement> Word<G> {
    /// Reduces a raw syllable sequence.
    pub fn new(arity: usize, raw: impl IntoIterator<Item = Syllable<G>>) -> Result<Self> {
        let mut stack = Vec::new();
        for s in raw {
            if let Syllable::Var { index, .. } = s {
                if index == 0 || index > arity {
                    return Err(Error::usage(format!("variable y{index} exceeds arity {arity}")));
                }
            }
            push_reduced(&mut stack, s);
        }
        Ok(Word {
            arity,
            syllables: stack,
        })
    }

    fn from_reduced_iter(arity: usize, raw: impl IntoIterator<Item = Syllable<G>>) -> Self {
        let mut stack = Vec::new();
        for s in raw {
            push_reduced(&mut stack, s);
        }
        Word {
            arity,
            syllables: stack,
        }
    }

    pub fn identity(arity: usize) -> Self {
        Word {
            arity,
            syllables: vec![],
        }
    }

    pub fn var(arity: usize, index: usize, power: i64) -> Result<Self> {
        Word::new(arity, [Syllable::Var { index, power }])
    }

    pub fn constant(arity: usize, g: G) -> Self {
        Word::from_reduced_iter(arity, [Syllable::Const(g)])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn syllables(&self) -> &[Syllable<G>] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// True when no variable occurs.
    pub fn is_constant(&self) -> bool {
        self.syllables
            .iter()
            .all(|s| matches!(s, Syllable::Const(_)))
    }

    /// True when no constant occurs (the word lies in the free group).
    pub fn is_free(&self) -> bool {
        self.syllables
            .iter()
            .all(|s| matches!(s, Syllable::Var { .. }))
    }

    pub fn constant_count(&self) -> usize {
        self.syllables
            .iter()
            .filter(|s| matches!(s, Syllable::Const(_)))
            .count()
    }

    /// Number of letters `y_i^{±1}` after expanding powers.
    pub fn letter_count(&self) -> usize {
        self.syllables
            .iter()
            .map(|s| match s {
                Syllable::Var { power, .. } => power.unsigned_abs() as usize,
                Syllable::Const(_) => 0,
            })
            .sum()
    }

    pub fn multiply(&self, other: &Word<G>) -> Word<G> {
        Word::from_reduced_iter(
            self.arity.max(other.arity),
            self.syllables.iter().chain(&other.syllables).cloned(),
        )
    }

    pub fn invert(&self) -> Word<G> {
        Word {
            arity: self.arity,
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| match s {
                    Syllable::Var { index, power } => Syllable::Var {
                        index: *index,
                        power: -power,
                    },
                    Syllable::Const(g) => Syllable::Const(g.inverse()),
                })
                .collect(),
        }
    }

    /// `by⁻¹ · self · by`.
    pub fn conjugate(&self, by: &Word<G>) -> Word<G> {
        by.invert().multiply(self).multiply(by)
    }

    /// Evaluates the word at `y_i = tuple[i-1]`.
    pub fn substitute(&self, tuple: &[G]) -> Result<G> {
        if tuple.len() != self.arity {
            return Err(Error::usage(format!(
                "tuple has {} entries, word has arity {}",
                tuple.len(),
                self.arity
            )));
        }
        Ok(self.syllables.iter().fold(G::identity(), |acc, s| match s {
            Syllable::Var { index, power } => acc.compose(&tuple[index - 1].pow(*power)),
            Syllable::Const(g) => acc.compose(g),
        }))
    }

    /// The constants multiplied in order, i.e. the value at the unit tuple.
    pub fn product_of_constants(&self) -> G {
        self.syllables.iter().fold(G::identity(), |acc, s| match s {
            Syllable::Const(g) => acc.compose(g),
            Syllable::Var { .. } => acc,
        })
    }

    /// Rotates a trailing variable-only block `u'` to the front when the word
    /// contains a constant. Returns the rotated word and `u'`, so that
    /// `rotated = u' · self · u'⁻¹`.
    pub fn rotate_to_constant_tail(&self) -> (Word<G>, Word<G>) {
        if self.is_free() {
            return (self.clone(), Word::identity(self.arity));
        }
        let tail_start = self
            .syllables
            .iter()
            .rposition(|s| matches!(s, Syllable::Const(_)))
            .map_or(0, |i| i + 1);
        let suffix = Word {
            arity: self.arity,
            syllables: self.syllables[tail_start..].to_vec(),
        };
        if suffix.is_identity() {
            return (self.clone(), suffix);
        }
        let rotated = Word::from_reduced_iter(
            self.arity,
            self.syllables[tail_start..]
                .iter()
                .chain(&self.syllables[..tail_start])
                .cloned(),
        );
        (rotated, suffix)
    }

    /// Normal form `u_n v_n … u_1 v_1`, after rotating a variable tail.
    pub fn to_form11(&self) -> Result<Form11<G>> {
        if self.is_identity() {
            return Err(Error::usage("the identity word has no normal form"));
        }
        if self.is_constant() {
            return Err(Error::usage(format!("{self} is a constant word")));
        }
        let (normal, conjugator) = self.rotate_to_constant_tail();
        let mut constants = Vec::new();
        let mut blocks = Vec::new();
        let mut current: Vec<(usize, i64)> = Vec::new();
        for s in normal.syllables.iter().rev() {
            match s {
                Syllable::Const(g) => {
                    if !constants.is_empty() {
                        current.reverse();
                        blocks.push(std::mem::take(&mut current));
                    }
                    constants.push(g.clone());
                }
                Syllable::Var { index, power } => current.push((*index, *power)),
            }
        }
        current.reverse();
        blocks.push(current);
        if constants.is_empty() {
            blocks.clear();
            blocks.push(
                normal
                    .syllables
                    .iter()
                    .map(|s| match s {
                        Syllable::Var { index, power } => (*index, *power),
                        Syllable::Const(_) => unreachable!(),
                    })
                    .collect(),
            );
        }
        Ok(Form11 {
            arity: self.arity,
            constants,
            blocks,
            conjugator,
        })
    }
}

impl<G: GroupElement> fmt::Display for Word<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            match s {
                Syllable::Var { index, power: 1 } => write!(f, "y{index}")?,
                Syllable::Var { index, power } => write!(f, "y{index}^{power}")?,
                Syllable::Const(g) => write!(f, "{g}")?,
            }
        }
        Ok(())
    }
}

impl<G: GroupElement> fmt::Debug for Word<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `w = u_n v_n … u_1 v_1` with `v_j ≠ 1`. Blocks `u_1..u_{n-1}` are
/// nonempty; `u_n` may be empty. Words without constants have `n = 0` and a
/// single block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form11<G: GroupElement> {
    pub arity: usize,
    /// `v_1, …, v_n`.
    pub constants: Vec<G>,
    /// `u_1, …, u_n` as `(index, power)` syllables, left to right.
    pub blocks: Vec<Vec<(usize, i64)>>,
    /// `u'` with `normal = u' · original · u'⁻¹`.
    pub conjugator: Word<G>,
}

/// One letter of the expanded form, in order of application.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Letter<G> {
    /// `y_index^{±1}`.
    Var { index: usize, inverse: bool },
    /// `v_j` (1-based `j`).
    Const { j: usize, element: G },
}

/// The single-letter expansion of a [`Form11`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form12<G: GroupElement> {
    pub arity: usize,
    /// Letters in order of application: `v_1`, then `u_1` right to left, ….
    pub letters: Vec<Letter<G>>,
    /// `ℓ_j`, the letter count of `u_j`.
    pub ells: Vec<usize>,
    /// `L_j = ℓ_1 + … + ℓ_j`.
    pub prefix: Vec<usize>,
}

impl<G: GroupElement> Form11<G> {
    pub fn n(&self) -> usize {
        self.constants.len()
    }

    /// The normalized word `u_n v_n … u_1 v_1`.
    pub fn word(&self) -> Word<G> {
        self.word_with(|j| Some(self.constants[j].clone()))
    }

    /// Reassembles the word keeping only the constants chosen by `pick`.
    pub fn word_with(&self, pick: impl Fn(usize) -> Option<G>) -> Word<G> {
        let mut raw = Vec::new();
        let n = self.n();
        for j in (0..self.blocks.len()).rev() {
            for &(index, power) in &self.blocks[j] {
                raw.push(Syllable::Var { index, power });
            }
            if j < n {
                if let Some(g) = pick(j) {
                    raw.push(Syllable::Const(g));
                }
            }
        }
        Word::from_reduced_iter(self.arity, raw)
    }

    /// The original word: `u'⁻¹ · normal · u'`.
    pub fn original(&self) -> Word<G> {
        self.word().conjugate(&self.conjugator)
    }

    /// `v_n ⋯ v_1`.
    pub fn product_of_constants(&self) -> G {
        self.constants
            .iter()
            .rev()
            .fold(G::identity(), |acc, g| acc.compose(g))
    }

    /// The reduced variable word `u_n ⋯ u_1`.
    pub fn free_part(&self) -> Word<G> {
        self.word_with(|_| None)
    }

    pub fn to_form12(&self) -> Form12<G> {
        let mut letters = Vec::new();
        let mut ells = Vec::new();
        for (j, block) in self.blocks.iter().enumerate() {
            if j < self.n() {
                letters.push(Letter::Const {
                    j: j + 1,
                    element: self.constants[j].clone(),
                });
            }
            let mut count = 0;
            for &(index, power) in block.iter().rev() {
                for _ in 0..power.unsigned_abs() {
                    letters.push(Letter::Var {
                        index,
                        inverse: power < 0,
                    });
                    count += 1;
                }
            }
            ells.push(count);
        }
        let prefix = ells
            .iter()
            .scan(0, |acc, l| {
                *acc += l;
                Some(*acc)
            })
            .collect();
        Form12 {
            arity: self.arity,
            letters,
            ells,
            prefix,
        }
    }
}

impl<G: GroupElement> Form12<G> {
    /// `L_n`, the number of variable letters.
    pub fn length(&self) -> usize {
        self.prefix.last().copied().unwrap_or(0)
    }

    /// The letters as a word, restricted to the first `count` applied.
    fn word_of(&self, letters: &[Letter<G>]) -> Word<G> {
        Word::from_reduced_iter(
            self.arity,
            letters.iter().rev().map(|l| match l {
                Letter::Var { index, inverse } => Syllable::Var {
                    index: *index,
                    power: if *inverse { -1 } else { 1 },
                },
                Letter::Const { element, .. } => Syllable::Const(element.clone()),
            }),
        )
    }

    pub fn word(&self) -> Word<G> {
        self.word_of(&self.letters)
    }

    /// `((w)_r, [w]_r)`: the final segment holding `r` variable letters and
    /// the initial segment with `[w]_r · (w)_r = w`.
    pub fn segments(&self, r: usize) -> Result<(Word<G>, Word<G>)> {
        if r > self.length() {
            return Err(Error::usage(format!("segment {r} exceeds length {}", self.length())));
        }
        let whole = self.word();
        if r == 0 {
            return Ok((Word::identity(self.arity), whole));
        }
        let mut seen = 0;
        let mut cut = 0;
        for (i, l) in self.letters.iter().enumerate() {
            if matches!(l, Letter::Var { .. }) {
                seen += 1;
                if seen == r {
                    cut = i + 1;
                    break;
                }
            }
        }
        let tail = self.word_of(&self.letters[..cut]);
        let head = self.word_of(&self.letters[cut..]);
        Ok((tail, head))
    }
}
