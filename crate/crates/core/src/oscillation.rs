//! Oscillation regions, 𝒱-families and the Transition procedure.
//!
//! For a word in normal form `u_n v_n … u_1 v_1` the oscillation region is
//! the set of points whose trajectory `p, v_1 p, v_2 v_1 p, …` stays inside
//! the support of the next constant at every step:
//!
//! ```text
//! O_w = ⋂_{i<n} (v_i ⋯ v_1)⁻¹ supp(v_{i+1})
//! ```
//!
//! When `O_w` misses a region, Transition splits the region into cells by
//! which supports the trajectory enters, drops the constants that act
//! trivially on each cell, and repeats on the shorter words.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::finperm::FinPerm;
use crate::regions::{DiscreteRegion, RegionAlgebra};
use crate::words::{Form11, GroupElement, Point, Syllable, Word};

/// `(v_i ⋯ v_1)⁻¹ (region)`.
fn pull_back<G: GroupElement>(prefix: &G, region: &G::Region) -> G::Region {
    prefix.inverse().apply_region(region)
}

/// Partial products `v_0 = 1, v_1, v_2 v_1, …, v_n ⋯ v_1`.
fn prefixes<G: GroupElement>(constants: &[G]) -> Vec<G> {
    let mut out = vec![G::identity()];
    for v in constants {
        let next = v.compose(out.last().unwrap());
        out.push(next);
    }
    out
}

/// Normal form that also accepts constant words (`n = 1`, empty block).
pub(crate) fn normal_form<G: GroupElement>(w: &Word<G>) -> Option<Form11<G>> {
    if w.is_identity() {
        return None;
    }
    if w.is_constant() {
        return Some(Form11 {
            arity: w.arity(),
            constants: vec![w.product_of_constants()],
            blocks: vec![vec![]],
            conjugator: Word::identity(w.arity()),
        });
    }
    w.to_form11().ok()
}

/// `O_w` for a word in normal form; the whole space minus `Fix(G)` when the
/// word has no constants.
pub fn osc_region<G: GroupElement>(f: &Form11<G>) -> G::Region {
    let pre = prefixes(&f.constants);
    f.constants
        .iter()
        .enumerate()
        .fold(G::Region::ambient(), |acc, (i, v)| {
            if acc.is_empty() {
                return acc;
            }
            acc.intersect(&pull_back(&pre[i], &v.support()))
        })
}

/// `O_w` of any nontrivial word, computed on its rotated normal form.
pub fn word_osc_region<G: GroupElement>(w: &Word<G>) -> G::Region {
    match normal_form(w) {
        Some(f) => osc_region(&f),
        None => G::Region::empty(),
    }
}

/// `w ≠ 1` and `V ∩ O_w ≠ ∅`.
pub fn is_explicitly_oscillating<G: GroupElement>(w: &Word<G>, v: &G::Region) -> bool {
    !w.is_identity() && !v.intersect(&word_osc_region(w)).is_empty()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyVariant {
    /// `v_j^{ε_j} ⋯ v_1^{ε_1}(A)`, `ε ∈ {0,1}^j`.
    Signed,
    /// `v_1^{ε_1} ⋯ v_j^{ε_j}(A)`, `ε ∈ {0,-1}^j`.
    Inverse,
    /// `v_j ⋯ v_1(A)`.
    Positive,
}

/// A 𝒱-family of images of `base`, deduplicated and sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VFamily<R> {
    pub base: R,
    pub variant: FamilyVariant,
    pub members: Vec<R>,
}

impl<R: RegionAlgebra> VFamily<R> {
    pub fn union(&self) -> R {
        self.members.iter().fold(R::empty(), |acc, m| acc.union(m))
    }
}

/// The 𝒱-family of `a` for the constants `v_1..v_n`. With no constants the
/// family is `{a}`.
pub fn v_family<G: GroupElement>(constants: &[G], a: &G::Region, variant: FamilyVariant) -> VFamily<G::Region> {
    let mut members: BTreeSet<G::Region> = BTreeSet::new();
    if constants.is_empty() {
        members.insert(a.clone());
    } else {
        match variant {
            FamilyVariant::Signed => {
                members.insert(a.clone());
                for v in constants {
                    let images: Vec<_> = members.iter().map(|m| v.apply_region(m)).collect();
                    members.extend(images);
                }
            }
            FamilyVariant::Inverse => {
                members.insert(a.clone());
                for v in constants.iter().rev() {
                    let inv = v.inverse();
                    let images: Vec<_> = members.iter().map(|m| inv.apply_region(m)).collect();
                    members.extend(images);
                }
            }
            FamilyVariant::Positive => {
                for p in prefixes(constants).iter().skip(1) {
                    members.insert(p.apply_region(a));
                }
            }
        }
    }
    VFamily {
        base: a.clone(),
        variant,
        members: members.into_iter().collect(),
    }
}

/// `⋃ 𝒱(P)` for a finite point set `P` (signed or inverse variant).
pub fn v_family_points<G: GroupElement>(constants: &[G], points: &[Point<G>], variant: FamilyVariant) -> Vec<Point<G>> {
    let mut set: BTreeSet<Point<G>> = points.iter().cloned().collect();
    match variant {
        FamilyVariant::Signed => {
            for v in constants {
                let images: Vec<_> = set.iter().map(|p| v.apply(p)).collect();
                set.extend(images);
            }
        }
        FamilyVariant::Inverse => {
            for v in constants.iter().rev() {
                let inv = v.inverse();
                let images: Vec<_> = set.iter().map(|p| inv.apply(p)).collect();
                set.extend(images);
            }
        }
        FamilyVariant::Positive => {
            let base: Vec<_> = set.iter().cloned().collect();
            set.clear();
            for pre in prefixes(constants).iter().skip(1) {
                set.extend(base.iter().map(|p| pre.apply(p)));
            }
            if constants.is_empty() {
                set.extend(base);
            }
        }
    }
    set.into_iter().collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    ExplicitlyOscillating,
    Oscillating,
    Rigid,
    /// The product of constants is nontrivial, so the unit tuple solves.
    ConstantNontrivial,
    /// The identity word or a word without variables.
    Degenerate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::ExplicitlyOscillating => "ExplicitlyOscillating",
            Verdict::Oscillating => "Oscillating",
            Verdict::Rigid => "Rigid",
            Verdict::ConstantNontrivial => "ConstantNontrivial",
            Verdict::Degenerate => "Degenerate",
        };
        f.write_str(s)
    }
}

/// One nonempty cell `𝒳_ε` with the word that governs it.
#[derive(Clone, Debug)]
pub struct TransitionNode<G: GroupElement> {
    pub level: usize,
    pub region: G::Region,
    /// Nodes of the previous level carrying the word that was split.
    pub parents: Vec<usize>,
    /// `ε_1..ε_n` over the parent word's constants.
    pub pattern: Vec<bool>,
    /// The parent word with each `v_i^{ε_i}` kept or dropped, unreduced.
    pub raw: Vec<Syllable<G>>,
    /// The reduced word before rotation.
    pub derived: Word<G>,
    /// `w_V`, the rotated word.
    pub word: Word<G>,
    /// `u'` with `word = u' · derived · u'⁻¹`.
    pub conjugator: Word<G>,
    pub constant_count: usize,
    pub explicitly_oscillating: bool,
    /// `V ∩ O_{w_V}` for nontrivial words.
    pub contribution: G::Region,
}

#[derive(Clone, Debug)]
pub struct TransitionConfig {
    /// Largest number of constants whose sign patterns are enumerated.
    pub max_constants: usize,
}

impl Default for TransitionConfig {
    fn default() -> Self {
        TransitionConfig { max_constants: 16 }
    }
}

/// Outcome of [`classify`].
#[derive(Clone, Debug)]
pub struct Classification<G: GroupElement> {
    pub verdict: Verdict,
    pub word: Word<G>,
    /// `O_w` of the level-0 word.
    pub osc_region: G::Region,
    pub constant_product_nontrivial: bool,
    /// `levels[0]` holds the input; level `k` the nonempty cells of step `k`.
    pub levels: Vec<Vec<TransitionNode<G>>>,
    /// Indices into the last level of the explicitly oscillating nodes.
    pub p_os: Vec<usize>,
    pub notes: Vec<String>,
}

impl<G: GroupElement> Classification<G> {
    pub fn is_solvable_class(&self) -> bool {
        matches!(
            self.verdict,
            Verdict::ExplicitlyOscillating | Verdict::Oscillating | Verdict::ConstantNontrivial
        )
    }

    /// The explicitly oscillating nodes of the stopping level.
    pub fn witnesses(&self) -> Vec<&TransitionNode<G>> {
        match self.levels.last() {
            Some(level) => self.p_os.iter().map(|&i| &level[i]).collect(),
            None => vec![],
        }
    }

    /// Distinct words of every node above `index` at `level`, nearest first.
    pub fn ancestor_words(&self, level: usize, index: usize) -> Vec<Word<G>> {
        let mut out: Vec<Word<G>> = Vec::new();
        let mut frontier: BTreeSet<usize> = [index].into();
        for l in (1..=level).rev() {
            let parents: BTreeSet<usize> = frontier
                .iter()
                .flat_map(|&i| self.levels[l][i].parents.iter().copied())
                .collect();
            for &p in &parents {
                let w = &self.levels[l - 1][p].word;
                if !out.contains(w) {
                    out.push(w.clone());
                }
            }
            frontier = parents;
        }
        out
    }

    /// Ô_w: `O_w` for explicitly oscillating words, otherwise the interior of
    /// the closure of the union of the witnesses' contributions.
    pub fn hat_region(&self) -> Result<G::Region> {
        match self.verdict {
            Verdict::ExplicitlyOscillating => Ok(self.osc_region.clone()),
            Verdict::Oscillating => Ok(self
                .witnesses()
                .iter()
                .fold(G::Region::empty(), |acc, n| acc.union(&n.contribution))
                .regularize()),
            v => Err(Error::Rejected(format!("Ô_w is undefined for a {v} word"))),
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn make_node<G: GroupElement>(
    level: usize,
    region: G::Region,
    parents: Vec<usize>,
    pattern: Vec<bool>,
    raw: Vec<Syllable<G>>,
    derived: Word<G>,
) -> TransitionNode<G> {
    let (word, conjugator) = derived.rotate_to_constant_tail();
    let contribution = if word.is_identity() {
        G::Region::empty()
    } else {
        region.intersect(&word_osc_region(&word))
    };
    TransitionNode {
        level,
        constant_count: word.constant_count(),
        explicitly_oscillating: !contribution.is_empty(),
        region,
        parents,
        pattern,
        raw,
        derived,
        word,
        conjugator,
        contribution,
    }
}

/// Nonempty sign-pattern cells of `word` inside `region`, lexicographic in `ε`,
/// as `(ε, cell, unreduced syllables)`.
#[allow(clippy::type_complexity)]
fn expand<G: GroupElement>(
    word: &Word<G>,
    region: &G::Region,
    cfg: &TransitionConfig,
) -> Result<Vec<(Vec<bool>, G::Region, Vec<Syllable<G>>)>> {
    let f = normal_form(word).expect("expanded words are nontrivial");
    let n = f.n();
    if n > cfg.max_constants {
        return Err(Error::Resource(format!(
            "{n} constants exceed the sign-pattern budget of {}",
            cfg.max_constants
        )));
    }
    let pre = prefixes(&f.constants);
    let ambient = G::Region::ambient();
    // [i][ε] = (v_i ⋯ v_1)⁻¹ (supp(v_{i+1})^ε)
    let pieces: Vec<[G::Region; 2]> = f
        .constants
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let s = v.support();
            let outside = s.interior_complement(&ambient);
            [pull_back(&pre[i], &outside), pull_back(&pre[i], &s)]
        })
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(Vec::with_capacity(n), region.clone())];
    while let Some((pattern, cell)) = stack.pop() {
        let i = pattern.len();
        if i == n {
            let mut raw = Vec::new();
            for j in (0..f.blocks.len()).rev() {
                for &(index, power) in &f.blocks[j] {
                    raw.push(Syllable::Var { index, power });
                }
                if j < n && pattern[j] {
                    raw.push(Syllable::Const(f.constants[j].clone()));
                }
            }
            out.push((pattern, cell, raw));
            continue;
        }
        for e in [true, false] {
            let next = cell.intersect(&pieces[i][e as usize]);
            if !next.is_empty() {
                let mut p = pattern.clone();
                p.push(e);
                stack.push((p, next));
            }
        }
    }
    Ok(out)
}

/// Runs Transition on a nontrivial non-constant word.
pub fn transition<G: GroupElement>(w: &Word<G>, cfg: &TransitionConfig) -> Result<Classification<G>> {
    if w.is_identity() || w.is_constant() {
        return Err(Error::usage(format!("{w} has no variables")));
    }
    let root = make_node(0, G::Region::ambient(), vec![], vec![], w.syllables().to_vec(), w.clone());
    let osc_region = word_osc_region(&root.word);
    let constant_product_nontrivial = !w.product_of_constants().is_identity();
    let explicit = root.explicitly_oscillating;
    let mut out = Classification {
        verdict: Verdict::ExplicitlyOscillating,
        word: w.clone(),
        osc_region,
        constant_product_nontrivial,
        levels: vec![vec![root]],
        p_os: vec![0],
        notes: vec![],
    };
    if explicit {
        return Ok(out);
    }
    loop {
        let k = out.levels.len();
        let parents = out.levels.last().unwrap();
        // 𝒲^{k-1}: each distinct nontrivial word over the union of its cells
        let mut groups: Vec<(Word<G>, G::Region, Vec<usize>)> = Vec::new();
        for (i, node) in parents.iter().enumerate() {
            if node.word.is_identity() {
                continue;
            }
            match groups.iter_mut().find(|g| g.0 == node.word) {
                Some(g) => {
                    g.1 = g.1.union(&node.region);
                    g.2.push(i);
                }
                None => groups.push((node.word.clone(), node.region.clone(), vec![i])),
            }
        }
        let mut level = Vec::new();
        for (word, region, members) in &groups {
            for (pattern, cell, raw) in expand(word, region, cfg)? {
                let derived = Word::new(w.arity(), raw.iter().cloned())?;
                let node = make_node(k, cell, members.clone(), pattern, raw, derived);
                if node.constant_count >= word.constant_count() {
                    out.notes.push(format!(
                        "level {k}: constant count did not drop ({} -> {})",
                        word.constant_count(),
                        node.constant_count
                    ));
                }
                level.push(node);
            }
        }
        let p_os: Vec<usize> = level
            .iter()
            .enumerate()
            .filter(|(_, n)| n.explicitly_oscillating)
            .map(|(i, _)| i)
            .collect();
        let nontrivial = level.iter().filter(|n| !n.word.is_identity()).count();
        let empty = level.is_empty();
        out.levels.push(level);
        if !p_os.is_empty() {
            out.verdict = Verdict::Oscillating;
            out.p_os = p_os;
            return Ok(out);
        }
        if nontrivial == 0 {
            out.notes.push(if empty {
                format!("level {k}: every cell is empty")
            } else {
                format!("level {k}: every derived word is trivial")
            });
            out.p_os = vec![];
            out.verdict = if constant_product_nontrivial {
                out.notes
                    .push("the product of constants is nontrivial; the unit tuple solves".into());
                Verdict::ConstantNontrivial
            } else {
                Verdict::Rigid
            };
            return Ok(out);
        }
    }
}

/// Classifies any word; identity and variable-free words are `Degenerate`.
pub fn classify<G: GroupElement>(w: &Word<G>) -> Result<Classification<G>> {
    classify_with(w, &TransitionConfig::default())
}

pub fn classify_with<G: GroupElement>(w: &Word<G>, cfg: &TransitionConfig) -> Result<Classification<G>> {
    if w.is_identity() || w.is_constant() {
        let note = if w.is_identity() {
            "the identity word".to_string()
        } else {
            format!("no variables; the word equals {}", w.product_of_constants())
        };
        return Ok(Classification {
            verdict: Verdict::Degenerate,
            word: w.clone(),
            osc_region: G::Region::empty(),
            constant_product_nontrivial: !w.product_of_constants().is_identity(),
            levels: vec![],
            p_os: vec![],
            notes: vec![note],
        });
    }
    transition(w, cfg)
}

/// The partition `{O_w^ε}` of ℕ and the separation condition for finitary
/// permutations.
#[derive(Clone, Debug)]
pub struct GabCells {
    pub cells: Vec<(Vec<bool>, DiscreteRegion)>,
    /// Every nonempty cell is infinite.
    pub separation_holds: bool,
}

/// `O_w^ε = ⋂_s (v_s ⋯ v_1(O_w))^{ε_s}` with plain set complements.
pub fn gab_cells(f: &Form11<FinPerm>) -> GabCells {
    let o_w = osc_region(f);
    let pre = prefixes(&f.constants);
    let images: Vec<DiscreteRegion> = pre.iter().skip(1).map(|p| p.apply_region(&o_w)).collect();
    let mut cells = vec![(Vec::new(), DiscreteRegion::ambient())];
    for img in &images {
        let mut next = Vec::new();
        for (pattern, region) in cells {
            for e in [false, true] {
                let side = if e { img.clone() } else { img.complement() };
                let r = region.intersect(&side);
                if !r.is_empty() {
                    let mut p: Vec<bool> = pattern.clone();
                    p.push(e);
                    next.push((p, r));
                }
            }
        }
        cells = next;
    }
    let separation_holds = cells.iter().all(|(_, r)| r.is_infinite());
    GabCells {
        cells,
        separation_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::IntervalRegion;
    use crate::catalog;
    use crate::thompson::PLMap;

    fn c_(g: PLMap) -> Syllable<PLMap> {
        Syllable::Const(g)
    }

    fn x(n: u32) -> PLMap {
        PLMap::generator(n)
    }

    fn y(p: i64) -> Syllable<PLMap> {
        Syllable::Var { index: 1, power: p }
    }

    fn c(g: PLMap) -> Syllable<PLMap> {
        Syllable::Const(g)
    }

    #[test]
    fn osc_region_w1() {
        let w1 = Word::new(1, [y(1), c(x(1)), y(-1), c(x(2)), y(2), c(x(1).inverse())]).unwrap();
        let f = w1.to_form11().unwrap();
        assert_eq!(osc_region(&f).to_string(), "(5/8,1)");
        assert!(is_explicitly_oscillating(&w1, &IntervalRegion::ambient()));
        assert!(!is_explicitly_oscillating(&Word::<PLMap>::identity(1), &IntervalRegion::ambient()));
    }

    #[test]
    fn families() {
        let half: IntervalRegion = "(1/2,1)".parse().unwrap();
        let consts = [x(1).inverse(), x(1)];
        let pos = v_family(&consts, &half, FamilyVariant::Positive);
        let expected: BTreeSet<IntervalRegion> =
            [x(1).inverse().apply_region(&half), half.clone()].into_iter().collect();
        assert_eq!(pos.members, expected.into_iter().collect::<Vec<_>>());
        let free = v_family::<PLMap>(&[], &half, FamilyVariant::Positive);
        assert_eq!(free.members, vec![half.clone()]);
        let signed = v_family(&consts, &half, FamilyVariant::Signed);
        assert!(signed.members.contains(&half));
    }

    #[test]
    fn gab_partition() {
        let v: FinPerm = "perm((1 2))".parse().unwrap();
        let w = Word::new(1, [Syllable::Var { index: 1, power: 1 }, Syllable::Const(v)]).unwrap();
        let cells = gab_cells(&w.to_form11().unwrap());
        assert_eq!(cells.cells.len(), 2);
        assert!(!cells.separation_holds);
        let regions: Vec<_> = cells.cells.iter().map(|(_, r)| r.to_string()).collect();
        assert!(regions.contains(&"finite{1,2}".to_string()));
        assert!(regions.contains(&"cofinite{1,2}".to_string()));
    }

    fn regions<G: GroupElement>(level: &[TransitionNode<G>]) -> Vec<String> {
        level.iter().map(|n| n.region.to_string()).collect()
    }

    #[test]
    fn w2_first_level() {
        let c = classify(&catalog::w2()).unwrap();
        assert_eq!(c.verdict, Verdict::Oscillating);
        let mut cells = regions(&c.levels[1]);
        cells.sort();
        assert_eq!(cells, ["(0,1/4)", "(1/2,3/4)", "(1/4,3/8)", "(3/4,1)", "(3/8,1/2)"]);
        let by_region = |r: &str| c.levels[1].iter().find(|n| n.region.to_string() == r).unwrap();
        assert_eq!(by_region("(1/2,3/4)").derived.to_string(), "y1");
        let a = catalog::xr("0", "1/2", 0);
        let b = catalog::xr("0", "1/2", 1);
        let expect = Word::new(1, [c_(a.inverse()), y(1)]).unwrap();
        assert_eq!(by_region("(0,1/4)").derived, expect);
        let expect = Word::new(1, [c_(a.inverse().compose(&b)), y(1)]).unwrap();
        assert_eq!(by_region("(1/4,3/8)").derived, expect);
        let expect = Word::new(1, [y(1), c_(catalog::xr("1/2", "1", 1).inverse())]).unwrap();
        assert_eq!(by_region("(3/4,1)").derived, expect);
        assert!(!by_region("(3/8,1/2)").word.is_identity());
    }

    #[test]
    fn w4_never_rigid() {
        let w4 = catalog::w4();
        assert!(word_osc_region(&w4).is_empty());
        assert_eq!(w4.product_of_constants(), catalog::xr("0", "1/2", 0));
        let c = classify(&w4).unwrap();
        assert!(c.constant_product_nontrivial);
        assert_ne!(c.verdict, Verdict::Rigid);
    }

    #[test]
    fn w5_is_rigid() {
        let c = classify(&catalog::w5()).unwrap();
        assert_eq!(c.verdict, Verdict::Rigid);
        assert_eq!(c.levels.len(), 2);
        assert!(c.levels[1].iter().all(|n| n.derived.is_identity()));
        assert_eq!(c.levels[1].len(), 2);
        assert!(c.hat_region().is_err());
    }

    #[test]
    fn w6_needs_two_levels() {
        let c = classify(&catalog::w6()).unwrap();
        assert_eq!(c.verdict, Verdict::Oscillating);
        assert_eq!(c.levels.len(), 3);
        let mut p1 = regions(&c.levels[1]);
        p1.sort();
        assert_eq!(p1, ["(0,1/4)u(1/2,3/4)", "(1/4,1/2)u(3/4,1)"]);
        let mut p2 = regions(&c.levels[2]);
        p2.sort();
        assert_eq!(p2, ["(0,1/4)u(3/4,1)", "(1/4,1/2)u(1/2,3/4)"]);
        assert_eq!(c.p_os.len(), 2);
        for n in &c.levels[1] {
            assert_eq!(n.constant_count, 2);
        }
    }

    #[test]
    fn constant_words_are_degenerate() {
        let c = classify(&Word::constant(1, x(0))).unwrap();
        assert_eq!(c.verdict, Verdict::Degenerate);
        assert!(transition(&Word::constant(1, x(0)), &TransitionConfig::default()).is_err());
        let tight = TransitionConfig { max_constants: 2 };
        assert!(matches!(transition(&catalog::w2(), &tight), Err(Error::Resource(_))));
    }
}

