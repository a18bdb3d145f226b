//! Constructive solvers for `w(ȳ) ≠ 1` and an independent verifier.
//!
//! Every solver builds a *distinctive* tuple: starting from a base point `p`,
//! the word is applied one letter at a time and each coordinate is corrected
//! by a small mover whenever the new point would repeat an earlier one. At the
//! end the `L_n + n + 1` trajectory points are pairwise distinct, so
//! `w(ḡ)(p) ≠ p`.
//!
//! Movers are supported in neighbourhoods that lie wholly inside or wholly
//! outside every tracked region, so each coordinate leaves those regions
//! setwise invariant.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::finperm::FinPerm;
use crate::oscillation::{
    classify, gab_cells, osc_region, v_family, v_family_points, Classification, FamilyVariant, Verdict,
};
use crate::regions::{DiscreteRegion, IntervalRegion, RegionAlgebra};
use crate::thompson::PLMap;
use crate::words::{Form11, GroupElement, Letter, Point, Word};

/// Groups whose action can move a point inside a prescribed window.
pub trait Separating: GroupElement {
    /// The part of `cell` around `q` that excludes `others`, optionally cut
    /// down to the given diameter.
    fn window(cell: &Self::Region, q: &Point<Self>, others: &[Point<Self>], diameter: Option<&Rational>) -> Self::Region;

    /// An element supported in `window` sending `q` outside `forbid ∪ {q}`.
    fn mover(window: &Self::Region, q: &Point<Self>, forbid: &[Point<Self>], even: bool) -> Result<Self>;

    /// `max |g(x) − x|` when the space is metric.
    fn displacement(&self) -> Option<Rational>;

    /// A neighbourhood of `center` inside `within` of radius `2^-halvings`.
    fn ball(within: &Self::Region, center: &Point<Self>, halvings: u32) -> Self::Region;
}

impl Separating for PLMap {
    fn window(cell: &IntervalRegion, q: &Rational, others: &[Rational], diameter: Option<&Rational>) -> IntervalRegion {
        let Some((mut lo, mut hi)) = cell.component_of(q) else {
            return IntervalRegion::empty();
        };
        for o in others {
            if o < q && o > &lo {
                lo = o.clone();
            }
            if o > q && o < &hi {
                hi = o.clone();
            }
        }
        if let Some(d) = diameter {
            let half = d.mul_pow2(-1);
            lo = lo.max(q - &half);
            hi = hi.min(q + &half);
        }
        IntervalRegion::interval(lo, hi)
    }

    fn mover(window: &IntervalRegion, q: &Rational, forbid: &[Rational], _even: bool) -> Result<PLMap> {
        let (a, b) = window
            .component_of(q)
            .ok_or_else(|| Error::Infeasible(format!("{q} is not in the window {window}")))?;
        PLMap::make_mover((&a, &b), q, forbid)
    }

    fn displacement(&self) -> Option<Rational> {
        Some(PLMap::displacement(self))
    }

    fn ball(within: &IntervalRegion, center: &Rational, halvings: u32) -> IntervalRegion {
        let r = Rational::one().mul_pow2(-(halvings as i64));
        let around = IntervalRegion::interval(center - &r, center + &r);
        match within.intersect(&around).component_of(center) {
            Some((a, b)) => IntervalRegion::interval(a, b),
            None => IntervalRegion::empty(),
        }
    }
}

impl Separating for FinPerm {
    fn window(cell: &DiscreteRegion, _q: &u64, others: &[u64], _diameter: Option<&Rational>) -> DiscreteRegion {
        cell.difference(&DiscreteRegion::finite(others.iter().copied()))
    }

    fn mover(window: &DiscreteRegion, q: &u64, forbid: &[u64], even: bool) -> Result<FinPerm> {
        FinPerm::make_mover(window, *q, forbid, even)
    }

    fn displacement(&self) -> Option<Rational> {
        None
    }

    fn ball(within: &DiscreteRegion, _center: &u64, _halvings: u32) -> DiscreteRegion {
        within.clone()
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Bound on `|g_i(x) − x|` (interval space only).
    pub epsilon: Option<Rational>,
    /// Use even movers, so tuples lie in the alternating group (discrete only).
    pub even: bool,
    /// Halvings allowed when separating the balls of a system.
    pub max_halvings: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            epsilon: None,
            even: false,
            max_halvings: 64,
        }
    }
}

impl SolveOptions {
    pub fn with_epsilon(epsilon: Rational) -> Self {
        SolveOptions {
            epsilon: Some(epsilon),
            ..Self::default()
        }
    }
}

/// `O ⊆ base` around `q` that every member of `family` contains or misses.
pub fn claim_m_neighborhood<R: RegionAlgebra>(q: &R::Point, base: &R, family: &[R]) -> Result<R> {
    base.neighborhood(q, family)
}

/// One inequality inside a certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry<G: GroupElement> {
    /// The inequality `word ≠ 1` as given.
    pub word: Word<G>,
    /// How the tuple was found.
    pub route: String,
    /// The normal-form word whose trajectory is recorded.
    pub solved: Word<G>,
    /// `u'` from normalizing `solved`'s source word.
    pub conjugator: Word<G>,
    /// Region the trajectory started in, when it came from a Transition cell.
    pub cell: Option<G::Region>,
    pub base_point: Option<Point<G>>,
    /// `p, v_1(p), …` after every letter of `solved`.
    pub trajectory: Vec<Point<G>>,
}

/// Outcome of one verifier check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A tuple solving one or more inequalities, with everything needed to
/// re-check it.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<G: GroupElement> {
    pub entries: Vec<Entry<G>>,
    pub tuple: Vec<G>,
    pub support_bound: G::Region,
    pub invariant_family: Vec<G::Region>,
    pub epsilon: Option<Rational>,
    pub checks: Vec<Check>,
}

impl<G: GroupElement> Certificate<G> {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

/// Letters of `form` in application order and their trajectory from `p`.
pub fn trajectory<G: GroupElement>(form: &Form11<G>, tuple: &[G], p: &Point<G>) -> Vec<Point<G>> {
    let mut out = vec![p.clone()];
    for letter in form.to_form12().letters {
        let q = out.last().unwrap();
        let next = match letter {
            Letter::Const { element, .. } => element.apply(q),
            Letter::Var { index, inverse: false } => tuple[index - 1].apply(q),
            Letter::Var { index, inverse: true } => tuple[index - 1].inverse().apply(q),
        };
        out.push(next);
    }
    out
}

/// Result of the trajectory construction.
struct Run<G: GroupElement> {
    tuple: Vec<G>,
    base_point: Point<G>,
    trajectory: Vec<Point<G>>,
    support_bound: G::Region,
    family: Vec<G::Region>,
}

/// Builds a distinctive tuple for the normal-form word `form` with base
/// point in `o_prime`, keeping every member of `𝒱(O′) ∪ extra` invariant.
fn distinctive<G: Separating>(
    form: &Form11<G>,
    arity: usize,
    o_prime: &G::Region,
    extra: &[G::Region],
    opts: &SolveOptions,
) -> Result<Run<G>> {
    let letters = form.to_form12().letters;
    let n = form.n();
    let length = letters.len() - n;
    let mut family: BTreeSet<G::Region> = v_family(&form.constants, o_prime, FamilyVariant::Signed)
        .members
        .into_iter()
        .collect();
    family.extend(extra.iter().cloned());
    let family: Vec<G::Region> = family.into_iter().collect();
    // base_d = v_d ⋯ v_1(O′)
    let mut bases = vec![o_prime.clone()];
    for v in &form.constants {
        let next = v.apply_region(bases.last().unwrap());
        bases.push(next);
    }
    let support_bound = if n == 0 {
        o_prime.clone()
    } else {
        bases[1..].iter().fold(G::Region::empty(), |acc, b| acc.union(b))
    };
    let boundary: Vec<Point<G>> = family
        .iter()
        .flat_map(|m| m.boundary_points())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let avoid = v_family_points(&form.constants, &boundary, FamilyVariant::Inverse);
    let p = o_prime
        .pick_point(&avoid)
        .ok_or_else(|| Error::Infeasible(format!("no admissible base point in {o_prime}")))?;
    let diameter = opts
        .epsilon
        .as_ref()
        .map(|e| e / &Rational::from((length + n).max(1) as i64));

    let mut tuple: Vec<G> = vec![G::identity(); arity];
    let mut traj = vec![p.clone()];
    let mut d = 0usize;
    let window_at = |traj: &[Point<G>], d: usize| -> Result<G::Region> {
        let q = traj.last().unwrap();
        let cell = claim_m_neighborhood(q, &bases[d], &family)?;
        let others: Vec<Point<G>> = traj[..traj.len() - 1].to_vec();
        Ok(G::window(&cell, q, &others, diameter.as_ref()))
    };
    for (k, letter) in letters.iter().enumerate() {
        let q = traj.last().unwrap().clone();
        match letter {
            Letter::Const { element: v, .. } => {
                let mut next = v.apply(&q);
                if traj.contains(&next) {
                    let Some(Letter::Var { index, inverse }) = k.checked_sub(1).map(|i| &letters[i]) else {
                        return Err(Error::Infeasible(format!("constant v_{} fixes the base point", d + 1)));
                    };
                    let window = window_at(&traj, d)?;
                    let mut forbid = traj.clone();
                    let vinv = v.inverse();
                    forbid.extend(traj.iter().map(|t| vinv.apply(t)));
                    let f = G::mover(&window, &q, &forbid, opts.even)?;
                    let g = &mut tuple[index - 1];
                    *g = if *inverse { g.compose(&f.inverse()) } else { f.compose(g) };
                    let moved = f.apply(&q);
                    *traj.last_mut().unwrap() = moved.clone();
                    next = v.apply(&moved);
                }
                if traj.contains(&next) {
                    return Err(Error::Infeasible(format!("trajectory collision at letter {k}")));
                }
                traj.push(next);
                d += 1;
            }
            Letter::Var { index, inverse } => {
                let h = |g: &G| if *inverse { g.inverse() } else { g.clone() };
                let mut next = h(&tuple[index - 1]).apply(&q);
                if traj.contains(&next) {
                    let window = window_at(&traj, d)?;
                    let hinv = h(&tuple[index - 1]).inverse();
                    let forbid: Vec<Point<G>> = traj.iter().map(|t| hinv.apply(t)).collect();
                    let f = G::mover(&window, &q, &forbid, opts.even)?;
                    let g = &mut tuple[index - 1];
                    *g = if *inverse { f.inverse().compose(g) } else { g.compose(&f) };
                    next = h(&tuple[index - 1]).apply(&q);
                }
                if traj.contains(&next) {
                    return Err(Error::Infeasible(format!("trajectory collision at letter {k}")));
                }
                traj.push(next);
            }
        }
    }
    Ok(Run {
        tuple,
        base_point: p,
        trajectory: traj,
        support_bound,
        family,
    })
}

fn finish<G: Separating>(mut cert: Certificate<G>) -> Result<Certificate<G>> {
    cert.checks = verify(&cert);
    if cert.passed() {
        Ok(cert)
    } else {
        let failed: Vec<String> = cert
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        Err(Error::Infeasible(format!("verification failed: {}", failed.join("; "))))
    }
}

fn unit_certificate<G: Separating>(w: &Word<G>) -> Result<Certificate<G>> {
    let entry = Entry {
        word: w.clone(),
        route: "unit-tuple".into(),
        solved: w.clone(),
        conjugator: Word::identity(w.arity()),
        cell: None,
        base_point: None,
        trajectory: vec![],
    };
    finish(Certificate {
        entries: vec![entry],
        tuple: vec![G::identity(); w.arity()],
        support_bound: G::Region::empty(),
        invariant_family: vec![],
        epsilon: None,
        checks: vec![],
    })
}

/// Solves an explicitly oscillating word with base point in `O′ ⊆ O_w`.
pub fn solve_explicit<G: Separating>(w: &Word<G>, o_prime: &G::Region, opts: &SolveOptions) -> Result<Certificate<G>> {
    let form = w.to_form11()?;
    if o_prime.is_empty() {
        return Err(Error::usage("O′ is empty"));
    }
    let o_w = osc_region(&form);
    if !o_prime.is_subset(&o_w) {
        return Err(Error::Rejected(format!(
            "{o_prime} is not inside O_w = {o_w}; use solve_oscillating for words that are not explicitly oscillating there"
        )));
    }
    let run = distinctive(&form, w.arity(), o_prime, &[], opts)?;
    let solved = form.word();
    finish(Certificate {
        entries: vec![Entry {
            word: w.clone(),
            route: "explicit".into(),
            solved,
            conjugator: form.conjugator.clone(),
            cell: None,
            base_point: Some(run.base_point),
            trajectory: run.trajectory,
        }],
        tuple: run.tuple,
        support_bound: run.support_bound,
        invariant_family: run.family,
        epsilon: opts.epsilon.clone(),
        checks: vec![],
    })
}

/// `⋃` of the signed families of the ancestor words of a witness over `region`.
fn ancestor_family<G: GroupElement>(cls: &Classification<G>, level: usize, index: usize, region: &G::Region) -> Vec<G::Region> {
    let mut out = vec![region.clone()];
    for a in cls.ancestor_words(level, index) {
        if let Some(f) = crate::oscillation::normal_form(&a) {
            out.extend(v_family(&f.constants, region, FamilyVariant::Signed).members);
        }
    }
    out
}

/// Solves through the `index`-th explicitly oscillating cell of the last
/// Transition level; the original word is checked directly.
pub fn solve_via_witness<G: Separating>(
    w: &Word<G>,
    cls: &Classification<G>,
    index: usize,
    opts: &SolveOptions,
) -> Result<Certificate<G>> {
    if !cls.p_os.contains(&index) || cls.levels.len() < 2 {
        return Err(Error::usage(format!("node {index} is not a Transition witness")));
    }
    let level = cls.levels.len() - 1;
    let node = &cls.levels[level][index];
    if node.word.is_constant() {
        return unit_certificate(w);
    }
    let form = node.word.to_form11()?;
    let extra = ancestor_family(cls, level, index, &node.region);
    let run = distinctive(&form, w.arity(), &node.contribution, &extra, opts)?;
    finish(Certificate {
        entries: vec![Entry {
            word: w.clone(),
            route: format!("witness level {level}"),
            solved: form.word(),
            conjugator: node.conjugator.clone(),
            cell: Some(node.region.clone()),
            base_point: Some(run.base_point),
            trajectory: run.trajectory,
        }],
        tuple: run.tuple,
        support_bound: run.support_bound,
        invariant_family: run.family,
        epsilon: opts.epsilon.clone(),
        checks: vec![],
    })
}

fn reject<G: GroupElement>(cls: &Classification<G>) -> Error {
    let mut msg = format!("{} is {}", cls.word, cls.verdict);
    for note in &cls.notes {
        msg.push_str("; ");
        msg.push_str(note);
    }
    Error::Rejected(msg)
}

/// Solves any word that Transition classifies as solvable.
pub fn solve_oscillating<G: Separating>(w: &Word<G>, opts: &SolveOptions) -> Result<Certificate<G>> {
    let cls = classify(w)?;
    solve_classified(w, &cls, opts)
}

pub fn solve_classified<G: Separating>(w: &Word<G>, cls: &Classification<G>, opts: &SolveOptions) -> Result<Certificate<G>> {
    match cls.verdict {
        Verdict::Rigid | Verdict::Degenerate => return Err(reject(cls)),
        _ if cls.constant_product_nontrivial => return unit_certificate(w),
        Verdict::ExplicitlyOscillating => return solve_explicit(w, &cls.osc_region, opts),
        _ => {}
    }
    let mut last = None;
    for &i in &cls.p_os {
        match solve_via_witness(w, cls, i, opts) {
            Ok(c) => return Ok(c),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| reject(cls)))
}

/// What one inequality of a system is reduced to.
struct Target<G: GroupElement> {
    word: Word<G>,
    form: Form11<G>,
    region: G::Region,
    ancestors: Vec<Form11<G>>,
    route: String,
    cell: Option<G::Region>,
    conjugator: Word<G>,
}

fn system_target<G: Separating>(w: &Word<G>, o: Option<&G::Region>) -> Result<Target<G>> {
    let cls = classify(w)?;
    match cls.verdict {
        Verdict::ExplicitlyOscillating => {
            let form = w.to_form11()?;
            let region = match o {
                Some(o) => o.intersect(&cls.osc_region),
                None => cls.osc_region.clone(),
            };
            Ok(Target {
                word: w.clone(),
                conjugator: form.conjugator.clone(),
                form,
                region,
                ancestors: vec![],
                route: "explicit".into(),
                cell: None,
            })
        }
        Verdict::Oscillating => {
            let level = cls.levels.len() - 1;
            for &i in &cls.p_os {
                let node = &cls.levels[level][i];
                if node.word.is_constant() {
                    continue;
                }
                let region = match o {
                    Some(o) => o.intersect(&node.contribution),
                    None => node.contribution.clone(),
                };
                if region.is_empty() {
                    continue;
                }
                let ancestors = cls
                    .ancestor_words(level, i)
                    .iter()
                    .filter_map(crate::oscillation::normal_form)
                    .collect();
                return Ok(Target {
                    word: w.clone(),
                    form: node.word.to_form11()?,
                    region,
                    ancestors,
                    route: format!("witness level {level}"),
                    cell: Some(node.region.clone()),
                    conjugator: node.conjugator.clone(),
                });
            }
            Err(Error::Rejected(format!("no witness of {w} meets the requested region")))
        }
        _ => Err(reject(&cls)),
    }
}

impl<G: GroupElement> Target<G> {
    fn constant_lists(&self) -> Vec<&[G]> {
        std::iter::once(self.form.constants.as_slice())
            .chain(self.ancestors.iter().map(|a| a.constants.as_slice()))
            .collect()
    }

    fn extra(&self, ball: &G::Region) -> Vec<G::Region> {
        let mut out = vec![ball.clone()];
        for a in &self.ancestors {
            out.extend(v_family(&a.constants, ball, FamilyVariant::Signed).members);
        }
        out
    }

    fn footprint(&self, ball: &G::Region) -> G::Region {
        self.constant_lists()
            .into_iter()
            .flat_map(|c| v_family(c, ball, FamilyVariant::Signed).members)
            .fold(G::Region::empty(), |acc, m| acc.union(&m))
    }

    fn point_images(&self, p: &Point<G>) -> Vec<Point<G>> {
        self.constant_lists()
            .into_iter()
            .flat_map(|c| v_family_points(c, std::slice::from_ref(p), FamilyVariant::Signed))
            .collect()
    }

    fn point_preimages(&self, pts: &[Point<G>]) -> Vec<Point<G>> {
        self.constant_lists()
            .into_iter()
            .flat_map(|c| v_family_points(c, pts, FamilyVariant::Inverse))
            .collect()
    }
}

/// Solves `w_1 ≠ 1, …, w_m ≠ 1` with one tuple, optionally restricting the
/// base point of `w_j` to `regions[j]`.
pub fn solve_system<G: Separating>(
    words: &[Word<G>],
    regions: Option<&[G::Region]>,
    opts: &SolveOptions,
) -> Result<Certificate<G>> {
    if words.is_empty() {
        return Err(Error::usage("empty system"));
    }
    if let Some(r) = regions {
        if r.len() != words.len() {
            return Err(Error::usage(format!("{} regions for {} words", r.len(), words.len())));
        }
    }
    let arity = words.iter().map(|w| w.arity()).max().unwrap_or(0);
    let targets = words
        .iter()
        .enumerate()
        .map(|(j, w)| system_target(w, regions.map(|r| &r[j])))
        .collect::<Result<Vec<_>>>()?;
    // centres whose family images are pairwise disjoint across words
    let mut centres: Vec<Point<G>> = Vec::new();
    let mut taken: Vec<Point<G>> = Vec::new();
    for t in &targets {
        let avoid = t.point_preimages(&taken);
        let c = t
            .region
            .pick_point(&avoid)
            .ok_or_else(|| Error::Infeasible(format!("no centre available in {}", t.region)))?;
        taken.extend(t.point_images(&c));
        centres.push(c);
    }
    let mut balls = None;
    for k in 0..=opts.max_halvings {
        let bs: Vec<G::Region> = targets
            .iter()
            .zip(&centres)
            .map(|(t, c)| G::ball(&t.region, c, k))
            .collect();
        let prints: Vec<G::Region> = targets.iter().zip(&bs).map(|(t, b)| t.footprint(b)).collect();
        let disjoint = (0..prints.len())
            .all(|i| (i + 1..prints.len()).all(|j| prints[i].intersect(&prints[j]).is_empty()));
        if disjoint {
            balls = Some(bs);
            break;
        }
    }
    let balls = balls.ok_or_else(|| {
        Error::Resource(format!("families stayed overlapping after {} halvings", opts.max_halvings))
    })?;

    let mut tuple = vec![G::identity(); arity];
    let mut entries = Vec::new();
    let mut bound = G::Region::empty();
    let mut family: BTreeSet<G::Region> = BTreeSet::new();
    for (j, (t, ball)) in targets.iter().zip(&balls).enumerate() {
        let run = distinctive(&t.form, arity, ball, &t.extra(ball), opts)?;
        for (g, f) in tuple.iter_mut().zip(&run.tuple) {
            *g = f.compose(g);
        }
        for (l, earlier) in words[..=j].iter().enumerate() {
            if earlier.substitute(&tuple)?.is_identity() {
                return Err(Error::Infeasible(format!("step {} undid inequality {}", j + 1, l + 1)));
            }
        }
        bound = bound.union(&run.support_bound);
        family.extend(run.family);
        entries.push(Entry {
            word: t.word.clone(),
            route: t.route.clone(),
            solved: t.form.word(),
            conjugator: t.conjugator.clone(),
            cell: t.cell.clone(),
            base_point: Some(run.base_point),
            trajectory: vec![],
        });
    }
    for e in &mut entries {
        let form = e.solved.to_form11()?;
        e.trajectory = trajectory(&form, &tuple, e.base_point.as_ref().unwrap());
    }
    finish(Certificate {
        entries,
        tuple,
        support_bound: bound,
        invariant_family: family.into_iter().collect(),
        epsilon: opts.epsilon.clone(),
        checks: vec![],
    })
}

/// `𝒳_0̄`: points whose trajectory avoids every constant's support.
fn zero_cell<G: GroupElement>(form: &Form11<G>) -> G::Region {
    let ambient = G::Region::ambient();
    let mut prefix = G::identity();
    let mut cell = ambient.clone();
    for v in &form.constants {
        let outside = v.support().interior_complement(&ambient);
        cell = cell.intersect(&prefix.inverse().apply_region(&outside));
        prefix = v.compose(&prefix);
    }
    cell
}

/// Solves a non-constant word over finitary permutations of ℕ.
pub fn solve_discrete(w: &Word<FinPerm>, opts: &SolveOptions) -> Result<Certificate<FinPerm>> {
    if w.is_identity() || w.is_constant() {
        return Err(Error::usage(format!("{w} has no variables")));
    }
    if !w.product_of_constants().is_identity() {
        return unit_certificate(w);
    }
    let form = w.to_form11()?;
    let mut diagnostics = Vec::new();
    let o_w = osc_region(&form);
    let cells = gab_cells(&form);
    if cells.separation_holds && !o_w.is_empty() {
        match solve_explicit(w, &o_w, opts) {
            Ok(c) => return Ok(c),
            Err(e) => diagnostics.push(format!("separated cells: {e}")),
        }
    } else {
        diagnostics.push("a nonempty cell of the O_w partition is finite".into());
    }
    let free = form.free_part();
    if !free.is_identity() {
        let cell = zero_cell(&form);
        if !cell.is_empty() {
            let free_form = free.to_form11()?;
            let extra: Vec<DiscreteRegion> = v_family(&form.constants, &cell, FamilyVariant::Signed).members;
            match distinctive(&free_form, w.arity(), &cell, &extra, opts) {
                Ok(run) => {
                    let cert = finish(Certificate {
                        entries: vec![Entry {
                            word: w.clone(),
                            route: "zero cell".into(),
                            solved: free_form.word(),
                            conjugator: form.conjugator.clone(),
                            cell: Some(cell),
                            base_point: Some(run.base_point),
                            trajectory: run.trajectory,
                        }],
                        tuple: run.tuple,
                        support_bound: run.support_bound,
                        invariant_family: run.family,
                        epsilon: None,
                        checks: vec![],
                    });
                    match cert {
                        Ok(c) => return Ok(c),
                        Err(e) => diagnostics.push(format!("zero cell: {e}")),
                    }
                }
                Err(e) => diagnostics.push(format!("zero cell: {e}")),
            }
        }
    } else {
        diagnostics.push("the variable part u_n ⋯ u_1 is trivial".into());
    }
    let cls = classify(w)?;
    match solve_classified(w, &cls, opts) {
        Ok(c) => return Ok(c),
        Err(e) => diagnostics.push(format!("transition: {e}")),
    }
    match bounded_search(w, opts) {
        Ok(c) => Ok(c),
        Err(e) => {
            diagnostics.push(format!("bounded search: {e}"));
            Err(Error::Infeasible(diagnostics.join("; ")))
        }
    }
}

/// Tuples examined by [`bounded_search`] before giving up.
pub const SEARCH_BUDGET: usize = 200_000;

fn permutations_of(points: &[u64], even: bool) -> Vec<FinPerm> {
    fn go(rest: &mut Vec<u64>, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut images = Vec::new();
    go(&mut points.to_vec(), &mut Vec::new(), &mut images);
    images
        .into_iter()
        .map(|img| {
            let mut g = FinPerm::identity();
            let mut seen = BTreeSet::new();
            for (k, &start) in points.iter().enumerate() {
                if seen.contains(&start) || img[k] == start {
                    continue;
                }
                let mut cycle = vec![];
                let mut x = start;
                while seen.insert(x) {
                    cycle.push(x);
                    x = img[points.iter().position(|&q| q == x).unwrap()];
                }
                g = g.compose(&FinPerm::from_cycles(&[cycle]).expect("distinct points"));
            }
            g
        })
        .filter(|g| !even || g.is_even())
        .collect()
}

/// Exhaustive search over tuples of permutations of the constants' support
/// plus a few fresh points, smallest domains first.
fn bounded_search(w: &Word<FinPerm>, opts: &SolveOptions) -> Result<Certificate<FinPerm>> {
    let t = w.arity();
    let mut base: BTreeSet<u64> = BTreeSet::new();
    for s in w.syllables() {
        if let crate::words::Syllable::Const(g) = s {
            base.extend(g.moved_points());
        }
    }
    let mut domain: Vec<u64> = base.iter().copied().collect();
    let mut fresh = (0u64..).filter(|q| !base.contains(q));
    let mut examined = 0usize;
    loop {
        let perms = permutations_of(&domain, opts.even);
        let count = perms.len().checked_pow(t as u32).unwrap_or(usize::MAX);
        if examined.saturating_add(count) > SEARCH_BUDGET {
            return Err(Error::Resource(format!(
                "no solution within {SEARCH_BUDGET} tuples (stopped before {} points)",
                domain.len()
            )));
        }
        examined += count;
        let mut index = vec![0usize; t];
        'tuples: loop {
            let tuple: Vec<FinPerm> = index.iter().map(|&i| perms[i].clone()).collect();
            if !w.substitute(&tuple)?.is_identity() {
                return finish(Certificate {
                    entries: vec![Entry {
                        word: w.clone(),
                        route: "bounded search".into(),
                        solved: w.clone(),
                        conjugator: Word::identity(t),
                        cell: None,
                        base_point: None,
                        trajectory: vec![],
                    }],
                    tuple,
                    support_bound: DiscreteRegion::finite(domain.iter().copied()),
                    invariant_family: vec![],
                    epsilon: None,
                    checks: vec![],
                });
            }
            for k in (0..t).rev() {
                index[k] += 1;
                if index[k] < perms.len() {
                    continue 'tuples;
                }
                index[k] = 0;
            }
            break;
        }
        domain.push(fresh.next().expect("infinitely many naturals"));
        domain.sort_unstable();
    }
}

/// Re-checks every claim of a certificate by direct computation.
pub fn verify<G: Separating>(c: &Certificate<G>) -> Vec<Check> {
    let mut checks = Vec::new();

    let mut ok = true;
    let mut detail = Vec::new();
    for (i, e) in c.entries.iter().enumerate() {
        match e.word.substitute(&c.tuple) {
            Ok(g) if !g.is_identity() => {}
            Ok(_) => {
                ok = false;
                detail.push(format!("word {} evaluates to the identity", i + 1));
            }
            Err(err) => {
                ok = false;
                detail.push(format!("word {}: {err}", i + 1));
            }
        }
    }
    checks.push(Check {
        name: "nontrivial".into(),
        passed: ok,
        detail: if ok { "every word evaluates to a nontrivial element".into() } else { detail.join("; ") },
    });

    let mut ok = true;
    let mut detail = Vec::new();
    for (i, e) in c.entries.iter().enumerate() {
        let Some(p) = &e.base_point else { continue };
        let form = match e.solved.to_form11() {
            Ok(f) => f,
            Err(err) => {
                ok = false;
                detail.push(format!("word {}: {err}", i + 1));
                continue;
            }
        };
        let actual = trajectory(&form, &c.tuple, p);
        if actual != e.trajectory {
            ok = false;
            detail.push(format!("word {}: recorded trajectory differs from recomputed", i + 1));
        }
        let mut seen = BTreeSet::new();
        for q in &actual {
            if !seen.insert(q.clone()) {
                ok = false;
                detail.push(format!("word {}: point {q} repeats", i + 1));
                break;
            }
        }
    }
    checks.push(Check {
        name: "distinct-trajectory".into(),
        passed: ok,
        detail: if ok { "trajectories are pairwise distinct".into() } else { detail.join("; ") },
    });

    let mut ok = true;
    let mut detail = Vec::new();
    for (i, g) in c.tuple.iter().enumerate() {
        let outside = g.support().difference(&c.support_bound);
        if !outside.is_empty() {
            ok = false;
            let witness = outside.pick_point(&[]).map(|p| p.to_string()).unwrap_or_default();
            detail.push(format!("g{} moves {witness} outside {}", i + 1, c.support_bound));
        }
    }
    checks.push(Check {
        name: "support".into(),
        passed: ok,
        detail: if ok { format!("supports lie in {}", c.support_bound) } else { detail.join("; ") },
    });

    let mut ok = true;
    let mut detail = Vec::new();
    for (i, g) in c.tuple.iter().enumerate() {
        for v in &c.invariant_family {
            let image = g.apply_region(v);
            if &image != v {
                ok = false;
                let moved = image.difference(v).pick_point(&[]).map(|p| p.to_string()).unwrap_or_default();
                detail.push(format!("g{} moves {v} to {image} (e.g. {moved})", i + 1));
            }
        }
    }
    checks.push(Check {
        name: "invariance".into(),
        passed: ok,
        detail: if ok {
            format!("{} regions are invariant", c.invariant_family.len())
        } else {
            detail.join("; ")
        },
    });

    let (ok, detail) = match &c.epsilon {
        None => (true, "no bound declared".to_string()),
        Some(eps) => {
            let mut ok = true;
            let mut detail = Vec::new();
            for (i, g) in c.tuple.iter().enumerate() {
                match g.displacement() {
                    Some(d) if &d <= eps => {}
                    Some(d) => {
                        ok = false;
                        detail.push(format!("g{} displaces by {d} > {eps}", i + 1));
                    }
                    None => {
                        ok = false;
                        detail.push("the space has no metric".into());
                    }
                }
            }
            (ok, if ok { format!("displacements are at most {eps}") } else { detail.join("; ") })
        }
    };
    checks.push(Check {
        name: "displacement".into(),
        passed: ok,
        detail,
    });
    checks
}
