//! Exhaustive instance sweeps: every sequence over every abelian group of
//! bounded order, one representative per orbit of `Aut(G) × S_m`.
//!
//! Applying an automorphism to every entry, or permuting entries, changes
//! `B(g)` only by renaming coordinates, so all invariants checked here are
//! constant on orbits.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::block::{BlockMonoid, Sequence};
use crate::bounds::check_bounds;
use crate::congruence::{catenary_up_to, contains_in, Congruence, CongruencePair};
use crate::error::Result;
use crate::groebner::{
    buchberger, check_groebner_system, default_class_degree, is_quadratic, tilde_groebner, GroebnerCheck,
    TermOrder,
};
use crate::group::{abelian_groups_of_order, automorphisms, elements, GroupSpec};
use crate::monoid::Grading;
use crate::tilde::{
    btilde_isomorphism, catenary_compare_capped, tilde_monoid, tilde_presentation, Lift, RepeatIsomorphism,
};
use crate::word::Word;

#[derive(Clone, Debug)]
pub struct Instance {
    pub group: GroupSpec,
    /// Indices into the element list of the group, non-decreasing.
    pub indices: Vec<usize>,
    pub sequence: Sequence,
}

impl Instance {
    pub fn key(&self) -> String {
        format!("{} {}", self.group, self.sequence)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.group.order().expect("finite group")
    }
}

/// Orbit representatives of sequences of length `1..=max_len` over every
/// abelian group of order `2..=max_order`, ordered by group order, group,
/// length and indices.
pub fn instances(max_order: u64, max_len: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        for spec in abelian_groups_of_order(n) {
            out.extend(group_instances(&spec, max_len)?);
        }
    }
    Ok(out)
}

pub fn group_instances(spec: &GroupSpec, max_len: usize) -> Result<Vec<Instance>> {
    let group = spec.clone().into_group();
    let els = elements(&group)?;
    let auts = automorphisms(&group)?;
    let mut out = Vec::new();
    for m in 1..=max_len {
        let mut reps: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut cur = Vec::with_capacity(m);
        multisets(els.len(), m, 0, &mut cur, &mut |idx| {
            reps.insert(canonical(idx, &auts));
        });
        for indices in reps {
            let sequence = Sequence::new(&group, indices.iter().map(|&i| els[i].clone()).collect())?;
            out.push(Instance {
                group: spec.clone(),
                indices,
                sequence,
            });
        }
    }
    Ok(out)
}

fn multisets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        multisets(n, k, i, cur, f);
        cur.pop();
    }
}

/// The least sorted image of `indices` under the automorphisms.
pub fn canonical(indices: &[usize], auts: &[Vec<usize>]) -> Vec<usize> {
    auts.iter()
        .map(|p| {
            let mut v: Vec<usize> = indices.iter().map(|&i| p[i]).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_else(|| indices.to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckKind {
    /// `c(B(g))` against `c(B(supp g))` for sequences with a repetition.
    Repetition,
    /// `c_gr` equals the largest degree in a minimal presentation.
    GradedPresentation,
    /// The lifted presentation generates the congruence of `B(g~)`.
    Transfer,
    /// The tilde system passes the Gröbner check.
    TildeGroebner,
    /// Quadratic base systems give quadratic tilde systems.
    TildeQuadratic,
    /// Every bound of [`check_bounds`].
    Bounds,
    /// Betti-based `c` equals a direct chain search.
    ChainSearch,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Repetition => "repetition",
            CheckKind::GradedPresentation => "graded-presentation",
            CheckKind::Transfer => "transfer",
            CheckKind::TildeGroebner => "tilde-groebner",
            CheckKind::TildeQuadratic => "tilde-quadratic",
            CheckKind::Bounds => "bounds",
            CheckKind::ChainSearch => "chain-search",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub kind: CheckKind,
    pub pass: bool,
    pub detail: String,
}

/// Instances with `|G| <= max_order` and `m <= max_len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Range {
    pub max_order: u64,
    pub max_len: usize,
}

impl Range {
    pub const fn new(max_order: u64, max_len: usize) -> Self {
        Range { max_order, max_len }
    }

    pub fn contains(&self, inst: &Instance) -> bool {
        inst.order() <= self.max_order && inst.len() <= self.max_len
    }
}

/// The range of each family of checks; `None` skips the family.
#[derive(Clone, Debug, Serialize)]
pub struct SweepOptions {
    /// Repetition, graded presentation.
    pub core: Option<Range>,
    /// Transfer, tilde Gröbner, tilde quadratic.
    pub tilde: Option<Range>,
    pub bounds: Option<Range>,
    pub chain_search: Option<Range>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            core: Some(Range::new(8, 5)),
            tilde: Some(Range::new(6, 4)),
            bounds: Some(Range::new(12, 6)),
            chain_search: Some(Range::new(8, 5)),
        }
    }
}

impl SweepOptions {
    /// Every family over the same range.
    pub fn uniform(range: Range) -> Self {
        SweepOptions {
            core: Some(range),
            tilde: Some(range),
            bounds: Some(range),
            chain_search: Some(range),
        }
    }

    fn ranges(&self) -> impl Iterator<Item = Range> + '_ {
        [self.core, self.tilde, self.bounds, self.chain_search].into_iter().flatten()
    }

    /// The smallest range containing every family.
    pub fn hull(&self) -> Range {
        self.ranges().fold(Range::new(0, 0), |a, r| {
            Range::new(a.max_order.max(r.max_order), a.max_len.max(r.max_len))
        })
    }
}

fn outcome(kind: CheckKind, pass: bool, detail: String) -> CheckOutcome {
    CheckOutcome { kind, pass, detail }
}

fn within(range: Option<Range>, inst: &Instance) -> bool {
    range.is_some_and(|r| r.contains(inst))
}

/// Runs the applicable checks on one instance.
pub fn check_instance(inst: &Instance, opts: &SweepOptions) -> Result<Vec<CheckOutcome>> {
    let seq = &inst.sequence;
    let mut out = Vec::new();

    if within(opts.core, inst) || within(opts.chain_search, inst) {
        let bm = BlockMonoid::new(seq.clone());
        let cong = Congruence::of_block(&bm);
        if within(opts.core, inst) {
            if seq.has_repetition() && !BlockMonoid::new(seq.support()).is_free() {
                let cmp = catenary_compare_capped(seq, usize::MAX)?;
                out.push(outcome(
                    CheckKind::Repetition,
                    cmp.consistent,
                    format!("c(B(supp g)) = {}, c(B(g)) = {}", cmp.catenary_support, cmp.catenary),
                ));
            }
            let len = Grading::length(bm.monoid());
            let graded = cong.graded_catenary_degree(&len)?;
            let top = cong.minimal_presentation(&len).max_degree();
            out.push(outcome(
                CheckKind::GradedPresentation,
                graded == top,
                format!("c_gr = {graded}, presentation degree = {top}"),
            ));
        }
        if within(opts.chain_search, inst) {
            let c = cong.catenary_degree();
            let bound = 2 * bm.max_atom_length() + 2;
            let direct = catenary_up_to(bm.monoid(), bound);
            out.push(outcome(
                CheckKind::ChainSearch,
                c == direct,
                format!("betti {c}, chains up to {bound}: {direct}"),
            ));
        }
    }

    if within(opts.bounds, inst) {
        let report = check_bounds(seq)?;
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        out.push(outcome(CheckKind::Bounds, failed.is_empty(), failed.join(",")));
    }

    if within(opts.tilde, inst) {
        for r in repeat_indices(seq) {
            out.extend(check_repeat(seq, r)?);
        }
    }
    Ok(out)
}

/// First index of each distinct entry. Repeating either of two equal entries
/// gives the same sequence up to a coordinate swap.
pub fn repeat_indices(seq: &Sequence) -> Vec<usize> {
    let els = seq.elements();
    (0..els.len()).filter(|&r| !els[..r].contains(&els[r])).collect()
}

/// Lifted presentation of `B(g)` against a direct one of `B(g~)`.
#[derive(Clone, Debug, Serialize)]
pub struct TransferCheck {
    pub lifted_pairs: usize,
    pub direct_pairs: usize,
    pub lifted_in_direct: bool,
    pub direct_in_lifted: bool,
}

impl TransferCheck {
    pub fn passed(&self) -> bool {
        self.lifted_in_direct && self.direct_in_lifted
    }
}

/// Transfers a minimal presentation of `B(g)` (graded by the multiplicity of
/// `g_r`) to `B(g~)` and compares congruences both ways.
pub fn transfer_check(iso: &RepeatIsomorphism) -> Result<TransferCheck> {
    let repeated = iso.repeated.monoid();
    let direct = Congruence::of_block(&iso.repeated).minimal_presentation(&Grading::length(repeated));
    let base_pres = Congruence::of_block(&iso.base).minimal_presentation(&iso.grading());
    let lifted = tilde_presentation(&base_pres, Lift::Greedy)?;
    let moved: Vec<CongruencePair> = lifted
        .pairs
        .iter()
        .map(|p| CongruencePair::new(iso.word_to_repeated(&p.left), iso.word_to_repeated(&p.right)))
        .collect();
    let mut lifted_in_direct = true;
    for p in &moved {
        if !contains_in(repeated, &direct.pairs, p)? {
            lifted_in_direct = false;
            break;
        }
    }
    let mut direct_in_lifted = true;
    for p in &direct.pairs {
        if !contains_in(repeated, &moved, p)? {
            direct_in_lifted = false;
            break;
        }
    }
    Ok(TransferCheck {
        lifted_pairs: moved.len(),
        direct_pairs: direct.pairs.len(),
        lifted_in_direct,
        direct_in_lifted,
    })
}

/// A base Gröbner system, its tilde system and the check of the latter.
#[derive(Clone, Debug, Serialize)]
pub struct TildeGroebnerCheck {
    pub order: String,
    pub base_pairs: usize,
    pub base_quadratic: bool,
    pub tilde_pairs: usize,
    pub tilde_quadratic: bool,
    pub check: GroebnerCheck,
}

/// Runs [`tilde_groebner`] on the reduced basis of `B(g)` for `order`
/// and checks the result against the congruence of `B(g~)`.
pub fn tilde_groebner_check(iso: &RepeatIsomorphism, order: &TermOrder) -> Result<TildeGroebnerCheck> {
    let base = iso.base.monoid();
    let direct = Congruence::of_block(&iso.repeated).minimal_presentation(&Grading::length(iso.repeated.monoid()));
    let reference: Vec<(Word, Word)> = direct
        .pairs
        .iter()
        .map(|p| (iso.word_from_repeated(&p.left), iso.word_from_repeated(&p.right)))
        .collect();
    let tm = tilde_monoid(base, &iso.layout);
    let system = buchberger(base, order);
    let tilde = tilde_groebner(&system, base, &iso.layout)?;
    let check = check_groebner_system(&tilde, &tm, &reference, default_class_degree(&tm));
    Ok(TildeGroebnerCheck {
        order: order.name(),
        base_pairs: system.len(),
        base_quadratic: is_quadratic(&system),
        tilde_pairs: tilde.len(),
        tilde_quadratic: is_quadratic(&tilde),
        check,
    })
}

/// Transfer and tilde Gröbner checks for repeating component `r`.
pub fn check_repeat(seq: &Sequence, r: usize) -> Result<Vec<CheckOutcome>> {
    let iso = btilde_isomorphism(seq, r)?;
    let tag = format!("repeat {}", r + 1);
    let mut out = Vec::new();
    let t = transfer_check(&iso)?;
    out.push(outcome(
        CheckKind::Transfer,
        t.passed(),
        format!("{tag}: {} lifted pairs, {} direct", t.lifted_pairs, t.direct_pairs),
    ));
    let n = iso.base.monoid().num_atoms();
    for order in [TermOrder::lex(n), TermOrder::grlex(n)] {
        let g = tilde_groebner_check(&iso, &order)?;
        out.push(outcome(
            CheckKind::TildeGroebner,
            g.check.passed(),
            format!("{tag}, {}: {} pairs, {:?}", g.order, g.tilde_pairs, g.check),
        ));
        if g.base_quadratic {
            out.push(outcome(CheckKind::TildeQuadratic, g.tilde_quadratic, format!("{tag}, {}", g.order)));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct KindTally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub instance: String,
    pub kind: CheckKind,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub tallies: Vec<(CheckKind, KindTally)>,
    pub failures: Vec<Failure>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every instance in range; failures are sorted by instance key.
pub fn run_sweep(opts: &SweepOptions) -> Result<SweepSummary> {
    let hull = opts.hull();
    let list = instances(hull.max_order, hull.max_len)?;
    let mut tallies: std::collections::BTreeMap<CheckKind, KindTally> = Default::default();
    let mut failures = Vec::new();
    for inst in &list {
        for o in check_instance(inst, opts)? {
            let t = tallies.entry(o.kind).or_default();
            if o.pass {
                t.passed += 1;
            } else {
                t.failed += 1;
                failures.push(Failure {
                    instance: inst.key(),
                    kind: o.kind,
                    detail: o.detail,
                });
            }
        }
    }
    failures.sort_by(|a, b| a.instance.cmp(&b.instance).then(a.kind.cmp(&b.kind)));
    Ok(SweepSummary {
        instances: list.len(),
        tallies: tallies.into_iter().collect(),
        failures,
    })
}
