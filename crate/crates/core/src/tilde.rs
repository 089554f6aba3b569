//! The repetition construction `S ↦ S~ = {s[i] : 0 ≤ i ≤ |s|}` with
//! `s[i]·t[j] = (st)[i+j]`, for a graded affine monoid `S`.
//!
//! Atoms of `S~` are the `a[i]` with `a` an atom of `S` and `0 ≤ i ≤ |a|`;
//! they are numbered atom by atom, brackets ascending, and embedded as
//! `(a, i)` one dimension up. Repeating component `r` of a sequence `g`
//! realizes `B(g~) ≅ S~` for `S = B(g)` graded by `α_r`.

use std::collections::HashSet;
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::block::{BlockMonoid, Sequence};
use crate::congruence::{block_catenary_degrees, CongruencePair, Presentation};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::monoid::{AffineMonoid, Element, Grading};
use crate::word::Word;

/// Index bookkeeping for the atoms `a[i]` of a tilde monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeLayout {
    degrees: Vec<u64>,
    offsets: Vec<usize>,
    total: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TildeAtom {
    pub base: usize,
    pub bracket: u64,
}

impl TildeLayout {
    pub fn new(degrees: Vec<u64>) -> Self {
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut total = 0;
        for &d in &degrees {
            offsets.push(total);
            total += d as usize + 1;
        }
        TildeLayout {
            degrees,
            offsets,
            total,
        }
    }

    pub fn from_grading(grading: &Grading) -> Self {
        TildeLayout::new(grading.degrees().to_vec())
    }

    pub fn num_base(&self) -> usize {
        self.degrees.len()
    }

    pub fn num_atoms(&self) -> usize {
        self.total
    }

    pub fn degree(&self, a: usize) -> u64 {
        self.degrees[a]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Variable index of `a[i]`.
    pub fn index(&self, a: usize, i: usize) -> usize {
        assert!(i as u64 <= self.degrees[a], "bracket out of range");
        self.offsets[a] + i
    }

    pub fn brackets(&self, a: usize) -> Range<usize> {
        self.offsets[a]..self.offsets[a] + self.degrees[a] as usize + 1
    }

    pub fn atom_of(&self, t: usize) -> TildeAtom {
        let a = self.offsets.partition_point(|&o| o <= t) - 1;
        TildeAtom {
            base: a,
            bracket: (t - self.offsets[a]) as u64,
        }
    }

    pub fn atoms(&self) -> Vec<TildeAtom> {
        (0..self.total).map(|t| self.atom_of(t)).collect()
    }

    pub(crate) fn kappa_slice(&self, lambda: &[u32]) -> Vec<u32> {
        (0..self.num_base())
            .map(|a| self.brackets(a).map(|t| lambda[t]).sum())
            .collect()
    }

    /// `κ(λ)(a) = Σ_i λ(a[i])`.
    pub fn kappa(&self, lambda: &Word) -> Word {
        Word::new(self.kappa_slice(lambda.as_slice()))
    }

    /// `δ(λ) = Σ i·λ(a[i])`.
    pub fn delta(&self, lambda: &Word) -> u64 {
        (0..self.total)
            .map(|t| self.atom_of(t).bracket * lambda.get(t) as u64)
            .sum()
    }

    /// Graded degree `|a^λ|` of a base word.
    pub fn base_degree(&self, lambda: &Word) -> u64 {
        lambda.weighted_length(&self.degrees)
    }

    /// The lift with `δ = i` that fills brackets of the largest-degree atoms first.
    pub fn greedy_lift(&self, lambda: &Word, i: u64) -> Option<Word> {
        let mut atoms: Vec<usize> = lambda.support().collect();
        atoms.sort_by_key(|&a| (std::cmp::Reverse(self.degrees[a]), a));
        let mut rest = i;
        let mut out = Word::zero(self.total);
        for a in atoms {
            for _ in 0..lambda.get(a) {
                let b = rest.min(self.degrees[a]);
                rest -= b;
                out.bump(self.index(a, b as usize), 1);
            }
        }
        (rest == 0).then_some(out)
    }

    /// A lift with `δ = i` built by raising brackets of random copies.
    pub fn random_lift<R: Rng>(&self, lambda: &Word, i: u64, rng: &mut R) -> Option<Word> {
        let mut copies: Vec<(usize, u64)> = Vec::new();
        for a in lambda.support() {
            for _ in 0..lambda.get(a) {
                copies.push((a, 0));
            }
        }
        for _ in 0..i {
            let open: Vec<usize> = (0..copies.len())
                .filter(|&c| copies[c].1 < self.degrees[copies[c].0])
                .collect();
            let &c = open.choose(rng)?;
            copies[c].1 += 1;
        }
        let mut out = Word::zero(self.total);
        for (a, b) in copies {
            out.bump(self.index(a, b as usize), 1);
        }
        Some(out)
    }

    /// Every `λ~` with `κ(λ~) = λ`.
    pub fn all_lifts(&self, lambda: &Word) -> Vec<Word> {
        let mut out = vec![Word::zero(self.total)];
        for a in lambda.support() {
            let slots = self.degrees[a] as usize + 1;
            let parts = compositions(lambda.get(a), slots);
            let mut next = Vec::with_capacity(out.len() * parts.len());
            for w in &out {
                for p in &parts {
                    let mut v = w.clone();
                    for (s, &c) in p.iter().enumerate() {
                        if c > 0 {
                            v.bump(self.index(a, s), c as i64);
                        }
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// All ways to write `n` as an ordered sum of `k` non-negative parts.
fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn tilde_atoms(layout: &TildeLayout) -> Vec<TildeAtom> {
    layout.atoms()
}

/// `S~` embedded in `N0^{k+1}` via `a[i] ↦ (a, i)`.
pub fn tilde_monoid(monoid: &AffineMonoid, layout: &TildeLayout) -> AffineMonoid {
    let atoms = layout
        .atoms()
        .into_iter()
        .map(|t| {
            let mut v = monoid.atoms()[t.base].clone();
            v.push(t.bracket as u32);
            v
        })
        .collect();
    AffineMonoid::new(monoid.ambient_dim() + 1, atoms)
}

/// `x^λ ∼ x^μ` in `S~`: the `κ`-images factor the same element and `δ` agrees.
pub fn tilde_congruent(lambda: &Word, mu: &Word, monoid: &AffineMonoid, layout: &TildeLayout) -> bool {
    monoid.balanced(&layout.kappa(lambda), &layout.kappa(mu)) && layout.delta(lambda) == layout.delta(mu)
}

/// The exchange pairs `(x_{a[k]} x_{b[l]}, x_{a[k+1]} x_{b[l−1]})`, without
/// trivial pairs and without a pair whose reverse was already listed.
pub fn exchange_pairs(layout: &TildeLayout) -> Vec<CongruencePair> {
    let n = layout.num_atoms();
    let two = |x: usize, y: usize| {
        let mut w = Word::zero(n);
        w.bump(x, 1);
        w.bump(y, 1);
        w
    };
    let mut seen: HashSet<(Word, Word)> = HashSet::new();
    let mut out = Vec::new();
    for a in 0..layout.num_base() {
        for b in 0..layout.num_base() {
            for k in 0..layout.degree(a) as usize {
                for l in 1..=layout.degree(b) as usize {
                    let left = two(layout.index(a, k), layout.index(b, l));
                    let right = two(layout.index(a, k + 1), layout.index(b, l - 1));
                    if left == right || seen.contains(&(right.clone(), left.clone())) {
                        continue;
                    }
                    if seen.insert((left.clone(), right.clone())) {
                        out.push(CongruencePair::new(left, right));
                    }
                }
            }
        }
    }
    out
}

/// How lifts `λ[i]` are chosen in [`tilde_presentation`].
pub enum Lift<'r> {
    Greedy,
    Random(&'r mut dyn rand::RngCore),
}

/// A generating set of the congruence of `S~` built from one of `S`: the
/// lifts `(λ[i], μ[i])` for `0 ≤ i ≤ |a^λ|` and the exchange pairs.
pub fn tilde_presentation(presentation: &Presentation, lift: Lift<'_>) -> Result<Presentation> {
    let layout = TildeLayout::from_grading(&presentation.grading);
    let monoid = &presentation.monoid;
    if layout.num_base() != monoid.num_atoms() {
        return Err(Error::LengthMismatch {
            expected: monoid.num_atoms(),
            found: layout.num_base(),
        });
    }
    let mut lift = lift;
    let mut pairs = Vec::new();
    for p in &presentation.pairs {
        if !monoid.balanced(&p.left, &p.right) {
            return Err(Error::Unbalanced);
        }
        let top = layout.base_degree(&p.left);
        if top != layout.base_degree(&p.right) {
            return Err(Error::Unbalanced);
        }
        for i in 0..=top {
            let (l, r) = match &mut lift {
                Lift::Greedy => (layout.greedy_lift(&p.left, i), layout.greedy_lift(&p.right, i)),
                Lift::Random(rng) => (
                    layout.random_lift(&p.left, i, rng),
                    layout.random_lift(&p.right, i, rng),
                ),
            };
            let (Some(l), Some(r)) = (l, r) else {
                return Err(Error::Unbalanced);
            };
            pairs.push(CongruencePair::new(l, r));
        }
    }
    pairs.extend(exchange_pairs(&layout));
    let tm = tilde_monoid(monoid, &layout);
    let grading = Grading::length(&tm);
    Presentation::new(&tm, grading, pairs)
}

/// A chain from `alpha` to `beta` in which consecutive words differ by one
/// exchange pair. Requires `κ(α) = κ(β)` and `δ(α) = δ(β)`.
pub fn quadratic_chain(alpha: &Word, beta: &Word, layout: &TildeLayout) -> Result<Vec<Word>> {
    let n = layout.num_atoms();
    if alpha.dim() != n
        || beta.dim() != n
        || layout.kappa(alpha) != layout.kappa(beta)
        || layout.delta(alpha) != layout.delta(beta)
    {
        return Err(Error::NotKappaDeltaEquivalent);
    }
    let mut x = alpha.clone();
    let mut y = beta.clone();
    let mut forward = vec![x.clone()];
    let mut backward = vec![y.clone()];
    while x != y {
        let common = x.gcd(&y);
        let xr = x.checked_sub(&common).expect("gcd divides");
        let yr = y.checked_sub(&common).expect("gcd divides");
        let t = xr.support().next().expect("residual nonempty");
        let TildeAtom { base: a, bracket: i } = layout.atom_of(t);
        let k = layout
            .brackets(a)
            .find(|&s| yr.get(s) > 0)
            .map(|s| layout.atom_of(s).bracket)
            .expect("κ agrees");
        let before = common.length();
        if i > k {
            let (mut hi, lo) = (i, k);
            loop {
                exchange_toward(&mut x, &y, a, hi, lo, layout);
                forward.push(x.clone());
                hi -= 1;
                if x.gcd(&y).length() > before {
                    break;
                }
            }
        } else {
            let (mut hi, lo) = (k, i);
            loop {
                exchange_toward(&mut y, &x, a, hi, lo, layout);
                backward.push(y.clone());
                hi -= 1;
                if x.gcd(&y).length() > before {
                    break;
                }
            }
        }
    }
    backward.pop();
    forward.extend(backward.into_iter().rev());
    Ok(forward)
}

/// One exchange on `cur`, which holds `a[hi]` outside the common part, while
/// `other` holds `a[lo]` there, `hi > lo`: lowers `a[hi]` and raises some `b[j]`.
fn exchange_toward(cur: &mut Word, other: &Word, a: usize, hi: u64, lo: u64, layout: &TildeLayout) {
    let common = cur.gcd(other);
    let mut cr = cur.checked_sub(&common).expect("gcd divides");
    let mut orr = other.checked_sub(&common).expect("gcd divides");
    let ahi = layout.index(a, hi as usize);
    let alo = layout.index(a, lo as usize);
    cr.bump(ahi, -1);
    orr.bump(alo, -1);
    // an atom whose brackets sum lower in cur than in other
    let (b, j, l) = (0..layout.num_base())
        .find_map(|b| {
            let br = layout.brackets(b);
            let sum = |w: &Word| -> u64 {
                br.clone()
                    .map(|s| layout.atom_of(s).bracket * w.get(s) as u64)
                    .sum()
            };
            if sum(&cr) >= sum(&orr) {
                return None;
            }
            let j = br.clone().find(|&s| cr.get(s) > 0)?;
            let l = br.clone().rev().find(|&s| orr.get(s) > 0)?;
            Some((b, layout.atom_of(j).bracket, layout.atom_of(l).bracket))
        })
        .expect("δ deficit forces an exchange");
    debug_assert!(j < l);
    cur.bump(ahi, -1);
    cur.bump(layout.index(b, j as usize), -1);
    cur.bump(layout.index(a, hi as usize - 1), 1);
    cur.bump(layout.index(b, j as usize + 1), 1);
}

/// The isomorphism `S~ ≅ B(g~)` for `S = B(g)` graded by `α_r`, where `g~`
/// appends a copy of `g_r`: `α[i] ↦ (…, α_r − i, …, i)`.
#[derive(Clone, Debug)]
pub struct RepeatIsomorphism {
    pub index: usize,
    pub base: BlockMonoid,
    pub repeated: BlockMonoid,
    pub layout: TildeLayout,
    /// Tilde atom number to atom index of `B(g~)`.
    pub forward: Vec<usize>,
    /// Atom index of `B(g~)` to tilde atom number.
    pub backward: Vec<usize>,
}

impl RepeatIsomorphism {
    pub fn grading(&self) -> Grading {
        Grading::new(self.layout.degrees().to_vec())
    }

    /// `α[i] ↦ (α_1, …, α_r − i, …, α_m, i)` on elements.
    pub fn to_repeated(&self, alpha: &[u32], i: u32) -> Option<Element> {
        let r = self.index;
        if i > alpha[r] {
            return None;
        }
        let mut v = alpha.to_vec();
        v[r] -= i;
        v.push(i);
        Some(v)
    }

    /// Inverse of [`RepeatIsomorphism::to_repeated`].
    pub fn from_repeated(&self, beta: &[u32]) -> (Element, u32) {
        let m = beta.len() - 1;
        let i = beta[m];
        let mut v = beta[..m].to_vec();
        v[self.index] += i;
        (v, i)
    }

    /// Renames the variables of a word over `S~` to the atoms of `B(g~)`.
    pub fn word_to_repeated(&self, w: &Word) -> Word {
        let mut out = Word::zero(self.forward.len());
        for t in w.support() {
            out.set(self.forward[t], w.get(t));
        }
        out
    }

    pub fn word_from_repeated(&self, w: &Word) -> Word {
        let mut out = Word::zero(self.backward.len());
        for t in w.support() {
            out.set(self.backward[t], w.get(t));
        }
        out
    }
}

/// Builds [`RepeatIsomorphism`] for repeating component `index` (0-based)
/// and checks it is a bijection on atoms.
pub fn btilde_isomorphism(seq: &Sequence, index: usize) -> Result<RepeatIsomorphism> {
    let repeated_seq = seq.with_repeat(index)?;
    let base = BlockMonoid::new(seq.clone());
    let repeated = BlockMonoid::new(repeated_seq);
    let grading = Grading::coordinate(base.monoid(), index);
    let layout = TildeLayout::from_grading(&grading);
    let mut iso = RepeatIsomorphism {
        index,
        base,
        repeated,
        layout,
        forward: Vec::new(),
        backward: Vec::new(),
    };
    let mut forward = Vec::with_capacity(iso.layout.num_atoms());
    for t in iso.layout.atoms() {
        let alpha = &iso.base.atoms()[t.base];
        let image = iso
            .to_repeated(alpha, t.bracket as u32)
            .expect("bracket within degree");
        let j = iso
            .repeated
            .monoid()
            .atom_index(&image)
            .ok_or_else(|| Error::NotGroebner(format!("tilde atom {image:?} is not an atom")))?;
        forward.push(j);
    }
    let mut backward = vec![usize::MAX; iso.repeated.atoms().len()];
    for (t, &j) in forward.iter().enumerate() {
        backward[j] = t;
    }
    assert!(
        backward.iter().all(|&t| t != usize::MAX),
        "atom counts of S~ and B(g~) differ"
    );
    iso.forward = forward;
    iso.backward = backward;
    Ok(iso)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatenaryComparison {
    pub catenary_support: u64,
    pub catenary: u64,
    pub support_free: bool,
    pub has_repetition: bool,
    /// The pair matches: equality, or `(0, 2)` for a free support with repetition.
    pub consistent: bool,
}

/// Default cap on the sequence length for [`catenary_compare`].
pub const COMPARE_CAP: usize = 7;

/// Computes `c(B(g))` and `c(B(supp g))` independently.
pub fn catenary_compare(seq: &Sequence) -> Result<CatenaryComparison> {
    catenary_compare_capped(seq, COMPARE_CAP)
}

pub fn catenary_compare_capped(seq: &Sequence, cap: usize) -> Result<CatenaryComparison> {
    if seq.len() > cap {
        return Err(Error::CapExceeded(format!("sequence length {} > {cap}", seq.len())));
    }
    let full = BlockMonoid::new(seq.clone());
    let supp = BlockMonoid::new(seq.support());
    let c = block_catenary_degrees(&full).catenary;
    let cs = block_catenary_degrees(&supp).catenary;
    let support_free = supp.is_free();
    let has_repetition = seq.has_repetition();
    let consistent = if support_free && has_repetition {
        (cs, c) == (0, 2)
    } else {
        cs == c
    };
    Ok(CatenaryComparison {
        catenary_support: cs,
        catenary: c,
        support_free,
        has_repetition,
        consistent,
    })
}

#[derive(Clone, Debug)]
pub struct Derepetition {
    pub sequence: Sequence,
    /// Atoms of `B(h)` are exactly `(α, α_m)` for the atoms `α` of `B(g)`.
    pub bijection_holds: bool,
}

/// For `g_{m−1} = g_m`, the sequence `((g_1,0),…,(g_{m−1},0),(g_{m−1},1),(0,−1))`
/// over `G × Z`, whose block monoid is `B(g)` via `α ↦ (α, α_m)`.
pub fn derepetition(seq: &Sequence) -> Result<Derepetition> {
    let m = seq.len();
    if m < 2 || seq.elements()[m - 2] != seq.elements()[m - 1] {
        return Err(Error::NotRepeated);
    }
    let group = seq.group();
    let h_group = group.times_z().into_group();
    let r = group.free_rank();
    let lift = |e: &GroupElement, z: i64| -> Result<GroupElement> {
        let mut c = e.coords().to_vec();
        c.insert(r, z);
        GroupElement::new(&h_group, &c)
    };
    let mut h = Vec::with_capacity(m + 1);
    for e in &seq.elements()[..m - 1] {
        h.push(lift(e, 0)?);
    }
    h.push(lift(&seq.elements()[m - 2], 1)?);
    h.push(lift(&GroupElement::identity(group), -1)?);
    let h = Sequence::new(&h_group, h)?;

    let mut expected: Vec<Element> = BlockMonoid::new(seq.clone())
        .atoms()
        .iter()
        .map(|a| {
            let mut v = a.clone();
            v.push(a[m - 1]);
            v
        })
        .collect();
    let mut found: Vec<Element> = BlockMonoid::new(h.clone()).atoms().to_vec();
    expected.sort();
    found.sort();
    Ok(Derepetition {
        sequence: h,
        bijection_holds: expected == found,
    })
}
