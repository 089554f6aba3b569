//! The block monoid `B(g) = {α ∈ N0^m : Σ α_i g_i = 0}` of a sequence `g`
//! of group elements, its atoms and factorizations.
//!
//! Atoms are the Hilbert basis of the homogeneous system made of one exact
//! equation per free coordinate and one equation per torsion coordinate
//! `Σ α_i g_ij − d_j·s_j = 0` with a slack variable `s_j ≥ 0`. The slack is a
//! linear function of `α`, so projecting it away is a monoid isomorphism and
//! maps the Hilbert basis onto the atoms. This handles infinite-order
//! elements, where no box bound exists.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{scalar_combination, Group, GroupElement, Order};
use crate::hilbert::hilbert_basis;
use crate::monoid::{AffineMonoid, Element, Grading};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    group: Group,
    elements: Vec<GroupElement>,
}

impl Sequence {
    pub fn new(group: &Group, elements: Vec<GroupElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySequence);
        }
        if elements
            .iter()
            .any(|e| !Arc::ptr_eq(e.group(), group) && **e.group() != **group)
        {
            return Err(Error::GroupMismatch);
        }
        Ok(Sequence {
            group: Arc::clone(group),
            elements,
        })
    }

    /// Builds a sequence from coordinate tuples.
    pub fn from_coords(group: &Group, coords: &[Vec<i64>]) -> Result<Self> {
        let elements = coords
            .iter()
            .map(|c| GroupElement::new(group, c))
            .collect::<Result<Vec<_>>>()?;
        Sequence::new(group, elements)
    }

    /// Every element of a finite group once, in enumeration order.
    pub fn whole_group(group: &Group) -> Result<Self> {
        Sequence::new(group, crate::group::elements(group)?)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `supp(g)`: distinct elements in order of first occurrence.
    pub fn support(&self) -> Sequence {
        let mut out: Vec<GroupElement> = Vec::new();
        for e in &self.elements {
            if !out.contains(e) {
                out.push(e.clone());
            }
        }
        Sequence {
            group: Arc::clone(&self.group),
            elements: out,
        }
    }

    pub fn has_repetition(&self) -> bool {
        self.support().len() < self.len()
    }

    /// The sequence with component `index` appended once more.
    pub fn with_repeat(&self, index: usize) -> Result<Sequence> {
        let e = self.elements.get(index).ok_or(Error::RepeatIndex {
            index,
            len: self.len(),
        })?;
        let mut elements = self.elements.clone();
        elements.push(e.clone());
        Ok(Sequence {
            group: Arc::clone(&self.group),
            elements,
        })
    }

    /// All elements have finite order.
    pub fn is_torsion(&self) -> bool {
        self.elements.iter().all(|e| e.order() != Order::Infinite)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `Σ α_i g_i = 0` in `G`.
pub fn is_member(seq: &Sequence, alpha: &[u32]) -> Result<bool> {
    Ok(scalar_combination(&seq.elements, alpha)?.is_identity())
}

/// Canonical atom order: total length, then lexicographic.
pub fn canonical_cmp(x: &[u32], y: &[u32]) -> std::cmp::Ordering {
    let dx: u64 = x.iter().map(|&v| v as u64).sum();
    let dy: u64 = y.iter().map(|&v| v as u64).sum();
    dx.cmp(&dy).then_with(|| x.cmp(y))
}

/// `d = ∏ p^k` as the list of prime powers `p^k`.
fn prime_powers(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            let mut q = 1;
            while d.is_multiple_of(p) {
                d /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// The atoms of `B(g)` in canonical order.
pub fn enumerate_atoms(seq: &Sequence) -> Vec<Element> {
    let group = &seq.group;
    let m = seq.len();
    let r = group.free_rank();
    // a congruence mod d holds iff it holds mod every prime power of d; the
    // split keeps slack values small
    let moduli: Vec<(usize, u64)> = group
        .torsion()
        .iter()
        .enumerate()
        .flat_map(|(k, &d)| prime_powers(d).into_iter().map(move |q| (r + k, q)))
        .collect();
    let n = m + moduli.len();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(r + moduli.len());
    for j in 0..r {
        let mut row: Vec<i64> = seq.elements.iter().map(|e| e.coords()[j]).collect();
        row.resize(n, 0);
        rows.push(row);
    }
    for (s, &(j, q)) in moduli.iter().enumerate() {
        let mut row: Vec<i64> = seq
            .elements
            .iter()
            .map(|e| e.coords()[j] % q as i64)
            .collect();
        row.resize(n, 0);
        row[m + s] = -(q as i64);
        rows.push(row);
    }
    let mut atoms: Vec<Element> = hilbert_basis(&rows, n)
        .into_iter()
        .map(|mut x| {
            x.truncate(m);
            x
        })
        .collect();
    atoms.sort_by(|x, y| canonical_cmp(x, y));
    atoms
}

#[derive(Clone, Debug)]
pub struct BlockMonoid {
    sequence: Sequence,
    monoid: AffineMonoid,
}

impl BlockMonoid {
    pub fn new(sequence: Sequence) -> Self {
        let atoms = enumerate_atoms(&sequence);
        let monoid = AffineMonoid::new(sequence.len(), atoms);
        BlockMonoid { sequence, monoid }
    }

    pub fn sequence(&self) -> &Sequence {
        &self.sequence
    }

    pub fn monoid(&self) -> &AffineMonoid {
        &self.monoid
    }

    pub fn atoms(&self) -> &[Element] {
        self.monoid.atoms()
    }

    /// Total-length grading `|α| = Σ α_i`.
    pub fn length_grading(&self) -> Grading {
        Grading::length(&self.monoid)
    }

    pub fn is_member(&self, alpha: &[u32]) -> Result<bool> {
        is_member(&self.sequence, alpha)
    }

    pub fn factorizations(&self, s: &[u32]) -> Result<Vec<Word>> {
        if !self.is_member(s)? {
            return Err(Error::NotMember);
        }
        Ok(self.monoid.factorizations(s))
    }

    /// `r(B(g))`, the rank of the lattice spanned by the atoms.
    pub fn krull_rank(&self) -> usize {
        self.monoid.rank()
    }

    pub fn is_free(&self) -> bool {
        self.monoid.is_free()
    }

    /// Largest atom length; the Davenport constant when the entries are distinct.
    pub fn max_atom_length(&self) -> u64 {
        self.length_grading().degrees().iter().copied().max().unwrap_or(0)
    }
}
