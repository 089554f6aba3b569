//! Reduced affine monoids given by their atoms inside `N0^k`.
//!
//! Everything downstream of atom enumeration (congruences, tilde monoids,
//! Gröbner systems) works on an [`AffineMonoid`]: a list of atoms in a fixed
//! order together with the embedding that lets us evaluate the factorization
//! map `π: x^λ ↦ Σ λ(a)·a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::lattice_rank;
use crate::word::Word;

/// An element of the ambient `N0^k`.
pub type Element = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    ambient_dim: usize,
    atoms: Vec<Element>,
    // by_lead[j]: atoms whose first nonzero coordinate is j
    by_lead: Vec<Vec<usize>>,
}

impl AffineMonoid {
    /// Wraps an atom list. Atoms must be nonzero and pairwise distinct; minimality
    /// is the caller's responsibility.
    pub fn new(ambient_dim: usize, atoms: Vec<Element>) -> Self {
        for a in &atoms {
            assert_eq!(a.len(), ambient_dim, "atom has wrong dimension");
            assert!(a.iter().any(|&x| x > 0), "zero atom");
        }
        let mut by_lead = vec![Vec::new(); ambient_dim];
        for (i, a) in atoms.iter().enumerate() {
            let j = a.iter().position(|&x| x > 0).unwrap();
            by_lead[j].push(i);
        }
        AffineMonoid {
            ambient_dim,
            atoms,
            by_lead,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn atoms(&self) -> &[Element] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_index(&self, atom: &[u32]) -> Option<usize> {
        self.atoms.iter().position(|a| a.as_slice() == atom)
    }

    /// The factorization map `π(x^λ) = Σ λ(a)·a`.
    pub fn evaluate(&self, word: &Word) -> Element {
        assert_eq!(word.dim(), self.atoms.len(), "word over the wrong atom set");
        let mut out = vec![0u32; self.ambient_dim];
        for (atom, &e) in self.atoms.iter().zip(word.iter()) {
            if e == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(atom) {
                *o = x
                    .checked_mul(e)
                    .and_then(|v| o.checked_add(v))
                    .expect("monoid element overflows u32");
            }
        }
        out
    }

    pub fn balanced(&self, left: &Word, right: &Word) -> bool {
        self.evaluate(left) == self.evaluate(right)
    }

    /// All `λ` with `π(x^λ) = s`, sorted lexicographically.
    pub fn factorizations(&self, s: &[u32]) -> Vec<Word> {
        assert_eq!(s.len(), self.ambient_dim);
        let mut out = Vec::new();
        let mut current = vec![0u32; self.atoms.len()];
        let mut rest = s.to_vec();
        self.cover(0, &mut rest, &mut current, &mut out);
        out.sort();
        out
    }

    // Coordinates are cleared left to right: once every coordinate before `j`
    // is zero, coordinate `j` can only be paid by atoms leading there.
    fn cover(&self, mut j: usize, rest: &mut [u32], current: &mut [u32], out: &mut Vec<Word>) {
        while j < rest.len() && rest[j] == 0 {
            j += 1;
        }
        if j == rest.len() {
            out.push(Word::from(&current[..]));
            return;
        }
        self.choose(j, 0, rest, current, out);
    }

    fn choose(&self, j: usize, p: usize, rest: &mut [u32], current: &mut [u32], out: &mut Vec<Word>) {
        if rest[j] == 0 {
            self.cover(j + 1, rest, current, out);
            return;
        }
        let Some(&i) = self.by_lead[j].get(p) else {
            return;
        };
        let atom = &self.atoms[i];
        let max = atom
            .iter()
            .zip(rest.iter())
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &r)| r / a)
            .min()
            .unwrap_or(0);
        for k in 0..=max {
            if k > 0 {
                for (r, &a) in rest.iter_mut().zip(atom) {
                    *r -= a;
                }
            }
            current[i] = k;
            self.choose(j, p + 1, rest, current, out);
        }
        for (r, &a) in rest.iter_mut().zip(atom) {
            *r += a * max;
        }
        current[i] = 0;
    }

    pub fn is_member(&self, s: &[u32]) -> bool {
        !self.factorizations(s).is_empty()
    }

    /// Rank of the lattice generated by the atoms (the Krull dimension of the monoid algebra).
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = self
            .atoms
            .iter()
            .map(|a| a.iter().map(|&x| x as i64).collect())
            .collect();
        lattice_rank(&rows)
    }

    /// A reduced affine monoid is free exactly when its atoms are linearly independent.
    pub fn is_free(&self) -> bool {
        self.rank() == self.atoms.len()
    }
}

/// Degrees of the atoms; extends additively to words and elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Grading(Vec<u64>);

impl Grading {
    pub fn new(degrees: Vec<u64>) -> Self {
        Grading(degrees)
    }

    /// Total length `|a| = Σ a_i` of each atom.
    pub fn length(monoid: &AffineMonoid) -> Self {
        Grading(
            monoid
                .atoms()
                .iter()
                .map(|a| a.iter().map(|&x| x as u64).sum())
                .collect(),
        )
    }

    /// The coordinate `a_k` of each atom, e.g. `α_m` for the repeat grading.
    pub fn coordinate(monoid: &AffineMonoid, k: usize) -> Self {
        Grading(monoid.atoms().iter().map(|a| a[k] as u64).collect())
    }

    pub fn degrees(&self) -> &[u64] {
        &self.0
    }

    pub fn degree(&self, atom: usize) -> u64 {
        self.0[atom]
    }

    pub fn of(&self, word: &Word) -> u64 {
        word.weighted_length(&self.0)
    }

    /// Fails when some atom has degree 0.
    pub fn ensure_positive(&self) -> Result<()> {
        match self.0.iter().position(|&d| d == 0) {
            Some(i) => Err(Error::NotConnectedGraded(i)),
            None => Ok(()),
        }
    }
}
