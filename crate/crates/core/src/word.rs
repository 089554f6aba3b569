//! Exponent vectors over a fixed set of variables.
//!
//! A [`Word`] is an element `x^λ` of the free commutative monoid on the atom
//! variables, stored densely as `λ ∈ N0^n`. The same type serves for
//! factorization vectors of a monoid and for words over the tilde atoms.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(exponents: Vec<u32>) -> Self {
        Word(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        Word(vec![0; dim])
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut w = Word::zero(dim);
        w.0[index] = 1;
        w
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn get(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn set(&mut self, index: usize, value: u32) {
        self.0[index] = value;
    }

    pub fn bump(&mut self, index: usize, delta: i64) {
        let v = self.0[index] as i64 + delta;
        assert!(v >= 0, "word exponent went negative");
        self.0[index] = v as u32;
    }

    /// Total length `|λ| = Σ λ(a)`.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Weighted length `Σ λ(a)·w(a)`.
    pub fn weighted_length(&self, weights: &[u64]) -> u64 {
        debug_assert_eq!(weights.len(), self.0.len());
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Word) -> Word {
        Word(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Word) -> Word {
        Word(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// `self` divides `other` in the free monoid, i.e. `self ≤ other` componentwise.
    pub fn divides(&self, other: &Word) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Word) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn add(&self, other: &Word) -> Word {
        Word(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// `self - other`, or `None` when `other` does not divide `self`.
    pub fn checked_sub(&self, other: &Word) -> Option<Word> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    /// `self - take + put`, assuming `take` divides `self`.
    pub fn rewrite(&self, take: &Word, put: &Word) -> Word {
        Word(
            self.0
                .iter()
                .zip(&take.0)
                .zip(&put.0)
                .map(|((&a, &t), &p)| a - t + p)
                .collect(),
        )
    }

    /// Indices with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u32> {
        self.0.iter()
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl From<&[u32]> for Word {
    fn from(v: &[u32]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
