//! Finitely generated abelian groups `Z^r × Z/d_1 × … × Z/d_t`.
//!
//! Coordinates of an element are laid out free part first, then the torsion
//! factors in the order they were given. Torsion coordinates are always kept
//! reduced to `[0, d_i)`, so element equality is plain vector equality.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    free_rank: usize,
    torsion: Vec<u64>,
}

/// Shared handle to a group; elements keep one so that mixing groups is detectable.
pub type Group = Arc<GroupSpec>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidTorsion(d));
        }
        Ok(GroupSpec { free_rank, torsion })
    }

    /// `Z/n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        GroupSpec::new(0, vec![n])
    }

    pub fn free(rank: usize) -> Self {
        GroupSpec {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of coordinates of an element.
    pub fn arity(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `|G|` for finite groups.
    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.torsion
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    /// Order of the torsion part, which is `|G|` for finite groups.
    pub fn torsion_order(&self) -> Option<u64> {
        self.torsion
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    /// `G × Z`, with the new free coordinate placed after the existing free ones.
    pub fn times_z(&self) -> GroupSpec {
        GroupSpec {
            free_rank: self.free_rank + 1,
            torsion: self.torsion.clone(),
        }
    }

    pub fn into_group(self) -> Group {
        Arc::new(self)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "Z^0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `"Z^r x Z/d1 x Z/d2 …"`. Whitespace is ignored, `×` may replace
    /// `x`, a bare `Z` means `Z^1`, and free factors may appear anywhere.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty group specification".into()));
        }
        let mut free_rank = 0usize;
        let mut torsion = Vec::new();
        for factor in compact.split(['x', '×']) {
            let bad = || Error::Parse(format!("malformed group factor `{factor}`"));
            if let Some(rest) = factor.strip_prefix("Z/") {
                let d: u64 = rest.parse().map_err(|_| bad())?;
                if d < 2 {
                    return Err(Error::InvalidTorsion(d));
                }
                torsion.push(d);
            } else if factor == "Z" {
                free_rank += 1;
            } else if let Some(rest) = factor.strip_prefix("Z^") {
                free_rank += rest.parse::<usize>().map_err(|_| bad())?;
            } else {
                return Err(bad());
            }
        }
        GroupSpec::new(free_rank, torsion)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    group: Group,
    coords: Vec<i64>,
}

impl GroupElement {
    /// Builds an element, reducing torsion coordinates into `[0, d_i)`.
    pub fn new(group: &Group, coords: &[i64]) -> Result<Self> {
        if coords.len() != group.arity() {
            return Err(Error::LengthMismatch {
                expected: group.arity(),
                found: coords.len(),
            });
        }
        let mut coords = coords.to_vec();
        for (c, &d) in coords[group.free_rank..].iter_mut().zip(&group.torsion) {
            *c = c.mod_floor(&(d as i64));
        }
        Ok(GroupElement {
            group: Arc::clone(group),
            coords,
        })
    }

    pub fn identity(group: &Group) -> Self {
        GroupElement {
            group: Arc::clone(group),
            coords: vec![0; group.arity()],
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn same_group(&self, other: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.same_group(other)?;
        let r = self.group.free_rank;
        let mut coords = Vec::with_capacity(self.coords.len());
        for i in 0..self.coords.len() {
            let (a, b) = (self.coords[i], other.coords[i]);
            if i < r {
                coords.push(a.checked_add(b).ok_or(Error::Overflow("group addition"))?);
            } else {
                let d = self.group.torsion[i - r] as i64;
                coords.push((a + b) % d);
            }
        }
        Ok(GroupElement {
            group: Arc::clone(&self.group),
            coords,
        })
    }

    pub fn neg(&self) -> GroupElement {
        let r = self.group.free_rank;
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if i < r {
                    -c
                } else {
                    let d = self.group.torsion[i - r] as i64;
                    (d - c) % d
                }
            })
            .collect();
        GroupElement {
            group: Arc::clone(&self.group),
            coords,
        }
    }

    /// `k·a` for `k ≥ 0`.
    pub fn times(&self, k: u64) -> Result<GroupElement> {
        let r = self.group.free_rank;
        let mut coords = Vec::with_capacity(self.coords.len());
        for (i, &c) in self.coords.iter().enumerate() {
            if i < r {
                let v = (c as i128) * (k as i128);
                coords.push(i64::try_from(v).map_err(|_| Error::Overflow("group scaling"))?);
            } else {
                let d = self.group.torsion[i - r] as i128;
                coords.push(((c as i128 * k as i128) % d) as i64);
            }
        }
        Ok(GroupElement {
            group: Arc::clone(&self.group),
            coords,
        })
    }

    /// Least `n ≥ 1` with `n·a = 0`, or infinite when a free coordinate is nonzero.
    pub fn order(&self) -> Order {
        let r = self.group.free_rank;
        if self.coords[..r].iter().any(|&c| c != 0) {
            return Order::Infinite;
        }
        let n = self.coords[r..]
            .iter()
            .zip(&self.group.torsion)
            .fold(1u64, |acc, (&c, &d)| acc.lcm(&(d / (c as u64).gcd(&d))));
        Order::Finite(n)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn add(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    a.add(b)
}

pub fn element_order(a: &GroupElement) -> Order {
    a.order()
}

/// `Σ α_i g_i`, the additive form of `∏ g_i^{α_i}`.
pub fn scalar_combination(g: &[GroupElement], alpha: &[u32]) -> Result<GroupElement> {
    if g.len() != alpha.len() {
        return Err(Error::LengthMismatch {
            expected: g.len(),
            found: alpha.len(),
        });
    }
    let Some(first) = g.first() else {
        return Err(Error::EmptySequence);
    };
    let group = first.group();
    let r = group.free_rank;
    let mut acc = vec![0i128; group.arity()];
    for (gi, &a) in g.iter().zip(alpha) {
        first.same_group(gi)?;
        if a == 0 {
            continue;
        }
        for (j, &c) in gi.coords.iter().enumerate() {
            acc[j] += c as i128 * a as i128;
            if j >= r {
                acc[j] %= group.torsion[j - r] as i128;
            }
        }
    }
    let coords = acc
        .into_iter()
        .map(|v| i64::try_from(v).map_err(|_| Error::Overflow("scalar combination")))
        .collect::<Result<Vec<_>>>()?;
    GroupElement::new(group, &coords)
}

/// All elements of a finite group, torsion coordinates in odometer order.
pub fn elements(group: &Group) -> Result<Vec<GroupElement>> {
    if !group.is_finite() {
        return Err(Error::InfiniteOrder);
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; group.arity()];
    loop {
        out.push(GroupElement {
            group: Arc::clone(group),
            coords: cur.clone(),
        });
        let mut i = cur.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < group.torsion[i] as i64 {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Position of a torsion element in the order of [`elements`].
pub fn element_index(e: &GroupElement) -> usize {
    let g = e.group();
    e.coords[g.free_rank..]
        .iter()
        .zip(&g.torsion)
        .fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
}

/// Automorphisms of a finite group as permutations of [`elements`]:
/// `perm[i]` is the index of the image of element `i`. The identity comes first.
pub fn automorphisms(group: &Group) -> Result<Vec<Vec<usize>>> {
    let els = elements(group)?;
    let k = group.torsion.len();
    // images of the unit vectors, each killed by its factor
    let choices: Vec<Vec<&GroupElement>> = group
        .torsion
        .iter()
        .map(|&d| {
            els.iter()
                .filter(|e| e.order().finite().is_some_and(|o| d % o == 0))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; k];
    loop {
        let mut perm = Vec::with_capacity(els.len());
        let mut hit = vec![false; els.len()];
        let mut bijective = true;
        for e in &els {
            let mut img = GroupElement::identity(group);
            for (i, &c) in e.coords.iter().enumerate() {
                img = img.add(&choices[i][pick[i]].times(c as u64)?)?;
            }
            let j = element_index(&img);
            if hit[j] {
                bijective = false;
                break;
            }
            hit[j] = true;
            perm.push(j);
        }
        if bijective {
            out.push(perm);
        }
        let mut i = k;
        loop {
            if i == 0 {
                out.sort_by_key(|p| p.iter().enumerate().any(|(a, &b)| a != b));
                return Ok(out);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Abelian groups of order `n` in invariant-factor form `Z/d_1 × … × Z/d_k`, `d_1 | d_2 | …`.
pub fn abelian_groups_of_order(n: u64) -> Vec<GroupSpec> {
    fn rec(n: u64, min_factor: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 1 {
            out.push(acc.clone());
            return;
        }
        for d in min_factor.max(2)..=n {
            let ok_chain = acc.last().is_none_or(|&prev| d % prev == 0);
            if n.is_multiple_of(d) && ok_chain {
                // remaining factors are multiples of d, so d must divide n / d or finish
                let rest = n / d;
                if rest == 1 || rest.is_multiple_of(d) {
                    acc.push(d);
                    rec(rest, d, acc, out);
                    acc.pop();
                }
            }
        }
    }
    if n == 1 {
        return vec![GroupSpec::free(0)];
    }
    let mut out = Vec::new();
    rec(n, 2, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|t| GroupSpec::new(0, t).expect("factors are >= 2"))
        .collect()
}
