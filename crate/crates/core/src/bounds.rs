//! Davenport constants, the bounds on (graded) catenary degrees of block
//! monoids, and sequences attached to acyclic quivers.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::block::{BlockMonoid, Sequence};
use crate::congruence::{block_catenary_degrees, CatenaryDegrees};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::lattice::in_integer_span;
use crate::monoid::Grading;

fn orders(seq: &Sequence) -> Result<Vec<u64>> {
    seq.elements()
        .iter()
        .map(|e| e.order().finite().ok_or(Error::InfiniteOrder))
        .collect()
}

/// `D(G_0)` for `G_0 = supp(g)`: the largest atom length of `B(G_0)`.
pub fn davenport(seq: &Sequence) -> Result<u64> {
    orders(seq)?;
    Ok(BlockMonoid::new(seq.support()).max_atom_length())
}

/// `D(G)` of a finite group.
pub fn group_davenport(group: &GroupSpec) -> Result<u64> {
    let g = group.clone().into_group();
    davenport(&Sequence::whole_group(&g)?)
}

/// `d(G_0)` for `G_0 = supp(g)`: the largest `|α|` with `0 ≤ α_i < ord(g_i)`
/// that lies above no atom of `B(G_0)`.
///
/// Coordinates are filled left to right. Raising `α_j` can only newly cover
/// atoms whose last nonzero coordinate is `j`, and once an atom is covered
/// every larger value is covered too, so the loop over `α_j` stops there.
pub fn little_davenport(seq: &Sequence) -> Result<u64> {
    let supp = seq.support();
    let ord = orders(&supp)?;
    let bm = BlockMonoid::new(supp);
    let m = ord.len();
    // atoms by last nonzero coordinate
    let mut ending: Vec<Vec<&Vec<u32>>> = vec![Vec::new(); m];
    for a in bm.atoms() {
        let last = a.iter().rposition(|&x| x > 0).expect("nonzero atom");
        ending[last].push(a);
    }
    fn go(j: usize, alpha: &mut Vec<u32>, ord: &[u64], ending: &[Vec<&Vec<u32>>], best: &mut u64) {
        if j == alpha.len() {
            *best = (*best).max(alpha.iter().map(|&x| x as u64).sum());
            return;
        }
        for v in 0..ord[j] as u32 {
            alpha[j] = v;
            let covered = v > 0
                && ending[j]
                    .iter()
                    .any(|a| a[j] == v && a[..j].iter().zip(&alpha[..j]).all(|(x, y)| x <= y));
            if covered {
                break;
            }
            go(j + 1, alpha, ord, ending, best);
        }
        alpha[j] = 0;
    }
    let mut best = 0;
    go(0, &mut vec![0; m], &ord, &ending, &mut best);
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

impl BoundCheck {
    fn le(name: &'static str, statement: &'static str, lhs: u64, rhs: u64) -> Self {
        BoundCheck {
            name,
            statement,
            lhs,
            rhs,
            pass: lhs <= rhs,
        }
    }

    fn eq(name: &'static str, statement: &'static str, lhs: u64, rhs: u64) -> Self {
        BoundCheck {
            name,
            statement,
            lhs,
            rhs,
            pass: lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub catenary: u64,
    pub graded_catenary: u64,
    pub support_catenary: u64,
    pub support_graded_catenary: u64,
    /// `D(supp g)`, `d(supp g)` and `D(G)`; absent with an element of infinite order.
    pub davenport: Option<u64>,
    pub little_davenport: Option<u64>,
    pub group_davenport: Option<u64>,
    /// Rank of `B(supp g)`.
    pub rank: u64,
    /// Atom lengths of `B(supp g)`, descending.
    pub atom_degrees: Vec<u64>,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Both sides of every bound that applies to `B(g)`, graded by length.
pub fn check_bounds(seq: &Sequence) -> Result<BoundsReport> {
    let full = BlockMonoid::new(seq.clone());
    let supp_seq = seq.support();
    let supp = BlockMonoid::new(supp_seq.clone());
    let len = Grading::length(full.monoid());
    let supp_len = Grading::length(supp.monoid());
    let CatenaryDegrees { catenary, graded } = block_catenary_degrees(&full);
    let CatenaryDegrees {
        catenary: supp_catenary,
        graded: supp_graded,
    } = block_catenary_degrees(&supp);
    let rank = supp.krull_rank() as u64;
    let mut degrees: Vec<u64> = supp_len.degrees().to_vec();
    degrees.sort_unstable_by(|a, b| b.cmp(a));

    let mut checks = Vec::new();
    let top = degrees.first().copied().unwrap_or(0);
    checks.push(BoundCheck::le(
        "graded_vs_support",
        "c_gr(B(g)) <= max(2|a_1|, c_gr(B(supp g)))",
        graded,
        (2 * top).max(supp_graded),
    ));
    let k = degrees.len().min(rank as usize + 1);
    let head: u64 = degrees[..k].iter().sum();
    checks.push(BoundCheck::le(
        "support_graded_vs_rank",
        "c_gr(B(supp g)) <= |a_1| + ... + |a_min(n,r+1)| - r",
        supp_graded,
        head.saturating_sub(rank),
    ));
    let min_atom = len.degrees().iter().copied().min();
    if let Some(min_atom) = min_atom {
        checks.push(BoundCheck::le(
            "catenary_vs_graded",
            "c(B(g)) * min|a| <= c_gr(B(g))",
            catenary * min_atom,
            graded,
        ));
    }

    let finite = orders(seq).is_ok();
    let (mut dav, mut little, mut group_dav) = (None, None, None);
    if finite {
        let big_d = davenport(seq)?;
        let small_d = little_davenport(seq)?;
        let group = seq.group();
        let gd = group_davenport(group)?;
        let order = group.order().ok_or(Error::InfiniteOrder)?;
        checks.push(BoundCheck::le(
            "graded_vs_little_davenport",
            "c_gr(B(g)) <= 2 d(supp g) + 2",
            graded,
            2 * small_d + 2,
        ));
        checks.push(BoundCheck::le(
            "support_graded_vs_little_davenport",
            "c_gr(B(G_0)) <= 2 d(G_0) + 2",
            supp_graded,
            2 * small_d + 2,
        ));
        checks.push(BoundCheck::le(
            "little_davenport_vs_group",
            "2 d(G_0) + 2 <= 2 D(G)",
            2 * small_d + 2,
            2 * gd,
        ));
        checks.push(BoundCheck::le("group_davenport_vs_order", "2 D(G) <= 2 |G|", 2 * gd, 2 * order));
        let supp_min = supp_len.degrees().iter().copied().min().unwrap_or(0);
        if supp_min > 0 {
            checks.push(BoundCheck::le(
                "support_catenary_vs_little_davenport",
                "c(B(G_0)) * min|a| <= 2 d(G_0) + 2",
                supp_catenary * supp_min,
                2 * small_d + 2,
            ));
        }
        let identity = GroupElement::identity(group);
        if seq.elements().contains(&identity) {
            let rest: Vec<GroupElement> = seq.elements().iter().filter(|e| **e != identity).cloned().collect();
            let stripped = if rest.is_empty() {
                0
            } else {
                block_catenary_degrees(&BlockMonoid::new(Sequence::new(group, rest)?)).catenary
            };
            checks.push(BoundCheck::eq(
                "identity_split",
                "c(B(g)) = c(B(g without identity entries))",
                catenary,
                stripped,
            ));
        }
        if supp_seq.len() as u64 == order {
            checks.push(BoundCheck::le("whole_group_davenport", "c(B(G)) <= D(G)", catenary, gd));
        }
        dav = Some(big_d);
        little = Some(small_d);
        group_dav = Some(gd);
    }
    Ok(BoundsReport {
        catenary,
        graded_catenary: graded,
        support_catenary: supp_catenary,
        support_graded_catenary: supp_graded,
        davenport: dav,
        little_davenport: little,
        group_davenport: group_dav,
        rank,
        atom_degrees: degrees,
        checks,
    })
}

/// A quiver on vertices `1..=vertices`; arrows are `(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &arrows {
            if s == 0 || s > vertices || t == 0 || t > vertices {
                return Err(Error::BadVertex(s, t));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Parses `"1>2,1>2"`; the vertex count is the largest vertex named.
    pub fn parse(text: &str) -> Result<Self> {
        let mut arrows = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (s, t) = part
                .split_once('>')
                .ok_or_else(|| Error::Parse(format!("arrow `{part}` is not of the form s>t")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex `{x}`")))
            };
            arrows.push((num(s)?, num(t)?));
        }
        let vertices = arrows.iter().map(|&(s, t)| s.max(t)).max().unwrap_or(0);
        Quiver::new(vertices, arrows)
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.vertices + 1];
        for &(_, t) in &self.arrows {
            indegree[t] += 1;
        }
        let mut ready: Vec<usize> = (1..=self.vertices).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        seen == self.vertices
    }

    /// `g_i = e_{t(i)} − e_{s(i)}` in `Z^k`.
    pub fn arrow_vectors(&self) -> Vec<Vec<i64>> {
        self.arrows
            .iter()
            .map(|&(s, t)| {
                let mut v = vec![0i64; self.vertices];
                v[s - 1] -= 1;
                v[t - 1] += 1;
                v
            })
            .collect()
    }
}

/// The sequence `(g_1, …, g_m, h)` over `Z^k` of an acyclic quiver.
pub fn quiver_sequence(quiver: &Quiver, h: &[i64]) -> Result<Sequence> {
    if h.len() != quiver.vertices {
        return Err(Error::LengthMismatch {
            expected: quiver.vertices,
            found: h.len(),
        });
    }
    if !quiver.is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    let gens = quiver.arrow_vectors();
    let minus_h: Vec<i64> = h.iter().map(|&x| -x).collect();
    if !in_integer_span(&gens, &minus_h) {
        return Err(Error::NotInSubgroup);
    }
    let group = GroupSpec::free(quiver.vertices).into_group();
    let mut coords = gens;
    coords.push(h.to_vec());
    Sequence::from_coords(&group, &coords)
}

/// Grading of `B((g, h))` by the multiplicity of `h`.
pub fn quiver_grading(bm: &BlockMonoid) -> Grading {
    Grading::coordinate(bm.monoid(), bm.sequence().len() - 1)
}

/// A random acyclic quiver: arrows go forward in a random vertex order.
pub fn random_acyclic_quiver<R: Rng>(rng: &mut R, max_vertices: usize, max_arrows: usize) -> Quiver {
    let k = rng.gen_range(2..=max_vertices.max(2));
    let mut perm: Vec<usize> = (1..=k).collect();
    perm.shuffle(rng);
    let m = rng.gen_range(1..=max_arrows.max(1));
    let arrows = (0..m)
        .map(|_| {
            let i = rng.gen_range(0..k - 1);
            let j = rng.gen_range(i + 1..k);
            (perm[i], perm[j])
        })
        .collect();
    Quiver { vertices: k, arrows }
}

/// `h = −Σ c_i g_i` for random `c_i ∈ [-2, 2]`, so `−h` lies in the span.
pub fn random_weight<R: Rng>(rng: &mut R, quiver: &Quiver) -> Vec<i64> {
    let mut h = vec![0i64; quiver.vertices];
    for g in quiver.arrow_vectors() {
        let c = rng.gen_range(-2i64..=2);
        for (x, y) in h.iter_mut().zip(&g) {
            *x -= c * y;
        }
    }
    h
}
