//! The defining congruence of a monoid: chain distances, Betti elements,
//! minimal presentations and (graded) catenary degrees.
//!
//! Both catenary degrees are computed at Betti elements, i.e. elements whose
//! factorizations split into more than one class under "shares an atom".
//! Every generating set of the congruence must contain a pair at each Betti
//! element (a rewrite with a nontrivial common factor never leaves a class),
//! so the elements reached by a Gröbner basis contain all Betti elements.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::block::BlockMonoid;
use crate::error::{Error, Result};
use crate::groebner::{toric_basis, TermOrder};
use crate::monoid::{AffineMonoid, Element, Grading};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CongruencePair {
    pub left: Word,
    pub right: Word,
}

impl CongruencePair {
    pub fn new(left: Word, right: Word) -> Self {
        CongruencePair { left, right }
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub pairs: Vec<CongruencePair>,
    pub monoid: AffineMonoid,
    pub grading: Grading,
}

impl Presentation {
    pub fn new(monoid: &AffineMonoid, grading: Grading, pairs: Vec<CongruencePair>) -> Result<Self> {
        for p in &pairs {
            if p.left.dim() != monoid.num_atoms() || p.right.dim() != monoid.num_atoms() {
                return Err(Error::LengthMismatch {
                    expected: monoid.num_atoms(),
                    found: p.left.dim().max(p.right.dim()),
                });
            }
            if !monoid.balanced(&p.left, &p.right) {
                return Err(Error::Unbalanced);
            }
        }
        Ok(Presentation {
            pairs,
            monoid: monoid.clone(),
            grading,
        })
    }

    /// Largest graded degree of a pair; 0 when empty.
    pub fn max_degree(&self) -> u64 {
        self.pairs
            .iter()
            .map(|p| self.grading.of(&p.left).max(self.grading.of(&p.right)))
            .max()
            .unwrap_or(0)
    }

    /// Largest word length of a pair; 0 when empty.
    pub fn max_length(&self) -> u64 {
        self.pairs
            .iter()
            .map(|p| p.left.length().max(p.right.length()))
            .max()
            .unwrap_or(0)
    }
}

/// `d(α, γ) = max(|α − gcd|, |γ − gcd|)`.
pub fn chain_distance(alpha: &Word, gamma: &Word) -> u64 {
    let (mut a, mut c) = (0u64, 0u64);
    for (&x, &y) in alpha.iter().zip(gamma.iter()) {
        if x > y {
            a += (x - y) as u64;
        } else {
            c += (y - x) as u64;
        }
    }
    a.max(c)
}

/// The chain distance with atom degrees as weights.
pub fn graded_chain_distance(alpha: &Word, gamma: &Word, grading: &Grading) -> u64 {
    let (mut a, mut c) = (0u64, 0u64);
    for ((&x, &y), &w) in alpha.iter().zip(gamma.iter()).zip(grading.degrees()) {
        if x > y {
            a += (x - y) as u64 * w;
        } else {
            c += (y - x) as u64 * w;
        }
    }
    a.max(c)
}

/// Least `d` such that the graph on `z` with edges `dist ≤ d` is connected
/// (the largest edge of a minimum spanning tree).
pub fn bottleneck(z: &[Word], dist: impl Fn(&Word, &Word) -> u64) -> u64 {
    let n = z.len();
    if n <= 1 {
        return 0;
    }
    let mut best = vec![u64::MAX; n];
    let mut done = vec![false; n];
    best[0] = 0;
    let mut worst = 0;
    for _ in 0..n {
        let (i, _) = (0..n)
            .filter(|&i| !done[i])
            .map(|i| (i, best[i]))
            .min_by_key(|&(i, b)| (b, i))
            .expect("vertex left");
        done[i] = true;
        worst = worst.max(best[i]);
        for j in 0..n {
            if !done[j] {
                best[j] = best[j].min(dist(&z[i], &z[j]));
            }
        }
    }
    worst
}

/// Classes of factorizations under the closure of "shares an atom".
pub fn r_classes(z: &[Word]) -> Vec<Vec<usize>> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    if let Some(first) = z.first() {
        for atom in 0..first.dim() {
            let mut holder: Option<usize> = None;
            for (i, w) in z.iter().enumerate() {
                if w.get(atom) == 0 {
                    continue;
                }
                match holder {
                    None => holder = Some(i),
                    Some(h) => {
                        let (a, b) = (find(&mut parent, h), find(&mut parent, i));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(c) => classes[c].push(i),
            None => {
                root_of[r] = Some(classes.len());
                classes.push(vec![i]);
            }
        }
    }
    classes
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiElement {
    pub element: Element,
    /// All factorizations, sorted.
    pub factorizations: Vec<Word>,
    /// Indices into `factorizations`, one list per class.
    pub classes: Vec<Vec<usize>>,
}

impl BettiElement {
    /// `max_R min_{z ∈ R} weight(z)` over the R-classes. A chain leaving a
    /// class steps between factorizations with no common atom, so this is the
    /// least bottleneck joining the classes; chains inside a class come from
    /// smaller elements.
    pub fn class_degree(&self, weight: impl Fn(&Word) -> u64) -> u64 {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&i| weight(&self.factorizations[i])).min().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}

/// Elements reached by the pairs of a reduced Gröbner basis, in canonical order.
pub fn betti_candidates(monoid: &AffineMonoid) -> Vec<Element> {
    let weights: Vec<u64> = monoid
        .atoms()
        .iter()
        .map(|a| a.iter().map(|&x| x as u64).sum())
        .collect();
    let order = TermOrder::grevlex_weighted(weights);
    let basis = toric_basis(monoid, &|u, v| order.cmp_unchecked(u, v), None);
    let set: BTreeSet<Element> = basis
        .iter()
        .map(|(lead, _)| monoid.evaluate(&Word::from(&lead[..])))
        .collect();
    let mut out: Vec<Element> = set.into_iter().collect();
    out.sort_by(|x, y| crate::block::canonical_cmp(x, y));
    out
}

/// The Betti elements of `monoid`, in canonical order.
pub fn betti_elements(monoid: &AffineMonoid) -> Vec<BettiElement> {
    betti_candidates(monoid)
        .into_iter()
        .filter_map(|s| {
            let z = monoid.factorizations(&s);
            let classes = r_classes(&z);
            (classes.len() > 1).then_some(BettiElement {
                element: s,
                factorizations: z,
                classes,
            })
        })
        .collect()
}

/// Betti elements of `B(g)` when every `g_j` has finite order `o_j`, in
/// canonical order; `None` otherwise.
///
/// `B(g)` is full in `N0^m`, so the classes of `s` are the components of the
/// graph on the atoms `a ≤ s` with an edge whenever `a + b ≤ s`. Once
/// `s_j ≥ 2 o_j` the atom `o_j e_j` is adjacent to all other vertices, so only
/// the box `s_j < 2 o_j` is searched. Coordinates holding equal elements are
/// interchangeable; the search keeps them non-increasing and expands orbits.
pub fn box_betti_elements(block: &BlockMonoid) -> Option<Vec<BettiElement>> {
    let (reps, twin) = box_search(block)?;
    let mut all: BTreeSet<Element> = BTreeSet::new();
    for rep in &reps {
        expand_orbit(rep, &twin, &mut all);
    }
    Some(with_classes(block, all.into_iter().collect()))
}

/// One Betti element per orbit under permutations of equal sequence entries.
pub fn box_betti_representatives(block: &BlockMonoid) -> Option<Vec<BettiElement>> {
    let (reps, _) = box_search(block)?;
    Some(with_classes(block, reps))
}

fn with_classes(block: &BlockMonoid, mut elements: Vec<Element>) -> Vec<BettiElement> {
    elements.sort_by(|x, y| crate::block::canonical_cmp(x, y));
    let monoid = block.monoid();
    elements
        .into_iter()
        .map(|s| {
            let z = monoid.factorizations(&s);
            let classes = r_classes(&z);
            debug_assert!(classes.len() > 1);
            BettiElement {
                element: s,
                factorizations: z,
                classes,
            }
        })
        .collect()
}

type Twins = Vec<Option<usize>>;

fn box_search(block: &BlockMonoid) -> Option<(Vec<Element>, Twins)> {
    let seq = block.sequence();
    let elements = seq.elements();
    let m = elements.len();
    let mut orders = Vec::with_capacity(m);
    for e in elements {
        orders.push(e.order().finite()?);
    }
    let torsion: Vec<i64> = {
        let g = seq.group();
        std::iter::repeat_n(0, g.free_rank())
            .chain(g.torsion().iter().map(|&d| d as i64))
            .collect()
    };
    // previous coordinate holding the same element
    let twin: Twins = (0..m)
        .map(|j| (0..j).rev().find(|&i| elements[i] == elements[j]))
        .collect();
    let mut search = BoxSearch {
        coords: elements.iter().map(|e| e.coords().to_vec()).collect(),
        torsion,
        orders,
        twin,
        atoms: block.atoms(),
        packed: None,
        found: Vec::new(),
    };
    if m <= 8 && search.orders.iter().all(|&n| n <= 64) {
        search.packed = Some(search.atoms.iter().map(|a| pack(a)).collect());
    }
    if m == 0 {
        return Some((Vec::new(), search.twin));
    }
    let mut s = vec![0u32; m];
    let mut sum = vec![0i64; search.torsion.len()];
    let all: Vec<u32> = (0..search.atoms.len() as u32).collect();
    search.descend(0, &mut s, &mut sum, &all);
    Some((search.found, search.twin))
}

/// `c` and `c_gr` (length grading) of a block monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CatenaryDegrees {
    pub catenary: u64,
    pub graded: u64,
}

/// Both invariants are constant on orbits of Betti elements under
/// permutations of equal entries, so representatives suffice.
pub fn block_catenary_degrees(block: &BlockMonoid) -> CatenaryDegrees {
    let len = block.length_grading();
    let betti = box_betti_representatives(block).unwrap_or_else(|| betti_elements(block.monoid()));
    let mut out = CatenaryDegrees {
        catenary: 0,
        graded: 0,
    };
    for b in &betti {
        out.catenary = out.catenary.max(b.class_degree(Word::length));
        out.graded = out.graded.max(b.class_degree(|w| len.of(w)));
    }
    out
}

struct BoxSearch<'a> {
    coords: Vec<Vec<i64>>,
    torsion: Vec<i64>,
    orders: Vec<u64>,
    twin: Vec<Option<usize>>,
    atoms: &'a [Element],
    // one byte per coordinate, when every order is at most 64 and m <= 8
    packed: Option<Vec<u64>>,
    found: Vec<Element>,
}

const HIGH_BITS: u64 = 0x8080_8080_8080_8080;

fn pack(v: &[u32]) -> u64 {
    v.iter().enumerate().fold(0, |acc, (j, &x)| acc | (x as u64) << (8 * j))
}

impl BoxSearch<'_> {
    /// `below` holds the atoms bounded by `s` on the coordinates fixed so far.
    fn descend(&mut self, j: usize, s: &mut Vec<u32>, sum: &mut Vec<i64>, below: &[u32]) {
        let m = s.len();
        let mut top = 2 * self.orders[j] as u32 - 2;
        if let Some(i) = self.twin[j] {
            top = top.min(s[i]);
        }
        if j + 1 == m {
            self.last(s, sum, below, top);
            return;
        }
        // bucket by the j-th coordinate so that each prefix is the next list
        let mut sorted = below.to_vec();
        sorted.sort_by_key(|&a| self.atoms[a as usize][j]);
        let mut cut = 0;
        for v in 0..=top {
            while cut < sorted.len() && self.atoms[sorted[cut] as usize][j] <= v {
                cut += 1;
            }
            s[j] = v;
            if !self.may_split(&sorted[..cut], s, j + 1) {
                continue;
            }
            for (t, &c) in sum.iter_mut().zip(&self.coords[j]) {
                *t += c * v as i64;
            }
            self.descend(j + 1, s, sum, &sorted[..cut]);
            for (t, &c) in sum.iter_mut().zip(&self.coords[j]) {
                *t -= c * v as i64;
            }
        }
        s[j] = 0;
    }

    /// A necessary condition for a Betti element above the first `fixed`
    /// coordinates of `s`. Let `K = {k : s_k ≥ o_k}`. Every atom `b` with
    /// `b_k ≤ s_k − o_k` for some `k ∈ K` is adjacent to `o_k e_k`, so a
    /// second class needs a factorization of length at least two built from
    /// atoms with `b_k > s_k − o_k` on all of `K`. Fixing more coordinates
    /// only shrinks that set, so a failure prunes the whole subtree.
    fn may_split(&self, below: &[u32], s: &[u32], fixed: usize) -> bool {
        let Some(p) = &self.packed else {
            return true;
        };
        let mut floor = 0u64;
        let mut any = false;
        for k in 0..fixed {
            let o = self.orders[k] as u32;
            if s[k] >= o {
                floor |= ((s[k] - o + 1) as u64) << (8 * k);
                any = true;
            }
        }
        if !any {
            return true;
        }
        let mask = if fixed >= 8 { u64::MAX } else { (1u64 << (8 * fixed)) - 1 };
        let top = pack(&s[..fixed]) | HIGH_BITS;
        let high: Vec<u64> = below
            .iter()
            .map(|&a| p[a as usize])
            .filter(|&b| ((b | HIGH_BITS) - floor) & HIGH_BITS == HIGH_BITS)
            .collect();
        for (i, &a) in high.iter().enumerate() {
            for &b in &high[i..] {
                if (top - ((a + b) & mask)) & HIGH_BITS == HIGH_BITS {
                    return true;
                }
            }
        }
        false
    }
}

impl BoxSearch<'_> {
    /// The last coordinate is forced up to its order by the zero-sum condition.
    fn last(&mut self, s: &mut [u32], sum: &[i64], below: &[u32], top: u32) {
        let j = s.len() - 1;
        let mut next = Vec::with_capacity(below.len());
        for v in 0..=top {
            let zero = sum
                .iter()
                .zip(&self.coords[j])
                .zip(&self.torsion)
                .all(|((&t, &c), &d)| {
                    let x = t + c * v as i64;
                    if d == 0 {
                        x == 0
                    } else {
                        x % d == 0
                    }
                });
            if !zero {
                continue;
            }
            s[j] = v;
            next.clear();
            next.extend(below.iter().copied().filter(|&a| self.atoms[a as usize][j] <= v));
            if !self.may_split(&next, s, j + 1) {
                continue;
            }
            let split = match &self.packed {
                Some(p) => disconnected_packed(p, &next, pack(s)),
                None => disconnected(self.atoms, &next, s),
            };
            if split {
                self.found.push(s.to_vec());
            }
        }
        s[j] = 0;
    }
}

/// [`disconnected`] on byte-packed vectors: entries stay below 128 and sums
/// of two atoms below 129, so `a + b ≤ s` lanewise iff every high bit of
/// `(s | 0x80..) − (a + b)` survives.
fn disconnected_packed(atoms: &[u64], below: &[u32], s: u64) -> bool {
    if below.len() < 2 {
        return false;
    }
    let top = s | HIGH_BITS;
    let adjacent = |a: u32, b: u32| (top - (atoms[a as usize] + atoms[b as usize])) & HIGH_BITS == HIGH_BITS;
    let mut unseen: Vec<u32> = below[1..].to_vec();
    let mut stack = vec![below[0]];
    while let Some(v) = stack.pop() {
        let mut k = 0;
        while k < unseen.len() {
            if adjacent(v, unseen[k]) {
                stack.push(unseen.swap_remove(k));
            } else {
                k += 1;
            }
        }
        if unseen.is_empty() {
            return false;
        }
    }
    true
}

fn disconnected(atoms: &[Element], below: &[u32], s: &[u32]) -> bool {
    if below.len() < 2 {
        return false;
    }
    let adjacent = |a: u32, b: u32| {
        let (a, b) = (&atoms[a as usize], &atoms[b as usize]);
        a.iter().zip(b).zip(s).all(|((x, y), z)| x + y <= *z)
    };
    let mut unseen: Vec<u32> = below[1..].to_vec();
    let mut stack = vec![below[0]];
    while let Some(v) = stack.pop() {
        let mut k = 0;
        while k < unseen.len() {
            if adjacent(v, unseen[k]) {
                stack.push(unseen.swap_remove(k));
            } else {
                k += 1;
            }
        }
        if unseen.is_empty() {
            return false;
        }
    }
    true
}

/// Adds every vector obtained from `rep` by permuting coordinates that hold equal elements.
fn expand_orbit(rep: &[u32], twin: &[Option<usize>], out: &mut BTreeSet<Element>) {
    let m = rep.len();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for j in 0..m {
        match twin[j] {
            None => blocks.push(vec![j]),
            Some(i) => blocks.iter_mut().find(|b| b.contains(&i)).unwrap().push(j),
        }
    }
    let mut acc: Vec<Element> = vec![rep.to_vec()];
    for b in &blocks {
        if b.len() < 2 {
            continue;
        }
        let mut next = Vec::new();
        for v in &acc {
            let mut vals: Vec<u32> = b.iter().map(|&j| v[j]).collect();
            vals.sort_unstable();
            loop {
                let mut w = v.clone();
                for (&j, &x) in b.iter().zip(&vals) {
                    w[j] = x;
                }
                next.push(w);
                if !next_permutation(&mut vals) {
                    break;
                }
            }
        }
        acc = next;
    }
    out.extend(acc);
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn concat_cmp(a: &(Word, Word), b: &(Word, Word)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
}

/// Pairs joining the classes of one Betti element into a tree, choosing
/// the smallest available pair (graded degree, then lexicographic) each time.
fn connect_classes(b: &BettiElement, grading: &Grading) -> Vec<CongruencePair> {
    let z = &b.factorizations;
    let mut class_of = vec![0usize; z.len()];
    for (c, members) in b.classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    let mut edges: Vec<(u64, (Word, Word), usize, usize)> = Vec::new();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if class_of[i] != class_of[j] {
                let d = grading.of(&z[i]).max(grading.of(&z[j]));
                edges.push((d, (z[i].clone(), z[j].clone()), class_of[i], class_of[j]));
            }
        }
    }
    edges.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| concat_cmp(&x.1, &y.1)));
    let mut parent: Vec<usize> = (0..b.classes.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    let mut out = Vec::new();
    for (_, (l, r), ci, cj) in edges {
        let (a, c) = (find(&mut parent, ci), find(&mut parent, cj));
        if a != c {
            parent[a] = c;
            out.push(CongruencePair::new(l, r));
        }
    }
    out
}

/// Betti data of a monoid, computed once and queried for the invariants.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub monoid: AffineMonoid,
    pub betti: Vec<BettiElement>,
}

impl Congruence {
    pub fn new(monoid: &AffineMonoid) -> Self {
        Congruence {
            monoid: monoid.clone(),
            betti: betti_elements(monoid),
        }
    }

    /// Like [`Congruence::new`], but for sequences of finite-order elements
    /// the Betti elements come from [`box_betti_elements`].
    pub fn of_block(block: &BlockMonoid) -> Self {
        let betti = box_betti_elements(block).unwrap_or_else(|| betti_elements(block.monoid()));
        Congruence {
            monoid: block.monoid().clone(),
            betti,
        }
    }

    pub fn minimal_presentation(&self, grading: &Grading) -> Presentation {
        let pairs = self
            .betti
            .iter()
            .flat_map(|b| connect_classes(b, grading))
            .collect();
        Presentation {
            pairs,
            monoid: self.monoid.clone(),
            grading: grading.clone(),
        }
    }

    pub fn catenary_degree(&self) -> u64 {
        self.betti
            .iter()
            .map(|b| b.class_degree(Word::length))
            .max()
            .unwrap_or(0)
    }

    pub fn graded_catenary_degree(&self, grading: &Grading) -> Result<u64> {
        grading.ensure_positive()?;
        Ok(self
            .betti
            .iter()
            .map(|b| b.class_degree(|w| grading.of(w)))
            .max()
            .unwrap_or(0))
    }
}

/// A minimal presentation under the total-length grading.
pub fn minimal_presentation(monoid: &AffineMonoid) -> Presentation {
    Congruence::new(monoid).minimal_presentation(&Grading::length(monoid))
}

pub fn catenary_degree(monoid: &AffineMonoid) -> u64 {
    Congruence::new(monoid).catenary_degree()
}

pub fn graded_catenary_degree(monoid: &AffineMonoid, grading: &Grading) -> Result<u64> {
    grading.ensure_positive()?;
    Congruence::new(monoid).graded_catenary_degree(grading)
}

/// `max c(s)` over the elements of ambient length at most `bound`, where
/// `c(s)` is the least `d` joining all factorizations of `s` by `d`-chains.
pub fn catenary_up_to(monoid: &AffineMonoid, bound: u64) -> u64 {
    crate::groebner::elements_up_to(monoid, bound)
        .iter()
        .map(|s| bottleneck(&monoid.factorizations(s), chain_distance))
        .max()
        .unwrap_or(0)
}

/// Whether `pair` lies in the congruence generated by the presentation,
/// by breadth-first rewriting inside the factorizations of `π(left)`.
pub fn congruence_contains(presentation: &Presentation, pair: &CongruencePair) -> Result<bool> {
    contains_in(&presentation.monoid, &presentation.pairs, pair)
}

pub(crate) fn contains_in(
    monoid: &AffineMonoid,
    pairs: &[CongruencePair],
    pair: &CongruencePair,
) -> Result<bool> {
    let n = monoid.num_atoms();
    if pair.left.dim() != n || pair.right.dim() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: pair.left.dim().max(pair.right.dim()),
        });
    }
    if !monoid.balanced(&pair.left, &pair.right) {
        return Err(Error::Unbalanced);
    }
    if pair.left == pair.right {
        return Ok(true);
    }
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(pair.left.clone());
    queue.push_back(pair.left.clone());
    while let Some(w) = queue.pop_front() {
        for p in pairs {
            for (x, y) in [(&p.left, &p.right), (&p.right, &p.left)] {
                if x.divides(&w) {
                    let next = w.rewrite(x, y);
                    if next == pair.right {
                        return Ok(true);
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> AffineMonoid {
        // canonical order: c = (1,1), b = (0,3), a = (3,0)
        AffineMonoid::new(2, vec![vec![1, 1], vec![0, 3], vec![3, 0]])
    }

    fn w(v: &[u32]) -> Word {
        Word::new(v.to_vec())
    }

    #[test]
    fn chain_distance_examples() {
        // spec order (a, b, c) = (3,0), (0,3), (1,1)
        assert_eq!(chain_distance(&w(&[1, 1, 0]), &w(&[0, 0, 3])), 3);
        assert_eq!(chain_distance(&w(&[1, 1, 0]), &w(&[1, 1, 0])), 0);
        assert_eq!(chain_distance(&w(&[2, 1]), &w(&[1, 2])), 1);
        let g = Grading::new(vec![3, 3, 2]);
        assert_eq!(graded_chain_distance(&w(&[1, 1, 0]), &w(&[0, 0, 3]), &g), 6);
        let g = Grading::new(vec![2, 2, 2]);
        assert_eq!(graded_chain_distance(&w(&[1, 1, 0]), &w(&[0, 0, 2]), &g), 4);
    }

    #[test]
    fn z3_presentation_and_catenary() {
        let m = z3();
        let p = minimal_presentation(&m);
        assert_eq!(p.pairs, vec![CongruencePair::new(w(&[0, 1, 1]), w(&[3, 0, 0]))]);
        assert_eq!(p.max_degree(), 6);
        assert_eq!(catenary_degree(&m), 3);
        assert_eq!(graded_catenary_degree(&m, &Grading::length(&m)).unwrap(), 6);

        let query = CongruencePair::new(w(&[1, 1, 2]), w(&[4, 0, 1]));
        assert!(congruence_contains(&p, &query).unwrap());
        let same = CongruencePair::new(w(&[2, 0, 0]), w(&[2, 0, 0]));
        assert!(congruence_contains(&p, &same).unwrap());
        let empty = Presentation::new(&m, Grading::length(&m), vec![]).unwrap();
        let rel = CongruencePair::new(w(&[0, 1, 1]), w(&[3, 0, 0]));
        assert!(!congruence_contains(&empty, &rel).unwrap());
        let bad = CongruencePair::new(w(&[1, 0, 0]), w(&[0, 1, 0]));
        assert_eq!(congruence_contains(&p, &bad), Err(Error::Unbalanced));
    }

    #[test]
    fn free_and_repeated() {
        let free = AffineMonoid::new(1, vec![vec![2]]);
        assert!(minimal_presentation(&free).pairs.is_empty());
        assert_eq!(catenary_degree(&free), 0);
        assert_eq!(graded_catenary_degree(&free, &Grading::length(&free)).unwrap(), 0);

        let rep = AffineMonoid::new(2, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(catenary_degree(&rep), 2);
        assert_eq!(graded_catenary_degree(&rep, &Grading::length(&rep)).unwrap(), 4);
    }

    #[test]
    fn zero_degree_rejected() {
        let m = z3();
        let g = Grading::coordinate(&m, 1);
        assert_eq!(graded_catenary_degree(&m, &g), Err(Error::NotConnectedGraded(2)));
    }

    #[test]
    fn klein_full_support() {
        // atoms 2e1, 2e2, 2e3, (1,1,1) in canonical order: (1,1,1) first
        let m = AffineMonoid::new(
            3,
            vec![vec![1, 1, 1], vec![0, 0, 2], vec![0, 2, 0], vec![2, 0, 0]],
        );
        let p = minimal_presentation(&m);
        assert_eq!(p.pairs, vec![CongruencePair::new(w(&[0, 1, 1, 1]), w(&[2, 0, 0, 0]))]);
    }

    #[test]
    fn bottleneck_basics() {
        let z = vec![w(&[1, 1, 0]), w(&[0, 0, 3])];
        assert_eq!(bottleneck(&z, chain_distance), 3);
        assert_eq!(bottleneck(&z[..1], chain_distance), 0);
    }

    #[test]
    fn box_search_matches_groebner() {
        use crate::block::Sequence;
        use crate::group::GroupSpec;
        let cases: [(&str, &[&[i64]]); 7] = [
            ("Z/3", &[&[1], &[2]]),
            ("Z/2", &[&[1], &[1]]),
            ("Z/4", &[&[1], &[1], &[2], &[3]]),
            ("Z/5", &[&[0], &[1], &[2], &[3], &[4]]),
            ("Z/6", &[&[1], &[1], &[1], &[2]]),
            ("Z/2 x Z/2", &[&[0, 1], &[1, 0], &[1, 1], &[1, 1]]),
            ("Z/3", &[&[1], &[1], &[2], &[2]]),
        ];
        for (g, coords) in cases {
            let g = g.parse::<GroupSpec>().unwrap().into_group();
            let c: Vec<Vec<i64>> = coords.iter().map(|c| c.to_vec()).collect();
            let b = BlockMonoid::new(Sequence::from_coords(&g, &c).unwrap());
            let fast: Vec<Element> = box_betti_elements(&b).unwrap().into_iter().map(|x| x.element).collect();
            let slow: Vec<Element> = betti_elements(b.monoid()).into_iter().map(|x| x.element).collect();
            assert_eq!(fast, slow, "{}", b.sequence());
        }
    }
}
