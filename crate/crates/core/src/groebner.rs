//! Term orders on words over atom variables, binomial Buchberger completion
//! and verification of Gröbner systems.
//!
//! A Gröbner system is a list of oriented pairs `(lead, trail)` with
//! `trail ≺ lead`. Completion works directly on exponent vectors: the
//! S-pair of two rules is the pair of rewrites of the lcm of their leads,
//! and reduction rewrites a leading-side divisor into the trailing side.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{AffineMonoid, Element};
use crate::tilde::TildeLayout;
use crate::word::Word;

/// Admissible orders on the free commutative monoid of words.
///
/// `priority` lists variables from most to least significant; `weights`
/// define the grading for the graded orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Lex {
        priority: Vec<usize>,
    },
    GrLex {
        priority: Vec<usize>,
        weights: Vec<u64>,
    },
    GrevLex {
        priority: Vec<usize>,
        weights: Vec<u64>,
    },
    /// Compare `κ`-images under `base`; on a tie, the word whose flattened
    /// bracket counts are lexicographically greater is the smaller one.
    TildeExtended {
        base: Box<TermOrder>,
        layout: TildeLayout,
        // base variables from ≺-smallest to ≺-largest
        ascending: Vec<usize>,
    },
}

impl TermOrder {
    /// Lex with the last variable most significant.
    pub fn lex(n: usize) -> Self {
        TermOrder::Lex {
            priority: (0..n).rev().collect(),
        }
    }

    /// Lex with the given most-to-least significant variable list.
    pub fn lex_with(priority: Vec<usize>) -> Self {
        TermOrder::Lex { priority }
    }

    /// Graded by word length, ties broken by [`TermOrder::lex`].
    pub fn grlex(n: usize) -> Self {
        TermOrder::GrLex {
            priority: (0..n).rev().collect(),
            weights: vec![1; n],
        }
    }

    pub fn grevlex_weighted(weights: Vec<u64>) -> Self {
        TermOrder::GrevLex {
            priority: (0..weights.len()).rev().collect(),
            weights,
        }
    }

    pub fn tilde(base: TermOrder, layout: TildeLayout) -> Self {
        let n = base.num_vars();
        assert_eq!(n, layout.num_base(), "base order over the wrong atom set");
        let mut ascending: Vec<usize> = (0..n).collect();
        ascending.sort_by(|&i, &j| base.cmp_unchecked(&unit(n, i), &unit(n, j)));
        TermOrder::TildeExtended {
            base: Box::new(base),
            layout,
            ascending,
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            TermOrder::Lex { priority }
            | TermOrder::GrLex { priority, .. }
            | TermOrder::GrevLex { priority, .. } => priority.len(),
            TermOrder::TildeExtended { layout, .. } => layout.num_atoms(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex { .. } => "lex".into(),
            TermOrder::GrLex { .. } => "grlex".into(),
            TermOrder::GrevLex { .. } => "grevlex".into(),
            TermOrder::TildeExtended { base, .. } => format!("tilde({})", base.name()),
        }
    }

    /// Variables from most to least significant; empty for tilde orders.
    pub fn priority(&self) -> &[usize] {
        match self {
            TermOrder::Lex { priority }
            | TermOrder::GrLex { priority, .. }
            | TermOrder::GrevLex { priority, .. } => priority,
            TermOrder::TildeExtended { .. } => &[],
        }
    }

    pub fn compare(&self, u: &Word, v: &Word) -> Result<Ordering> {
        for w in [u, v] {
            if w.dim() != self.num_vars() {
                return Err(Error::VariableMismatch {
                    expected: self.num_vars(),
                    found: w.dim(),
                });
            }
        }
        Ok(self.cmp_unchecked(u.as_slice(), v.as_slice()))
    }

    pub(crate) fn cmp_unchecked(&self, u: &[u32], v: &[u32]) -> Ordering {
        match self {
            TermOrder::Lex { priority } => lex_cmp(priority, u, v),
            TermOrder::GrLex { priority, weights } => weighted(weights, u)
                .cmp(&weighted(weights, v))
                .then_with(|| lex_cmp(priority, u, v)),
            TermOrder::GrevLex { priority, weights } => weighted(weights, u)
                .cmp(&weighted(weights, v))
                .then_with(|| {
                    for &i in priority.iter().rev() {
                        match u[i].cmp(&v[i]) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }),
            TermOrder::TildeExtended {
                base,
                layout,
                ascending,
            } => {
                let (ku, kv) = (layout.kappa_slice(u), layout.kappa_slice(v));
                match base.cmp_unchecked(&ku, &kv) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &a in ascending {
                    for t in layout.brackets(a) {
                        match u[t].cmp(&v[t]) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                }
                Ordering::Equal
            }
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn lex_cmp(priority: &[usize], u: &[u32], v: &[u32]) -> Ordering {
    for &i in priority {
        match u[i].cmp(&v[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn weighted(weights: &[u64], u: &[u32]) -> u64 {
    u.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()
}

/// A rule `lead → trail` with `trail ≺ lead`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrientedPair {
    pub lead: Word,
    pub trail: Word,
}

impl OrientedPair {
    /// Orients `{u, v}` so that the larger word leads; `None` when `u = v`.
    pub fn oriented(u: Word, v: Word, order: &TermOrder) -> Option<OrientedPair> {
        match order.cmp_unchecked(u.as_slice(), v.as_slice()) {
            Ordering::Greater => Some(OrientedPair { lead: u, trail: v }),
            Ordering::Less => Some(OrientedPair { lead: v, trail: u }),
            Ordering::Equal => None,
        }
    }

    pub fn max_length(&self) -> u64 {
        self.lead.length().max(self.trail.length())
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerSystem {
    pub pairs: Vec<OrientedPair>,
    pub order: TermOrder,
}

impl GroebnerSystem {
    pub fn new(pairs: Vec<OrientedPair>, order: TermOrder) -> Self {
        GroebnerSystem { pairs, order }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sorts rules by lead (ascending in the order), then trail.
    pub fn sort(&mut self) {
        let order = self.order.clone();
        self.pairs.sort_by(|p, q| {
            order
                .cmp_unchecked(p.lead.as_slice(), q.lead.as_slice())
                .then_with(|| order.cmp_unchecked(p.trail.as_slice(), q.trail.as_slice()))
        });
        self.pairs.dedup();
    }
}

// ---------------------------------------------------------------------------
// completion engine

#[derive(Clone)]
struct Rule {
    lead: Vec<u32>,
    trail: Vec<u32>,
    mask: u128,
    active: bool,
}

fn mask_of(m: &[u32]) -> u128 {
    let mut mask = 0u128;
    for (i, &e) in m.iter().enumerate() {
        if e > 0 {
            mask |= 1u128 << (i % 128);
        }
    }
    mask
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

/// Replaces the divisor `take` of `m` by `put`.
fn rewrite(m: &mut [u32], take: &[u32], put: &[u32]) {
    for ((x, &t), &p) in m.iter_mut().zip(take).zip(put) {
        *x = *x - t + p;
    }
}

pub(crate) struct Completion<'a> {
    cmp: &'a dyn Fn(&[u32], &[u32]) -> Ordering,
    weights: Vec<u64>,
    rules: Vec<Rule>,
    // rules indexed by the first variable of their lead
    buckets: Vec<Vec<usize>>,
}

impl<'a> Completion<'a> {
    pub(crate) fn new(nvars: usize, cmp: &'a dyn Fn(&[u32], &[u32]) -> Ordering, weights: Vec<u64>) -> Self {
        assert_eq!(weights.len(), nvars);
        Completion {
            cmp,
            weights,
            rules: Vec::new(),
            buckets: vec![Vec::new(); nvars],
        }
    }

    fn degree(&self, m: &[u32]) -> u64 {
        weighted(&self.weights, m)
    }

    fn find_divisor(&self, m: &[u32], mask: u128) -> Option<usize> {
        for (v, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            for &r in &self.buckets[v] {
                let rule = &self.rules[r];
                if rule.active && rule.mask & !mask == 0 && divides(&rule.lead, m) {
                    return Some(r);
                }
            }
        }
        None
    }

    pub(crate) fn reduce(&self, m: &mut [u32]) {
        while let Some(r) = self.find_divisor(m, mask_of(m)) {
            let rule = &self.rules[r];
            rewrite(m, &rule.lead, &rule.trail);
        }
    }

    /// Inserts a reduced rule, deactivating rules whose lead it divides.
    /// Returns the new S-pairs that survive the Gebauer–Möller criteria.
    fn insert(&mut self, lead: Vec<u32>, trail: Vec<u32>) -> Vec<(usize, usize, Vec<u32>)> {
        let h = self.rules.len();
        let mask = mask_of(&lead);
        let mut lead_index: HashMap<&[u32], usize> = HashMap::new();
        for (i, r) in self.rules.iter().enumerate() {
            if r.active {
                lead_index.insert(&r.lead, i);
            }
        }
        // candidates sharing a variable with the new lead
        let mut classes: HashMap<Vec<u32>, usize> = HashMap::new();
        for (g, r) in self.rules.iter().enumerate() {
            if !r.active || r.mask & mask == 0 || coprime(&r.lead, &lead) {
                continue;
            }
            let l = lcm(&lead, &r.lead);
            // criterion M: some lcm(h, g2) strictly divides lcm(h, g)
            if self.strictly_divided(&lead, &l) {
                continue;
            }
            // criterion F: one pair per lcm
            classes.entry(l).or_insert(g);
        }
        let mut out = Vec::new();
        for (l, g) in classes {
            // a coprime pair with the same lcm makes the class redundant
            let rest: Vec<u32> = l.iter().zip(&lead).map(|(&x, &y)| x - y).collect();
            if let Some(&g2) = lead_index.get(rest.as_slice()) {
                if coprime(&self.rules[g2].lead, &lead) {
                    continue;
                }
            }
            out.push((g, h, l));
        }
        for r in self.rules.iter_mut() {
            if r.active && divides(&lead, &r.lead) {
                r.active = false;
            }
        }
        let first = lead.iter().position(|&e| e > 0).expect("constant lead");
        self.buckets[first].push(h);
        self.rules.push(Rule {
            lead,
            trail,
            mask,
            active: true,
        });
        out.sort();
        out
    }

    // lead(g2) | l with lcm(h, g2) ≠ l, over active rules
    fn strictly_divided(&self, h: &[u32], l: &[u32]) -> bool {
        let mask = mask_of(l);
        for (v, &e) in l.iter().enumerate() {
            if e == 0 {
                continue;
            }
            for &r in &self.buckets[v] {
                let rule = &self.rules[r];
                if rule.active
                    && rule.mask & !mask == 0
                    && divides(&rule.lead, l)
                    && lcm(h, &rule.lead) != l
                {
                    return true;
                }
            }
        }
        false
    }

    // criterion B: a rule k newer than both g1, g2 with lead(k) | L and
    // lcm(g1, k) ≠ L ≠ lcm(g2, k)
    fn chain_redundant(&self, g1: usize, g2: usize, l: &[u32]) -> bool {
        let mask = mask_of(l);
        let newer = g1.max(g2);
        for (v, &e) in l.iter().enumerate() {
            if e == 0 {
                continue;
            }
            for &k in &self.buckets[v] {
                if k <= newer {
                    continue;
                }
                let rule = &self.rules[k];
                if rule.mask & !mask == 0
                    && divides(&rule.lead, l)
                    && lcm(&self.rules[g1].lead, &rule.lead) != l
                    && lcm(&self.rules[g2].lead, &rule.lead) != l
                {
                    return true;
                }
            }
        }
        false
    }

    fn orient(&self, u: Vec<u32>, v: Vec<u32>) -> Option<(Vec<u32>, Vec<u32>)> {
        match (self.cmp)(&u, &v) {
            Ordering::Greater => Some((u, v)),
            Ordering::Less => Some((v, u)),
            Ordering::Equal => None,
        }
    }

    /// Runs Buchberger's algorithm, processing work by degree. Pairs above
    /// `degree_cap` are dropped, which yields a truncated basis.
    pub(crate) fn run(&mut self, generators: Vec<(Vec<u32>, Vec<u32>)>, degree_cap: Option<u64>) {
        // (degree, kind, a, b): kind 0 = generator index, 1 = S-pair (a, b)
        let mut queue: BinaryHeap<Reverse<(u64, u8, usize, usize)>> = BinaryHeap::new();
        let mut lcms: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
        for (i, (u, v)) in generators.iter().enumerate() {
            let d = self.degree(u).max(self.degree(v));
            queue.push(Reverse((d, 0, i, 0)));
        }
        while let Some(Reverse((d, kind, a, b))) = queue.pop() {
            if degree_cap.is_some_and(|cap| d > cap) {
                continue;
            }
            let (mut u, mut v) = if kind == 0 {
                generators[a].clone()
            } else {
                let l = lcms.remove(&(a, b)).expect("pair without lcm");
                if self.chain_redundant(a, b, &l) {
                    continue;
                }
                let mut s1 = l.clone();
                rewrite(&mut s1, &self.rules[a].lead, &self.rules[a].trail);
                let mut s2 = l;
                rewrite(&mut s2, &self.rules[b].lead, &self.rules[b].trail);
                (s1, s2)
            };
            self.reduce(&mut u);
            self.reduce(&mut v);
            let Some((lead, trail)) = self.orient(u, v) else {
                continue;
            };
            for (g, h, l) in self.insert(lead, trail) {
                let deg = self.degree(&l);
                lcms.insert((g, h), l);
                queue.push(Reverse((deg, 1, g, h)));
            }
        }
    }

    /// The reduced basis: active rules with fully reduced trails.
    pub(crate) fn reduced(&self) -> Vec<(Vec<u32>, Vec<u32>)> {
        let active: Vec<usize> = (0..self.rules.len()).filter(|&i| self.rules[i].active).collect();
        let mut out: Vec<(Vec<u32>, Vec<u32>)> = active
            .iter()
            .map(|&i| {
                let mut t = self.rules[i].trail.clone();
                self.reduce(&mut t);
                (self.rules[i].lead.clone(), t)
            })
            .collect();
        out.sort_by(|a, b| (self.cmp)(&a.0, &b.0));
        out
    }
}

// ---------------------------------------------------------------------------
// public operations

/// Completes `pairs` to the reduced Gröbner system of the congruence they generate.
pub fn complete(pairs: &[(Word, Word)], order: &TermOrder) -> GroebnerSystem {
    let n = order.num_vars();
    let cmp = |u: &[u32], v: &[u32]| order.cmp_unchecked(u, v);
    let mut engine = Completion::new(n, &cmp, vec![1; n]);
    let gens: Vec<(Vec<u32>, Vec<u32>)> = pairs
        .iter()
        .map(|(u, v)| (u.as_slice().to_vec(), v.as_slice().to_vec()))
        .collect();
    engine.run(gens, None);
    let pairs = engine
        .reduced()
        .into_iter()
        .map(|(l, t)| OrientedPair {
            lead: Word::new(l),
            trail: Word::new(t),
        })
        .collect();
    GroebnerSystem {
        pairs,
        order: order.clone(),
    }
}

/// Reduced Gröbner system of the defining congruence of `monoid`.
///
/// Uses the elimination ideal `(x_a − t^a) ∩ k[x]`: one extra variable per
/// ambient coordinate, placed after the atom variables and eliminated by a
/// block order. Everything is homogeneous for `deg x_a = |a|`, `deg t_j = 1`.
pub fn buchberger(monoid: &AffineMonoid, order: &TermOrder) -> GroebnerSystem {
    let pairs = toric_basis(monoid, &|u, v| order.cmp_unchecked(u, v), None)
        .into_iter()
        .map(|(l, t)| OrientedPair {
            lead: Word::new(l),
            trail: Word::new(t),
        })
        .collect();
    GroebnerSystem {
        pairs,
        order: order.clone(),
    }
}

pub(crate) fn toric_basis(
    monoid: &AffineMonoid,
    order: &dyn Fn(&[u32], &[u32]) -> Ordering,
    degree_cap: Option<u64>,
) -> Vec<(Vec<u32>, Vec<u32>)> {
    let n = monoid.num_atoms();
    let k = monoid.ambient_dim();
    let block = |u: &[u32], v: &[u32]| -> Ordering {
        let (tu, tv) = (&u[n..], &v[n..]);
        let du: u64 = tu.iter().map(|&e| e as u64).sum();
        let dv: u64 = tv.iter().map(|&e| e as u64).sum();
        du.cmp(&dv)
            .then_with(|| {
                for j in (0..k).rev() {
                    match tu[j].cmp(&tv[j]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            })
            .then_with(|| order(&u[..n], &v[..n]))
    };
    let mut weights: Vec<u64> = monoid
        .atoms()
        .iter()
        .map(|a| a.iter().map(|&x| x as u64).sum())
        .collect();
    weights.extend(std::iter::repeat_n(1, k));
    let gens: Vec<(Vec<u32>, Vec<u32>)> = monoid
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut t = vec![0u32; n + k];
            t[n..].copy_from_slice(a);
            let mut x = vec![0u32; n + k];
            x[i] = 1;
            (t, x)
        })
        .collect();
    let mut engine = Completion::new(n + k, &block, weights);
    engine.run(gens, degree_cap);
    engine
        .reduced()
        .into_iter()
        .filter(|(l, _)| l[n..].iter().all(|&e| e == 0))
        .map(|(mut l, mut t)| {
            l.truncate(n);
            t.truncate(n);
            (l, t)
        })
        .collect()
}

/// Rewrites leading-side divisors until none applies.
pub fn normal_form(word: &Word, system: &GroebnerSystem) -> Word {
    Reducer::new(system).normal_form(word)
}

/// Rules bucketed by the first variable of their lead.
struct Reducer {
    buckets: Vec<Vec<usize>>,
    leads: Vec<Vec<(usize, u32)>>,
    trails: Vec<Vec<(usize, u32)>>,
    memo: std::cell::RefCell<rustc_hash::FxHashMap<Vec<u32>, Vec<u32>>>,
}

fn sparse(w: &Word) -> Vec<(usize, u32)> {
    w.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x)).collect()
}

fn divides_sparse(a: &[(usize, u32)], w: &[u32]) -> bool {
    a.iter().all(|&(i, x)| w.get(i).is_some_and(|&y| y >= x))
}

impl Reducer {
    fn new(system: &GroebnerSystem) -> Self {
        let mut buckets = vec![Vec::new(); system.order.num_vars()];
        for (k, p) in system.pairs.iter().enumerate() {
            if let Some(i) = p.lead.support().next() {
                if i < buckets.len() {
                    buckets[i].push(k);
                }
            }
        }
        Reducer {
            buckets,
            leads: system.pairs.iter().map(|p| sparse(&p.lead)).collect(),
            trails: system.pairs.iter().map(|p| sparse(&p.trail)).collect(),
            memo: Default::default(),
        }
    }

    fn find_index(&self, w: &[u32]) -> Option<usize> {
        for (i, &x) in w.iter().enumerate() {
            if x == 0 || i >= self.buckets.len() {
                continue;
            }
            for &k in &self.buckets[i] {
                if divides_sparse(&self.leads[k], w) {
                    return Some(k);
                }
            }
        }
        None
    }

    fn normal_form(&self, word: &Word) -> Word {
        let mut memo = self.memo.borrow_mut();
        let mut w = word.as_slice().to_vec();
        let mut path = Vec::new();
        let nf = loop {
            if let Some(nf) = memo.get(&w) {
                break nf.clone();
            }
            match self.find_index(&w) {
                Some(k) => {
                    path.push(w.clone());
                    for &(i, x) in &self.leads[k] {
                        w[i] -= x;
                    }
                    for &(i, x) in &self.trails[k] {
                        w[i] += x;
                    }
                }
                None => break w,
            }
        };
        for p in path {
            memo.insert(p, nf.clone());
        }
        Word::new(nf)
    }
}

/// Every pair has both sides of length at most 2.
pub fn is_quadratic(system: &GroebnerSystem) -> bool {
    system.pairs.iter().all(|p| p.max_length() <= 2)
}

/// Drops rules whose lead is divisible by another lead and reduces trails.
/// On a Gröbner system this yields the reduced one.
pub fn auto_reduce(system: &GroebnerSystem) -> GroebnerSystem {
    let mut pairs = system.pairs.clone();
    pairs.sort_by(|p, q| {
        system
            .order
            .cmp_unchecked(p.lead.as_slice(), q.lead.as_slice())
            .then_with(|| system.order.cmp_unchecked(p.trail.as_slice(), q.trail.as_slice()))
    });
    let mut kept: Vec<OrientedPair> = Vec::new();
    for p in pairs {
        if !kept.iter().any(|q| q.lead.divides(&p.lead)) {
            kept.push(p);
        }
    }
    let minimal = GroebnerSystem {
        pairs: kept.clone(),
        order: system.order.clone(),
    };
    let reducer = Reducer::new(&minimal);
    let pairs = kept
        .into_iter()
        .map(|p| OrientedPair {
            trail: reducer.normal_form(&p.trail),
            lead: p.lead,
        })
        .collect();
    GroebnerSystem {
        pairs,
        order: system.order.clone(),
    }
}

/// Outcome of [`check_groebner_system`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroebnerCheck {
    /// Every pair is balanced and strictly decreasing.
    pub oriented: bool,
    /// Every S-pair of non-coprime leads reduces to a common normal form.
    pub s_pairs_reduce: bool,
    /// Every pair of the reference presentation has equal normal forms.
    pub generates: bool,
    /// On every class up to the degree bound, each non-minimal word has a lead divisor.
    /// Checked as: irreducible words of bounded degree have distinct images.
    pub classes_confluent: bool,
    pub classes_checked: usize,
}

impl GroebnerCheck {
    pub fn passed(&self) -> bool {
        self.oriented && self.s_pairs_reduce && self.generates && self.classes_confluent
    }
}

/// One pair for each lead not divisible by another lead.
fn minimal_leads(system: &GroebnerSystem) -> GroebnerSystem {
    let mut pairs: Vec<&OrientedPair> = system.pairs.iter().collect();
    pairs.sort_by_key(|p| p.lead.length());
    let mut buckets: Vec<Vec<Vec<(usize, u32)>>> = vec![Vec::new(); system.order.num_vars()];
    let mut kept = Vec::new();
    for p in pairs {
        let w = p.lead.as_slice();
        let hit = p
            .lead
            .support()
            .any(|i| buckets.get(i).is_some_and(|b| b.iter().any(|l| divides_sparse(l, w))));
        if !hit {
            let l = sparse(&p.lead);
            if let Some(&(i, _)) = l.first() {
                if i < buckets.len() {
                    buckets[i].push(l);
                }
            }
            kept.push(p.clone());
        }
    }
    GroebnerSystem {
        pairs: kept,
        order: system.order.clone(),
    }
}

/// Checks the Gröbner system conditions for the defining congruence of `monoid`.
///
/// `reference` must generate the congruence. Classes are all elements whose
/// ambient total length is at most `class_degree`.
pub fn check_groebner_system(
    system: &GroebnerSystem,
    monoid: &AffineMonoid,
    reference: &[(Word, Word)],
    class_degree: u64,
) -> GroebnerCheck {
    let n = monoid.num_atoms();
    let order = &system.order;
    let mut check = GroebnerCheck::default();
    if order.num_vars() != n
        || system
            .pairs
            .iter()
            .any(|p| p.lead.dim() != n || p.trail.dim() != n)
    {
        return check;
    }
    check.oriented = system.pairs.iter().all(|p| {
        monoid.balanced(&p.lead, &p.trail)
            && order.cmp_unchecked(p.lead.as_slice(), p.trail.as_slice()) == Ordering::Greater
    });

    // Every lead of `system` is a multiple of a lead of `minimal`, so once the
    // pairs are oriented, `system` is a Gröbner system exactly when `minimal` is.
    let minimal = minimal_leads(system);
    let reducer = Reducer::new(&minimal);
    check.s_pairs_reduce = true;
    'outer: for (i, p) in minimal.pairs.iter().enumerate() {
        for q in &minimal.pairs[i + 1..] {
            if p.lead.is_coprime(&q.lead) {
                continue;
            }
            let l = p.lead.lcm(&q.lead);
            let s1 = l.rewrite(&p.lead, &p.trail);
            let s2 = l.rewrite(&q.lead, &q.trail);
            if reducer.normal_form(&s1) != reducer.normal_form(&s2) {
                check.s_pairs_reduce = false;
                break 'outer;
            }
        }
    }

    check.generates = reference
        .iter()
        .all(|(u, v)| reducer.normal_form(u) == reducer.normal_form(v));

    // The least word of a class is never reducible once pairs are oriented,
    // so each class has a unique irreducible word iff the check holds.
    // Irreducible words are closed under division: grow them atom by atom.
    let lens: Vec<u64> = monoid
        .atoms()
        .iter()
        .map(|a| a.iter().map(|&x| x as u64).sum())
        .collect();
    let mut images: rustc_hash::FxHashSet<Element> = Default::default();
    let mut stack = vec![(vec![0u32; n], vec![0u32; monoid.ambient_dim()], 0u64, 0usize)];
    check.classes_confluent = true;
    'grow: while let Some((w, e, len, from)) = stack.pop() {
        if !images.insert(e.clone()) {
            check.classes_confluent = false;
            break;
        }
        for k in from..n {
            if len + lens[k] > class_degree {
                continue;
            }
            let mut w2 = w.clone();
            w2[k] += 1;
            if reducer.find_index(&w2).is_some() {
                continue;
            }
            let e2: Element = e.iter().zip(&monoid.atoms()[k]).map(|(x, y)| x + y).collect();
            if images.contains(&e2) {
                check.classes_confluent = false;
                break 'grow;
            }
            stack.push((w2, e2, len + lens[k], k));
        }
    }
    check.classes_checked = images.len();
    check
}

/// All elements of the monoid with ambient total length at most `bound`.
pub fn elements_up_to(monoid: &AffineMonoid, bound: u64) -> Vec<Element> {
    let k = monoid.ambient_dim();
    let mut seen: HashSet<Element> = HashSet::new();
    let mut frontier = vec![vec![0u32; k]];
    seen.insert(vec![0u32; k]);
    while let Some(s) = frontier.pop() {
        let len: u64 = s.iter().map(|&x| x as u64).sum();
        for a in monoid.atoms() {
            let la: u64 = a.iter().map(|&x| x as u64).sum();
            if len + la > bound {
                continue;
            }
            let t: Element = s.iter().zip(a).map(|(x, y)| x + y).collect();
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    let mut out: Vec<Element> = seen.into_iter().collect();
    out.sort_by(|x, y| crate::block::canonical_cmp(x, y));
    out
}

/// Default class bound: twice the largest ambient atom length.
pub fn default_class_degree(monoid: &AffineMonoid) -> u64 {
    2 * monoid
        .atoms()
        .iter()
        .map(|a| a.iter().map(|&x| x as u64).sum::<u64>())
        .max()
        .unwrap_or(0)
}

/// Definition check with the monoid's own minimal presentation as reference.
pub fn is_groebner_system(system: &GroebnerSystem, monoid: &AffineMonoid) -> bool {
    let reference: Vec<(Word, Word)> = crate::congruence::minimal_presentation(monoid)
        .pairs
        .into_iter()
        .map(|p| (p.left, p.right))
        .collect();
    check_groebner_system(system, monoid, &reference, default_class_degree(monoid)).passed()
}

/// `Γ1 ∪ Γ2 ∪ Γ3`: a Gröbner system of the tilde monoid built from one of `base`.
///
/// `monoid` is the base monoid `S`; the layout carries its grading.
pub fn tilde_groebner(
    system: &GroebnerSystem,
    monoid: &AffineMonoid,
    layout: &TildeLayout,
) -> Result<GroebnerSystem> {
    if !is_groebner_system(system, monoid) {
        return Err(Error::NotGroebner(
            "base system fails the Gröbner check".into(),
        ));
    }
    Ok(tilde_groebner_unchecked(system, layout))
}

pub(crate) fn tilde_groebner_unchecked(system: &GroebnerSystem, layout: &TildeLayout) -> GroebnerSystem {
    let order = TermOrder::tilde(system.order.clone(), layout.clone());
    let mut pairs: Vec<OrientedPair> = Vec::new();
    // Γ1
    for p in &system.pairs {
        let lifts_l = layout.all_lifts(&p.lead);
        let lifts_t = layout.all_lifts(&p.trail);
        for l in &lifts_l {
            let dl = layout.delta(l);
            for t in lifts_t.iter().filter(|t| layout.delta(t) == dl) {
                pairs.push(OrientedPair {
                    lead: l.clone(),
                    trail: t.clone(),
                });
            }
        }
    }
    let n = layout.num_base();
    let TermOrder::TildeExtended { ascending, .. } = &order else {
        unreachable!()
    };
    let rank: Vec<usize> = {
        let mut r = vec![0; n];
        for (pos, &a) in ascending.iter().enumerate() {
            r[a] = pos;
        }
        r
    };
    let nt = layout.num_atoms();
    let word2 = |x: usize, y: usize| {
        let mut w = Word::zero(nt);
        w.bump(x, 1);
        w.bump(y, 1);
        w
    };
    // Γ2: x_a ≺ x_b, 0 < i ≤ |a|, 0 ≤ j < |b|
    for a in 0..n {
        for b in 0..n {
            if rank[a] >= rank[b] {
                continue;
            }
            for i in 1..=layout.degree(a) as usize {
                for j in 0..layout.degree(b) as usize {
                    pairs.push(OrientedPair {
                        lead: word2(layout.index(a, i), layout.index(b, j)),
                        trail: word2(layout.index(a, i - 1), layout.index(b, j + 1)),
                    });
                }
            }
        }
    }
    // Γ3: 0 < i ≤ j < |a|
    for a in 0..n {
        let d = layout.degree(a) as usize;
        for i in 1..d {
            for j in i..d {
                pairs.push(OrientedPair {
                    lead: word2(layout.index(a, i), layout.index(a, j)),
                    trail: word2(layout.index(a, i - 1), layout.index(a, j + 1)),
                });
            }
        }
    }
    let mut out = GroebnerSystem { pairs, order };
    out.sort();
    out
}
