//! Brute-force reference computations, written against plain integer data
//! so they share nothing with the library beyond its input types.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use blockmonoid::{Group, GroupSpec, Sequence};

/// A sequence over a finite group as raw coordinates modulo `torsion`.
#[derive(Clone, Debug)]
pub struct Raw {
    pub torsion: Vec<i64>,
    pub coords: Vec<Vec<i64>>,
}

impl Raw {
    pub fn of(seq: &Sequence) -> Raw {
        let g = seq.group();
        assert_eq!(g.free_rank(), 0, "oracle handles finite groups only");
        Raw {
            torsion: g.torsion().iter().map(|&d| d as i64).collect(),
            coords: seq.elements().iter().map(|e| e.coords().to_vec()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self, v: &[i64]) -> bool {
        v.iter().zip(&self.torsion).all(|(x, d)| x.rem_euclid(*d) == 0)
    }

    pub fn sum(&self, alpha: &[u32]) -> Vec<i64> {
        let mut out = vec![0i64; self.torsion.len()];
        for (c, &a) in self.coords.iter().zip(alpha) {
            for (o, x) in out.iter_mut().zip(c) {
                *o += x * a as i64;
            }
        }
        out
    }

    pub fn zero_sum(&self, alpha: &[u32]) -> bool {
        self.is_zero(&self.sum(alpha))
    }

    pub fn order(&self, j: usize) -> u32 {
        (1u32..)
            .find(|&k| self.is_zero(&self.coords[j].iter().map(|x| x * k as i64).collect::<Vec<_>>()))
            .unwrap()
    }

    /// Atoms by scanning the box `α_i ≤ ord(g_i)` in order of total length.
    pub fn atoms(&self) -> Vec<Vec<u32>> {
        let bounds: Vec<u32> = (0..self.len()).map(|j| self.order(j)).collect();
        let mut zero_sums = Vec::new();
        box_points(&bounds, &mut |a| {
            if a.iter().any(|&x| x > 0) && self.zero_sum(a) {
                zero_sums.push(a.to_vec());
            }
        });
        zero_sums.sort_by_key(|a| a.iter().sum::<u32>());
        let mut atoms: Vec<Vec<u32>> = Vec::new();
        for a in zero_sums {
            if !atoms.iter().any(|b| leq(b, &a)) {
                atoms.push(a);
            }
        }
        atoms.sort();
        atoms
    }

    /// Zero-sum vectors with `|α| ≤ bound`.
    pub fn elements_up_to(&self, bound: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.len()];
        fn go(raw: &Raw, j: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if j == cur.len() {
                if raw.zero_sum(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for v in 0..=left {
                cur[j] = v;
                go(raw, j + 1, left - v, cur, out);
            }
            cur[j] = 0;
        }
        go(self, 0, bound, &mut cur, &mut out);
        out
    }
}

pub fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn box_points(bounds: &[u32], f: &mut dyn FnMut(&[u32])) {
    let mut cur = vec![0u32; bounds.len()];
    loop {
        f(&cur);
        let mut j = 0;
        loop {
            if j == bounds.len() {
                return;
            }
            if cur[j] < bounds[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = 0;
            j += 1;
        }
    }
}

/// Factorizations of `s` as exponent vectors over `atoms`, in sorted order.
pub fn factorizations(atoms: &[Vec<u32>], s: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut count = vec![0u32; atoms.len()];
    fn go(atoms: &[Vec<u32>], start: usize, rest: &mut Vec<u32>, count: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(count.clone());
            return;
        }
        for i in start..atoms.len() {
            if leq(&atoms[i], rest) {
                for (r, a) in rest.iter_mut().zip(&atoms[i]) {
                    *r -= a;
                }
                count[i] += 1;
                go(atoms, i, rest, count, out);
                count[i] -= 1;
                for (r, a) in rest.iter_mut().zip(&atoms[i]) {
                    *r += a;
                }
            }
        }
    }
    go(atoms, 0, &mut s.to_vec(), &mut count, &mut out);
    out.sort();
    out
}

/// `max(|x - gcd|, |y - gcd|)` with atom weights.
pub fn distance(x: &[u32], y: &[u32], weight: &[u64]) -> u64 {
    let (mut a, mut b) = (0u64, 0u64);
    for ((&p, &q), &w) in x.iter().zip(y).zip(weight) {
        let g = p.min(q);
        a += (p - g) as u64 * w;
        b += (q - g) as u64 * w;
    }
    a.max(b)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a] = b;
        true
    }
}

/// Least `d` joining all of `facts` by steps of weighted distance at most `d`.
pub fn element_catenary(facts: &[Vec<u32>], weight: &[u64]) -> u64 {
    let n = facts.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((distance(&facts[i], &facts[j], weight), i, j));
        }
    }
    edges.sort();
    let mut dsu = Dsu::new(n);
    let mut joined = 1;
    let mut worst = 0;
    for (d, i, j) in edges {
        if joined == n {
            break;
        }
        if dsu.union(i, j) {
            joined += 1;
            worst = d;
        }
    }
    worst
}

/// `(c, c_gr)` maximized over elements of length at most `bound`.
pub fn chain_catenary(raw: &Raw, atoms: &[Vec<u32>], bound: u32) -> (u64, u64) {
    let ones = vec![1u64; atoms.len()];
    let lengths: Vec<u64> = atoms.iter().map(|a| a.iter().map(|&x| x as u64).sum()).collect();
    let (mut c, mut cg) = (0, 0);
    for s in raw.elements_up_to(bound) {
        let f = factorizations(atoms, &s);
        if f.len() > 1 {
            c = c.max(element_catenary(&f, &ones));
            cg = cg.max(element_catenary(&f, &lengths));
        }
    }
    (c, cg)
}

/// Whether `u` and `v` are joined inside their common fiber by single
/// applications of the pairs, found by union-find over the whole fiber.
pub fn generated(atoms: &[Vec<u32>], pairs: &[(Vec<u32>, Vec<u32>)], u: &[u32], v: &[u32]) -> bool {
    let eval = |w: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; atoms[0].len()];
        for (a, &e) in atoms.iter().zip(w) {
            for (o, x) in out.iter_mut().zip(a) {
                *o += x * e;
            }
        }
        out
    };
    let s = eval(u);
    if s != eval(v) {
        return false;
    }
    let fiber = factorizations(atoms, &s);
    let index: HashMap<&Vec<u32>, usize> = fiber.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut dsu = Dsu::new(fiber.len());
    for (i, w) in fiber.iter().enumerate() {
        for (l, r) in pairs {
            for (x, y) in [(l, r), (r, l)] {
                if leq(x, w) {
                    let next: Vec<u32> = w.iter().zip(x).zip(y).map(|((a, b), c)| a - b + c).collect();
                    dsu.union(i, index[&next]);
                }
            }
        }
    }
    dsu.find(index[&u.to_vec()]) == dsu.find(index[&v.to_vec()])
}

/// All elements of a finite group as coordinate vectors.
pub fn group_elements(torsion: &[i64]) -> Vec<Vec<i64>> {
    let bounds: Vec<u32> = torsion.iter().map(|&d| d as u32 - 1).collect();
    let mut out = Vec::new();
    box_points(&bounds, &mut |p| out.push(p.iter().map(|&x| x as i64).collect()));
    out
}

fn reduce(v: &mut [i64], torsion: &[i64]) {
    for (x, d) in v.iter_mut().zip(torsion) {
        *x = x.rem_euclid(*d);
    }
}

/// `(d(G), D(G))` by growing multisets of nonzero elements: `d` is the
/// longest one without a nonempty zero-sum subsequence, `D` the longest
/// minimal zero-sum one.
pub fn davenport_pair(torsion: &[i64]) -> (u64, u64) {
    let els: Vec<Vec<i64>> = group_elements(torsion)
        .into_iter()
        .filter(|e| e.iter().any(|&x| x != 0))
        .collect();
    let key = |v: &[i64]| -> usize {
        let mut k = 0usize;
        for (x, d) in v.iter().zip(torsion) {
            k = k * *d as usize + *x as usize;
        }
        k
    };
    let size: usize = torsion.iter().product::<i64>() as usize;
    let mut best = (0u64, 0u64);
    // `sums[k]`: some nonempty subsequence has sum with key `k`
    fn go(
        start: usize,
        len: u64,
        total: &[i64],
        sums: &[bool],
        els: &[Vec<i64>],
        torsion: &[i64],
        key: &dyn Fn(&[i64]) -> usize,
        best: &mut (u64, u64),
    ) {
        best.0 = best.0.max(len);
        for (i, g) in els.iter().enumerate().skip(start) {
            let mut t: Vec<i64> = total.iter().zip(g).map(|(a, b)| a + b).collect();
            reduce(&mut t, torsion);
            if t.iter().all(|&x| x == 0) {
                best.1 = best.1.max(len + 1);
            }
            let mut next = sums.to_vec();
            let mut zero = false;
            next[key(g)] = true;
            for (k, &on) in sums.iter().enumerate() {
                if !on {
                    continue;
                }
                let mut v = decode(k, torsion);
                for (x, y) in v.iter_mut().zip(g) {
                    *x += y;
                }
                reduce(&mut v, torsion);
                next[key(&v)] = true;
            }
            if g.iter().all(|&x| x == 0) || next[0] {
                zero = true;
            }
            if !zero {
                go(i, len + 1, &t, &next, els, torsion, key, best);
            }
        }
    }
    fn decode(mut k: usize, torsion: &[i64]) -> Vec<i64> {
        let mut v = vec![0i64; torsion.len()];
        for (x, d) in v.iter_mut().zip(torsion).rev() {
            *x = (k % *d as usize) as i64;
            k /= *d as usize;
        }
        v
    }
    go(0, 0, &vec![0; torsion.len()], &vec![false; size], &els, torsion, &key, &mut best);
    best
}

pub fn group(spec: &str) -> Group {
    spec.parse::<GroupSpec>().unwrap().into_group()
}

pub fn seq(spec: &str, coords: &[&[i64]]) -> Sequence {
    let g = group(spec);
    let c: Vec<Vec<i64>> = coords.iter().map(|c| c.to_vec()).collect();
    Sequence::from_coords(&g, &c).unwrap()
}

/// Distinct multisets of length `m` over a finite group, up to nothing.
pub fn all_sequences(torsion: &[i64], m: usize) -> BTreeSet<Vec<Vec<i64>>> {
    let els = group_elements(torsion);
    let mut out = BTreeSet::new();
    let mut cur = Vec::new();
    fn go(els: &[Vec<i64>], start: usize, m: usize, cur: &mut Vec<Vec<i64>>, out: &mut BTreeSet<Vec<Vec<i64>>>) {
        if cur.len() == m {
            out.insert(cur.clone());
            return;
        }
        for i in start..els.len() {
            cur.push(els[i].clone());
            go(els, i, m, cur, out);
            cur.pop();
        }
    }
    go(&els, 0, m, &mut cur, &mut out);
    out
}

pub fn finite_groups(max_order: u64) -> Vec<GroupSpec> {
    (2..=max_order)
        .flat_map(blockmonoid::group::abelian_groups_of_order)
        .collect()
}

/// A random sequence of length `1..=max_len` over a group of order at most `max_order`.
pub fn arb_sequence(max_order: u64, max_len: usize) -> impl proptest::strategy::Strategy<Value = Sequence> {
    use proptest::prelude::*;
    let groups = finite_groups(max_order);
    (0..groups.len(), 1..=max_len).prop_flat_map(move |(g, m)| {
        let spec = groups[g].clone();
        let n = spec.order().unwrap() as usize;
        proptest::collection::vec(0..n, m).prop_map(move |idx| {
            let g = spec.clone().into_group();
            let els = blockmonoid::group::elements(&g).unwrap();
            Sequence::new(&g, idx.iter().map(|&i| els[i].clone()).collect()).unwrap()
        })
    })
}

/// Least `d` such that `u` and `v` are joined inside `facts` by steps of
/// weighted distance at most `d`.
pub fn joining_degree(facts: &[Vec<u32>], weight: &[u64], u: &[u32], v: &[u32]) -> u64 {
    let n = facts.len();
    let iu = facts.iter().position(|f| f == u).expect("u in fiber");
    let iv = facts.iter().position(|f| f == v).expect("v in fiber");
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((distance(&facts[i], &facts[j], weight), i, j));
        }
    }
    edges.sort();
    let mut dsu = Dsu::new(n);
    for (d, i, j) in edges {
        if dsu.find(iu) == dsu.find(iv) {
            break;
        }
        dsu.union(i, j);
        if dsu.find(iu) == dsu.find(iv) {
            return d;
        }
    }
    0
}
