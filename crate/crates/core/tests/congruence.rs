mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use blockmonoid::congruence::{block_catenary_degrees, chain_distance, Congruence};
use blockmonoid::group::{automorphisms, elements};
use blockmonoid::sweep::{canonical, instances};
use blockmonoid::{BlockMonoid, Grading, Sequence, Word};

use common::{factorizations, finite_groups, joining_degree};

/// Every subset of every group of order at most `max_order`, up to automorphisms.
fn supports(max_order: u64) -> Vec<Sequence> {
    let mut out = Vec::new();
    for spec in finite_groups(max_order) {
        let g = spec.into_group();
        let els = elements(&g).unwrap();
        let auts = automorphisms(&g).unwrap();
        let mut seen = BTreeSet::new();
        for mask in 1u32..(1 << els.len()) {
            let idx: Vec<usize> = (0..els.len()).filter(|&i| mask >> i & 1 == 1).collect();
            if seen.insert(canonical(&idx, &auts)) {
                out.push(Sequence::new(&g, idx.iter().map(|&i| els[i].clone()).collect()).unwrap());
            }
        }
    }
    out
}

/// The balanced pairs of length at most `d` generate the congruence exactly
/// when each minimal relation is joined inside its fiber by steps of
/// distance at most `d`.
#[test]
fn short_pairs_generate_exactly_from_the_catenary_degree() {
    for s in supports(8) {
        let bm = BlockMonoid::new(s.clone());
        let cong = Congruence::of_block(&bm);
        let c = cong.catenary_degree();
        let pres = cong.minimal_presentation(&Grading::length(bm.monoid()));
        let atoms = bm.atoms();
        let ones = vec![1u64; atoms.len()];
        let mut worst = 0;
        for p in &pres.pairs {
            let fiber = factorizations(atoms, &bm.monoid().evaluate(&p.left));
            let d = joining_degree(&fiber, &ones, p.left.as_slice(), p.right.as_slice());
            worst = worst.max(d);
        }
        assert!(worst <= c, "{s}: minimal relations need steps of {worst} > c = {c}");
        if c > 0 {
            assert_eq!(worst, c, "{s}: steps of c - 1 already suffice");
        }
    }
}

#[test]
fn catenary_degree_is_never_one() {
    for s in supports(8) {
        let c = block_catenary_degrees(&BlockMonoid::new(s.clone())).catenary;
        assert_ne!(c, 1, "{s}");
    }
    for inst in instances(8, 4).unwrap() {
        let c = block_catenary_degrees(&BlockMonoid::new(inst.sequence.clone())).catenary;
        assert_ne!(c, 1, "{}", inst.key());
    }
}

#[test]
fn graded_catenary_degree_is_the_presentation_degree_on_supports() {
    for s in supports(8) {
        let bm = BlockMonoid::new(s.clone());
        let cong = Congruence::of_block(&bm);
        let len = Grading::length(bm.monoid());
        assert_eq!(
            cong.graded_catenary_degree(&len).unwrap(),
            cong.minimal_presentation(&len).max_degree(),
            "{s}"
        );
    }
}

#[test]
fn box_and_generic_betti_elements_agree() {
    for inst in instances(5, 4).unwrap() {
        let bm = BlockMonoid::new(inst.sequence.clone());
        let boxed = Congruence::of_block(&bm);
        let generic = Congruence::new(bm.monoid());
        let elems = |c: &Congruence| -> Vec<Vec<u32>> { c.betti.iter().map(|b| b.element.clone()).collect() };
        assert_eq!(elems(&boxed), elems(&generic), "{}", inst.key());
    }
}

fn word(dim: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u32..4, dim).prop_map(Word::new)
}

proptest! {
    #[test]
    fn chain_distance_is_symmetric((a, b) in (1usize..6).prop_flat_map(|n| (word(n), word(n)))) {
        prop_assert_eq!(chain_distance(&a, &b), chain_distance(&b, &a));
        prop_assert_eq!(chain_distance(&a, &b) == 0, a == b);
        prop_assert_eq!(chain_distance(&a, &a), 0);
    }
}
