mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use blockmonoid::congruence::Congruence;
use blockmonoid::sweep::{instances, repeat_indices};
use blockmonoid::tilde::{
    btilde_isomorphism, quadratic_chain, tilde_congruent, tilde_monoid, tilde_presentation, Lift, TildeLayout,
};
use blockmonoid::{BlockMonoid, Grading, Sequence, Word};

use common::{arb_sequence, generated, Raw};

fn arb_repeat() -> impl Strategy<Value = (Sequence, usize)> {
    arb_sequence(6, 3).prop_flat_map(|s| {
        let m = s.len();
        (Just(s), 0..m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lifted_pairs_are_congruent((s, r) in arb_repeat(), seed in any::<u64>()) {
        let iso = btilde_isomorphism(&s, r).unwrap();
        let base = Congruence::of_block(&iso.base).minimal_presentation(&iso.grading());
        let tm = tilde_monoid(&base.monoid, &iso.layout);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for lift in [Lift::Greedy, Lift::Random(&mut rng)] {
            let lifted = tilde_presentation(&base, lift).unwrap();
            for p in &lifted.pairs {
                prop_assert!(tilde_congruent(&p.left, &p.right, &base.monoid, &iso.layout));
                prop_assert!(tm.balanced(&p.left, &p.right));
            }
        }
    }

    #[test]
    fn chain_steps_move_two_brackets(
        degrees in proptest::collection::vec(1u64..4, 1..4),
        counts in proptest::collection::vec(0u32..4, 3),
        frac in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let layout = TildeLayout::new(degrees.clone());
        let lambda = Word::new(counts.into_iter().take(degrees.len()).collect());
        let i = (layout.base_degree(&lambda) as f64 * frac).floor() as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = layout.random_lift(&lambda, i, &mut rng).unwrap();
        let b = layout.random_lift(&lambda, i, &mut rng).unwrap();
        let chain = quadratic_chain(&a, &b, &layout).unwrap();
        prop_assert_eq!(chain.first(), Some(&a));
        prop_assert_eq!(chain.last(), Some(&b));
        for w in chain.windows(2) {
            prop_assert_eq!(layout.kappa(&w[0]), layout.kappa(&w[1]));
            prop_assert_eq!(layout.delta(&w[0]), layout.delta(&w[1]));
            // one copy of some atom goes up a bracket, one copy goes down
            let mut removed = Vec::new();
            let mut added = Vec::new();
            for t in 0..layout.num_atoms() {
                let (x, y) = (w[0].get(t), w[1].get(t));
                let at = layout.atom_of(t);
                for _ in y..x {
                    removed.push((at.base, at.bracket as i64));
                }
                for _ in x..y {
                    added.push((at.base, at.bracket as i64));
                }
            }
            prop_assert_eq!(removed.len(), 2, "{:?} -> {:?}", &w[0], &w[1]);
            prop_assert_eq!(added.len(), 2);
            let shift = |r: (usize, i64), a: (usize, i64)| if r.0 == a.0 { a.1 - r.1 } else { 0 };
            let straight = [shift(removed[0], added[0]), shift(removed[1], added[1])];
            let crossed = [shift(removed[0], added[1]), shift(removed[1], added[0])];
            let ok = |v: [i64; 2]| v == [1, -1] || v == [-1, 1];
            prop_assert!(ok(straight) || ok(crossed), "{:?} -> {:?}", &w[0], &w[1]);
        }
    }
}

#[test]
fn random_lifts_generate_the_repeated_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for inst in instances(4, 3).unwrap() {
        for r in repeat_indices(&inst.sequence) {
            let iso = btilde_isomorphism(&inst.sequence, r).unwrap();
            let base = Congruence::of_block(&iso.base).minimal_presentation(&iso.grading());
            let lifted = tilde_presentation(&base, Lift::Random(&mut rng)).unwrap();
            let atoms = iso.repeated.atoms();
            let moved: Vec<(Vec<u32>, Vec<u32>)> = lifted
                .pairs
                .iter()
                .map(|p| {
                    (
                        iso.word_to_repeated(&p.left).into_vec(),
                        iso.word_to_repeated(&p.right).into_vec(),
                    )
                })
                .collect();
            let direct = Congruence::of_block(&iso.repeated).minimal_presentation(&Grading::length(iso.repeated.monoid()));
            let direct: Vec<(Vec<u32>, Vec<u32>)> = direct
                .pairs
                .iter()
                .map(|p| (p.left.clone().into_vec(), p.right.clone().into_vec()))
                .collect();
            for (u, v) in &moved {
                assert!(generated(atoms, &direct, u, v), "{} repeat {}", inst.key(), r + 1);
            }
            for (u, v) in &direct {
                assert!(generated(atoms, &moved, u, v), "{} repeat {}", inst.key(), r + 1);
            }
        }
    }
}

#[test]
fn repeat_isomorphism_is_inverse_and_additive() {
    for inst in instances(5, 3).unwrap() {
        for r in 0..inst.len() {
            let iso = btilde_isomorphism(&inst.sequence, r).unwrap();
            let raw = Raw::of(&inst.sequence);
            let raw_rep = Raw::of(&inst.sequence.with_repeat(r).unwrap());
            let elems = raw.elements_up_to(8);
            for a in &elems {
                for i in 0..=a[r] {
                    let b = iso.to_repeated(a, i).unwrap();
                    assert!(raw_rep.zero_sum(&b));
                    assert_eq!(iso.from_repeated(&b), (a.clone(), i));
                }
                assert_eq!(iso.to_repeated(a, a[r] + 1), None);
            }
            for b in raw_rep.elements_up_to(8) {
                let (a, i) = iso.from_repeated(&b);
                assert_eq!(iso.to_repeated(&a, i), Some(b));
            }
            for (a, b) in elems.iter().zip(elems.iter().rev()).take(20) {
                let (i, j) = (a[r] / 2, b[r]);
                let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let lhs = iso.to_repeated(&sum, i + j).unwrap();
                let rhs: Vec<u32> = iso
                    .to_repeated(a, i)
                    .unwrap()
                    .iter()
                    .zip(iso.to_repeated(b, j).unwrap())
                    .map(|(x, y)| x + y)
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

/// Builds `g` from `supp(g)` one repetition at a time; each step must be an
/// atom bijection, and the end result must have the atoms of `B(g)`.
#[test]
fn repetitions_are_iterated_tilde_monoids() {
    for inst in instances(6, 5).unwrap() {
        let g = &inst.sequence;
        if !g.has_repetition() {
            continue;
        }
        let mut cur = g.support();
        let mut need: Vec<usize> = Vec::new();
        for e in cur.elements() {
            let k = g.elements().iter().filter(|f| *f == e).count();
            need.push(k - 1);
        }
        for (idx, &k) in need.iter().enumerate() {
            for _ in 0..k {
                let iso = btilde_isomorphism(&cur, idx).unwrap();
                assert_eq!(iso.layout.num_atoms(), iso.repeated.atoms().len());
                cur = cur.with_repeat(idx).unwrap();
            }
        }
        // same multiset of entries; match coordinates greedily
        let mut used = vec![false; cur.len()];
        let perm: Vec<usize> = g
            .elements()
            .iter()
            .map(|e| {
                let j = (0..cur.len()).find(|&j| !used[j] && cur.elements()[j] == *e).unwrap();
                used[j] = true;
                j
            })
            .collect();
        let built: BTreeSet<Vec<u32>> = BlockMonoid::new(cur.clone())
            .atoms()
            .iter()
            .map(|a| perm.iter().map(|&p| a[p]).collect())
            .collect();
        let direct: BTreeSet<Vec<u32>> = BlockMonoid::new(g.clone()).atoms().iter().cloned().collect();
        assert_eq!(built, direct, "{}", inst.key());
    }
}
