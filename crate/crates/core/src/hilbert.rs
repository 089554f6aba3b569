//! Minimal nonnegative solutions of homogeneous linear Diophantine systems
//! `A·x = 0`, by Contejean–Devie completion.
//!
//! Starting from the unit vectors, a non-solution `p` is only extended by
//! `e_j` when `⟨A·p, A·e_j⟩ < 0`, i.e. when the step moves the defect `A·p`
//! towards the origin. Candidates dominating an already found solution are
//! discarded. The procedure terminates and returns exactly the Hilbert basis.

use std::collections::HashMap;

/// Hilbert basis of `{x ∈ N0^n : A·x = 0}` for the `rows × n` matrix `a`.
///
/// The result is sorted by total degree, then lexicographically.
pub fn hilbert_basis(a: &[Vec<i64>], n: usize) -> Vec<Vec<u32>> {
    let columns: Vec<Vec<i64>> = (0..n)
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect();
    let dot = |x: &[i64], y: &[i64]| -> i128 {
        x.iter().zip(y).map(|(&u, &v)| u as i128 * v as i128).sum()
    };

    let mut basis: Vec<Vec<u32>> = Vec::new();
    // frontier: candidate -> defect A·candidate
    let mut frontier: Vec<(Vec<u32>, Vec<i64>)> = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut e = vec![0u32; n];
        e[j] = 1;
        if col.iter().all(|&x| x == 0) {
            basis.push(e);
        } else {
            frontier.push((e, col.clone()));
        }
    }

    while !frontier.is_empty() {
        let mut next: HashMap<Vec<u32>, Vec<i64>> = HashMap::new();
        for (p, defect) in &frontier {
            for (j, col) in columns.iter().enumerate() {
                if dot(defect, col) >= 0 {
                    continue;
                }
                let mut q = p.clone();
                q[j] += 1;
                if next.contains_key(&q) || dominates_any(&q, &basis) {
                    continue;
                }
                let dq: Vec<i64> = defect.iter().zip(col).map(|(&d, &c)| d + c).collect();
                next.insert(q, dq);
            }
        }
        let mut level: Vec<(Vec<u32>, Vec<i64>)> = next.into_iter().collect();
        level.sort();
        frontier = Vec::with_capacity(level.len());
        // same-degree solutions cannot dominate each other
        for (q, dq) in level {
            if dq.iter().all(|&x| x == 0) {
                basis.push(q);
            } else {
                frontier.push((q, dq));
            }
        }
    }
    basis.sort_by(|x, y| degree(x).cmp(&degree(y)).then_with(|| x.cmp(y)));
    basis
}

fn degree(x: &[u32]) -> u64 {
    x.iter().map(|&v| v as u64).sum()
}

fn dominates_any(q: &[u32], basis: &[Vec<u32>]) -> bool {
    basis
        .iter()
        .any(|b| b.iter().zip(q).all(|(&bi, &qi)| bi <= qi))
}
