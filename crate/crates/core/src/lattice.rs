//! Integer lattice utilities: Smith normal form, lattice rank and
//! subgroup membership. Entries are arbitrary precision since elimination
//! can blow up intermediate values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of reducing `A` to `D = U·A·V` with `U`, `V` unimodular and `D` diagonal.
///
/// Only `U` is kept; it is what membership tests need.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

fn to_big(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect()
}

/// Smith normal form of an `rows × cols` integer matrix.
pub fn smith_normal_form(matrix: &[Vec<i64>], cols: usize) -> SmithForm {
    let rows = matrix.len();
    let mut a = to_big(matrix, cols);
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let steps = rows.min(cols);
    for t in 0..steps {
        // smallest nonzero entry of the trailing block as pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i1, j1), &(i2, j2)| a[i1][j1].abs().cmp(&a[i2][j2].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must divide every trailing entry
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // row t += row i brings the offending entry into row t
                        row_axpy(&mut a, t, i, &BigInt::from(-1));
                        row_axpy(&mut u, t, i, &BigInt::from(-1));
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                u.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    let diagonal = (0..steps).map(|i| a[i][i].clone()).collect();
    SmithForm {
        diagonal,
        left: u,
        rows,
        cols,
    }
}

/// row[target] -= q * row[source]
fn row_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(&src) {
        *x -= s * q;
    }
}

/// Rank over `Z` of the sublattice spanned by `vectors`. An empty list has rank 0.
pub fn lattice_rank(vectors: &[Vec<i64>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    smith_normal_form(vectors, first.len()).rank()
}

/// Whether `target` lies in the subgroup of `Z^k` generated by `generators`.
pub fn in_integer_span(generators: &[Vec<i64>], target: &[i64]) -> bool {
    let k = target.len();
    if generators.is_empty() {
        return target.iter().all(|&x| x == 0);
    }
    // columns are the generators: A is k × m, and we solve A·x = target
    let m = generators.len();
    let a: Vec<Vec<i64>> = (0..k)
        .map(|i| generators.iter().map(|g| g[i]).collect())
        .collect();
    let snf = smith_normal_form(&a, m);
    let b: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
    let c: Vec<BigInt> = snf
        .left
        .iter()
        .map(|row| row.iter().zip(&b).map(|(u, x)| u * x).sum())
        .collect();
    c.iter().enumerate().all(|(i, ci)| match snf.diagonal.get(i) {
        Some(d) if !d.is_zero() => (ci % d).is_zero(),
        _ => ci.is_zero(),
    })
}
