//! Fraction-free dense linear algebra over the rationals.
//!
//! Rational matrices are first scaled row by row to integer matrices
//! (`A = D^-1 B` with `D` diagonal), then eliminated with Bareiss-style
//! integer-preserving steps. Every division in the elimination is exact, so
//! intermediate entries stay bounded by minors of `B` instead of growing
//! like naive rational elimination does.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{denominator_lcm, BigRational};

/// Scales each row by the lcm of its denominators. Returns the integer rows
/// and the per-row multipliers.
fn clear_denominators(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut out = Vec::with_capacity(rows.len());
    let mut scales = Vec::with_capacity(rows.len());
    for row in rows {
        let l = denominator_lcm(row);
        out.push(
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<_>>(),
        );
        scales.push(l);
    }
    (out, scales)
}

fn exact_div(a: BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact Bareiss division");
    q
}

/// Bareiss determinant of a square integer matrix.
pub fn determinant_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&p| !m[p][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(v, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Exact determinant of a square rational matrix.
pub fn determinant(rows: &[Vec<BigRational>]) -> BigRational {
    let (ints, scales) = clear_denominators(rows);
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    BigRational::new(determinant_int(ints), scale)
}

/// Solves `A X = B` for square nonsingular `A`, where `B` has one or more
/// columns. Returns `None` when `A` is singular.
///
/// Uses fraction-free Gauss-Jordan: after eliminating column `k` every
/// diagonal entry equals the current leading principal minor, and the
/// right-hand block holds `det(A) * X` in integers.
pub fn solve(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side height mismatch");
    if n == 0 {
        return Some(Vec::new());
    }
    let width = n + b[0].len();
    let augmented: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            debug_assert_eq!(ra.len(), n);
            ra.iter().chain(rb.iter()).cloned().collect()
        })
        .collect();
    let (mut m, _) = clear_denominators(&augmented);

    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&p| !m[p][k].is_zero())?;
        m.swap(k, p);
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in 0..width {
                if j == k {
                    continue;
                }
                let v = &pivot_row[k] * &row[j] - &factor * &pivot_row[j];
                row[j] = exact_div(v, &prev);
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }

    Some(
        m.into_iter()
            .enumerate()
            .map(|(i, row)| {
                let diag = row[i].clone();
                row[n..]
                    .iter()
                    .map(|x| BigRational::new(x.clone(), diag.clone()))
                    .collect()
            })
            .collect(),
    )
}

/// Exact inverse, or `None` if singular.
pub fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let identity: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    solve(a, &identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    /// Textbook Gauss-Jordan in rational arithmetic, kept independent of the
    /// fraction-free path.
    fn naive_inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
        let n = a.len();
        let mut m: Vec<Vec<BigRational>> = a
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { int(1) } else { int(0) }));
                row
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&p| !m[p][k].is_zero())?;
            m.swap(k, p);
            let piv = m[k][k].clone();
            for x in m[k].iter_mut() {
                *x /= piv.clone();
            }
            let pr = m[k].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != k && !row[k].is_zero() {
                    let f = row[k].clone();
                    for (x, y) in row.iter_mut().zip(&pr) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Leibniz expansion; fine for n <= 5.
    fn leibniz(a: &[Vec<BigRational>]) -> BigRational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = a.len();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let prod = (0..n).fold(int(1), |acc, i| acc * &a[i][p[i]]);
                if inversions % 2 == 0 {
                    prod
                } else {
                    -prod
                }
            })
            .fold(int(0), |acc, x| acc + x)
    }

    fn rational_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<BigRational>>> {
        prop::collection::vec(
            prop::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(a, b)| ratio(a, b)), n),
            n,
        )
    }

    #[test]
    fn determinant_fixtures() {
        let m = vec![vec![int(2), int(-1)], vec![int(-1), int(2)]];
        assert_eq!(determinant(&m), int(3));
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(&singular), int(0));
        // needs a row swap
        let swap = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(&swap), int(-1));
        assert_eq!(determinant(&[]), int(1));
    }

    #[test]
    fn inverse_detects_singularity() {
        let singular = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert!(inverse(&singular).is_none());
    }

    proptest! {
        #[test]
        fn determinant_matches_leibniz(m in (1usize..=5).prop_flat_map(rational_matrix)) {
            prop_assert_eq!(determinant(&m), leibniz(&m));
        }

        #[test]
        fn inverse_matches_naive(m in (1usize..=6).prop_flat_map(rational_matrix)) {
            prop_assert_eq!(inverse(&m), naive_inverse(&m));
        }
    }
}
