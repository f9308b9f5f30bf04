//! Row-style Hermite normal form.
//!
//! Output contract: pivots positive, pivot columns strictly increasing, and
//! entries above a pivot reduced into `[0, pivot)`. Normal forms are compared
//! byte for byte across runs, so this must not change.

use crate::error::{Error, Result};
use crate::int::{ext_gcd, ExactInt};
use crate::matrix::IntMatrix;

pub fn hnf(m: &IntMatrix) -> Result<IntMatrix> {
    if let Some(mut a) = m.to_generic::<i128>() {
        match hnf_in_place(m.rows(), m.cols(), &mut a) {
            Some(Ok(())) => return Ok(IntMatrix::from_generic(m.rows(), m.cols(), &a)),
            Some(Err(e)) => return Err(e),
            None => {}
        }
    }
    let mut a = m.entries().to_vec();
    hnf_in_place(m.rows(), m.cols(), &mut a).expect("bigint arithmetic never overflows")?;
    Ok(IntMatrix::from_generic(m.rows(), m.cols(), &a))
}

/// In-place HNF of a row-major `rows x cols` matrix.
///
/// Returns `None` when the fixed-width type overflowed; the contents of `a`
/// are then unspecified.
pub(crate) fn hnf_in_place<T: ExactInt>(rows: usize, cols: usize, a: &mut [T]) -> Option<Result<()>> {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Fold rows r+1.. into row r so that only row r is nonzero in column c.
        for i in r + 1..rows {
            let b = a[i * cols + c].clone();
            if b.ex_is_zero() {
                continue;
            }
            let p = a[r * cols + c].clone();
            if p.ex_is_zero() {
                for j in c..cols {
                    a.swap(r * cols + j, i * cols + j);
                }
                continue;
            }
            let (g, s, t) = ext_gcd(&p, &b)?;
            let pg = p.fdiv(&g);
            let bg = b.fdiv(&g);
            for j in c..cols {
                let x = a[r * cols + j].clone();
                let y = a[i * cols + j].clone();
                a[r * cols + j] = s.ex_mul(&x)?.ex_add(&t.ex_mul(&y)?)?;
                a[i * cols + j] = pg.ex_mul(&y)?.ex_sub(&bg.ex_mul(&x)?)?;
            }
        }
        let p = a[r * cols + c].clone();
        if p.ex_is_zero() {
            continue;
        }
        if p.ex_is_negative() {
            for j in c..cols {
                a[r * cols + j] = a[r * cols + j].ex_neg()?;
            }
        }
        let p = a[r * cols + c].clone();
        for i in 0..r {
            let x = a[i * cols + c].clone();
            let q = x.fdiv(&p);
            if q.ex_is_zero() {
                continue;
            }
            for j in c..cols {
                let v = a[i * cols + j].ex_sub(&q.ex_mul(&a[r * cols + j])?)?;
                a[i * cols + j] = v;
            }
        }
        r += 1;
    }
    if r < rows {
        return Some(Err(Error::NotFullRowRank));
    }
    Some(Ok(()))
}

/// True when `m` already satisfies the HNF output contract.
pub fn is_hnf(m: &IntMatrix) -> bool {
    let mut last: Option<usize> = None;
    for r in 0..m.rows() {
        let Some(pc) = (0..m.cols()).find(|&c| !ExactInt::ex_is_zero(m.get(r, c))) else {
            return false;
        };
        if last.is_some_and(|l| pc <= l) || ExactInt::ex_is_negative(m.get(r, pc)) {
            return false;
        }
        for i in 0..r {
            let x = m.get(i, pc);
            if ExactInt::ex_is_negative(x) || x >= m.get(r, pc) {
                return false;
            }
        }
        last = Some(pc);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn small_examples() {
        assert_eq!(hnf(&m(&[vec![0, 1], vec![1, 0]])).unwrap(), m(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(hnf(&m(&[vec![2, 4], vec![0, 3]])).unwrap(), m(&[vec![2, 1], vec![0, 3]]));
        let p = m(&[vec![1, 1, -2], vec![0, 3, -3]]);
        assert_eq!(hnf(&p).unwrap(), p);
    }

    #[test]
    fn rank_deficient() {
        assert_eq!(hnf(&m(&[vec![1, 2], vec![2, 4]])), Err(Error::NotFullRowRank));
        assert_eq!(hnf(&m(&[vec![0, 0, 0]])), Err(Error::NotFullRowRank));
    }

    #[test]
    fn pivot_skips_zero_columns() {
        let h = hnf(&m(&[vec![0, 2, 3], vec![0, 4, 1]])).unwrap();
        assert!(is_hnf(&h));
        assert_eq!(h, m(&[vec![0, 2, 3], vec![0, 0, 5]]));
    }

    #[test]
    fn bigint_fallback_agrees() {
        let big = BigInt::from(3).pow(90);
        let a = IntMatrix::from_big_rows(vec![
            vec![big.clone(), BigInt::from(2), BigInt::from(-7)],
            vec![BigInt::from(5), big.clone() + 1, BigInt::from(1)],
        ])
        .unwrap();
        let h = hnf(&a).unwrap();
        assert!(is_hnf(&h));
        assert_eq!(hnf(&h).unwrap(), h);
    }

    /// Random unimodular matrix from elementary row operations.
    fn unimodular(n: usize, ops: &[(usize, usize, i64, u8)]) -> IntMatrix {
        let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for &(i, j, k, kind) in ops {
            let (i, j) = (i % n, j % n);
            match kind % 3 {
                0 if i != j => {
                    for c in 0..n {
                        u[i][c] += k * u[j][c];
                    }
                }
                1 => u.swap(i, j),
                _ => {
                    for c in 0..n {
                        u[i][c] = -u[i][c];
                    }
                }
            }
        }
        IntMatrix::from_rows(&u)
    }

    fn full_rank(a: &IntMatrix) -> bool {
        hnf(a).is_ok()
    }

    proptest! {
        #[test]
        fn idempotent_and_unimodular_invariant(
            rows in 1usize..4,
            extra in 0usize..3,
            vals in prop::collection::vec(-9i64..10, 25),
            ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3, 0u8..3), 0..=10),
        ) {
            let cols = rows + extra;
            let a = IntMatrix::from_rows(
                &(0..rows).map(|r| vals[r * cols..(r + 1) * cols].to_vec()).collect::<Vec<_>>(),
            );
            prop_assume!(full_rank(&a));
            let h = hnf(&a).unwrap();
            prop_assert!(is_hnf(&h));
            prop_assert_eq!(&hnf(&h).unwrap(), &h);
            let u = unimodular(rows, &ops);
            prop_assert_eq!(hnf(&u.mul(&a).unwrap()).unwrap(), h);
        }

        #[test]
        fn det_invariant_under_unimodular(
            n in 1usize..5,
            vals in prop::collection::vec(-9i64..10, 16),
            ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3, 0u8..3), 0..=10),
        ) {
            let a = IntMatrix::from_rows(
                &(0..n).map(|r| vals[r * n..(r + 1) * n].to_vec()).collect::<Vec<_>>(),
            );
            let u = unimodular(n, &ops);
            let d0 = crate::matrix::det(&a).unwrap();
            let d1 = crate::matrix::det(&u.mul(&a).unwrap()).unwrap();
            prop_assert!(d0 == d1 || d0 == -d1);
        }
    }
}
