use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::int::ExactInt;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from rows of machine integers. Panics on ragged input.
    pub fn from_rows<T: Copy + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flat_map(|row| row.iter().map(|&x| x.into())).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub(crate) fn from_generic<T: ExactInt>(rows: usize, cols: usize, a: &[T]) -> Self {
        IntMatrix { rows, cols, entries: a.iter().map(ExactInt::to_big).collect() }
    }

    pub(crate) fn to_generic<T: ExactInt>(&self) -> Option<Vec<T>> {
        self.entries.iter().map(T::from_big).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Matrix whose `j`-th column is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        let mut entries = Vec::with_capacity(self.entries.len());
        for r in 0..self.rows {
            for &p in perm {
                entries.push(self.get(r, p).clone());
            }
        }
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Drop column `c`.
    pub fn without_column(&self, c: usize) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        let mut entries = Vec::with_capacity(self.rows * keep.len());
        for r in 0..self.rows {
            for &j in &keep {
                entries.push(self.get(r, j).clone());
            }
        }
        IntMatrix { rows: self.rows, cols: keep.len(), entries }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if Zero::is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(Signed::abs).max().unwrap_or_default()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(r).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant of a square matrix (Bareiss elimination).
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    if let Some(a) = m.to_generic::<i128>() {
        if let Some(d) = bareiss(m.rows, a) {
            return Ok(BigInt::from(d));
        }
    }
    let a = m.entries.clone();
    Ok(bareiss(m.rows, a).expect("bigint arithmetic never overflows"))
}

/// Determinant by fraction-free elimination; `None` on fixed-width overflow.
pub(crate) fn bareiss<T: ExactInt>(n: usize, mut a: Vec<T>) -> Option<T> {
    if n == 0 {
        return Some(T::ex_one());
    }
    let mut sign_flip = false;
    let mut prev = T::ex_one();
    for k in 0..n - 1 {
        if a[k * n + k].ex_is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].ex_is_zero()) else {
                return Some(T::ex_zero());
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign_flip = !sign_flip;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i * n + j].ex_mul(&pivot)?;
                let rhs = a[i * n + k].ex_mul(&a[k * n + j])?;
                a[i * n + j] = lhs.ex_sub(&rhs)?.fdiv(&prev);
            }
            a[i * n + k] = T::ex_zero();
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if sign_flip {
        d.ex_neg()
    } else {
        Some(d)
    }
}
