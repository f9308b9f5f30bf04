//! Canonical form of a vertex matrix under column permutation and `GL(d, Z)`.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::hnf::{hnf, hnf_in_place};
use crate::matrix::IntMatrix;
use crate::simplex::{gorenstein_forms_general, signed_weights};

/// An HNF matrix that is the normal form of its class, with a hashable key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalMatrix {
    byte_key: Vec<u8>,
    matrix: IntMatrix,
}

impl CanonicalMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn byte_key(&self) -> &[u8] {
        &self.byte_key
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    fn from_matrix(matrix: IntMatrix) -> Self {
        CanonicalMatrix { byte_key: byte_key(&matrix), matrix }
    }
}

/// `[rows, cols, width]` followed by every entry as `width`-byte big-endian
/// two's complement, row-major.
pub fn byte_key(m: &IntMatrix) -> Vec<u8> {
    let enc: Vec<Vec<u8>> = m.entries().iter().map(BigInt::to_signed_bytes_be).collect();
    let width = enc.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let width_u8 = u8::try_from(width).expect("entries below 2^2040");
    let mut out = Vec::with_capacity(3 + width * enc.len());
    out.push(u8::try_from(m.rows()).expect("small dimension"));
    out.push(u8::try_from(m.cols()).expect("small dimension"));
    out.push(width_u8);
    for e in enc {
        let fill = if e.first().is_some_and(|&b| b & 0x80 != 0) { 0xff } else { 0 };
        out.extend(std::iter::repeat_n(fill, width - e.len()));
        out.extend(e);
    }
    out
}

/// Column orders with weights descending, ties by local index descending,
/// and every reordering inside blocks of equal `(w, g)`.
///
/// Each permutation lists original column indices in their new order.
pub fn admissible_permutations<W: Ord, G: Ord>(w: &[W], g: &[G]) -> Vec<Vec<usize>> {
    assert_eq!(w.len(), g.len());
    let mut base: Vec<usize> = (0..w.len()).collect();
    base.sort_by(|&i, &j| w[j].cmp(&w[i]).then(g[j].cmp(&g[i])).then(i.cmp(&j)));
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=base.len() {
        if i == base.len() || w[base[i]] != w[base[start]] || g[base[i]] != g[base[start]] {
            blocks.push(start..i);
            start = i;
        }
    }
    let mut out = vec![base.clone()];
    for b in blocks {
        if b.len() < 2 {
            continue;
        }
        let mut next = Vec::new();
        for p in &out {
            let mut block: Vec<usize> = p[b.clone()].to_vec();
            loop {
                let mut q = p.clone();
                q[b.clone()].copy_from_slice(&block);
                next.push(q);
                if !next_permutation(&mut block) {
                    break;
                }
            }
        }
        out = next;
    }
    out
}

/// Lexicographic successor; false when `v` was the last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Normal form, computing weights and local indices from `p`.
pub fn normal_form(p: &IntMatrix) -> Result<CanonicalMatrix> {
    let w: Vec<BigInt> = signed_weights(p)?.iter().map(Signed::abs).collect();
    let g = gorenstein_forms_general(p)?.local_indices;
    normal_form_with(p, &w, &g)
}

/// Normal form given the column weights and local indices of `p`.
///
/// Weights may be in any common scaling.
pub fn normal_form_with<W: Ord, G: Ord>(p: &IntMatrix, w: &[W], g: &[G]) -> Result<CanonicalMatrix> {
    if w.len() != p.cols() || g.len() != p.cols() {
        return Err(Error::DimensionMismatch("weights/local indices vs columns".into()));
    }
    let perms = admissible_permutations(w, g);
    if let Some(m) = min_hnf_i128(p, &perms)? {
        return Ok(CanonicalMatrix::from_matrix(m));
    }
    let mut best: Option<IntMatrix> = None;
    for perm in &perms {
        let h = hnf(&p.permute_columns(perm))?;
        if best.as_ref().is_none_or(|b| h.entries() < b.entries()) {
            best = Some(h);
        }
    }
    Ok(CanonicalMatrix::from_matrix(best.expect("at least one permutation")))
}

/// Fixed-width pass; `None` if anything overflowed.
fn min_hnf_i128(p: &IntMatrix, perms: &[Vec<usize>]) -> Result<Option<IntMatrix>> {
    let (rows, cols) = (p.rows(), p.cols());
    let Some(src) = p.to_generic::<i128>() else {
        return Ok(None);
    };
    let mut best: Option<Vec<i128>> = None;
    let mut buf = vec![0i128; rows * cols];
    for perm in perms {
        for r in 0..rows {
            for (j, &c) in perm.iter().enumerate() {
                buf[r * cols + j] = src[r * cols + c];
            }
        }
        match hnf_in_place(rows, cols, &mut buf) {
            None => return Ok(None),
            Some(Err(e)) => return Err(e),
            Some(Ok(())) => {}
        }
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    Ok(best.map(|b| IntMatrix::from_generic(rows, cols, &b)))
}

pub fn are_isomorphic(p: &IntMatrix, q: &IntMatrix) -> Result<bool> {
    if p.rows() != q.rows() || p.cols() != q.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            p.rows(),
            p.cols(),
            q.rows(),
            q.cols()
        )));
    }
    Ok(normal_form(p)? == normal_form(q)?)
}
