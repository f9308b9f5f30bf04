//! Classification of IP lattice simplices by dimension and Gorenstein index.

pub mod dedup;
mod literal;
mod modsolve;
mod search;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::int::{divisors, is_primitive, Rat};
use crate::matrix::{det, IntMatrix};
use crate::normal_form::{byte_key, normal_form_with};
use crate::simplex::{gorenstein_forms_general, weights_of};
use crate::ufp::{enumerate_ufps, ufp_of_weights, weights_of_ufp, UnitFractionPartition};

pub use dedup::SpillSet;
pub use literal::classify_for_ufp_literal;
pub use modsolve::solve_mod;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Primitive vertices only, well-formed ufps only.
    Fano,
    AllIp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationTask {
    pub d: usize,
    pub g: u64,
    pub ufp: UnitFractionPartition,
    pub mode: Mode,
    /// `Q(A)`, descending.
    pub weights: Vec<BigInt>,
}

impl ClassificationTask {
    pub fn new(ufp: UnitFractionPartition, mode: Mode) -> Result<Self> {
        if ufp.len() < 3 {
            return Err(Error::InvalidArgument("dimension must be at least 2".into()));
        }
        if mode == Mode::Fano && !ufp.is_well_formed() {
            return Err(Error::InvalidArgument(format!("{ufp:?} is not well-formed")));
        }
        let weights = weights_of_ufp(&ufp).weights().to_vec();
        Ok(ClassificationTask { d: ufp.len() - 1, g: ufp.g(), ufp, mode, weights })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub d: usize,
    pub g: u64,
    /// Normal form.
    pub matrix: IntMatrix,
    /// Reduced weights in column order of `matrix`.
    pub weights: Vec<BigInt>,
    pub lambda: Rat,
    pub volume: BigInt,
    /// Sorted descending.
    pub local_indices: Vec<u64>,
    pub ufp: UnitFractionPartition,
}

impl ClassificationRecord {
    pub fn byte_key(&self) -> Vec<u8> {
        byte_key(&self.matrix)
    }

    /// Recompute every stored field from the matrix alone.
    pub fn check(&self, mode: Mode) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("record field {what} does not match its matrix")));
        let m = &self.matrix;
        if m.rows() != self.d || m.cols() != self.d + 1 {
            return bad("d");
        }
        let w = weights_of(m)?;
        if w.weights() != self.weights.as_slice() {
            return bad("weights");
        }
        if w.factor() != &self.lambda {
            return bad("lambda");
        }
        if (w.factor() * Rat::from_integer(w.total())).to_integer() != self.volume {
            return bad("volume");
        }
        let gd = gorenstein_forms_general(m)?;
        let mut local: Vec<BigInt> = gd.local_indices.clone();
        local.sort_unstable_by(|a, b| b.cmp(a));
        let want: Vec<BigInt> = self.local_indices.iter().map(|&x| BigInt::from(x)).collect();
        if local != want {
            return bad("local_indices");
        }
        if gd.gorenstein_index != BigInt::from(self.g) {
            return bad("g");
        }
        if ufp_of_weights(w.weights(), self.g)? != self.ufp {
            return bad("ufp");
        }
        if mode == Mode::Fano && !(0..m.cols()).all(|c| is_primitive(&m.column(c)).unwrap_or(false)) {
            return bad("matrix (non-primitive vertex)");
        }
        if crate::normal_form::normal_form(m)?.matrix() != m {
            return bad("matrix (not in normal form)");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Spill per-ufp dedup sets to disk above this many entries; `0` never spills.
    pub spill_threshold: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { spill_threshold: 4_000_000 }
    }
}

/// The ufps of length `d+1` visited for `(d, g, mode)`, in lexicographic order.
pub fn ufps_for(d: usize, g: u64, mode: Mode) -> Result<Vec<UnitFractionPartition>> {
    if d < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    let mut all = enumerate_ufps(g, d + 1)?;
    if mode == Mode::Fano {
        all.retain(UnitFractionPartition::is_well_formed);
    }
    Ok(all)
}

/// All `(g_0, …, g_d)` of divisors of `g` with `lcm = g`.
pub fn local_index_tuples(g: u64, d: usize) -> Vec<Vec<u64>> {
    let divs = divisors(g);
    let mut out = Vec::new();
    let mut idx = vec![0usize; d + 1];
    loop {
        let t: Vec<u64> = idx.iter().map(|&i| divs[i]).collect();
        if t.iter().fold(1u64, |a, b| a.lcm(b)) == g {
            out.push(t);
        }
        let mut i = d + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < divs.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Dedup payload: the normal form key followed by the local indices in its column order.
pub(crate) fn payload(p: &IntMatrix, w: &[i128], local: &[i128]) -> Result<Vec<u8>> {
    let nf = normal_form_with(p, w, local)?;
    let perm = crate::normal_form::admissible_permutations(w, local);
    let mut out = nf.byte_key().to_vec();
    // Every admissible order lists the same local indices.
    for &i in &perm[0] {
        out.extend_from_slice(&u64::try_from(local[i]).map_err(|_| Error::Overflow)?.to_be_bytes());
    }
    Ok(out)
}

/// Inverse of `byte_key`.
pub fn decode_byte_key(key: &[u8]) -> Result<(IntMatrix, usize)> {
    let bad = || Error::InvalidArgument("malformed key".into());
    if key.len() < 3 {
        return Err(bad());
    }
    let (rows, cols, width) = (key[0] as usize, key[1] as usize, key[2] as usize);
    let len = 3 + rows * cols * width;
    if key.len() < len || width == 0 {
        return Err(bad());
    }
    let entries = key[3..len].chunks(width).map(BigInt::from_signed_bytes_be).collect();
    Ok((IntMatrix::new(rows, cols, entries)?, len))
}

fn record_from_payload(task: &ClassificationTask, bytes: &[u8]) -> Result<ClassificationRecord> {
    let (matrix, used) = decode_byte_key(bytes)?;
    let d = task.d;
    let mut local: Vec<u64> = bytes[used..]
        .chunks(8)
        .map(|c| u64::from_be_bytes(c.try_into().expect("8-byte chunks")))
        .collect();
    local.sort_unstable_by(|a, b| b.cmp(a));
    // Normal forms list the weights in descending order.
    let weights = task.weights.clone();
    let q_d = det(&matrix.without_column(d))?.abs();
    let lambda = Rat::new(q_d, weights[d].clone());
    debug_assert!(lambda.is_integer());
    let total: BigInt = weights.iter().sum();
    let volume = (&lambda * Rat::from_integer(total)).to_integer();
    Ok(ClassificationRecord { d, g: task.g, matrix, weights, lambda, volume, local_indices: local, ufp: task.ufp.clone() })
}

/// One record per isomorphism class with ufp `A` and index `g`, streamed in key order.
pub fn classify_for_ufp_with(
    task: &ClassificationTask,
    opts: ClassifyOptions,
    sink: &mut dyn FnMut(ClassificationRecord) -> Result<()>,
) -> Result<usize> {
    let w: Vec<i128> = task.weights.iter().map(|x| x.to_i128().ok_or(Error::Overflow)).collect::<Result<_>>()?;
    let d = task.d;
    let mut set = SpillSet::new(opts.spill_threshold);
    {
        let mut emit = |p: &[i128], local: &[i128]| -> Result<()> {
            let m = IntMatrix::from_generic(d, d + 1, p);
            set.insert(payload(&m, &w, local)?)
        };
        search::Search::new(task.g, task.ufp.entries(), &w, task.mode == Mode::Fano, &mut emit).run()?;
    }
    let mut n = 0;
    for item in set.into_sorted()? {
        sink(record_from_payload(task, &item?)?)?;
        n += 1;
    }
    Ok(n)
}

pub fn classify_for_ufp(task: &ClassificationTask) -> Result<Vec<ClassificationRecord>> {
    let mut out = Vec::new();
    classify_for_ufp_with(task, ClassifyOptions::default(), &mut |r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}

/// Full classification for `(d, g)`, ordered by ufp and then by normal form key.
///
/// Runs on the current rayon pool.
pub fn classify_all(d: usize, g: u64, mode: Mode) -> Result<Vec<ClassificationRecord>> {
    let tasks: Vec<ClassificationTask> =
        ufps_for(d, g, mode)?.into_iter().map(|a| ClassificationTask::new(a, mode)).collect::<Result<_>>()?;
    let parts: Vec<Vec<ClassificationRecord>> = tasks.par_iter().map(classify_for_ufp).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// Number of classes for `(d, g)` without keeping the records.
pub fn count_all(d: usize, g: u64, mode: Mode) -> Result<usize> {
    let tasks: Vec<ClassificationTask> =
        ufps_for(d, g, mode)?.into_iter().map(|a| ClassificationTask::new(a, mode)).collect::<Result<_>>()?;
    tasks
        .par_iter()
        .map(|t| classify_for_ufp_with(t, ClassifyOptions::default(), &mut |_| Ok(())))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}
