//! Unpruned reference search: every local-index tuple, every diagonal divisor
//! and every offset, with forms from the triangular recursion in exact
//! rationals. Only meant for small cases.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{local_index_tuples, payload, record_from_payload, ClassificationRecord, ClassificationTask, Mode};
use crate::error::{Error, Result};
use crate::int::{divisors, is_primitive};
use crate::matrix::IntMatrix;
use crate::simplex::gorenstein_forms_triangular;

pub fn classify_for_ufp_literal(task: &ClassificationTask) -> Result<Vec<ClassificationRecord>> {
    let d = task.d;
    let w = &task.weights;
    let w128: Vec<i128> = w.iter().map(|x| x.to_i128().ok_or(Error::Overflow)).collect::<Result<_>>()?;
    let alpha = task.ufp.entries();
    let mut candidates = Vec::new();
    let mut p = IntMatrix::zeros(d, d + 1);
    enumerate(0, d, alpha, &mut p, &mut candidates);

    let mut found = BTreeSet::new();
    for tuple in local_index_tuples(task.g, d) {
        for p in &candidates {
            let mut p = p.clone();
            let mut ok = true;
            for r in 0..d {
                let s: BigInt = (r..d).map(|c| p.get(r, c) * &w[c]).sum();
                let (b, rem) = s.div_rem(&w[d]);
                if !rem.is_zero() {
                    ok = false;
                    break;
                }
                p.set(r, d, -b);
            }
            if !ok {
                continue;
            }
            if task.mode == Mode::Fano && !(0..=d).all(|c| is_primitive(&p.column(c)).unwrap_or(false)) {
                continue;
            }
            let forms = gorenstein_forms_triangular(&p, w)?.forms;
            let all_primitive = forms.iter().zip(&tuple).all(|(u, &gk)| {
                let gk = BigInt::from(gk);
                let scaled: Vec<_> = u.iter().map(|x| x * &gk).collect();
                scaled.iter().all(|x| x.is_integer())
                    && is_primitive(&scaled.iter().map(|x| x.to_integer()).collect::<Vec<_>>()).unwrap_or(false)
            });
            if !all_primitive {
                continue;
            }
            let local: Vec<i128> = tuple.iter().map(|&x| i128::from(x)).collect();
            found.insert(payload(&p, &w128, &local)?);
        }
    }
    found.iter().map(|b| record_from_payload(task, b)).collect()
}

/// All upper-triangular first blocks with `a_cc | α_c` and `0 <= a_lc < a_cc`.
fn enumerate(c: usize, d: usize, alpha: &[u64], p: &mut IntMatrix, out: &mut Vec<IntMatrix>) {
    if c == d {
        out.push(p.clone());
        return;
    }
    for delta in divisors(alpha[c]) {
        p.set(c, c, BigInt::from(delta));
        let mut off = vec![0u64; c];
        loop {
            for (l, &v) in off.iter().enumerate() {
                p.set(l, c, BigInt::from(v));
            }
            enumerate(c + 1, d, alpha, p, out);
            let mut i = 0;
            loop {
                if i == c {
                    break;
                }
                off[i] += 1;
                if off[i] < delta {
                    break;
                }
                off[i] = 0;
                i += 1;
            }
            if i == c {
                break;
            }
        }
    }
    for l in 0..=c {
        p.set(l, c, BigInt::zero());
    }
}
