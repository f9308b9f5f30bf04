//! Column-by-column enumeration of triangular vertex matrices for one ufp.
//!
//! Column `c < d` holds `a_{0c}, …, a_{cc}` with `a_{cc} | α_c` and
//! `0 <= a_{lc} < a_{cc}`. Writing `G_{kc} = g·u_{kc}` for the scaled Gorenstein
//! forms, the row `k` of column `c` reads
//! `Σ_{l<c} a_{lc} G_{kl} + a_{cc} G_{kc} = t_k` with `t_c = α_c - g` and
//! `t_k = -g` otherwise. Integrality of every `G_{kc}` is a congruence system
//! modulo `a_{cc}` in the off-diagonal entries, which is solved directly
//! instead of looping over all offsets.

use num_integer::Integer;

use super::modsolve::solve_mod;
use crate::error::{Error, Result};
use crate::int::divisors;

/// Called with the row-major `d x (d+1)` matrix and the local indices.
pub(crate) type Emit<'a> = dyn FnMut(&[i128], &[i128]) -> Result<()> + 'a;

pub(crate) struct Search<'a> {
    d: usize,
    g: i128,
    alpha: Vec<i128>,
    w: Vec<i128>,
    fano: bool,
    divs: Vec<Vec<i128>>,
    /// Row-major `d x (d+1)`.
    p: Vec<i128>,
    /// Row-major `(d+1) x d`.
    gk: Vec<i128>,
    emit: &'a mut Emit<'a>,
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

impl<'a> Search<'a> {
    /// `alpha` ascending, `w = Q(alpha)` descending.
    pub(crate) fn new(g: u64, alpha: &[u64], w: &[i128], fano: bool, emit: &'a mut Emit<'a>) -> Self {
        let d = alpha.len() - 1;
        let divs = (0..d)
            .map(|c| {
                if fano && c == 0 {
                    vec![1]
                } else {
                    divisors(alpha[c]).into_iter().map(i128::from).collect()
                }
            })
            .collect();
        Search {
            d,
            g: i128::from(g),
            alpha: alpha.iter().map(|&a| i128::from(a)).collect(),
            w: w.to_vec(),
            fano,
            divs,
            p: vec![0; d * (d + 1)],
            gk: vec![0; (d + 1) * d],
            emit,
        }
    }

    pub(crate) fn run(&mut self) -> Result<()> {
        self.column(0)
    }

    fn target(&self, k: usize, c: usize) -> i128 {
        if k == c {
            self.alpha[c] - self.g
        } else {
            -self.g
        }
    }

    fn column(&mut self, c: usize) -> Result<()> {
        let d = self.d;
        if c == d {
            return self.leaf();
        }
        let n = d + 1;
        let divs = std::mem::take(&mut self.divs[c]);
        for &delta in &divs {
            let rows: Vec<Vec<i128>> = (0..n).map(|k| (0..c).map(|l| self.gk[k * d + l]).collect()).collect();
            let rhs: Vec<i128> = (0..n).map(|k| self.target(k, c)).collect();
            for x in solve_mod(&rows, &rhs, c, delta) {
                if self.fano && x.iter().fold(delta, |acc, v| acc.gcd(v)) != 1 {
                    continue;
                }
                for (l, &v) in x.iter().enumerate() {
                    self.p[l * (d + 1) + c] = v;
                }
                self.p[c * (d + 1) + c] = delta;
                for k in 0..n {
                    let mut s = self.target(k, c);
                    for (l, &v) in x.iter().enumerate() {
                        s = ck(s.checked_sub(ck(v.checked_mul(self.gk[k * d + l]))?))?;
                    }
                    debug_assert_eq!(s % delta, 0);
                    self.gk[k * d + c] = s / delta;
                }
                self.column(c + 1)?;
            }
        }
        self.divs[c] = divs;
        for l in 0..=c {
            self.p[l * (d + 1) + c] = 0;
        }
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        let d = self.d;
        let wd = self.w[d];
        for r in 0..d {
            let mut s = 0i128;
            for c in r..d {
                s = ck(s.checked_add(ck(self.p[r * (d + 1) + c].checked_mul(self.w[c]))?))?;
            }
            if s % wd != 0 {
                return Ok(());
            }
            debug_assert!(s > 0);
            self.p[r * (d + 1) + d] = -(s / wd);
        }
        if self.fano && (0..d).fold(0i128, |acc, r| acc.gcd(&self.p[r * (d + 1) + d])) != 1 {
            return Ok(());
        }
        let mut local = vec![0i128; d + 1];
        let mut lcm = 1i128;
        for (k, lk) in local.iter_mut().enumerate() {
            let h = (0..d).fold(self.g, |acc, c| acc.gcd(&self.gk[k * d + c]));
            *lk = self.g / h;
            lcm = lcm.lcm(lk);
        }
        if lcm != self.g {
            return Ok(());
        }
        (self.emit)(&self.p, &local)
    }
}
