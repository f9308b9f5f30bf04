//! g-Sylvester sequences, the sharp volume, multiplicity and Mahler bounds,
//! their extremal simplices and checks of classification output against them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::classify::{ClassificationRecord, Mode};
use crate::error::{Error, Result};
use crate::int::{is_primitive, Rat};
use crate::matrix::IntMatrix;
use crate::normal_form::normal_form;
use crate::simplex::{gorenstein_forms_general, weights_of, LatticeSimplex};
use crate::ufp::{UnitFractionPartition, WeightSystem};

/// `s_{g,1..=K}` and `t_{g,k} = s_{g,k} - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterTable {
    pub g: u64,
    s: Vec<BigInt>,
    t: Vec<BigInt>,
}

impl SylvesterTable {
    /// `s_{g,k}`, 1-based.
    pub fn s(&self, k: usize) -> &BigInt {
        &self.s[k - 1]
    }

    /// `t_{g,k}`, 1-based.
    pub fn t(&self, k: usize) -> &BigInt {
        &self.t[k - 1]
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

pub fn sylvester(g: u64, k: usize) -> Result<SylvesterTable> {
    if g == 0 || k == 0 {
        return Err(Error::InvalidArgument("g and K must be positive".into()));
    }
    let mut s = vec![BigInt::from(g + 1)];
    while s.len() < k {
        let last = s.last().expect("nonempty");
        s.push(last * (last - 1u32) + 1u32);
    }
    let t = s.iter().map(|x| x - 1u32).collect();
    Ok(SylvesterTable { g, s, t })
}

fn check_dg(d: usize, g: u64) -> Result<()> {
    if d < 2 || g == 0 {
        return Err(Error::InvalidArgument(format!("need d >= 2 and g >= 1, got d={d} g={g}")));
    }
    Ok(())
}

fn int(x: impl Into<BigInt>) -> Rat {
    Rat::from_integer(x.into())
}

pub fn volume_bound(d: usize, g: u64) -> Result<Rat> {
    check_dg(d, g)?;
    if (d, g) == (2, 1) {
        return Ok(int(9));
    }
    let t = sylvester(g, d)?.t(d).clone();
    Ok(Rat::new(2 * &t * &t, BigInt::from(g) * g))
}

pub fn multiplicity_bound(d: usize, g: u64) -> Result<Rat> {
    check_dg(d, g)?;
    match (d, g) {
        (3, 1 | 2) => Ok(int(16 * g * g)),
        (4, 1) => Ok(int(128)),
        _ => {
            let t = sylvester(g, d - 1)?.t(d - 1).clone();
            Ok(Rat::new(3 * &t * &t, BigInt::from(g)))
        }
    }
}

/// `2 t_{g,d-1}² / g`, the value suggested for even `g`; never asserted.
pub fn conjectured_even_multiplicity_bound(d: usize, g: u64) -> Result<Rat> {
    check_dg(d, g)?;
    let t = sylvester(g, d - 1)?.t(d - 1).clone();
    Ok(Rat::new(2 * &t * &t, BigInt::from(g)))
}

pub fn mahler_bound(d: usize, g: u64) -> Result<Rat> {
    check_dg(d, g)?;
    let t = sylvester(g, d + 1)?.t(d + 1).clone();
    Ok(Rat::new(&t * &t, num_traits::pow(BigInt::from(g), d + 2)))
}

/// Which of `F_n`, `F_{n-1}`, `F_{n-2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FIndex {
    N,
    NMinus1,
    NMinus2,
}

impl FIndex {
    pub fn k(self, n: usize) -> usize {
        match self {
            FIndex::N => n,
            FIndex::NMinus1 => n - 1,
            FIndex::NMinus2 => n - 2,
        }
    }
}

/// Maximum of `F_k` over the ufps of `g` of length `n >= 3`, with the tuples
/// attaining it (only those that are ufps of `g` of length `n`).
pub fn ufp_f_maximum(g: u64, n: usize, which: FIndex) -> Result<(Rat, Vec<UnitFractionPartition>)> {
    if n < 3 || g == 0 {
        return Err(Error::InvalidArgument("need n >= 3 and g >= 1".into()));
    }
    let syl = sylvester(g, n)?;
    let s = |k: usize| syl.s(k).to_u64().ok_or(Error::Overflow);
    let t = |k: usize| syl.t(k).to_u64().ok_or(Error::Overflow);
    let gb = BigInt::from(g);
    let sq = |x: &BigInt| x * x;
    let (bound, cands): (Rat, Vec<Vec<u64>>) = match which {
        FIndex::N => {
            let mut a: Vec<u64> = (1..n).map(s).collect::<Result<_>>()?;
            a.push(t(n)?);
            (Rat::new(sq(syl.t(n)), gb), vec![a])
        }
        FIndex::NMinus1 if (n, g) == (3, 1) => (int(9), vec![vec![3, 3, 3]]),
        FIndex::NMinus1 => {
            let mut a: Vec<u64> = (1..n - 1).map(s).collect::<Result<_>>()?;
            a.extend([2 * t(n - 1)?, 2 * t(n - 1)?]);
            (Rat::new(2 * sq(syl.t(n - 1)), gb), vec![vec![6, 6, 6], vec![2, 6, 6, 6], a])
        }
        FIndex::NMinus2 if n == 4 && g <= 2 => (int(16 * g * g), vec![vec![4 * g; 4]]),
        FIndex::NMinus2 if (n, g) == (5, 1) => (int(128), vec![vec![2, 8, 8, 8, 8]]),
        FIndex::NMinus2 => {
            let mut a: Vec<u64> = (1..n - 2).map(s).collect::<Result<_>>()?;
            a.extend([3 * t(n - 2)?; 3]);
            (Rat::new(3 * sq(syl.t(n - 2)), gb), vec![vec![12, 12, 12, 12], a])
        }
    };
    let mut set: Vec<UnitFractionPartition> = cands
        .into_iter()
        .filter(|c| c.len() == n)
        .filter_map(|c| UnitFractionPartition::new(g, c).ok())
        .collect();
    set.sort();
    set.dedup();
    Ok((bound, set))
}

fn matrix_from(rows: Vec<Vec<BigInt>>) -> IntMatrix {
    IntMatrix::from_big_rows(rows).expect("rectangular by construction")
}

/// Simplices of maximal volume, as vertex matrices.
pub fn extremal_volume_matrices(d: usize, g: u64) -> Result<Vec<IntMatrix>> {
    check_dg(d, g)?;
    if (d, g) == (2, 1) {
        return Ok(vec![IntMatrix::from_rows(&[vec![1, 1, -2], vec![0, 3, -3]])]);
    }
    let syl = sylvester(g, d)?;
    let gb = BigInt::from(g);
    let tg = syl.t(d) / &gb;
    let mut rows = Vec::with_capacity(d);
    for k in 1..d {
        let sk = syl.s(k);
        let mut row = vec![BigInt::zero(); d + 1];
        row[k - 1] = BigInt::one();
        row[d - 1] = (sk - &gb) * &tg / sk;
        row[d] = -((sk + &gb) * &tg / sk);
        rows.push(row);
    }
    let mut last = vec![BigInt::zero(); d + 1];
    last[d - 1] = tg.clone();
    last[d] = -tg;
    rows.push(last);
    let mut out = vec![matrix_from(rows)];
    if (d, g) == (3, 1) {
        out.insert(0, IntMatrix::from_rows(&[vec![1, 1, 1, -5], vec![0, 2, 2, -4], vec![0, 0, 6, -6]]));
    }
    Ok(out)
}

/// The general multiplicity family for `a_1, …, a_{d-1}`.
pub fn multiplicity_family_matrix(d: usize, g: u64, a: &[BigInt]) -> Result<IntMatrix> {
    check_dg(d, g)?;
    if a.len() != d - 1 {
        return Err(Error::DimensionMismatch(format!("expected {} parameters", d - 1)));
    }
    let syl = sylvester(g, d - 1)?;
    let gb = BigInt::from(g);
    let t = syl.t(d - 1).clone();
    let tg = &t / &gb;
    let mut rows = Vec::with_capacity(d);
    for k in 1..d - 1 {
        let sk = syl.s(k);
        let mut row = vec![BigInt::zero(); d + 1];
        row[k - 1] = BigInt::one();
        row[d - 2] = (sk - &gb) * &tg / sk;
        row[d - 1] = a[k - 1].clone();
        let two_g: BigInt = 2 * &gb;
        row[d] = -((sk + two_g) * &tg / sk + &a[k - 1]);
        rows.push(row);
    }
    let mut row = vec![BigInt::zero(); d + 1];
    row[d - 2] = tg.clone();
    row[d - 1] = a[d - 2].clone();
    row[d] = -(&tg + &a[d - 2]);
    rows.push(row);
    let mut row = vec![BigInt::zero(); d + 1];
    row[d - 1] = 3 * &t;
    row[d] = -3 * &t;
    rows.push(row);
    Ok(matrix_from(rows))
}

/// The explicit maximal-multiplicity matrices: the special cases, and for odd
/// `g` the family member with the standard parameter choice. Empty for even
/// `g` outside the special cases.
pub fn extremal_multiplicity_matrices(d: usize, g: u64) -> Result<Vec<IntMatrix>> {
    check_dg(d, g)?;
    let gi = i64::try_from(g).map_err(|_| Error::Overflow)?;
    match (d, g) {
        (3, 1 | 2) => {
            return Ok(vec![IntMatrix::from_rows(&[
                vec![1, 4 * gi - 3, 4 * gi - 3, 5 - 8 * gi],
                vec![0, 4 * gi, 0, -4 * gi],
                vec![0, 0, 4 * gi, -4 * gi],
            ])])
        }
        (4, 1) => {
            return Ok(vec![IntMatrix::from_rows(&[
                vec![1, 1, 1, 1, -7],
                vec![0, 2, 2, 2, -6],
                vec![0, 0, 8, 0, -8],
                vec![0, 0, 0, 8, -8],
            ])])
        }
        _ => {}
    }
    let mut out = Vec::new();
    if (d, g) == (3, 3) {
        out.push(IntMatrix::from_rows(&[vec![1, 1, 5, -7], vec![0, 12, 0, -12], vec![0, 0, 12, -12]]));
    }
    if g % 2 == 1 {
        let syl = sylvester(g, d - 1)?;
        let gb = BigInt::from(g);
        let tg = syl.t(d - 1) / &gb;
        let mut a: Vec<BigInt> = (1..d - 1).map(|k| (syl.s(k) - &gb) * &tg / syl.s(k)).collect();
        a.push(tg);
        out.push(multiplicity_family_matrix(d, g, &a)?);
    }
    Ok(out)
}

/// Every family member with `0 <= a_k < 3 t_{g,d-1}` that is a Fano simplex of
/// index `g` and maximal multiplicity, plus the extra `(3,3)` matrix, as normal
/// forms. `None` when the parameter box exceeds `limit` points.
pub fn multiplicity_family_attainers(d: usize, g: u64, limit: u64) -> Result<Option<BTreeSet<IntMatrix>>> {
    check_dg(d, g)?;
    let bound = multiplicity_bound(d, g)?;
    let side: BigInt = sylvester(g, d - 1)?.t(d - 1) * 3u32;
    let Some(side_u) = side.to_u64() else { return Ok(None) };
    let Some(total) = side_u.checked_pow(u32::try_from(d - 1).map_err(|_| Error::Overflow)?) else {
        return Ok(None);
    };
    if total > limit {
        return Ok(None);
    }
    let mut out = BTreeSet::new();
    if (d, g) == (3, 3) {
        for m in extremal_multiplicity_matrices(3, 3)? {
            if attains(&m, g, &bound)? {
                out.insert(normal_form(&m)?.into_matrix());
            }
        }
    }
    let mut a = vec![0u64; d - 1];
    loop {
        let ab: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let m = multiplicity_family_matrix(d, g, &ab)?;
        if attains(&m, g, &bound)? {
            out.insert(normal_form(&m)?.into_matrix());
        }
        let mut i = 0;
        loop {
            if i == a.len() {
                return Ok(Some(out));
            }
            a[i] += 1;
            if a[i] < side_u {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Fano, of index `g`, multiplicity equal to `bound`.
fn attains(m: &IntMatrix, g: u64, bound: &Rat) -> Result<bool> {
    let Ok(s) = LatticeSimplex::new(m.clone()) else { return Ok(false) };
    if !s.is_fano() {
        return Ok(false);
    }
    if gorenstein_forms_general(m)?.gorenstein_index != BigInt::from(g) {
        return Ok(false);
    }
    Ok(weights_of(m)?.factor() == bound)
}

/// `(t_{g,d+1}/s_{g,1}, …, t_{g,d+1}/s_{g,d}, 1)`.
pub fn extremal_mahler_weights(d: usize, g: u64) -> Result<WeightSystem> {
    check_dg(d, g)?;
    let syl = sylvester(g, d + 1)?;
    let t = syl.t(d + 1);
    let mut q: Vec<BigInt> = (1..=d).map(|k| t / syl.s(k)).collect();
    q.push(BigInt::one());
    WeightSystem::new(&q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Volume,
    Multiplicity,
    Mahler,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Volume => "volume",
            BoundKind::Multiplicity => "multiplicity",
            BoundKind::Mahler => "mahler",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub d: usize,
    pub g: u64,
    pub kind: BoundKind,
    pub bound: Rat,
    pub max_observed: Option<Rat>,
    /// Records exceeding the bound.
    pub violations: usize,
    pub attained: bool,
    pub attainers: Vec<IntMatrix>,
    /// `None` where no equality characterization is asserted.
    pub predicted: Option<Vec<IntMatrix>>,
    /// Whether the record set was known to be complete.
    pub authoritative: bool,
    /// Extra reference value reported but not asserted.
    pub conjectured_bound: Option<Rat>,
}

impl BoundReport {
    /// Attainers agree with the prediction: equal sets when authoritative,
    /// a subset otherwise.
    pub fn sharpness_ok(&self) -> Option<bool> {
        let p = self.predicted.as_ref()?;
        let want: BTreeSet<&IntMatrix> = p.iter().collect();
        let got: BTreeSet<&IntMatrix> = self.attainers.iter().collect();
        Some(if self.authoritative { got == want } else { got.is_subset(&want) })
    }

    pub fn passes(&self) -> bool {
        self.violations == 0 && self.sharpness_ok() != Some(false)
    }
}

/// Mahler volume `|Q|^{d+1} / Π q_i` of a record.
pub fn record_mahler(r: &ClassificationRecord) -> Rat {
    let vol = Rat::from_integer(r.volume.clone());
    let prod: Rat = r.weights.iter().map(|w| &r.lambda * w).product();
    num_traits::pow(vol, r.d + 1) / prod
}

/// Largest parameter box searched for the multiplicity family.
pub const FAMILY_LIMIT: u64 = 2_000_000;

fn record_is_fano(r: &ClassificationRecord) -> bool {
    (0..r.matrix.cols()).all(|c| is_primitive(&r.matrix.column(c)).unwrap_or(false))
}

/// Check `records` (all of dimension `d` and index `g`) against the three bounds.
///
/// Volume and multiplicity are checked on the Fano records only, the Mahler
/// volume on all of them. `complete` states that `records` is the full output
/// of a classification in `mode`; Mahler reports are authoritative only for a
/// complete `AllIp` set.
pub fn verify_bounds(
    records: &[ClassificationRecord],
    d: usize,
    g: u64,
    mode: Mode,
    complete: bool,
) -> Result<Vec<BoundReport>> {
    check_dg(d, g)?;
    if let Some(r) = records.iter().find(|r| r.d != d || r.g != g) {
        return Err(Error::InvalidArgument(format!("record with d={} g={} in a ({d},{g}) check", r.d, r.g)));
    }
    let nf_set = |ms: Vec<IntMatrix>| -> Result<Vec<IntMatrix>> {
        let s: BTreeSet<IntMatrix> = ms.iter().map(|m| normal_form(m).map(|c| c.into_matrix())).collect::<Result<_>>()?;
        Ok(s.into_iter().collect())
    };
    let report = |kind: BoundKind, bound: Rat, values: Vec<(&ClassificationRecord, Rat)>, predicted, authoritative| {
        let max_observed = values.iter().map(|(_, v)| v).max().cloned();
        let violations = values.iter().filter(|(_, v)| *v > bound).count();
        let attainers: BTreeSet<IntMatrix> =
            values.iter().filter(|(_, v)| *v == bound).map(|(r, _)| r.matrix.clone()).collect();
        BoundReport {
            d,
            g,
            kind,
            attained: !attainers.is_empty(),
            bound,
            max_observed,
            violations,
            attainers: attainers.into_iter().collect(),
            predicted,
            authoritative,
            conjectured_bound: None,
        }
    };
    let fano: Vec<&ClassificationRecord> = records.iter().filter(|r| record_is_fano(r)).collect();

    let vb = volume_bound(d, g)?;
    let vols = fano.iter().map(|r| (*r, Rat::from_integer(r.volume.clone()))).collect();
    let vol = report(BoundKind::Volume, vb, vols, Some(nf_set(extremal_volume_matrices(d, g)?)?), complete);

    let mb = multiplicity_bound(d, g)?;
    let special = matches!((d, g), (3, 1 | 2) | (4, 1));
    let predicted = if special {
        Some(nf_set(extremal_multiplicity_matrices(d, g)?)?)
    } else if g % 2 == 1 {
        multiplicity_family_attainers(d, g, FAMILY_LIMIT)?.map(|s| s.into_iter().collect())
    } else {
        None
    };
    let mults = fano.iter().map(|r| (*r, r.lambda.clone())).collect();
    let mut mult = report(BoundKind::Multiplicity, mb, mults, predicted, complete);
    // (3,4) lies outside the conjectured range.
    if !special && g.is_multiple_of(2) && (d, g) != (3, 4) {
        mult.conjectured_bound = Some(conjectured_even_multiplicity_bound(d, g)?);
    }

    let hb = mahler_bound(d, g)?;
    let ew = extremal_mahler_weights(d, g)?.sorted_desc();
    let with_weights: BTreeSet<IntMatrix> =
        records.iter().filter(|r| r.weights == ew).map(|r| r.matrix.clone()).collect();
    let mahlers = records.iter().map(|r| (r, record_mahler(r))).collect();
    let mah = report(
        BoundKind::Mahler,
        hb,
        mahlers,
        Some(with_weights.into_iter().collect()),
        complete && mode == Mode::AllIp,
    );

    Ok(vec![vol, mult, mah])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_all;
    use crate::simplex::invariants_of;
    use crate::ufp::{enumerate_ufps, f_k};
    use num_integer::Integer;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn sylvester_examples() {
        let s = sylvester(1, 4).unwrap();
        assert_eq!((1..=4).map(|k| s.s(k).clone()).collect::<Vec<_>>(), big(&[2, 3, 7, 43]));
        assert_eq!((1..=4).map(|k| s.t(k).clone()).collect::<Vec<_>>(), big(&[1, 2, 6, 42]));
        let s = sylvester(2, 3).unwrap();
        assert_eq!((1..=3).map(|k| s.s(k).clone()).collect::<Vec<_>>(), big(&[3, 7, 43]));
        assert_eq!(sylvester(3, 2).unwrap().t(2), &BigInt::from(12));
        assert!(sylvester(0, 2).is_err());
    }

    #[test]
    fn sylvester_identities() {
        for g in 1..=50u64 {
            let syl = sylvester(g, 6).unwrap();
            let gr = Rat::from_integer(BigInt::from(g));
            for n in 1..=6 {
                let mut sum = Rat::new(BigInt::one(), syl.t(n).clone());
                let mut prod = Rat::one();
                for i in 1..n {
                    sum += Rat::new(BigInt::one(), syl.s(i).clone());
                    prod *= Rat::new(BigInt::one(), syl.s(i).clone());
                }
                assert_eq!(sum, Rat::one() / &gr);
                assert_eq!(&gr / Rat::from_integer(syl.t(n).clone()), prod);
            }
            for i in 1..=6 {
                for j in i + 1..=6 {
                    assert!(syl.s(i).gcd(syl.s(j)).is_one());
                }
            }
        }
    }

    #[test]
    fn sylvester_inequalities() {
        // r^r t_{n-r+1}^{r+1} <= t_n², and the two companions, with their equality cases.
        for g in 1..=5u64 {
            let syl = sylvester(g, 8).unwrap();
            let t = |k: usize| syl.t(k).clone();
            for n in 3..=7usize {
                for r in 1..=n {
                    let lhs = num_traits::pow(BigInt::from(r), r) * num_traits::pow(t(n - r + 1), r + 1);
                    let rhs = t(n) * t(n);
                    assert!(lhs <= rhs);
                    assert_eq!(lhs == rhs, r == 1, "(i) g={g} n={n} r={r}");
                }
                if (n, g) != (3, 1) {
                    for r in 1..n {
                        let lhs = num_traits::pow(BigInt::from(r + 1), r) * num_traits::pow(t(n - r), r + 1);
                        let rhs = 2 * t(n - 1) * t(n - 1);
                        assert!(lhs <= rhs);
                        let eq = r == 1 || (g, r, n) == (1, 2, 4) || (g, r, n) == (2, 2, 3);
                        assert_eq!(lhs == rhs, eq, "(ii) g={g} n={n} r={r}");
                    }
                }
                if !matches!((n, g), (4, 1) | (4, 2) | (5, 1)) {
                    for r in 1..n - 1 {
                        let lhs = num_traits::pow(BigInt::from(r + 2), r) * num_traits::pow(t(n - r - 1), r + 1);
                        let rhs = 3 * t(n - 2) * t(n - 2);
                        assert!(lhs <= rhs);
                        let eq = r == 1 || (g, r, n) == (3, 2, 4);
                        assert_eq!(lhs == rhs, eq, "(iii) g={g} n={n} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn bound_values() {
        let r = |a: i64, b: i64| Rat::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(volume_bound(2, 1).unwrap(), r(9, 1));
        assert_eq!(volume_bound(3, 1).unwrap(), r(72, 1));
        assert_eq!(volume_bound(2, 2).unwrap(), r(18, 1));
        assert_eq!(multiplicity_bound(4, 1).unwrap(), r(128, 1));
        assert_eq!(multiplicity_bound(3, 2).unwrap(), r(64, 1));
        assert_eq!(multiplicity_bound(3, 3).unwrap(), r(144, 1));
        assert_eq!(multiplicity_bound(2, 1).unwrap(), r(3, 1));
        assert_eq!(mahler_bound(2, 1).unwrap(), r(36, 1));
        assert_eq!(mahler_bound(2, 2).unwrap(), r(441, 4));
        assert!(volume_bound(1, 1).is_err());
    }

    #[test]
    fn extremal_matrix_examples() {
        assert_eq!(extremal_volume_matrices(2, 2).unwrap(), vec![IntMatrix::from_rows(&[vec![1, 1, -5], vec![0, 3, -3]])]);
        let v = extremal_volume_matrices(3, 1).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1], IntMatrix::from_rows(&[vec![1, 0, 3, -9], vec![0, 1, 4, -8], vec![0, 0, 6, -6]]));
        assert_eq!(
            extremal_multiplicity_matrices(2, 1).unwrap(),
            vec![IntMatrix::from_rows(&[vec![1, 1, -2], vec![0, 3, -3]])]
        );
        assert_eq!(
            extremal_multiplicity_matrices(3, 3).unwrap()[1],
            IntMatrix::from_rows(&[vec![1, 1, 1, -11], vec![0, 4, 4, -8], vec![0, 0, 36, -36]])
        );
        assert!(extremal_multiplicity_matrices(3, 4).unwrap().is_empty());
        assert_eq!(extremal_mahler_weights(2, 1).unwrap().weights(), big(&[3, 2, 1]).as_slice());
        assert_eq!(extremal_mahler_weights(2, 2).unwrap().weights(), big(&[14, 6, 1]).as_slice());
        assert_eq!(extremal_mahler_weights(3, 1).unwrap().weights(), big(&[21, 14, 6, 1]).as_slice());
    }

    /// Primitive columns, index exactly g, bound attained; recomputed from scratch.
    #[test]
    fn extremal_matrices_attain() {
        for d in 2..=5usize {
            for g in 1..=6u64 {
                if d == 5 && g > 2 {
                    continue;
                }
                let vb = volume_bound(d, g).unwrap();
                for m in extremal_volume_matrices(d, g).unwrap() {
                    let s = LatticeSimplex::new(m.clone()).unwrap();
                    assert!(s.is_fano(), "{m}");
                    assert_eq!(s.gorenstein().gorenstein_index, BigInt::from(g), "{m}");
                    assert_eq!(Rat::from_integer(invariants_of(&m, g).unwrap().volume), vb, "{m}");
                }
                let mb = multiplicity_bound(d, g).unwrap();
                for m in extremal_multiplicity_matrices(d, g).unwrap() {
                    let s = LatticeSimplex::new(m.clone()).unwrap();
                    assert!(s.is_fano(), "{m}");
                    assert_eq!(s.gorenstein().gorenstein_index, BigInt::from(g), "{m}");
                    assert_eq!(s.weights().factor(), &mb, "{m}");
                }
                let w = extremal_mahler_weights(d, g).unwrap();
                let s = crate::simplex::simplex_of_reduced_weights(w.weights()).unwrap();
                let gi = s.gorenstein().gorenstein_index.to_u64().unwrap();
                assert_eq!(gi, g);
                assert_eq!(invariants_of(s.vertices(), g).unwrap().mahler, mahler_bound(d, g).unwrap());
            }
        }
    }

    #[test]
    fn even_g_family_choice_is_not_fano() {
        for g in [2u64, 4, 6] {
            let syl = sylvester(g, 1).unwrap();
            let tg = syl.t(1) / BigInt::from(g);
            let m = multiplicity_family_matrix(2, g, &[tg]).unwrap();
            assert!(!LatticeSimplex::new(m).unwrap().is_fano());
        }
    }

    /// Exhaustive maxima of F_n, F_{n-1}, F_{n-2} over all ufps.
    #[test]
    fn ufp_maxima_brute_force() {
        for g in 1..=6u64 {
            for n in 3..=4usize {
                let all = enumerate_ufps(g, n).unwrap();
                for which in [FIndex::N, FIndex::NMinus1, FIndex::NMinus2] {
                    let k = which.k(n);
                    if k == 0 {
                        continue;
                    }
                    let vals: Vec<(Rat, &UnitFractionPartition)> = all.iter().map(|a| (f_k(a, k).unwrap(), a)).collect();
                    let max = vals.iter().map(|(v, _)| v.clone()).max().unwrap();
                    let mut arg: Vec<UnitFractionPartition> =
                        vals.iter().filter(|(v, _)| *v == max).map(|(_, a)| (*a).clone()).collect();
                    arg.sort();
                    let (bound, set) = ufp_f_maximum(g, n, which).unwrap();
                    assert_eq!(max, bound, "g={g} n={n} {which:?}");
                    assert_eq!(arg, set, "g={g} n={n} {which:?}");
                }
            }
        }
        // The (5,1) case.
        let all = enumerate_ufps(1, 5).unwrap();
        let max = all.iter().map(|a| f_k(a, 3).unwrap()).max().unwrap();
        assert_eq!(ufp_f_maximum(1, 5, FIndex::NMinus2).unwrap().0, max);
        assert_eq!(max, Rat::from_integer(BigInt::from(128)));
    }

    #[test]
    fn max_entry_is_truncated_sylvester() {
        for g in 1..=4u64 {
            for n in 1..=4usize {
                let all = enumerate_ufps(g, n).unwrap();
                let syl = sylvester(g, n).unwrap();
                let max = all.iter().map(|a| *a.entries().last().unwrap()).max().unwrap();
                assert_eq!(BigInt::from(max), *syl.t(n));
                let arg: Vec<_> = all.iter().filter(|a| *a.entries().last().unwrap() == max).collect();
                let mut want: Vec<u64> = (1..n).map(|k| syl.s(k).to_u64().unwrap()).collect();
                want.push(max);
                assert_eq!(arg.len(), 1);
                assert_eq!(arg[0].entries(), want.as_slice());
            }
        }
    }

    #[test]
    fn reports_small_cases() {
        for (d, g) in [(2, 1), (2, 2), (2, 3), (3, 1)] {
            let recs = classify_all(d, g, Mode::Fano).unwrap();
            let reps = verify_bounds(&recs, d, g, Mode::Fano, true).unwrap();
            for rep in &reps {
                assert!(rep.passes(), "{rep:?}");
            }
            assert!(reps[0].attained);
            assert_eq!(reps[1].attained, g % 2 == 1);
            assert!(!reps[2].authoritative);
        }
    }

    #[test]
    fn mahler_attained_among_ip_simplices() {
        for (d, g) in [(2, 1), (2, 2), (2, 3)] {
            let recs = classify_all(d, g, Mode::AllIp).unwrap();
            let reps = verify_bounds(&recs, d, g, Mode::AllIp, true).unwrap();
            for rep in &reps {
                assert!(rep.passes(), "{rep:?}");
            }
            assert!(reps[2].authoritative && reps[2].attained, "{:?}", reps[2]);
            assert_eq!(reps[2].max_observed.as_ref(), Some(&mahler_bound(d, g).unwrap()));
        }
    }

    #[test]
    fn tampered_record_fails() {
        let mut recs = classify_all(2, 1, Mode::Fano).unwrap();
        recs[0].volume += 100;
        let reps = verify_bounds(&recs, 2, 1, Mode::Fano, true).unwrap();
        assert!(!reps[0].passes());
    }
}
