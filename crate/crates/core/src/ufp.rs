//! Unit fraction partitions and weight systems.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::int::Rat;

/// Ascending tuple `(α_0, …, α_{n-1})` with `Σ 1/α_i = 1/g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitFractionPartition {
    g: u64,
    entries: Vec<u64>,
}

impl UnitFractionPartition {
    /// Validates and sorts.
    pub fn new(g: u64, mut entries: Vec<u64>) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidArgument("g must be positive".into()));
        }
        if entries.is_empty() {
            return Err(Error::EmptyInput);
        }
        if entries.contains(&0) {
            return Err(Error::InvalidArgument("zero entry".into()));
        }
        entries.sort_unstable();
        let sum: Rat = entries.iter().map(|&a| Rat::new(BigInt::one(), BigInt::from(a))).sum();
        if sum != Rat::new(BigInt::one(), BigInt::from(g)) {
            return Err(Error::InvalidArgument(format!("{entries:?} does not sum to 1/{g}")));
        }
        Ok(UnitFractionPartition { g, entries })
    }

    pub(crate) fn new_unchecked(g: u64, entries: Vec<u64>) -> Self {
        UnitFractionPartition { g, entries }
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `t_A = lcm(α_i)`.
    pub fn t_a(&self) -> BigInt {
        self.entries.iter().fold(BigInt::one(), |acc, &a| acc.lcm(&BigInt::from(a)))
    }

    /// `λ(A) = gcd(g, α_i)`.
    pub fn factor(&self) -> u64 {
        self.entries.iter().fold(self.g, |acc, &a| acc.gcd(&a))
    }

    /// `(λ(A), A/λ(A))`.
    pub fn reduce(&self) -> (u64, UnitFractionPartition) {
        let l = self.factor();
        let red = UnitFractionPartition {
            g: self.g / l,
            entries: self.entries.iter().map(|&a| a / l).collect(),
        };
        (l, red)
    }

    /// `α_i | lcm(α_j; j ≠ i)` for every `i`.
    pub fn is_well_formed(&self) -> bool {
        (0..self.entries.len()).all(|i| {
            let l = self
                .entries
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(BigInt::one(), |acc, (_, &a)| acc.lcm(&BigInt::from(a)));
            (l % self.entries[i]).is_zero()
        })
    }
}

impl fmt::Debug for UnitFractionPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}; ", self.g)?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A weight system, stored reduced together with its factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    weights: Vec<BigInt>,
    factor: Rat,
    index: BigInt,
}

impl WeightSystem {
    /// From positive integer weights in any scaling.
    pub fn new(q: &[BigInt]) -> Result<Self> {
        let q: Vec<Rat> = q.iter().map(|x| Rat::from_integer(x.clone())).collect();
        Self::from_rational(&q)
    }

    /// From positive rational weights; `factor` is the `λ` with `Q = λ·Q_red`.
    pub fn from_rational(q: &[Rat]) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::EmptyInput);
        }
        if q.iter().any(|x| !x.is_positive()) {
            return Err(Error::Degenerate);
        }
        let den = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = q.iter().map(|x| (x * &den).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let weights: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
        let total: BigInt = weights.iter().sum();
        let index = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(&(w / w.gcd(&total))));
        Ok(WeightSystem { weights, factor: Rat::new(g, den), index })
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn factor(&self) -> &Rat {
        &self.factor
    }

    /// `g(Q)`: least `k` with `k|Q|/q_i` integral for all `i`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    /// `|Q_red|`.
    pub fn total(&self) -> BigInt {
        self.weights.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Reduced weights sorted descending.
    pub fn sorted_desc(&self) -> Vec<BigInt> {
        let mut w = self.weights.clone();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }

    /// gcd of every `len-1` of the weights is one.
    pub fn is_well_formed(&self) -> bool {
        (0..self.weights.len()).all(|i| {
            self.weights
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(BigInt::zero(), |acc, (_, w)| acc.gcd(w))
                .is_one()
        })
    }
}

/// `Q(A) = (t_A/α_0, …)`; descending when `A` is ascending.
pub fn weights_of_ufp(a: &UnitFractionPartition) -> WeightSystem {
    let t = a.t_a();
    let q: Vec<BigInt> = a.entries.iter().map(|&x| &t / x).collect();
    WeightSystem::new(&q).expect("ufp entries are positive")
}

/// `A(Q) = (g|Q|/q_i)`, sorted ascending.
pub fn ufp_of_weights(q: &[BigInt], g: u64) -> Result<UnitFractionPartition> {
    if q.is_empty() {
        return Err(Error::EmptyInput);
    }
    if g == 0 || q.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument("weights and g must be positive".into()));
    }
    let total: BigInt = q.iter().sum::<BigInt>() * g;
    let mut entries = Vec::with_capacity(q.len());
    for qi in q {
        let (d, r) = total.div_rem(qi);
        if !r.is_zero() {
            return Err(Error::IndexDoesNotDivide);
        }
        entries.push(d.to_u64().ok_or(Error::Overflow)?);
    }
    entries.sort_unstable();
    Ok(UnitFractionPartition { g, entries })
}

/// `F_k(A) = Πα_i / lcm(α)^{n-k}` as an exact rational.
pub fn f_k(a: &UnitFractionPartition, k: usize) -> Result<Rat> {
    let n = a.len();
    if k == 0 || k > n {
        return Err(Error::OutOfRange { what: "k" });
    }
    let prod: BigInt = a.entries.iter().map(|&x| BigInt::from(x)).product();
    let den = num_traits::pow(a.t_a(), n - k);
    Ok(Rat::new(prod, den))
}

/// Conditions (A1)–(A3) on a raw point `x`.
pub fn satisfies_a_conditions(x: &[Rat], g: u64) -> bool {
    if g == 0 || x.is_empty() {
        return false;
    }
    if x.windows(2).any(|w| w[0] < w[1]) || x.last().is_some_and(Signed::is_negative) {
        return false;
    }
    let sum: Rat = x.iter().sum();
    let gr = Rat::from_integer(BigInt::from(g));
    if sum * &gr != Rat::one() {
        return false;
    }
    let mut prod = Rat::one();
    let mut tail: Rat = x.iter().sum();
    for k in 0..x.len() - 1 {
        prod *= &x[k];
        tail -= &x[k];
        if prod > &gr * &tail {
            return false;
        }
    }
    true
}

/// Membership of `(1/α_0, …)` (descending) in `A_g^n`.
pub fn in_a_g_n(a: &UnitFractionPartition) -> bool {
    let x: Vec<Rat> = a.entries.iter().map(|&v| Rat::new(BigInt::one(), BigInt::from(v))).collect();
    satisfies_a_conditions(&x, a.g)
}

/// All ascending length-`n` unit fraction partitions of `g`, in lexicographic order.
pub fn enumerate_ufps(g: u64, n: usize) -> Result<Vec<UnitFractionPartition>> {
    if g == 0 {
        return Err(Error::InvalidArgument("g must be positive".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("length must be positive".into()));
    }
    Ok(enumerate_ufps_rational(1, g, n, 1)?
        .into_iter()
        .map(|e| UnitFractionPartition::new_unchecked(g, e))
        .collect())
}

/// All ascending `n`-tuples with entries `>= min_entry` whose reciprocals sum to `p/q`.
pub fn enumerate_ufps_rational(p: u64, q: u64, n: usize, min_entry: u64) -> Result<Vec<Vec<u64>>> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument("p and q must be positive".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("length must be positive".into()));
    }
    let g = p.gcd(&q);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    rec(u128::from(p / g), u128::from(q / g), n, u128::from(min_entry.max(1)), &mut prefix, &mut out)?;
    Ok(out)
}

fn rec(p: u128, q: u128, n: usize, min: u128, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) -> Result<()> {
    if n == 1 {
        if p == 1 && q >= min {
            let mut e = prefix.to_vec();
            e.push(u64::try_from(q).map_err(|_| Error::Overflow)?);
            out.push(e);
        }
        return Ok(());
    }
    let lo = min.max(q.div_ceil(p));
    let hi = (n as u128).checked_mul(q).ok_or(Error::Overflow)? / p;
    if lo > hi {
        return Ok(());
    }
    if n == 2 && hi - lo > 256 && q < (1u128 << 62) && ((hi - lo) as f64) > (q as f64).sqrt() {
        return pairs_by_divisors(p, q, min, prefix, out);
    }
    for a in lo..=hi {
        let num = p.checked_mul(a).ok_or(Error::Overflow)?;
        if num == q {
            continue;
        }
        let num = num - q;
        let den = q.checked_mul(a).ok_or(Error::Overflow)?;
        let g = num.gcd(&den);
        prefix.push(u64::try_from(a).map_err(|_| Error::Overflow)?);
        rec(num / g, den / g, n - 1, a, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Solves `1/a + 1/b = p/q`, `min <= a <= b`, via `(pa - q)(pb - q) = q²`.
fn pairs_by_divisors(p: u128, q: u128, min: u128, prefix: &[u64], out: &mut Vec<Vec<u64>>) -> Result<()> {
    let q2 = q * q;
    let mut xs: Vec<u128> = square_divisors(q).into_iter().filter(|&x| x * x <= q2).collect();
    xs.sort_unstable();
    for x in xs {
        if !(x + q).is_multiple_of(p) {
            continue;
        }
        let y = q2 / x;
        if !(y + q).is_multiple_of(p) {
            continue;
        }
        let a = (x + q) / p;
        let b = (y + q) / p;
        if a < min {
            continue;
        }
        let mut e = prefix.to_vec();
        e.push(u64::try_from(a).map_err(|_| Error::Overflow)?);
        e.push(u64::try_from(b).map_err(|_| Error::Overflow)?);
        out.push(e);
    }
    Ok(())
}

/// Divisors of `q²` by trial-dividing `q`.
fn square_divisors(q: u128) -> Vec<u128> {
    let mut m = q;
    let mut primes = Vec::new();
    let mut d = 2u128;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0u32;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            primes.push((d, 2 * e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 2));
    }
    let mut out = vec![1u128];
    for (p, e) in primes {
        let len = out.len();
        let mut pk = 1u128;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out
}
