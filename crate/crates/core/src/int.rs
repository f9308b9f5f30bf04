//! Exact integer arithmetic.
//!
//! Everything that has to be exact is written against [`ExactInt`], which is
//! implemented both for `i128` (checked, returns `None` on overflow) and for
//! [`BigInt`] (never fails). Hot loops run on `i128` first and are re-run on
//! `BigInt` when any operation overflows.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub trait ExactInt: Clone + Ord + Eq + Hash + Debug + Send + Sync + 'static {
    fn ex_zero() -> Self;
    fn ex_one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_u64(v: u64) -> Option<Self>;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;

    fn ex_add(&self, rhs: &Self) -> Option<Self>;
    fn ex_sub(&self, rhs: &Self) -> Option<Self>;
    fn ex_mul(&self, rhs: &Self) -> Option<Self>;
    fn ex_neg(&self) -> Option<Self>;

    /// Floor division; `rhs` must be nonzero.
    fn fdiv(&self, rhs: &Self) -> Self;
    /// Remainder in `[0, |rhs|)`; `rhs` must be nonzero.
    fn fmod(&self, rhs: &Self) -> Self;

    fn ex_is_zero(&self) -> bool;
    fn ex_is_negative(&self) -> bool;

    fn ex_abs(&self) -> Option<Self> {
        if self.ex_is_negative() {
            self.ex_neg()
        } else {
            Some(self.clone())
        }
    }

    fn ex_is_one(&self) -> bool {
        *self == Self::ex_one()
    }

    /// `Some(q)` when `rhs` divides `self` exactly.
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if self.fmod(rhs).ex_is_zero() {
            Some(self.fdiv(rhs))
        } else {
            None
        }
    }
}

impl ExactInt for i128 {
    #[inline]
    fn ex_zero() -> Self {
        0
    }
    #[inline]
    fn ex_one() -> Self {
        1
    }
    #[inline]
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    #[inline]
    fn from_u64(v: u64) -> Option<Self> {
        Some(v as i128)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn ex_add(&self, rhs: &Self) -> Option<Self> {
        self.checked_add(*rhs)
    }
    #[inline]
    fn ex_sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(*rhs)
    }
    #[inline]
    fn ex_mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }
    #[inline]
    fn ex_neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    #[inline]
    fn fdiv(&self, rhs: &Self) -> Self {
        Integer::div_floor(self, rhs)
    }
    #[inline]
    fn fmod(&self, rhs: &Self) -> Self {
        self.rem_euclid(*rhs)
    }
    #[inline]
    fn ex_is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn ex_is_negative(&self) -> bool {
        *self < 0
    }
}

impl ExactInt for BigInt {
    fn ex_zero() -> Self {
        Zero::zero()
    }
    fn ex_one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_u64(v: u64) -> Option<Self> {
        Some(BigInt::from(v))
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn ex_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn ex_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn ex_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn ex_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn fdiv(&self, rhs: &Self) -> Self {
        Integer::div_floor(self, rhs)
    }
    fn fmod(&self, rhs: &Self) -> Self {
        let r = Integer::mod_floor(self, rhs);
        if r.ex_is_negative() {
            r - rhs
        } else {
            r
        }
    }
    fn ex_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ex_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Nonnegative gcd.
pub fn gcd<T: ExactInt>(a: &T, b: &T) -> Option<T> {
    let mut x = a.ex_abs()?;
    let mut y = b.ex_abs()?;
    while !y.ex_is_zero() {
        let r = x.fmod(&y);
        x = y;
        y = r;
    }
    Some(x)
}

/// Returns `(g, s, t)` with `g = s*a + t*b = gcd(a, b) >= 0`.
///
/// When `b` divides `a` the cofactors are `(0, sign(b))`-style minimal, so the
/// 2x2 transforms built from them stay small.
pub fn ext_gcd<T: ExactInt>(a: &T, b: &T) -> Option<(T, T, T)> {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::ex_one(), T::ex_zero());
    let (mut old_t, mut t) = (T::ex_zero(), T::ex_one());
    while !r.ex_is_zero() {
        let q = old_r.fdiv(&r);
        let nr = old_r.ex_sub(&q.ex_mul(&r)?)?;
        old_r = std::mem::replace(&mut r, nr);
        let ns = old_s.ex_sub(&q.ex_mul(&s)?)?;
        old_s = std::mem::replace(&mut s, ns);
        let nt = old_t.ex_sub(&q.ex_mul(&t)?)?;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.ex_is_negative() {
        Some((old_r.ex_neg()?, old_s.ex_neg()?, old_t.ex_neg()?))
    } else {
        Some((old_r, old_s, old_t))
    }
}

pub fn lcm<T: ExactInt>(a: &T, b: &T) -> Option<T> {
    if a.ex_is_zero() || b.ex_is_zero() {
        return Some(T::ex_zero());
    }
    let g = gcd(a, b)?;
    a.ex_abs()?.fdiv(&g).ex_mul(&b.ex_abs()?)
}

/// Modular inverse of `a` modulo `m > 1`, if it exists, in `[0, m)`.
pub fn mod_inverse<T: ExactInt>(a: &T, m: &T) -> Option<T> {
    let (g, s, _) = ext_gcd(&a.fmod(m), m)?;
    if g.ex_is_one() {
        Some(s.fmod(m))
    } else {
        None
    }
}

pub fn gcd_all(xs: &[BigInt]) -> Result<BigInt> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)))
}

pub fn lcm_all(xs: &[BigInt]) -> Result<BigInt> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if xs.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument("lcm_all expects positive entries".into()));
    }
    Ok(xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x)))
}

/// A nonzero integer vector is primitive iff the gcd of its entries is one.
pub fn is_primitive(v: &[BigInt]) -> Result<bool> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).ex_is_one())
}

/// All positive divisors of `n > 0`, ascending. Trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero");
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut out = vec![1u64];
    for (p, e) in primes {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn rat_from_ints(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Format as `p/q` (always with the slash, even for integers).
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_parse(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidArgument(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.ex_is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_and_lcm_folds() {
        assert_eq!(gcd_all(&big(&[6, 10, 15])).unwrap(), BigInt::from(1));
        assert_eq!(lcm_all(&big(&[2, 6, 6, 6])).unwrap(), BigInt::from(6));
        assert_eq!(lcm_all(&big(&[3, 3, 3])).unwrap(), BigInt::from(3));
        assert_eq!(gcd_all(&[]), Err(Error::EmptyInput));
        assert_eq!(lcm_all(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&big(&[1, 0, 0])).unwrap());
        assert!(!is_primitive(&big(&[2, 4, 6])).unwrap());
        assert!(is_primitive(&big(&[-5, -4, -6])).unwrap());
        assert_eq!(is_primitive(&big(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn ext_gcd_bezout() {
        for a in -30i128..30 {
            for b in -30i128..30 {
                let (g, s, t) = ext_gcd(&a, &b).unwrap();
                assert_eq!(g, gcd(&a, &b).unwrap());
                assert_eq!(s * a + t * b, g);
            }
        }
    }

    #[test]
    fn checked_overflow_is_reported() {
        assert_eq!(ExactInt::ex_mul(&i128::MAX, &2), None);
        assert!(ExactInt::ex_mul(&BigInt::from(i128::MAX), &BigInt::from(2)).is_some());
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(97), vec![1, 97]);
        for n in 1..500u64 {
            let brute: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
            assert_eq!(divisors(n), brute);
        }
    }

    #[test]
    fn mod_floor_is_nonnegative() {
        assert_eq!(ExactInt::fmod(&-7i128, &3), 2);
        assert_eq!(ExactInt::fmod(&BigInt::from(-7), &BigInt::from(3)), BigInt::from(2));
        assert_eq!(ExactInt::fmod(&BigInt::from(7), &BigInt::from(-3)), BigInt::from(1));
    }

    #[test]
    fn rational_strings() {
        let r = rat_parse("6/4").unwrap();
        assert_eq!(rat_to_string(&r), "3/2");
        assert_eq!(rat_to_string(&rat_parse("5").unwrap()), "5/1");
        assert!(rat_parse("1/0").is_err());
    }
}
