//! Lattice simplices given by vertex matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hnf::hnf;
use crate::int::{is_primitive, Rat};
use crate::matrix::{det, IntMatrix};
use crate::ufp::{ufp_of_weights, UnitFractionPartition, WeightSystem};

/// A `d`-simplex containing the origin in its interior; columns are vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSimplex {
    vertices: IntMatrix,
}

impl LatticeSimplex {
    pub fn new(vertices: IntMatrix) -> Result<Self> {
        signed_weights(&vertices)?;
        Ok(LatticeSimplex { vertices })
    }

    pub fn dim(&self) -> usize {
        self.vertices.rows()
    }

    pub fn vertices(&self) -> &IntMatrix {
        &self.vertices
    }

    pub fn into_vertices(self) -> IntMatrix {
        self.vertices
    }

    /// All vertices primitive.
    pub fn is_fano(&self) -> bool {
        (0..self.vertices.cols()).all(|c| is_primitive(&self.vertices.column(c)).unwrap_or(false))
    }

    pub fn weights(&self) -> WeightSystem {
        weights_of(&self.vertices).expect("validated at construction")
    }

    pub fn gorenstein(&self) -> GorensteinData {
        gorenstein_forms_general(&self.vertices).expect("validated at construction")
    }
}

/// Gorenstein forms `u_k` with `⟨u_k, v_j⟩ = -1` for `j ≠ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinData {
    pub forms: Vec<Vec<Rat>>,
    pub local_indices: Vec<BigInt>,
    pub gorenstein_index: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexInvariants {
    /// `Q_Δ` in reduced form; its factor is the multiplicity.
    pub weights: WeightSystem,
    /// Normalized volume `|Q_Δ|`.
    pub volume: BigInt,
    pub multiplicity: Rat,
    /// `Q_{Δ*} = m_Q·Q_Δ`.
    pub dual_weights: WeightSystem,
    pub dual_volume: Rat,
    pub mahler: Rat,
    pub ufp: UnitFractionPartition,
}

/// Signed maximal minors `c_i = (-1)^i det(P without column i)`, so `P·c = 0`.
///
/// Fails unless all `c_i` are nonzero of a common sign.
pub fn signed_weights(p: &IntMatrix) -> Result<Vec<BigInt>> {
    let d = p.rows();
    if d == 0 || p.cols() != d + 1 {
        return Err(Error::DimensionMismatch(format!("expected d x (d+1), got {}x{}", d, p.cols())));
    }
    let mut c = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let m = det(&p.without_column(i))?;
        c.push(if i % 2 == 0 { m } else { -m });
    }
    let pos = c.iter().all(Signed::is_positive);
    let neg = c.iter().all(Signed::is_negative);
    if !(pos || neg) {
        return Err(Error::Degenerate);
    }
    Ok(c)
}

/// `Q_Δ = (|det(P without column i)|)_i`, stored reduced with `λ(Δ)` as factor.
pub fn weights_of(p: &IntMatrix) -> Result<WeightSystem> {
    let q: Vec<BigInt> = signed_weights(p)?.into_iter().map(|x| x.abs()).collect();
    WeightSystem::new(&q)
}

/// Forms via forward substitution on an upper-triangular `P`.
///
/// Column `j < d` of `P` meets `u_k` in `|w|/w_k - 1` when `j = k` and in `-1`
/// otherwise, so each coordinate only depends on earlier ones.
pub fn gorenstein_forms_triangular(p: &IntMatrix, w: &[BigInt]) -> Result<GorensteinData> {
    let d = p.rows();
    if p.cols() != d + 1 || w.len() != d + 1 {
        return Err(Error::DimensionMismatch("triangular forms".into()));
    }
    for j in 0..d {
        if !p.get(j, j).is_positive() || (j + 1..d).any(|i| !p.get(i, j).is_zero()) {
            return Err(Error::InvalidArgument("matrix is not upper triangular with positive diagonal".into()));
        }
    }
    let total: BigInt = w.iter().sum();
    let minus_one = -Rat::one();
    let forms: Vec<Vec<Rat>> = (0..=d)
        .map(|k| {
            let mut u: Vec<Rat> = Vec::with_capacity(d);
            for j in 0..d {
                let mut t = if j == k { Rat::new(total.clone(), w[k].clone()) - Rat::one() } else { minus_one.clone() };
                for (l, ul) in u.iter().enumerate() {
                    t -= ul * p.get(l, j);
                }
                u.push(t / p.get(j, j));
            }
            u
        })
        .collect();
    let (local_indices, gorenstein_index) = local_gorenstein_indices(&forms);
    Ok(GorensteinData { forms, local_indices, gorenstein_index })
}

/// Forms by solving each facet system independently.
pub fn gorenstein_forms_general(p: &IntMatrix) -> Result<GorensteinData> {
    let d = p.rows();
    signed_weights(p)?;
    let mut forms = Vec::with_capacity(d + 1);
    for k in 0..=d {
        // Rows are the vertices v_j, j != k.
        let facet = p.without_column(k);
        let a: Vec<Vec<Rat>> = (0..d)
            .map(|j| (0..d).map(|i| Rat::from_integer(facet.get(i, j).clone())).collect())
            .collect();
        forms.push(solve(a, vec![-Rat::one(); d])?);
    }
    let (local_indices, gorenstein_index) = local_gorenstein_indices(&forms);
    Ok(GorensteinData { forms, local_indices, gorenstein_index })
}

/// `g_k` = lcm of the denominators of `u_k`; `g = lcm(g_k)`.
pub fn local_gorenstein_indices(forms: &[Vec<Rat>]) -> (Vec<BigInt>, BigInt) {
    let local: Vec<BigInt> = forms
        .iter()
        .map(|u| u.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
        .collect();
    let g = local.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
    (local, g)
}

/// Volume, multiplicity, duality data and `A(Δ)` for a simplex of index `g`.
pub fn invariants_of(p: &IntMatrix, g: u64) -> Result<SimplexInvariants> {
    let d = p.rows();
    let weights = weights_of(p)?;
    let lambda = weights.factor().clone();
    let q: Vec<Rat> = weights.weights().iter().map(|x| &lambda * x).collect();
    let total: Rat = q.iter().sum();
    let prod: Rat = q.iter().product();
    let m_q = num_traits::pow(total.clone(), d - 1) / &prod;
    let dual_q: Vec<Rat> = q.iter().map(|x| x * &m_q).collect();
    let dual_weights = WeightSystem::from_rational(&dual_q)?;
    let dual_volume = &m_q * &total;
    let volume = total.to_integer();
    let mahler = &dual_volume * &total;
    let ufp = ufp_of_weights(weights.weights(), g)?;
    Ok(SimplexInvariants { weights, volume, multiplicity: lambda, dual_weights, dual_volume, mahler, ufp })
}

/// A simplex with reduced weights `q` whose vertices span the lattice.
pub fn simplex_of_reduced_weights(q: &[BigInt]) -> Result<LatticeSimplex> {
    let n = q.len();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two weights".into()));
    }
    if q.iter().any(|x| !x.is_positive()) {
        return Err(Error::Degenerate);
    }
    if !q.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).is_one() {
        return Err(Error::InvalidArgument("weights not reduced".into()));
    }
    let d = n - 1;
    let mut p = IntMatrix::zeros(d, n);
    if q[d].is_one() {
        for i in 0..d {
            p.set(i, i, BigInt::one());
            p.set(i, d, -q[i].clone());
        }
        return LatticeSimplex::new(p);
    }
    // U·Q = e_0 for a unimodular U; rows 1.. of U map Z^n onto Z^d with kernel Q.
    let mut aug = IntMatrix::zeros(n, n + 1);
    for i in 0..n {
        aug.set(i, 0, q[i].clone());
        aug.set(i, i + 1, BigInt::one());
    }
    let h = hnf(&aug)?;
    for i in 0..d {
        for j in 0..n {
            p.set(i, j, h.get(i + 1, j + 1).clone());
        }
    }
    LatticeSimplex::new(hnf(&p)?)
}

/// Exact solve of a nonsingular square system.
fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Result<Vec<Rat>> {
    let n = a.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::Singular)?;
        a.swap(c, piv);
        b.swap(c, piv);
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for j in c..n {
                let v = &f * &a[c][j];
                a[r][j] -= v;
            }
            let v = &f * &b[c];
            b[r] -= v;
        }
    }
    Ok((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufp::{enumerate_ufps, f_k, weights_of_ufp};
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(BigInt::from(a), BigInt::from(b))
    }

    fn ri(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| r(x, 1)).collect()
    }

    #[test]
    fn weights_examples() {
        let w = weights_of(&m(&[vec![1, 0, -1], vec![0, 1, -1]])).unwrap();
        assert_eq!((w.weights(), w.factor()), (big(&[1, 1, 1]).as_slice(), &r(1, 1)));
        let w = weights_of(&m(&[vec![1, 1, -2], vec![0, 3, -3]])).unwrap();
        assert_eq!((w.weights(), w.factor()), (big(&[1, 1, 1]).as_slice(), &r(3, 1)));
        let w = weights_of(&m(&[vec![1, 0, -3], vec![0, 1, -2]])).unwrap();
        assert_eq!((w.weights(), w.factor()), (big(&[3, 2, 1]).as_slice(), &r(1, 1)));
        assert_eq!(weights_of(&m(&[vec![1, 0, 1], vec![0, 1, 1]])), Err(Error::Degenerate));
        assert_eq!(weights_of(&m(&[vec![1, 0, 0], vec![0, 1, -1]])), Err(Error::Degenerate));
    }

    #[test]
    fn forms_examples() {
        let p = m(&[vec![1, 1, -2], vec![0, 3, -3]]);
        let g = gorenstein_forms_triangular(&p, &big(&[1, 1, 1])).unwrap();
        assert_eq!(g.forms, vec![ri(&[2, -1]), ri(&[-1, 1]), ri(&[-1, 0])]);
        assert_eq!(g.local_indices, big(&[1, 1, 1]));
        assert_eq!(g, gorenstein_forms_general(&p).unwrap());

        let p = m(&[vec![1, 0, -1], vec![0, 1, -1]]);
        let g = gorenstein_forms_general(&p).unwrap();
        assert_eq!(g.forms, vec![ri(&[2, -1]), ri(&[-1, 2]), ri(&[-1, -1])]);
        assert_eq!(g, gorenstein_forms_triangular(&p, &big(&[1, 1, 1])).unwrap());

        let p = m(&[vec![1, 0, -3], vec![0, 1, -2]]);
        let g = gorenstein_forms_general(&p).unwrap();
        assert_eq!(g.local_indices, big(&[1, 1, 1]));
        assert_eq!(g.gorenstein_index, BigInt::from(1));
    }

    #[test]
    fn local_index_examples() {
        let (l, g) = local_gorenstein_indices(&[ri(&[2, -1]), ri(&[-1, 1]), ri(&[-1, 0])]);
        assert_eq!((l, g), (big(&[1, 1, 1]), BigInt::from(1)));
        let (l, g) = local_gorenstein_indices(&[vec![r(-1, 1), r(1, 2)]]);
        assert_eq!((l, g), (big(&[2]), BigInt::from(2)));
        // Multiplicity family at g = 2.
        let p = m(&[vec![1, 5, 5, -11], vec![0, 8, 0, -8], vec![0, 0, 8, -8]]);
        assert_eq!(gorenstein_forms_general(&p).unwrap().gorenstein_index, BigInt::from(2));
    }

    #[test]
    fn invariants_examples() {
        let inv = invariants_of(&m(&[vec![1, 1, -2], vec![0, 3, -3]]), 1).unwrap();
        assert_eq!(inv.volume, BigInt::from(9));
        assert_eq!(inv.multiplicity, r(3, 1));
        let inv = invariants_of(&m(&[vec![1, 1, 1, -5], vec![0, 2, 2, -4], vec![0, 0, 6, -6]]), 1).unwrap();
        assert_eq!(inv.volume, BigInt::from(72));
        let inv = invariants_of(&m(&[vec![1, 0, -3], vec![0, 1, -2]]), 1).unwrap();
        assert_eq!(inv.mahler, r(36, 1));
        assert_eq!(inv.dual_volume, r(6, 1));
    }

    #[test]
    fn explicit_construction() {
        assert_eq!(
            simplex_of_reduced_weights(&big(&[1, 1, 1])).unwrap().vertices(),
            &m(&[vec![1, 0, -1], vec![0, 1, -1]])
        );
        assert_eq!(
            simplex_of_reduced_weights(&big(&[3, 2, 1])).unwrap().vertices(),
            &m(&[vec![1, 0, -3], vec![0, 1, -2]])
        );
        for q in [vec![2, 3, 5], vec![5, 3, 2], vec![6, 10, 15], vec![4, 6, 9, 35], vec![2, 2, 3]] {
            let s = simplex_of_reduced_weights(&big(&q)).unwrap();
            let w = s.weights();
            assert_eq!(w.weights(), big(&q).as_slice());
            assert_eq!(w.factor(), &r(1, 1));
        }
        assert!(simplex_of_reduced_weights(&big(&[2, 2, 4])).is_err());
    }

    /// Identities for the simplex `Δ(Q(A))` of every ufp, scaled by a sublattice.
    fn check_identities(p: &IntMatrix) {
        let gd = gorenstein_forms_general(p).unwrap();
        let d = p.rows();
        for (k, u) in gd.forms.iter().enumerate() {
            for j in 0..=d {
                let s: Rat = (0..d).map(|i| &u[i] * p.get(i, j)).sum();
                if j != k {
                    assert_eq!(s, -Rat::one());
                }
            }
            let gu: Vec<BigInt> = u.iter().map(|x| (x * &gd.local_indices[k]).to_integer()).collect();
            assert!(u.iter().all(|x| (x * &gd.local_indices[k]).is_integer()));
            assert!(is_primitive(&gu).unwrap());
        }
        let g = gd.gorenstein_index.to_u64().unwrap();
        let inv = invariants_of(p, g).unwrap();
        let a = &inv.ufp;
        let gr = Rat::from_integer(BigInt::from(g));
        let prod_a: BigInt = a.entries().iter().map(|&x| BigInt::from(x)).product();
        // Mahler volume.
        assert_eq!(inv.mahler, Rat::new(prod_a.clone(), BigInt::one()) / num_traits::pow(gr.clone(), d + 1));
        // λ(Δ*)Vol(Δ) = λ(Δ)Vol(Δ*) = F_d(A)/g^d.
        let rhs = f_k(a, d).unwrap() / num_traits::pow(gr.clone(), d);
        let vol = Rat::from_integer(inv.volume.clone());
        assert_eq!(inv.dual_weights.factor() * &vol, rhs);
        assert_eq!(&inv.multiplicity * &inv.dual_volume, rhs);
        // λ = g|Q|/t_A.
        assert_eq!(inv.multiplicity, &gr * &vol / Rat::from_integer(a.t_a()));
        // A(Δ) = A(Δ*).
        assert_eq!(&ufp_of_weights(inv.dual_weights.weights(), g).unwrap(), a);
        // g^{d-1} λ(Δ*) integral for Fano simplices.
        let fano = LatticeSimplex::new(p.clone()).unwrap().is_fano();
        assert!(!fano || (num_traits::pow(gr, d - 1) * inv.dual_weights.factor()).is_integer());
    }

    #[test]
    fn duality_identities_over_ufps() {
        for g in 1..=3 {
            for n in 3..=4 {
                for a in enumerate_ufps(g, n).unwrap() {
                    let q = weights_of_ufp(&a);
                    let s = simplex_of_reduced_weights(q.weights()).unwrap();
                    check_identities(s.vertices());
                    // A sublattice of index 2 in the first coordinate.
                    let mut p2 = s.vertices().clone();
                    for j in 0..p2.cols() {
                        let x = p2.get(0, j) * 2;
                        p2.set(0, j, x);
                    }
                    check_identities(&p2);
                }
            }
        }
        check_identities(&m(&[vec![1, 1, -2], vec![0, 3, -3]]));
        check_identities(&m(&[vec![1, 5, 5, -11], vec![0, 8, 0, -8], vec![0, 0, 8, -8]]));
    }

    proptest! {
        #[test]
        fn triangular_matches_general(
            d in 2usize..5,
            diag in prop::collection::vec(1i64..6, 4),
            off in prop::collection::vec(0i64..6, 16),
            coef in prop::collection::vec(1i64..5, 4),
        ) {
            // Last column -Σ c_j v_j with c_j > 0 keeps the origin interior.
            let mut p = IntMatrix::zeros(d, d + 1);
            for j in 0..d {
                p.set(j, j, BigInt::from(diag[j]));
                for i in 0..j {
                    p.set(i, j, BigInt::from(off[i * 4 + j] % diag[i]));
                }
            }
            for i in 0..d {
                let v: BigInt = (0..d).map(|j| p.get(i, j) * coef[j]).sum();
                p.set(i, d, -v);
            }
            let w = weights_of(&p).unwrap();
            let t = gorenstein_forms_triangular(&p, w.weights()).unwrap();
            prop_assert_eq!(t, gorenstein_forms_general(&p).unwrap());
        }

        #[test]
        fn weights_scale_by_det(
            q in prop::collection::vec(1i64..12, 3..5),
            h in prop::collection::vec(-4i64..5, 16),
        ) {
            let q = big(&q);
            let g = q.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let q: Vec<BigInt> = q.iter().map(|x| x / &g).collect();
            let s = simplex_of_reduced_weights(&q).unwrap();
            let d = q.len() - 1;
            let hm = IntMatrix::from_rows(&(0..d).map(|i| h[i * d..(i + 1) * d].to_vec()).collect::<Vec<_>>());
            let dh = det(&hm).unwrap();
            prop_assume!(!dh.is_zero());
            let hp = hm.mul(s.vertices()).unwrap();
            let w0 = s.weights();
            let w1 = weights_of(&hp).unwrap();
            prop_assert_eq!(w0.weights(), w1.weights());
            prop_assert_eq!(w1.factor(), &(w0.factor() * Rat::from_integer(dh.abs())));
        }
    }
}
