//! Martyushev's equations for canonically scaled essential triples and the
//! multihomogeneous sextic extracted from them.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

use crate::camera::FundamentalTriple;
use crate::smallalg::{Dual, Field, FromC64, GaussRational, Mat3, Mat9, Ring};

/// `adj(A - B) - adj(A) - adj(B)`.
pub fn diamond<T: Ring>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    &(&(a - b).adjugate() - &a.adjugate()) - &b.adjugate()
}

/// Residuals of Martyushev's equations.
#[derive(Clone, Debug, PartialEq)]
pub struct MartyushevResiduals<T> {
    /// `tr(F12 F23 F31)`.
    pub cubic: T,
    /// Three cyclic assignments of the degree-3 matrix identity, 27 values.
    pub nec_f2: Vec<T>,
    /// Three cyclic assignments of the degree-4 matrix identity, 27 values.
    pub nec_f3: Vec<T>,
    /// The quartic trace identity.
    pub nec_f4: T,
    /// `tr^3(F^2) - 12 tr(F^2) tr(F^4) + 32 tr(F^6)` of the 9x9 block matrix.
    pub sextic: T,
}

/// The cyclic index assignments `(i, j, k)`.
pub const CYCLIC: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

/// `F_ij^T F_ij F_jk - 1/2 tr(F_ij^T F_ij) F_jk + adj(F_ij) F_ki^T`.
pub fn nec_f2_matrix<T: Field>(t: &FundamentalTriple<T>, (i, j, k): (usize, usize, usize)) -> Mat3<T> {
    let fij = t.get(i, j);
    let fjk = t.get(j, k);
    let gram = &fij.transpose() * &fij;
    let half = gram.trace() / T::from_i64(2);
    let first = &gram * &fjk;
    let last = &fij.adjugate() * &t.get(k, i).transpose();
    &(&first - &fjk.scale(&half)) + &last
}

/// `F_jk^T adj(F_ij) + adj(F_jk) F_ij^T + (F_ij F_jk) <> F_ki^T`.
pub fn nec_f3_matrix<T: Ring>(t: &FundamentalTriple<T>, (i, j, k): (usize, usize, usize)) -> Mat3<T> {
    let fij = t.get(i, j);
    let fjk = t.get(j, k);
    let a = &fjk.transpose() * &fij.adjugate();
    let b = &fjk.adjugate() * &fij.transpose();
    let c = diamond(&(&fij * &fjk), &t.get(k, i).transpose());
    &(&a + &b) + &c
}

/// `tr(M^2), tr(M^4), tr(M^6)` of a 9x9 matrix.
fn trace_powers<T: Ring>(m: &Mat9<T>) -> (T, T, T) {
    let m2 = m * m;
    let m4 = &m2 * &m2;
    let tr6 = (0..9)
        .flat_map(|r| (0..9).map(move |c| (r, c)))
        .fold(T::zero(), |acc, (r, c)| acc + m4.0[r][c].clone() * m2.0[c][r].clone());
    (m2.trace(), m4.trace(), tr6)
}

/// The non-homogeneous sextic on the 9x9 block matrix.
pub fn sextic<T: Ring>(t: &FundamentalTriple<T>) -> T {
    let (t2, t4, t6) = trace_powers(&t.mega_matrix());
    t2.clone() * t2.clone() * t2.clone() - T::from_i64(12) * t2 * t4 + T::from_i64(32) * t6
}

/// `tr(F12 F23 F31)`, the only multihomogeneous equation among Martyushev's.
pub fn martyushev_cubic<T: Ring>(t: &FundamentalTriple<T>) -> T {
    (&(&t.get(1, 2) * &t.get(2, 3)) * &t.get(3, 1)).trace()
}

/// Evaluate every Martyushev residual.
pub fn eval_martyushev<T: Field>(t: &FundamentalTriple<T>) -> MartyushevResiduals<T> {
    let cubic = martyushev_cubic(t);
    let nec_f2 = CYCLIC.iter().flat_map(|&ijk| nec_f2_matrix(t, ijk).flat()).collect();
    let nec_f3 = CYCLIC.iter().flat_map(|&ijk| nec_f3_matrix(t, ijk).flat()).collect();
    let (t2, t4, _) = trace_powers(&t.mega_matrix());
    let grams = t.factors().map(|m| m.gram_trace());
    let gram_sq = grams.iter().fold(T::zero(), |acc, g| acc + g.clone() * g.clone());
    let nec_f4 = t2.clone() * t2 - T::from_i64(16) * t4 + T::from_i64(24) * gram_sq;
    MartyushevResiduals { cubic, nec_f2, nec_f3, nec_f4, sextic: sextic(t) }
}

/// Polynomials in the three block-scaling variables `(u12, u13, u23)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingPoly<T>(BTreeMap<[u8; 3], T>);

impl<T: Ring> ScalingPoly<T> {
    pub fn monomial(exps: [u8; 3], coeff: T) -> Self {
        let mut m = BTreeMap::new();
        if !coeff.is_zero() {
            m.insert(exps, coeff);
        }
        ScalingPoly(m)
    }

    pub fn coefficient(&self, exps: [u8; 3]) -> T {
        self.0.get(&exps).cloned().unwrap_or_else(T::zero)
    }

    fn insert_add(map: &mut BTreeMap<[u8; 3], T>, k: [u8; 3], v: T) {
        match map.remove(&k) {
            Some(old) => {
                let s = old + v;
                if !s.is_zero() {
                    map.insert(k, s);
                }
            }
            None if !v.is_zero() => {
                map.insert(k, v);
            }
            None => {}
        }
    }
}

impl<T: Ring> Add for ScalingPoly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self.0;
        for (k, v) in rhs.0 {
            Self::insert_add(&mut m, k, v);
        }
        ScalingPoly(m)
    }
}

impl<T: Ring> Neg for ScalingPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        ScalingPoly(self.0.into_iter().map(|(k, v)| (k, -v)).collect())
    }
}

impl<T: Ring> Sub for ScalingPoly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ring> Mul for ScalingPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = BTreeMap::new();
        for (ka, va) in &self.0 {
            for (kb, vb) in &rhs.0 {
                let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]];
                Self::insert_add(&mut m, k, va.clone() * vb.clone());
            }
        }
        ScalingPoly(m)
    }
}

impl<T: Ring> Ring for ScalingPoly<T> {
    fn zero() -> Self {
        ScalingPoly(BTreeMap::new())
    }
    fn one() -> Self {
        ScalingPoly::monomial([0, 0, 0], T::one())
    }
    fn from_i64(v: i64) -> Self {
        ScalingPoly::monomial([0, 0, 0], T::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Multidegree `(2,2,2)` part of the sextic by expanding it as a polynomial
/// in per-block scaling variables. Works over any ring.
pub fn m6_by_scaling_expansion<T: Ring>(t: &FundamentalTriple<T>) -> T {
    let lift = |m: &Mat3<T>, block: usize| {
        m.map(|x| {
            let mut e = [0u8; 3];
            e[block] = 1;
            ScalingPoly::monomial(e, x.clone())
        })
    };
    let scaled = FundamentalTriple::new(lift(&t.f12, 0), lift(&t.f13, 1), lift(&t.f23, 2));
    sextic(&scaled).coefficient([2, 2, 2])
}

/// Multidegree `(2,2,2)` part of the sextic by averaging over 7th roots of
/// unity in each block scale (343 evaluations).
pub fn m6_by_dft<T: FromC64>(t: &FundamentalTriple<T>) -> T {
    let zeta = |k: i64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 7.0);
    let mut acc = T::zero();
    for a in 0..7 {
        for b in 0..7 {
            for c in 0..7 {
                let s = [zeta(a), zeta(b), zeta(c)].map(T::from_c64);
                let value = sextic(&t.rescale_unchecked(&s));
                acc = acc + T::from_c64(zeta(-2 * (a + b + c))) * value;
            }
        }
    }
    acc / T::from_i64(343)
}

/// Field-specific choice of the extraction mechanism for the `(2,2,2)`
/// sextic: scaling-variable expansion on exact fields, DFT on floats.
pub trait M6Extract: Field {
    fn m6(t: &FundamentalTriple<Self>) -> Self;
}

impl M6Extract for BigRational {
    fn m6(t: &FundamentalTriple<Self>) -> Self {
        m6_by_scaling_expansion(t)
    }
}

impl M6Extract for GaussRational {
    fn m6(t: &FundamentalTriple<Self>) -> Self {
        m6_by_scaling_expansion(t)
    }
}

impl M6Extract for Complex64 {
    fn m6(t: &FundamentalTriple<Self>) -> Self {
        m6_by_dft(t)
    }
}

impl M6Extract for Dual<Complex64> {
    fn m6(t: &FundamentalTriple<Self>) -> Self {
        m6_by_dft(t)
    }
}

/// The multihomogeneous sextic `M6`.
pub fn eval_m6<T: M6Extract>(t: &FundamentalTriple<T>) -> T {
    T::m6(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::camera::{sample_exact, sample_float, Prior};
    use crate::smallalg::q;

    #[test]
    fn diamond_identities() {
        let a = Mat3::<BigRational>::from_i64([[1, 2, 0], [-1, 3, 4], [2, 2, 1]]);
        let b = Mat3::<BigRational>::from_i64([[0, 1, 5], [2, -2, 1], [1, 0, 3]]);
        assert!(diamond(&a, &Mat3::zero()).is_zero());
        assert_eq!(diamond(&a, &a), a.adjugate().scale(&q(-2, 1)));
        // adj is even on 3x3 matrices, so the diamond is symmetric.
        assert_eq!(diamond(&a, &b), diamond(&b, &a));
    }

    #[test]
    fn essential_samples_satisfy_martyushev() {
        for seed in 0..4 {
            let t = sample_exact(Prior::E, seed).unwrap().triple;
            let r = eval_martyushev(&t);
            assert!(Ring::is_zero(&r.cubic));
            assert!(r.nec_f2.iter().all(Ring::is_zero));
            assert!(r.nec_f3.iter().all(Ring::is_zero));
            assert!(Ring::is_zero(&r.nec_f4));
            assert!(Ring::is_zero(&r.sextic));
        }
    }

    #[test]
    fn all_six_orderings_vanish_on_essential_samples() {
        let t = sample_exact(Prior::E, 99).unwrap().triple;
        for ijk in [(1, 2, 3), (2, 3, 1), (3, 1, 2), (1, 3, 2), (3, 2, 1), (2, 1, 3)] {
            assert!(nec_f2_matrix(&t, ijk).is_zero());
            assert!(nec_f3_matrix(&t, ijk).is_zero());
        }
    }

    #[test]
    fn m6_scaling_law_and_vanishing() {
        let t = sample_exact(Prior::E, 4).unwrap().triple;
        let u = [q(2, 1), q(-1, 3), q(5, 4)];
        let s = t.rescale(&u).unwrap();
        assert!(Ring::is_zero(&eval_m6(&s)));
        // The full sextic also survives independent rescaling; the trace
        // identity of degree 4 does not.
        assert!(Ring::is_zero(&sextic(&s)));
        assert!(!Ring::is_zero(&eval_martyushev(&s).nec_f4));
        let g = sample_exact(Prior::F, 4).unwrap().triple;
        let p = u[0].clone() * u[1].clone() * u[2].clone();
        let factor = p.clone() * p;
        assert_eq!(eval_m6(&g.rescale(&u).unwrap()), eval_m6(&g) * factor);
    }

    #[test]
    fn dft_matches_scaling_expansion() {
        let t = sample_float(Prior::F, 8).unwrap().triple;
        let a = m6_by_dft(&t);
        let b = m6_by_scaling_expansion(&t);
        assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()), "{a} vs {b}");
    }
}
