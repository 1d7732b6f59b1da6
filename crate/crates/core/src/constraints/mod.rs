//! Constraint families on triples and the membership classifiers built on
//! them.

pub mod families;
pub mod martyushev;

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::camera::FundamentalTriple;
use crate::smallalg::{dense, Dual, Field, DEFAULT_RANK_TOL};

pub use families::{
    enumerate_septic_indices, eval_demazure, eval_demazure_triple, eval_det_cubics,
    eval_quartics, eval_quintics, eval_septics, quartic_matrices, quintic_matrices,
    SepticIndexPair,
};
pub use martyushev::{diamond, eval_m6, eval_martyushev, martyushev_cubic, sextic, M6Extract, MartyushevResiduals};

/// Default residual tolerance after unit-Frobenius normalization.
pub const DEFAULT_TOL: f64 = 1e-8;

/// The polynomial families that can be evaluated on a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConstraintFamily {
    DetCubics,
    Quartics,
    Quintics,
    Septics,
    Demazure,
    MartyushevCubic,
    NecF2,
    NecF3,
    NecF4,
    MartyushevSextic,
    M6,
}

impl ConstraintFamily {
    pub const ALL: [ConstraintFamily; 11] = [
        ConstraintFamily::DetCubics,
        ConstraintFamily::Quartics,
        ConstraintFamily::Quintics,
        ConstraintFamily::Septics,
        ConstraintFamily::Demazure,
        ConstraintFamily::MartyushevCubic,
        ConstraintFamily::NecF2,
        ConstraintFamily::NecF3,
        ConstraintFamily::NecF4,
        ConstraintFamily::MartyushevSextic,
        ConstraintFamily::M6,
    ];

    /// Families whose joint vanishing decides membership of uncalibrated triples.
    pub const UNCALIBRATED: [ConstraintFamily; 4] = [
        ConstraintFamily::DetCubics,
        ConstraintFamily::Quartics,
        ConstraintFamily::Quintics,
        ConstraintFamily::Septics,
    ];

    /// Families used for the local test of calibrated triples.
    pub const CALIBRATED_LOCAL: [ConstraintFamily; 3] =
        [ConstraintFamily::Demazure, ConstraintFamily::Quartics, ConstraintFamily::M6];

    /// Number of scalar polynomials in the family.
    pub fn count(self) -> usize {
        match self {
            ConstraintFamily::DetCubics => 3,
            ConstraintFamily::Quartics => 9,
            ConstraintFamily::Quintics => 27,
            ConstraintFamily::Septics => 108,
            ConstraintFamily::Demazure => 27,
            ConstraintFamily::MartyushevCubic => 1,
            ConstraintFamily::NecF2 => 27,
            ConstraintFamily::NecF3 => 27,
            ConstraintFamily::NecF4 => 1,
            ConstraintFamily::MartyushevSextic => 1,
            ConstraintFamily::M6 => 1,
        }
    }

    /// Degree in `(F12, F13, F23)` of each residual, for the families that
    /// are multihomogeneous.
    pub fn multidegrees(self) -> Option<Vec<[u32; 3]>> {
        let rep = |d: [u32; 3], n: usize| vec![d; n];
        Some(match self {
            ConstraintFamily::DetCubics => vec![[3, 0, 0], [0, 3, 0], [0, 0, 3]],
            ConstraintFamily::Quartics => [[1, 1, 2], [2, 1, 1], [1, 2, 1]]
                .iter()
                .flat_map(|&d| rep(d, 3))
                .collect(),
            ConstraintFamily::Quintics => [[1, 2, 2], [2, 1, 2], [2, 2, 1]]
                .iter()
                .flat_map(|&d| rep(d, 9))
                .collect(),
            ConstraintFamily::Septics => {
                enumerate_septic_indices().iter().map(SepticIndexPair::multidegree).collect()
            }
            ConstraintFamily::Demazure => [[3, 0, 0], [0, 3, 0], [0, 0, 3]]
                .iter()
                .flat_map(|&d| rep(d, 9))
                .collect(),
            ConstraintFamily::MartyushevCubic => vec![[1, 1, 1]],
            ConstraintFamily::M6 => vec![[2, 2, 2]],
            _ => return None,
        })
    }
}

/// Evaluate one family on a triple.
pub fn evaluate<T: M6Extract>(t: &FundamentalTriple<T>, family: ConstraintFamily) -> Vec<T> {
    match family {
        ConstraintFamily::DetCubics => eval_det_cubics(t),
        ConstraintFamily::Quartics => eval_quartics(t),
        ConstraintFamily::Quintics => eval_quintics(t),
        ConstraintFamily::Septics => eval_septics(t),
        ConstraintFamily::Demazure => eval_demazure_triple(t),
        ConstraintFamily::M6 => vec![eval_m6(t)],
        ConstraintFamily::MartyushevCubic => vec![eval_martyushev(t).cubic],
        ConstraintFamily::NecF2 => eval_martyushev(t).nec_f2,
        ConstraintFamily::NecF3 => eval_martyushev(t).nec_f3,
        ConstraintFamily::NecF4 => vec![eval_martyushev(t).nec_f4],
        ConstraintFamily::MartyushevSextic => vec![sextic(t)],
    }
}

/// Residuals of several families together with how they were normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintReport<T> {
    pub residuals: BTreeMap<ConstraintFamily, Vec<T>>,
    /// Frobenius norms of the factors before normalization.
    pub norms: [f64; 3],
    /// Vanishing threshold; ignored on exact fields.
    pub tol: f64,
}

/// Serializable digest of one family in a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub family: ConstraintFamily,
    pub count: usize,
    pub nonzero: usize,
    pub nonzero_indices: Vec<usize>,
    pub max_abs: f64,
    pub vanishes: bool,
}

impl<T: Field> ConstraintReport<T> {
    pub fn evaluate(t: &FundamentalTriple<T>, families: &[ConstraintFamily], tol: f64) -> Self
    where
        T: M6Extract,
    {
        let (t, norms) = if T::EXACT { (t.clone(), t.norms()) } else { t.unit_normalized() };
        let residuals = families.iter().map(|&f| (f, evaluate(&t, f))).collect();
        ConstraintReport { residuals, norms, tol }
    }

    fn is_nonzero(&self, r: &T) -> bool {
        if T::EXACT {
            !r.is_zero()
        } else {
            r.magnitude() > self.tol
        }
    }

    pub fn residuals(&self, family: ConstraintFamily) -> &[T] {
        self.residuals.get(&family).map_or(&[], Vec::as_slice)
    }

    pub fn nonzero_indices(&self, family: ConstraintFamily) -> Vec<usize> {
        let r = self.residuals(family);
        (0..r.len()).filter(|&i| self.is_nonzero(&r[i])).collect()
    }

    pub fn nonzero_count(&self, family: ConstraintFamily) -> usize {
        self.nonzero_indices(family).len()
    }

    pub fn vanishes(&self, family: ConstraintFamily) -> bool {
        self.nonzero_count(family) == 0
    }

    pub fn max_abs(&self, family: ConstraintFamily) -> f64 {
        self.residuals(family).iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    pub fn all_vanish(&self) -> bool {
        self.residuals.keys().all(|&f| self.vanishes(f))
    }

    pub fn summaries(&self) -> Vec<FamilySummary> {
        self.residuals
            .keys()
            .map(|&f| FamilySummary {
                family: f,
                count: self.residuals(f).len(),
                nonzero: self.nonzero_count(f),
                nonzero_indices: self.nonzero_indices(f),
                max_abs: self.max_abs(f),
                vanishes: self.vanishes(f),
            })
            .collect()
    }
}

/// Membership verdict for uncalibrated triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FVerdict {
    Member,
    NonMember,
}

/// Verdict of the local test for calibrated triples. Vanishing of the local
/// equations does not prove membership, so there is no `Member` variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ELocalVerdict {
    LocallyConsistent,
    Inconsistent,
}

/// Decide membership in the variety of compatible fundamental triples.
///
/// Float triples are normalized to unit Frobenius norm per factor first.
pub fn classify_f<T: M6Extract>(t: &FundamentalTriple<T>, tol: f64) -> (FVerdict, ConstraintReport<T>) {
    let report = ConstraintReport::evaluate(t, &ConstraintFamily::UNCALIBRATED, tol);
    let verdict = if report.all_vanish() { FVerdict::Member } else { FVerdict::NonMember };
    (verdict, report)
}

/// Local test against the variety of compatible essential triples.
pub fn classify_e_local<T: M6Extract>(
    t: &FundamentalTriple<T>,
    tol: f64,
) -> (ELocalVerdict, ConstraintReport<T>) {
    let report = ConstraintReport::evaluate(t, &ConstraintFamily::CALIBRATED_LOCAL, tol);
    let verdict = if report.all_vanish() {
        ELocalVerdict::LocallyConsistent
    } else {
        ELocalVerdict::Inconsistent
    };
    (verdict, report)
}

/// The 37 local calibrated equations: 27 Demazure, 9 quartic, then `M6`.
pub fn calibrated_local_equations<T: M6Extract>(t: &FundamentalTriple<T>) -> Vec<T> {
    let mut out = eval_demazure_triple(t);
    out.extend(eval_quartics(t));
    out.push(eval_m6(t));
    out
}

/// Jacobian (37 x 27) of [`calibrated_local_equations`], by forward-mode
/// dual numbers.
pub fn jacobian_e(t: &FundamentalTriple<Complex64>) -> DMatrix<Complex64> {
    let base = t.coordinates();
    let mut j = DMatrix::zeros(37, 27);
    for k in 0..27 {
        let lifted: Vec<Dual<Complex64>> = base
            .iter()
            .enumerate()
            .map(|(i, &x)| Dual::new(x, if i == k { 1.0.into() } else { 0.0.into() }))
            .collect();
        let values = calibrated_local_equations(&FundamentalTriple::from_coordinates(&lifted));
        for (r, v) in values.iter().enumerate() {
            j[(r, k)] = v.tangent;
        }
    }
    j
}

fn normalized_jacobian_rank(t: &FundamentalTriple<Complex64>) -> usize {
    let (t, _) = t.unit_normalized();
    let mut j = jacobian_e(&t);
    for mut row in j.row_iter_mut() {
        let n = row.norm();
        if n > 0.0 {
            row /= Complex64::new(n, 0.0);
        }
    }
    dense::float_rank(&j, DEFAULT_RANK_TOL)
}

/// Numerical rank of the Jacobian of the local calibrated equations, rows
/// normalized to unit length.
pub fn jacobian_rank_e(t: &FundamentalTriple<Complex64>) -> usize {
    normalized_jacobian_rank(t)
}

/// `27 - jacobian_rank_e`: the local dimension of the solution set of the
/// local calibrated equations at `t` (cone over the projective variety).
pub fn jacobian_nullity_e(t: &FundamentalTriple<Complex64>) -> usize {
    27 - normalized_jacobian_rank(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::camera::{sample_exact, sample_float, Prior};
    use crate::smallalg::{q, Mat3};
    use num_rational::BigRational;

    #[test]
    fn family_counts_match_evaluators() {
        let t = sample_exact(Prior::F, 1).unwrap().triple;
        for f in ConstraintFamily::ALL {
            assert_eq!(evaluate(&t, f).len(), f.count(), "{f:?}");
            if let Some(d) = f.multidegrees() {
                assert_eq!(d.len(), f.count());
            }
        }
    }

    #[test]
    fn classify_members_and_nonmembers() {
        let t = sample_float(Prior::F, 3).unwrap().triple;
        let u = [2.0.into(), (-0.3).into(), 7.0.into()];
        let (v, _) = classify_f(&t.rescale(&u).unwrap(), DEFAULT_TOL);
        assert_eq!(v, FVerdict::Member);
        let e = sample_exact(Prior::E, 3).unwrap().triple;
        let e = e.rescale(&[q(3, 1), q(1, 5), q(-2, 1)]).unwrap();
        assert_eq!(classify_e_local(&e, 0.0).0, ELocalVerdict::LocallyConsistent);
        let f = sample_exact(Prior::F, 3).unwrap().triple;
        let (v, report) = classify_e_local(&f, 0.0);
        assert_eq!(v, ELocalVerdict::Inconsistent);
        assert!(!report.vanishes(ConstraintFamily::Demazure));
    }

    #[test]
    fn jacobian_of_zero_triple_vanishes() {
        let z = FundamentalTriple::new(Mat3::zero(), Mat3::zero(), Mat3::zero());
        assert_eq!(jacobian_rank_e(&z), 0);
    }

    #[test]
    fn jacobian_rank_at_essential_points() {
        for seed in 0..3 {
            let t = sample_float(Prior::E, seed).unwrap().triple;
            assert_eq!(jacobian_rank_e(&t), 13);
            assert_eq!(jacobian_nullity_e(&t), 14);
        }
        let f = sample_float(Prior::F, 0).unwrap().triple;
        assert!(jacobian_rank_e(&f) > 14);
    }

    #[test]
    fn exact_report_counts() {
        let t: FundamentalTriple<BigRational> = FundamentalTriple::new(
            Mat3::from_i64([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
            Mat3::identity(),
            Mat3::identity(),
        );
        let (v, r) = classify_f(&t, 0.0);
        assert_eq!(v, FVerdict::NonMember);
        assert_eq!(r.nonzero_indices(ConstraintFamily::DetCubics), vec![1, 2]);
    }
}
