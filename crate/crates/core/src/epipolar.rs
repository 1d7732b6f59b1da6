//! Epipoles of a triple and the diagnostics built from them.

use serde::{Deserialize, Serialize};

use crate::camera::FundamentalTriple;
use crate::error::{Error, Result};
use crate::smallalg::{kernel_vector, numeric_rank, proj_equal, Field, Mat3, Vec3};

/// The six epipoles: `e_ji` spans the kernel of `F_ij`, `e_ij` the kernel of `F_ij^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpipoleSet<T> {
    pub e12: Vec3<T>,
    pub e13: Vec3<T>,
    pub e21: Vec3<T>,
    pub e23: Vec3<T>,
    pub e31: Vec3<T>,
    pub e32: Vec3<T>,
}

impl<T: Field> EpipoleSet<T> {
    /// `e_ij` for distinct labels in `1..=3`.
    pub fn get(&self, i: usize, j: usize) -> &Vec3<T> {
        match (i, j) {
            (1, 2) => &self.e12,
            (1, 3) => &self.e13,
            (2, 1) => &self.e21,
            (2, 3) => &self.e23,
            (3, 1) => &self.e31,
            (3, 2) => &self.e32,
            _ => panic!("no epipole e{i}{j}"),
        }
    }

    /// In order `e12, e13, e21, e23, e31, e32`.
    pub fn all(&self) -> [&Vec3<T>; 6] {
        [&self.e12, &self.e13, &self.e21, &self.e23, &self.e31, &self.e32]
    }

    /// Number of projectively distinct epipoles.
    pub fn distinct_count(&self, tol: f64) -> usize {
        let all = self.all();
        let mut reps: Vec<&Vec3<T>> = Vec::new();
        for e in all {
            let seen = reps.iter().any(|r| proj_equal(&r.0, &e.0, tol).unwrap_or(false));
            if !seen {
                reps.push(e);
            }
        }
        reps.len()
    }
}

/// Compute all six epipoles. Fails if a factor does not have rank 2.
pub fn epipoles<T: Field>(t: &FundamentalTriple<T>, tol: f64) -> Result<EpipoleSet<T>> {
    let kernels = |name: &'static str, m: &Mat3<T>| -> Result<(Vec3<T>, Vec3<T>)> {
        let wrap = |e: Error| match e {
            Error::Rank { found, .. } => Error::FactorRank { factor: name, found },
            other => other,
        };
        let right = kernel_vector(m, tol).map_err(wrap)?;
        let left = kernel_vector(&m.transpose(), tol).map_err(wrap)?;
        Ok((left, right))
    };
    let (e12, e21) = kernels("F12", &t.f12)?;
    let (e13, e31) = kernels("F13", &t.f13)?;
    let (e23, e32) = kernels("F23", &t.f23)?;
    Ok(EpipoleSet { e12, e13, e21, e23, e31, e32 })
}

/// Whether the camera centers look non-collinear, collinear, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CollinearityStatus {
    Noncollinear,
    Collinear,
    Mixed,
}

/// Compare `e12~e13`, `e21~e23`, `e31~e32`.
pub fn collinearity_status<T: Field>(e: &EpipoleSet<T>, tol: f64) -> CollinearityStatus {
    let pairs = [(&e.e12, &e.e13), (&e.e21, &e.e23), (&e.e31, &e.e32)];
    let same: Vec<bool> =
        pairs.iter().map(|(a, b)| proj_equal(&a.0, &b.0, tol).unwrap_or(true)).collect();
    if same.iter().all(|&s| !s) {
        CollinearityStatus::Noncollinear
    } else if same.iter().all(|&s| s) {
        CollinearityStatus::Collinear
    } else {
        CollinearityStatus::Mixed
    }
}

/// `(e13^T F12 e23, e12^T F13 e32, e21^T F23 e31)`.
pub fn triangulation_residuals<T: Field>(t: &FundamentalTriple<T>, e: &EpipoleSet<T>) -> [T; 3] {
    let bil = |a: &Vec3<T>, m: &Mat3<T>, b: &Vec3<T>| a.dot(&m.mul_vec(b));
    [
        bil(&e.e13, &t.f12, &e.e23),
        bil(&e.e12, &t.f13, &e.e32),
        bil(&e.e21, &t.f23, &e.e31),
    ]
}

/// Outcome of the epipole-based compatibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HzVerdict {
    Compatible,
    Incompatible,
    /// Rank-deficient factors or centers that are not clearly non-collinear.
    Inapplicable,
}

fn vanishes<T: Field>(x: &T, tol: f64) -> bool {
    if T::EXACT {
        x.is_zero()
    } else {
        x.magnitude() <= tol
    }
}

/// Triangulation-based compatibility test, valid for non-collinear centers.
///
/// Float triples are normalized to unit Frobenius norm per factor; epipoles
/// are unit vectors, so residuals are compared to `tol` directly.
pub fn hz_compatible<T: Field>(t: &FundamentalTriple<T>, tol: f64) -> HzVerdict {
    let t = if T::EXACT { t.clone() } else { t.unit_normalized().0 };
    let Ok(e) = epipoles(&t, tol) else { return HzVerdict::Inapplicable };
    if collinearity_status(&e, tol) != CollinearityStatus::Noncollinear {
        return HzVerdict::Inapplicable;
    }
    if triangulation_residuals(&t, &e).iter().all(|r| vanishes(r, tol)) {
        HzVerdict::Compatible
    } else {
        HzVerdict::Incompatible
    }
}

/// The six relations, as `(i, j, k)` meaning `F_ij e_jk` lies in the image of `F_ik`.
pub const LINE_RELATIONS: [(usize, usize, usize); 6] =
    [(1, 2, 3), (1, 3, 2), (2, 3, 1), (2, 1, 3), (3, 1, 2), (3, 2, 1)];

/// For each relation in [`LINE_RELATIONS`], whether `[F_ik | F_ij e_jk]` has
/// rank at most 2.
pub fn line_membership_check<T: Field>(
    t: &FundamentalTriple<T>,
    e: &EpipoleSet<T>,
    tol: f64,
) -> Result<[bool; 6]> {
    let t = if T::EXACT { t.clone() } else { t.unit_normalized().0 };
    for (name, m) in [("F12", &t.f12), ("F13", &t.f13), ("F23", &t.f23)] {
        let rows: Vec<Vec<T>> = m.0.iter().map(|r| r.to_vec()).collect();
        let rank = numeric_rank(&rows, tol);
        if rank != 2 {
            return Err(Error::FactorRank { factor: name, found: rank });
        }
    }
    Ok(LINE_RELATIONS.map(|(i, j, k)| {
        let target = t.get(i, k);
        let mut line = t.get(i, j).mul_vec(e.get(j, k));
        if !T::EXACT {
            let n = line.norm();
            if n > 0.0 {
                line = line.scale(&T::from_f64(1.0 / n));
            }
        }
        let rows: Vec<Vec<T>> = (0..3)
            .map(|r| {
                let mut row = target.0[r].to_vec();
                row.push(line.0[r].clone());
                row
            })
            .collect();
        numeric_rank(&rows, tol) <= 2
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::camera::{sample_exact, sample_float, Prior, Sampler};
    use crate::smallalg::q;
    use num_rational::BigRational;

    #[test]
    fn sampled_triples_are_compatible_and_noncollinear() {
        for seed in 0..5 {
            let t = sample_exact(Prior::F, seed).unwrap().triple;
            let e = epipoles(&t, 0.0).unwrap();
            assert_eq!(collinearity_status(&e, 0.0), CollinearityStatus::Noncollinear);
            assert!(triangulation_residuals(&t, &e).iter().all(|r| r == &q(0, 1)));
            assert_eq!(hz_compatible(&t, 0.0), HzVerdict::Compatible);
            assert_eq!(line_membership_check(&t, &e, 0.0).unwrap(), [true; 6]);
        }
    }

    #[test]
    fn collinear_centers_give_collinear_status() {
        let mut s = Sampler::new(Prior::F, 4).collinear(true);
        let t = s.sample_exact().unwrap().triple;
        let e = epipoles(&t, 0.0).unwrap();
        assert_eq!(collinearity_status(&e, 0.0), CollinearityStatus::Collinear);
        assert_eq!(hz_compatible(&t, 0.0), HzVerdict::Inapplicable);
    }

    #[test]
    fn perturbed_float_triple_is_incompatible() {
        let t = sample_float(Prior::F, 2).unwrap().triple;
        let (mut t, _) = t.unit_normalized();
        assert_eq!(hz_compatible(&t, 1e-8), HzVerdict::Compatible);
        // Keep rank 2 by perturbing along the existing row space.
        let e = epipoles(&t, 1e-8).unwrap();
        let bump = e.e12.outer(&e.e21.cross(&Vec3::new(1.0.into(), 0.3.into(), 0.0.into())));
        t.f12 = &t.f12 + &bump.scale(&1e-2.into());
        assert_eq!(hz_compatible(&t, 1e-8), HzVerdict::Incompatible);
    }

    fn int_triple(a: [[i64; 3]; 3], b: [[i64; 3]; 3], c: [[i64; 3]; 3]) -> FundamentalTriple<BigRational> {
        FundamentalTriple::new(Mat3::from_i64(a), Mat3::from_i64(b), Mat3::from_i64(c))
    }

    fn same(u: &Vec3<BigRational>, v: [i64; 3]) -> bool {
        proj_equal(&u.0, &Vec3::from_i64(v).0, 0.0).unwrap()
    }

    #[test]
    fn septic_only_failure_epipoles() {
        let t = int_triple(
            [[0, 0, 0], [4, 0, 3], [-2, 0, 0]],
            [[0, 0, 0], [-2, -3, 0], [3, -3, 0]],
            [[-1, 2, -1], [0, 0, 0], [1, 0, -1]],
        );
        let e = epipoles(&t, 0.0).unwrap();
        assert!(same(&e.e12, [1, 0, 0]) && same(&e.e13, [1, 0, 0]));
        assert!(same(&e.e21, [0, 1, 0]) && same(&e.e23, [0, 1, 0]));
        assert!(same(&e.e31, [0, 0, 1]) && same(&e.e32, [1, 1, 1]));
        assert_eq!(collinearity_status(&e, 0.0), CollinearityStatus::Mixed);
        assert_eq!(hz_compatible(&t, 0.0), HzVerdict::Inapplicable);
    }

    #[test]
    fn five_distinct_epipoles() {
        let t = int_triple(
            [[0, 0, 0], [0, 0, -3], [-3, 0, 4]],
            [[0, 0, 0], [2, -3, 0], [-4, 4, 0]],
            [[1, -1, 3], [1, -1, 0], [-1, 1, -3]],
        );
        let e = epipoles(&t, 0.0).unwrap();
        assert!(same(&e.e12, [1, 0, 0]) && same(&e.e13, [1, 0, 0]));
        assert!(same(&e.e21, [0, 1, 0]) && same(&e.e23, [1, 0, 1]));
        assert!(same(&e.e31, [0, 0, 1]) && same(&e.e32, [1, 1, 0]));
        assert_eq!(e.distinct_count(0.0), 5);
        assert_eq!(collinearity_status(&e, 0.0), CollinearityStatus::Mixed);
    }

    #[test]
    fn rank_deficient_factor_is_reported() {
        let t: FundamentalTriple<BigRational> = FundamentalTriple::new(
            Mat3::from_i64([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]),
            Mat3::from_i64([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]),
            Mat3::from_i64([[0, 0, 0], [0, 0, 0], [0, 0, 1]]),
        );
        assert!(matches!(epipoles(&t, 0.0), Err(Error::FactorRank { factor: "F23", found: 1 })));
        assert_eq!(hz_compatible(&t, 0.0), HzVerdict::Inapplicable);
    }
}
