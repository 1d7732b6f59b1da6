//! Rank, determinant and nullspace routines on small dense matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::mat::{Mat3, Vec3};
use super::scalar::{Field, Ring};
use crate::error::{Error, Result};

/// Default relative tolerance for floating-point rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Determinant by Gaussian elimination with largest-modulus pivoting.
///
/// Exact for exact fields. Rows must all have the same length as `m`.
pub fn det<T: Field>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut det = T::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .max_by(|&x, &y| a[x][k].magnitude().total_cmp(&a[y][k].magnitude()));
        let Some(p) = pivot else { return T::zero() };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pk = a[k][k].clone();
        det = det * pk.clone();
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let factor = a[r][k].clone() / pk.clone();
            for c in k + 1..n {
                let sub = factor.clone() * a[k][c].clone();
                a[r][c] = a[r][c].clone() - sub;
            }
        }
    }
    det
}

/// Exact rank by fraction-free (Bareiss) elimination.
pub fn exact_rank<T: Field>(m: &[Vec<T>]) -> usize {
    let mut a: Vec<Vec<T>> = m.iter().filter(|r| !r.iter().all(Ring::is_zero)).cloned().collect();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = T::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(p, rank);
        let pivot = a[rank][c].clone();
        for r in rank + 1..rows {
            let lead = a[r][c].clone();
            for cc in c..cols {
                let v = pivot.clone() * a[r][cc].clone() - lead.clone() * a[rank][cc].clone();
                a[r][cc] = v / prev.clone();
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Convert rows to a complex nalgebra matrix.
pub fn to_dmatrix<T: Field>(m: &[Vec<T>]) -> DMatrix<Complex64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows, cols, |r, c| m[r][c].to_c64())
}

/// Real `2m x 2n` matrix `[[Re, -Im], [Im, Re]]` of a complex matrix.
///
/// Its singular values are those of `m`, each repeated twice. The complex
/// decompositions below go through this form because the complex SVD of
/// nalgebra mispairs singular values when entries carry nontrivial phases.
pub fn realify(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    let (r, c) = m.shape();
    DMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let z = m[(i % r, j % c)];
        match (i / r, j / c) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    })
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = realify(m).svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s.into_iter().step_by(2).collect()
}

/// Count singular values above `rel_tol * sigma_max`.
pub fn float_rank(m: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * top).count()
}

/// Rank of `m`: exact elimination on exact fields, SVD with a relative
/// tolerance otherwise.
pub fn numeric_rank<T: Field>(m: &[Vec<T>], rel_tol: f64) -> usize {
    if T::EXACT {
        exact_rank(m)
    } else {
        float_rank(&to_dmatrix(m), rel_tol)
    }
}

/// Right nullspace of a complex matrix: an orthonormal basis of the
/// singular vectors with singular value at most `abs_tol`. Returns the
/// singular values alongside the basis.
pub fn nullspace(m: &DMatrix<Complex64>, abs_tol: f64) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let cols = m.ncols();
    if cols == 0 {
        return (Vec::new(), Vec::new());
    }
    let (sv, real) = real_nullspace(&realify(m), abs_tol);
    let sv: Vec<f64> = sv.into_iter().step_by(2).collect();
    // Each real kernel vector [x; y] gives x + iy; the complex kernel has half
    // the real dimension, so pick that many by pivoted Gram-Schmidt.
    let mut candidates: Vec<Vec<Complex64>> = real
        .iter()
        .map(|v| (0..cols).map(|k| Complex64::new(v[k], v[cols + k])).collect())
        .collect();
    let target = real.len().div_ceil(2);
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(target);
    for _ in 0..target {
        let norm = |v: &Vec<Complex64>| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let Some(best) = (0..candidates.len()).max_by(|&a, &b| norm(&candidates[a]).total_cmp(&norm(&candidates[b])))
        else {
            break;
        };
        let mut pick = candidates.swap_remove(best);
        let n = norm(&pick);
        if n == 0.0 {
            break;
        }
        pick.iter_mut().for_each(|z| *z /= n);
        for c in candidates.iter_mut() {
            let dot: Complex64 = pick.iter().zip(c.iter()).map(|(p, z)| p.conj() * z).sum();
            c.iter_mut().zip(&pick).for_each(|(z, p)| *z -= dot * p);
        }
        basis.push(pick);
    }
    (sv, basis)
}

/// Distance from `b` to the column space of `a`, where singular values
/// below `rel_tol * sigma_max` count as zero.
pub fn column_space_residual(a: &DMatrix<Complex64>, b: &[Complex64], rel_tol: f64) -> f64 {
    let rb: Vec<f64> = b.iter().map(|z| z.re).chain(b.iter().map(|z| z.im)).collect();
    let total = rb.iter().map(|x| x * x).sum::<f64>();
    if a.ncols() == 0 {
        return total.sqrt();
    }
    let svd = realify(a).svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let rb = nalgebra::DVector::from_vec(rb);
    let mut proj = nalgebra::DVector::<f64>::zeros(rb.len());
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s > rel_tol * top {
            let col = u.column(k);
            proj += col * col.dot(&rb);
        }
    }
    (rb - proj).norm()
}

/// Real-valued variant of [`nullspace`].
pub fn real_nullspace(m: &DMatrix<f64>, abs_tol: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
    let cols = m.ncols();
    if cols == 0 {
        return (Vec::new(), Vec::new());
    }
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let basis = order
        .iter()
        .filter(|&&i| svd.singular_values[i] <= abs_tol)
        .map(|&i| v_t.row(i).iter().copied().collect())
        .collect();
    (sv, basis)
}

/// Rank of a 3x3 matrix.
pub fn mat3_rank<T: Field>(m: &Mat3<T>, rel_tol: f64) -> usize {
    let rows: Vec<Vec<T>> = m.0.iter().map(|r| r.to_vec()).collect();
    numeric_rank(&rows, rel_tol)
}

/// Normalize a kernel vector: exact vectors get last nonzero coordinate 1,
/// float vectors get unit norm with the first significant coordinate real
/// and positive.
pub fn normalize_projective<T: Field>(v: &Vec3<T>) -> Vec3<T> {
    if T::EXACT {
        let last = v.0.iter().rev().find(|x| !x.is_zero()).cloned();
        match last {
            Some(l) => v.map(|x| x.clone() / l.clone()),
            None => v.clone(),
        }
    } else {
        let n = v.norm();
        if n == 0.0 {
            return v.clone();
        }
        let lead = v.0.iter().find(|x| x.magnitude() > 1e-9 * n).cloned();
        let scale = match lead {
            // Dividing by lead * n / |lead| leaves lead real and positive.
            Some(l) => l.clone() * T::from_f64(n / l.magnitude()),
            None => T::one(),
        };
        v.map(|x| x.clone() / scale.clone())
    }
}

/// Kernel of a rank-2 3x3 matrix, normalized by [`normalize_projective`].
///
/// Computed as the cross product of the two rows whose cross product is
/// largest. Errors with [`Error::Rank`] if the rank is not 2.
pub fn kernel_vector<T: Field>(m: &Mat3<T>, rel_tol: f64) -> Result<Vec3<T>> {
    let rank = mat3_rank(m, rel_tol);
    if rank != 2 {
        return Err(Error::Rank { expected: 2, found: rank });
    }
    let rows = [m.row(0), m.row(1), m.row(2)];
    let best = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| rows[a].cross(&rows[b]))
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .expect("three candidate pairs");
    Ok(normalize_projective(&best))
}

/// Projective equality: all 2x2 minors `u_i v_j - u_j v_i` vanish (exactly,
/// or up to `tol * |u| |v|` on float fields).
pub fn proj_equal<T: Field>(u: &[T], v: &[T], tol: f64) -> Result<bool> {
    assert_eq!(u.len(), v.len(), "projective comparison needs equal lengths");
    let nu = u.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt();
    let nv = v.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt();
    if u.iter().all(Ring::is_zero) || v.iter().all(Ring::is_zero) {
        return Err(Error::ZeroInput);
    }
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let minor = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            let zero = if T::EXACT { minor.is_zero() } else { minor.magnitude() <= tol * nu * nv };
            if !zero {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallalg::scalar::q;
    use num_rational::BigRational;

    fn rows(m: &[[i64; 4]]) -> Vec<Vec<BigRational>> {
        m.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()
    }

    #[test]
    fn exact_rank_of_dependent_rows() {
        let m = rows(&[[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]);
        assert_eq!(exact_rank(&m), 2);
        let m = rows(&[[0, 0, 0, 0], [0, 0, 0, 0]]);
        assert_eq!(exact_rank(&m), 0);
    }

    #[test]
    fn float_and_exact_rank_agree() {
        let m = rows(&[[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12], [1, 0, 0, 1]]);
        let f: Vec<Vec<Complex64>> =
            m.iter().map(|r| r.iter().map(Field::to_c64).collect()).collect();
        assert_eq!(exact_rank(&m), 3);
        assert_eq!(numeric_rank(&f, DEFAULT_RANK_TOL), 3);
    }

    #[test]
    fn gaussian_det_matches_cofactor_det() {
        let m = Mat3::<BigRational>::from_i64([[0, 2, 1], [3, -1, 4], [5, 0, 2]]);
        let r: Vec<Vec<BigRational>> = m.0.iter().map(|r| r.to_vec()).collect();
        assert_eq!(det(&r), m.det());
    }

    #[test]
    fn kernel_of_rank_two_matrix() {
        let m = Mat3::<BigRational>::from_i64([[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let k = kernel_vector(&m, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(k, Vec3([q(1, 1), q(-2, 1), q(1, 1)]));
        assert!(m.mul_vec(&k).is_zero());
        let id = Mat3::<BigRational>::identity();
        assert!(matches!(kernel_vector(&id, DEFAULT_RANK_TOL), Err(Error::Rank { found: 3, .. })));
    }

    #[test]
    fn float_kernel_is_unit_and_positive() {
        let m = Mat3::<Complex64>::from_i64([[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let k = kernel_vector(&m, DEFAULT_RANK_TOL).unwrap();
        assert!((k.norm() - 1.0).abs() < 1e-12);
        assert!(k.0[0].re > 0.0 && k.0[0].im.abs() < 1e-12);
    }

    #[test]
    fn projective_equality() {
        let u = [q(1, 1), q(2, 1), q(0, 1)];
        let v = [q(-3, 1), q(-6, 1), q(0, 1)];
        assert!(proj_equal(&u, &v, 0.0).unwrap());
        let w = [q(1, 1), q(2, 1), q(1, 1)];
        assert!(!proj_equal(&u, &w, 0.0).unwrap());
        let z = [q(0, 1), q(0, 1), q(0, 1)];
        assert!(matches!(proj_equal(&u, &z, 0.0), Err(Error::ZeroInput)));
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let (_, basis) = real_nullspace(&m, 1e-10);
        assert_eq!(basis.len(), 2);
        for v in basis {
            assert!((v[0] + v[1]).abs() < 1e-12);
        }
    }
}
