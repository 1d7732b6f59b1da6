//! Fixed-size vectors and matrices over a [`Ring`].

use std::array;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Field, Ring};

/// A column vector with three coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Vec3<T>(pub [T; 3]);

/// A 3x3 matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

/// A 9x9 matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat9<T>(pub [[T; 9]; 9]);

impl<T: Ring> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3([x, y, z])
    }

    pub fn zero() -> Self {
        Vec3(array::from_fn(|_| T::zero()))
    }

    pub fn from_i64(v: [i64; 3]) -> Self {
        Vec3(v.map(T::from_i64))
    }

    pub fn dot(&self, other: &Self) -> T {
        (0..3).fold(T::zero(), |acc, i| acc + self.0[i].clone() * other.0[i].clone())
    }

    pub fn cross(&self, other: &Self) -> Self {
        let [a0, a1, a2] = self.0.clone();
        let [b0, b1, b2] = other.0.clone();
        Vec3([
            a1.clone() * b2.clone() - a2.clone() * b1.clone(),
            a2 * b0.clone() - a0.clone() * b2,
            a0 * b1 - a1 * b0,
        ])
    }

    pub fn scale(&self, s: &T) -> Self {
        Vec3(array::from_fn(|i| self.0[i].clone() * s.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Ring::is_zero)
    }

    /// Outer product `self * other^T`.
    pub fn outer(&self, other: &Self) -> Mat3<T> {
        Mat3(array::from_fn(|r| array::from_fn(|c| self.0[r].clone() * other.0[c].clone())))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Vec3<U> {
        Vec3(array::from_fn(|i| f(&self.0[i])))
    }
}

impl<T: Field> Vec3<T> {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt()
    }
}

impl<T: Ring> Add for Vec3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = rhs.0;
        Vec3([a0 + b0, a1 + b1, a2 + b2])
    }
}

impl<T: Ring> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = rhs.0;
        Vec3([a0 - b0, a1 - b1, a2 - b2])
    }
}

impl<T: Ring> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3(self.0.map(|x| -x))
    }
}

/// The matrix of `v -> c x v`.
pub fn cross_matrix<T: Ring>(c: &Vec3<T>) -> Mat3<T> {
    let [x, y, z] = c.0.clone();
    let o = T::zero;
    Mat3([[o(), -z.clone(), y.clone()], [z, o(), -x.clone()], [-y, x, o()]])
}

impl<T: Ring> Mat3<T> {
    pub fn zero() -> Self {
        Mat3(array::from_fn(|_| array::from_fn(|_| T::zero())))
    }

    pub fn identity() -> Self {
        Mat3(array::from_fn(|r| array::from_fn(|c| if r == c { T::one() } else { T::zero() })))
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Mat3(rows.map(|row| row.map(T::from_i64)))
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Mat3(array::from_fn(|r| array::from_fn(|c| f(r, c))))
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.0[r][c]
    }

    pub fn row(&self, r: usize) -> Vec3<T> {
        Vec3(self.0[r].clone())
    }

    pub fn col(&self, c: usize) -> Vec3<T> {
        Vec3(array::from_fn(|r| self.0[r][c].clone()))
    }

    pub fn transpose(&self) -> Self {
        Mat3::from_fn(|r, c| self.0[c][r].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat3::from_fn(|r, c| self.0[r][c].clone() * s.clone())
    }

    pub fn mul_vec(&self, v: &Vec3<T>) -> Vec3<T> {
        Vec3(array::from_fn(|r| self.row(r).dot(v)))
    }

    pub fn trace(&self) -> T {
        self.0[0][0].clone() + self.0[1][1].clone() + self.0[2][2].clone()
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
        };
        m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2)
            + m[0][2].clone() * minor(1, 2, 0, 1)
    }

    /// Classical adjugate: `A * adj(A) = det(A) I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        Mat3::from_fn(|r, c| {
            // Cofactor of entry (c, r), using cyclic index order for the sign.
            let (r0, r1) = ((c + 1) % 3, (c + 2) % 3);
            let (c0, c1) = ((r + 1) % 3, (r + 2) % 3);
            m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
        })
    }

    /// Entries in row-major order.
    pub fn flat(&self) -> [T; 9] {
        array::from_fn(|k| self.0[k / 3][k % 3].clone())
    }

    pub fn from_flat(v: &[T]) -> Self {
        assert_eq!(v.len(), 9, "a 3x3 matrix needs 9 entries");
        Mat3::from_fn(|r, c| v[3 * r + c].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Ring::is_zero)
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat3<U> {
        Mat3(array::from_fn(|r| array::from_fn(|c| f(&self.0[r][c]))))
    }

    /// `tr(A^T A)`, the squared Frobenius norm for real matrices.
    pub fn gram_trace(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |acc, x| acc + x.clone() * x.clone())
    }
}

impl<T: Field> Mat3<T> {
    /// Frobenius norm of the entries' moduli.
    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt()
    }

    /// Inverse, or `None` for a singular matrix (exact zero determinant).
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        Some(self.adjugate().map(|x| x.clone() / d.clone()))
    }
}

impl<T: Ring> Mul for &Mat3<T> {
    type Output = Mat3<T>;
    fn mul(self, rhs: &Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|r, c| {
            (0..3).fold(T::zero(), |acc, k| acc + self.0[r][k].clone() * rhs.0[k][c].clone())
        })
    }
}

impl<T: Ring> Add for &Mat3<T> {
    type Output = Mat3<T>;
    fn add(self, rhs: &Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|r, c| self.0[r][c].clone() + rhs.0[r][c].clone())
    }
}

impl<T: Ring> Sub for &Mat3<T> {
    type Output = Mat3<T>;
    fn sub(self, rhs: &Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|r, c| self.0[r][c].clone() - rhs.0[r][c].clone())
    }
}

impl<T: Ring> Neg for &Mat3<T> {
    type Output = Mat3<T>;
    fn neg(self) -> Mat3<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Ring> Mat9<T> {
    pub fn zero() -> Self {
        Mat9(array::from_fn(|_| array::from_fn(|_| T::zero())))
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Mat9(array::from_fn(|r| array::from_fn(|c| f(r, c))))
    }

    /// Assemble from a 3x3 grid of 3x3 blocks.
    pub fn from_blocks(blocks: &[[Mat3<T>; 3]; 3]) -> Self {
        Mat9::from_fn(|r, c| blocks[r / 3][c / 3].0[r % 3][c % 3].clone())
    }

    pub fn block(&self, br: usize, bc: usize) -> Mat3<T> {
        Mat3::from_fn(|r, c| self.0[3 * br + r][3 * bc + c].clone())
    }

    pub fn transpose(&self) -> Self {
        Mat9::from_fn(|r, c| self.0[c][r].clone())
    }

    pub fn trace(&self) -> T {
        (0..9).fold(T::zero(), |acc, i| acc + self.0[i][i].clone())
    }

    /// Rows of the matrix as vectors, for rank and determinant routines.
    pub fn rows(&self) -> Vec<Vec<T>> {
        self.0.iter().map(|row| row.to_vec()).collect()
    }

    /// The square submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<T>> {
        rows.iter().map(|&r| cols.iter().map(|&c| self.0[r][c].clone()).collect()).collect()
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat9<U> {
        Mat9(array::from_fn(|r| array::from_fn(|c| f(&self.0[r][c]))))
    }
}

impl<T: Ring> Mul for &Mat9<T> {
    type Output = Mat9<T>;
    fn mul(self, rhs: &Mat9<T>) -> Mat9<T> {
        Mat9::from_fn(|r, c| {
            (0..9).fold(T::zero(), |acc, k| {
                let a = &self.0[r][k];
                let b = &rhs.0[k][c];
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallalg::scalar::q;
    use num_rational::BigRational;

    fn sample() -> Mat3<BigRational> {
        Mat3::from_i64([[2, -1, 3], [0, 4, 5], [1, 1, -2]])
    }

    #[test]
    fn adjugate_times_matrix_is_det_identity() {
        let a = sample();
        let prod = &a * &a.adjugate();
        assert_eq!(prod, Mat3::identity().scale(&a.det()));
        let prod = &a.adjugate() * &a;
        assert_eq!(prod, Mat3::identity().scale(&a.det()));
    }

    #[test]
    fn det_of_known_matrix() {
        // 2(-8-5) + 1(0-5) + 3(0-4) = -26 - 5 - 12
        assert_eq!(sample().det(), q(-43, 1));
    }

    #[test]
    fn cross_matrix_acts_as_cross_product() {
        let c = Vec3::<BigRational>::from_i64([1, -2, 3]);
        let v = Vec3::from_i64([4, 0, -1]);
        assert_eq!(cross_matrix(&c).mul_vec(&v), c.cross(&v));
        let m = cross_matrix(&c);
        assert_eq!(m.transpose(), -&m);
    }

    #[test]
    fn mat9_blocks_round_trip() {
        let a = sample();
        let z = Mat3::zero();
        let m = Mat9::from_blocks(&[
            [z.clone(), a.clone(), z.clone()],
            [a.transpose(), z.clone(), z.clone()],
            [z.clone(), z.clone(), z],
        ]);
        assert_eq!(m.block(0, 1), a);
        assert_eq!(m.transpose(), m);
    }
}
