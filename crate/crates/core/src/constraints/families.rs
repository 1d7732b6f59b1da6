//! Direct evaluators for the generator families of compatible triples.

use rayon::prelude::*;

use crate::camera::FundamentalTriple;
use crate::smallalg::{det, Field, Mat3, Ring};

/// `(det F12, det F13, det F23)`.
pub fn eval_det_cubics<T: Ring>(t: &FundamentalTriple<T>) -> Vec<T> {
    t.factors().iter().map(|m| m.det()).collect()
}

/// The three sandwich differences, each antisymmetric:
///
/// - `F12 adj(F32) F31 - F13 adj(F23) F21`
/// - `F31 adj(F21) F23 - F32 adj(F12) F13`
/// - `F21 adj(F31) F32 - F23 adj(F13) F12`
pub fn quartic_matrices<T: Ring>(t: &FundamentalTriple<T>) -> [Mat3<T>; 3] {
    let f = |i, j| t.get(i, j);
    let sandwich = |(a, b): (usize, usize), (c, d): (usize, usize), (e, g): (usize, usize)| {
        &(&f(a, b) * &f(c, d).adjugate()) * &f(e, g)
    };
    [
        &sandwich((1, 2), (3, 2), (3, 1)) - &sandwich((1, 3), (2, 3), (2, 1)),
        &sandwich((3, 1), (2, 1), (2, 3)) - &sandwich((3, 2), (1, 2), (1, 3)),
        &sandwich((2, 1), (3, 1), (3, 2)) - &sandwich((2, 3), (1, 3), (1, 2)),
    ]
}

/// Entries `(0,1), (0,2), (1,2)` of each quartic matrix: 9 residuals.
pub fn eval_quartics<T: Ring>(t: &FundamentalTriple<T>) -> Vec<T> {
    quartic_matrices(t)
        .iter()
        .flat_map(|m| [m.0[0][1].clone(), m.0[0][2].clone(), m.0[1][2].clone()])
        .collect()
}

/// The three rank-1 products whose entries are the quintics:
/// `adj(F13) F12 adj(F32)`, `adj(F12) F13 adj(F23)`, `adj(F21) F23 adj(F13)`.
pub fn quintic_matrices<T: Ring>(t: &FundamentalTriple<T>) -> [Mat3<T>; 3] {
    let f = |i, j| t.get(i, j);
    let prod = |(a, b): (usize, usize), (c, d): (usize, usize), (e, g): (usize, usize)| {
        &(&f(a, b).adjugate() * &f(c, d)) * &f(e, g).adjugate()
    };
    [prod((1, 3), (1, 2), (3, 2)), prod((1, 2), (1, 3), (2, 3)), prod((2, 1), (2, 3), (1, 3))]
}

/// All 27 entries of the quintic matrices, row-major per matrix.
pub fn eval_quintics<T: Ring>(t: &FundamentalTriple<T>) -> Vec<T> {
    quintic_matrices(t).iter().flat_map(Mat3::flat).collect()
}

/// Rows and columns deleted from the 9x9 block matrix for one septic.
///
/// Indices are 1-based, as are the generating data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SepticIndexPair {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
    pub k: [usize; 2],
    pub i: [usize; 2],
    pub j: [usize; 2],
}

/// The 108 deleted-row/column pairs in lexicographic order of
/// `(k1, k2, i1, j1, i2, j2)`.
pub fn enumerate_septic_indices() -> Vec<SepticIndexPair> {
    let ordered: Vec<(usize, usize)> =
        (1..=3).flat_map(|i| (i..=3).map(move |j| (i, j))).collect();
    let mut out = Vec::with_capacity(108);
    for (k1, k2) in [(1, 2), (1, 3), (2, 3)] {
        for &(i1, j1) in &ordered {
            for &(i2, j2) in &ordered {
                out.push(SepticIndexPair {
                    rows: [3 * (k1 - 1) + i1, 3 * (k2 - 1) + i2],
                    cols: [3 * (k1 - 1) + j1, 3 * (k2 - 1) + j2],
                    k: [k1, k2],
                    i: [i1, i2],
                    j: [j1, j2],
                });
            }
        }
    }
    out
}

impl SepticIndexPair {
    /// 0-based indices of the rows kept in the 7x7 minor.
    pub fn kept_rows(&self) -> Vec<usize> {
        (1..=9).filter(|r| !self.rows.contains(r)).map(|r| r - 1).collect()
    }

    /// 0-based indices of the columns kept in the 7x7 minor.
    pub fn kept_cols(&self) -> Vec<usize> {
        (1..=9).filter(|c| !self.cols.contains(c)).map(|c| c - 1).collect()
    }

    /// Degree in `(F12, F13, F23)`: 1 in the block pairing the two touched
    /// block rows, 3 in the others.
    pub fn multidegree(&self) -> [u32; 3] {
        match (self.k[0], self.k[1]) {
            (1, 2) => [1, 3, 3],
            (1, 3) => [3, 1, 3],
            _ => [3, 3, 1],
        }
    }
}

/// The 108 septic minors, in [`enumerate_septic_indices`] order.
pub fn eval_septics<T: Field>(t: &FundamentalTriple<T>) -> Vec<T> {
    let mega = t.mega_matrix();
    enumerate_septic_indices()
        .par_iter()
        .map(|p| det(&mega.submatrix(&p.kept_rows(), &p.kept_cols())))
        .collect()
}

/// `2 M M^T M - tr(M M^T) M`.
pub fn eval_demazure<T: Ring>(m: &Mat3<T>) -> Mat3<T> {
    let mmt = m * &m.transpose();
    let cubic = (&mmt * m).scale(&T::from_i64(2));
    &cubic - &m.scale(&mmt.trace())
}

/// Demazure residuals of all three factors: 27 values, F12 then F13 then F23.
pub fn eval_demazure_triple<T: Ring>(t: &FundamentalTriple<T>) -> Vec<T> {
    t.factors().iter().flat_map(|m| eval_demazure(m).flat()).collect()
}
