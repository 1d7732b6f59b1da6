//! Small exact and floating-point linear algebra.

pub mod dense;
pub mod mat;
pub mod scalar;

pub use dense::{
    column_space_residual, det, exact_rank, kernel_vector, normalize_projective, nullspace, numeric_rank, proj_equal,
    DEFAULT_RANK_TOL,
};
pub use mat::{cross_matrix, Mat3, Mat9, Vec3};
pub use scalar::{gauss, parse_rational, q, Dual, Field, FromC64, GaussRational, Ring};
