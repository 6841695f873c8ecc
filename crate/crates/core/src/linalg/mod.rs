//! Dense linear algebra kernels: symmetric eigendecomposition, Cholesky, least squares, PCA.

mod cholesky;
mod eigen;
mod lstsq;
mod matrix;
mod pca;

pub use cholesky::{cholesky, solve_lower, solve_lower_transpose};
pub use eigen::{
    canonical_sign, symmetric_eig, EigenResult, MAX_SWEEPS, OFF_DIAG_TOL, SYMMETRY_TOL,
};
pub use lstsq::{solve_least_squares, RANK_TOL};
pub use matrix::{dist, dot, norm, Matrix, Vector};
pub use pca::{pca_fit, Pca};
