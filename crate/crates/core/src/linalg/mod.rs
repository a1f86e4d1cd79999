//! Dense kernels: pivoted Householder QR, thin SVD, symmetric eigensolver,
//! triangular solves, numerical rank and subspace reduction.
//!
//! Everything here is single-threaded and deterministic.

mod eigen;
mod matrix;
mod qr;
mod rank;
mod svd;
mod triangular;

pub use eigen::{symmetric_eigen, SymmetricEigen};
pub use matrix::Matrix;
pub use qr::{qr_pivoted, row_presort_linf, PivotedQr};
pub use rank::{numerical_rank, truncate_reduce, urv_reduce, RankCriterion, RankDecision};
pub use svd::{thin_svd, ThinSvd, MAX_SWEEPS};
pub use triangular::solve_upper_triangular;

pub(crate) use matrix::dot;
pub(crate) use svd::svd_values_right;
