//! Invariant coordinate selection (ICS) for the cov–cov_w family of scatter pairs.
//!
//! The crate offers two implementations of the same transformation:
//!
//! * [`ics::ics_eigen`]: whitening through the spectral decomposition of the
//!   explicit covariance, followed by an eigendecomposition of
//!   `cov^{-1/2} cov_w cov^{-1/2}`. It breaks down once the data is
//!   ill-conditioned enough that `cov` is numerically singular.
//! * [`ics::ics_qr`]: works on a column-pivoted (and optionally row-presorted)
//!   Householder QR of the centered data. Mahalanobis distances become
//!   leverage scores of `Q`, the eigenproblem becomes an SVD of a row-weighted
//!   `Q`, and the unmixing matrix is obtained by back substitution with `R`.
//!   The pivoted diagonal of `R` doubles as a rank-revealing device, see
//!   [`ics::reduce_then_ics`].
//!
//! ```
//! use ics_core::experiments::{gen_mixture, MixtureSpec};
//! use ics_core::ics::{ics_qr, IcsOptions};
//! use ics_core::scatter::center;
//!
//! let data = gen_mixture(&MixtureSpec { n: 500, p: 3, epsilon: 0.1, delta: 6.0, seed: 1 })?;
//! let cd = center(&data.data)?;
//! let res = ics_qr(&cd, &IcsOptions::default())?;
//! assert_eq!(res.eigenvalues.len(), 3);
//! # Ok::<(), ics_core::Error>(())
//! ```

pub mod error;
pub mod experiments;
pub mod ics;
pub mod linalg;
pub mod scatter;

pub use error::{Error, Result};
pub use linalg::Matrix;
