use super::{apply_sign_convention, Algorithm, Diagnostics, IcsOptions, IcsResult};
use crate::error::{Error, Result};
use crate::linalg::{dot, symmetric_eigen, Matrix};
use crate::scatter::{check_positive_definite, covariance, weighted_scatter, CenteredData};

/// Classical ICS through two spectral decompositions.
///
/// Forms `cov`, its symmetric inverse square root, `M = cov^{-1/2} cov_w cov^{-1/2}`
/// and the eigenvectors of `M`. Fails with [`Error::SingularCovariance`] once
/// `cov` is not numerically positive definite, which is the expected outcome
/// on ill-conditioned data.
pub fn ics_eigen(cd: &CenteredData, opts: &IcsOptions) -> Result<IcsResult> {
    opts.validate()?;
    let (p, n) = (cd.p_vars, cd.n_obs);
    if n <= p {
        return Err(Error::shape(format!("ICS needs n > p, got p = {p}, n = {n}")));
    }

    let cov = covariance(cd);
    let spectral = symmetric_eigen(&cov)?;
    check_positive_definite(&spectral.values)?;

    let u1 = &spectral.vectors;
    let inv_sqrt = Matrix::from_fn(p, p, |i, j| {
        (0..p)
            .map(|k| u1[(i, k)] * u1[(j, k)] / spectral.values[k].sqrt())
            .sum()
    });

    let whitened = inv_sqrt.matmul(&cd.xc);
    let d2: Vec<f64> = (0..n)
        .map(|i| dot(whitened.col(i), whitened.col(i)))
        .collect();
    let weights = opts.weight.weights(&d2)?;
    let cov_w = weighted_scatter(&cd.xc_t(), &weights, 1.0 / n as f64);

    let mut m = inv_sqrt.matmul(&cov_w).matmul(&inv_sqrt);
    m.symmetrize_from_upper();
    let second = symmetric_eigen(&m)?;

    let unmixing = second.vectors.transpose().matmul(&inv_sqrt);
    let scores = unmixing.matmul(&cd.xc);
    let condition = (spectral.values[0] / spectral.values[p - 1]).sqrt();
    let diagnostics = Diagnostics::new(&second.values, condition, opts.gap_tolerance);
    let result = IcsResult {
        eigenvalues: second.values,
        unmixing,
        scores,
        algorithm: Algorithm::Eigen,
        rank_used: p,
        col_perm: (0..p).collect(),
        diagnostics,
    };
    Ok(apply_sign_convention(result, opts.sign_convention))
}
