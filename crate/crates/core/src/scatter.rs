//! Centering, covariance, Mahalanobis distances and one-step M-scatter matrices.
//!
//! Data matrices are `p x n`: one column per observation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, thin_svd, Matrix, PivotedQr};

/// Centered data `X_c = X - x̄ eᵀ` together with the removed location.
#[derive(Debug, Clone)]
pub struct CenteredData {
    pub xc: Matrix,
    pub location: Vec<f64>,
    pub n_obs: usize,
    pub p_vars: usize,
}

impl CenteredData {
    /// `X_cᵀ`, the `n x p` matrix that the QR route factors.
    pub fn xc_t(&self) -> Matrix {
        self.xc.transpose()
    }
}

/// Subtracts the row means of a `p x n` data matrix.
pub fn center(x: &Matrix) -> Result<CenteredData> {
    let (p, n) = x.shape();
    if n < 2 {
        return Err(Error::shape(format!("need at least 2 observations, got {n}")));
    }
    for j in 0..n {
        if let Some(i) = x.col(j).iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput { row: i, col: j });
        }
    }
    let mut location = vec![0.0; p];
    for j in 0..n {
        for (m, v) in location.iter_mut().zip(x.col(j)) {
            *m += v;
        }
    }
    for m in &mut location {
        *m /= n as f64;
    }
    let xc = Matrix::from_fn(p, n, |i, j| x[(i, j)] - location[i]);
    Ok(CenteredData {
        xc,
        location,
        n_obs: n,
        p_vars: p,
    })
}

/// `X_c X_cᵀ / (n-1)`, exactly symmetric as stored.
pub fn covariance(cd: &CenteredData) -> Matrix {
    let xt = cd.xc_t();
    gram_upper(&xt, &xt, 1.0 / (cd.n_obs - 1) as f64)
}

/// `scale · aᵀ b` for two `n x p` matrices whose product is known to be symmetric;
/// only the upper triangle is computed and then mirrored.
fn gram_upper(a: &Matrix, b: &Matrix, scale: f64) -> Matrix {
    let p = a.ncols();
    let mut g = Matrix::zeros(p, p);
    for j in 0..p {
        for i in 0..=j {
            g[(i, j)] = scale * dot(a.col(i), b.col(j));
        }
    }
    g.symmetrize_from_upper();
    g
}

/// Squared row norms of `Q`, returned in original observation order.
///
/// For a factorization of `X_cᵀ / sqrt(n-1)` these are the leverage scores,
/// and `(n-1) q_i` is the squared Mahalanobis distance of observation `i`.
pub fn leverage_scores(qr: &PivotedQr) -> Vec<f64> {
    let n = qr.nrows();
    let mut permuted = vec![0.0; n];
    for j in 0..qr.q.ncols() {
        for (s, v) in permuted.iter_mut().zip(qr.q.col(j)) {
            *s += v * v;
        }
    }
    let mut scores = vec![0.0; n];
    for (i, &orig) in qr.row_perm.iter().enumerate() {
        scores[orig] = permuted[i];
    }
    scores
}

/// Squared Mahalanobis distances through `cov^{-1/2} = sqrt(n-1) V Σ⁻¹ Vᵀ`
/// from the thin SVD of `X_cᵀ`.
pub fn mahalanobis_sq_explicit(cd: &CenteredData) -> Result<Vec<f64>> {
    let (p, n) = (cd.p_vars, cd.n_obs);
    if n < p {
        return Err(Error::shape(format!("need n >= p, got p = {p}, n = {n}")));
    }
    let svd = thin_svd(&cd.xc_t())?;
    let scale = (n - 1) as f64;
    let eig: Vec<f64> = svd.sigma.iter().map(|s| s * s / scale).collect();
    check_positive_definite(&eig)?;

    let mut inv_sqrt = Matrix::zeros(p, p);
    for k in 0..p {
        let w = scale.sqrt() / svd.sigma[k];
        let vk = svd.v.col(k);
        for j in 0..p {
            for i in 0..p {
                inv_sqrt[(i, j)] += w * vk[i] * vk[j];
            }
        }
    }
    let y = inv_sqrt.matmul(&cd.xc);
    Ok((0..n).map(|i| dot(y.col(i), y.col(i))).collect())
}

/// Rejects covariance spectra with an eigenvalue at or below `p · ε · λ_max`.
/// `eig` must be sorted non-increasing.
pub(crate) fn check_positive_definite(eig: &[f64]) -> Result<()> {
    let p = eig.len();
    let largest = eig[0];
    let threshold = p as f64 * f64::EPSILON * largest.abs();
    if let Some(index) = eig.iter().position(|&l| !(l > threshold)) {
        let smallest = eig[p - 1];
        return Err(Error::SingularCovariance {
            smallest,
            largest,
            threshold,
            index,
            rcond: if largest > 0.0 { smallest / largest } else { 0.0 },
        });
    }
    Ok(())
}

/// Weight function family for `cov_w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeightKind {
    /// `w(d) = d^alpha`; `alpha = 1` gives cov₄, `alpha = -1` gives covAxis.
    Power { alpha: f64 },
    Constant,
}

/// What to do with zero distances when the weight exponent is negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "policy", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ZeroDistancePolicy {
    /// Fail when some `d ≤ n · ε · mean(d)`.
    #[default]
    Error,
    /// Replace distances below `floor` by `floor`.
    Clamp { floor: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub kind: WeightKind,
    pub zero_distance_policy: ZeroDistancePolicy,
}

impl WeightSpec {
    pub fn power(alpha: f64) -> Self {
        WeightSpec {
            kind: WeightKind::Power { alpha },
            zero_distance_policy: ZeroDistancePolicy::Error,
        }
    }

    pub fn constant() -> Self {
        WeightSpec {
            kind: WeightKind::Constant,
            zero_distance_policy: ZeroDistancePolicy::Error,
        }
    }

    /// cov–cov₄, the FOBI pair.
    pub fn cov4() -> Self {
        Self::power(1.0)
    }

    /// cov–covAxis, the PAA pair.
    pub fn cov_axis() -> Self {
        Self::power(-1.0)
    }

    pub fn with_clamp(mut self, floor: f64) -> Self {
        self.zero_distance_policy = ZeroDistancePolicy::Clamp { floor };
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            WeightKind::Power { alpha } if !alpha.is_finite() => {
                Err(Error::InvalidSpec(format!("weight exponent {alpha} is not finite")))
            }
            _ => match self.zero_distance_policy {
                ZeroDistancePolicy::Clamp { floor } if !(floor > 0.0 && floor.is_finite()) => Err(
                    Error::InvalidSpec(format!("clamp floor must be positive, got {floor}")),
                ),
                _ => Ok(()),
            },
        }
    }

    /// Evaluates `w` on all squared distances, applying the zero-distance policy.
    pub fn weights(&self, d2: &[f64]) -> Result<Vec<f64>> {
        self.validate()?;
        if let Some(i) = d2.iter().position(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::InvalidSpec(format!(
                "squared distance {} at observation {i} is not a finite non-negative value",
                d2[i]
            )));
        }
        let alpha = match self.kind {
            WeightKind::Constant => return Ok(vec![1.0; d2.len()]),
            WeightKind::Power { alpha } => alpha,
        };
        if alpha >= 0.0 {
            return Ok(d2.iter().map(|d| d.powf(alpha)).collect());
        }
        match self.zero_distance_policy {
            ZeroDistancePolicy::Error => {
                let mean = d2.iter().sum::<f64>() / d2.len() as f64;
                let floor = d2.len() as f64 * f64::EPSILON * mean;
                let indices: Vec<usize> = d2
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d <= floor)
                    .map(|(i, _)| i)
                    .collect();
                if !indices.is_empty() {
                    return Err(Error::ZeroDistance { indices });
                }
                Ok(d2.iter().map(|d| d.powf(alpha)).collect())
            }
            ZeroDistancePolicy::Clamp { floor } => {
                Ok(d2.iter().map(|d| d.max(floor).powf(alpha)).collect())
            }
        }
    }
}

/// One-step M-scatter `(1/n) X_c Diag(w(d2_i)) X_cᵀ`.
pub fn cov_w(cd: &CenteredData, d2: &[f64], w: &WeightSpec) -> Result<Matrix> {
    if d2.len() != cd.n_obs {
        return Err(Error::shape(format!(
            "{} distances for {} observations",
            d2.len(),
            cd.n_obs
        )));
    }
    let weights = w.weights(d2)?;
    Ok(weighted_scatter(&cd.xc_t(), &weights, 1.0 / cd.n_obs as f64))
}

/// `scale · xtᵀ Diag(weights) xt` for an `n x p` matrix `xt`.
pub(crate) fn weighted_scatter(xt: &Matrix, weights: &[f64], scale: f64) -> Matrix {
    let (n, p) = xt.shape();
    let wx = Matrix::from_fn(n, p, |i, j| weights[i] * xt[(i, j)]);
    gram_upper(&wx, xt, scale)
}
