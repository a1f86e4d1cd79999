//! Numerical rank from the diagonal of a column-pivoted R, and the two ways of
//! placing rank-deficient data in a q-dimensional subspace.

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::qr::{qr_pivoted, PivotedQr};
use crate::error::{Error, Result};

/// Slack allowed when checking that `|R_ii|` is non-increasing.
const SORT_SLACK: f64 = 1e-12;

/// Which diagonal entry the tolerance is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RankCriterion {
    /// `|R_{q+1,q+1}| < ε |R_qq|`
    Successive,
    /// `|R_{q+1,q+1}| < ε |R_11|`
    #[default]
    Leading,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankDecision {
    pub q: usize,
    pub epsilon: f64,
    pub criterion: RankCriterion,
    pub r_diag_abs: Vec<f64>,
}

impl RankDecision {
    pub fn is_full(&self) -> bool {
        self.q == self.r_diag_abs.len()
    }
}

/// Scans the diagonal for the first index where the criterion fires.
///
/// Returns [`Error::DegenerateData`] when `|R_11| = 0`, i.e. the factored matrix is zero.
pub fn numerical_rank(
    r_diag_abs: &[f64],
    epsilon: f64,
    criterion: RankCriterion,
) -> Result<RankDecision> {
    if r_diag_abs.is_empty() {
        return Err(Error::shape("empty diagonal"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidSpec(format!("rank tolerance {epsilon} outside (0, 1)")));
    }
    for i in 1..r_diag_abs.len() {
        if r_diag_abs[i] > r_diag_abs[i - 1] * (1.0 + SORT_SLACK) {
            return Err(Error::NotSorted { index: i });
        }
    }
    if r_diag_abs[0] == 0.0 {
        return Err(Error::DegenerateData);
    }
    let p = r_diag_abs.len();
    let q = (1..p)
        .find(|&i| {
            let reference = match criterion {
                RankCriterion::Successive => r_diag_abs[i - 1],
                RankCriterion::Leading => r_diag_abs[0],
            };
            r_diag_abs[i] < epsilon * reference
        })
        .unwrap_or(p);
    Ok(RankDecision {
        q,
        epsilon,
        criterion,
        r_diag_abs: r_diag_abs.to_vec(),
    })
}

fn check_reducible(qr: &PivotedQr, rank: &RankDecision, n_obs: usize) -> Result<()> {
    let p = qr.ncols();
    if rank.r_diag_abs.len() != p {
        return Err(Error::shape("rank decision does not belong to this factorization"));
    }
    if rank.q == 0 || rank.q >= p {
        return Err(Error::shape(format!(
            "reduction needs 1 <= q < p, got q = {} with p = {p}",
            rank.q
        )));
    }
    if qr.nrows() != n_obs || n_obs < 2 {
        return Err(Error::shape(format!(
            "factorization has {} rows but n_obs = {n_obs}",
            qr.nrows()
        )));
    }
    Ok(())
}

/// `sqrt(n-1) · M · Q_[1]ᵀ` with columns returned in original observation order.
fn times_q1_transposed(m: &Matrix, qr: &PivotedQr, n_obs: usize) -> Matrix {
    let q = m.ncols();
    let scale = ((n_obs - 1) as f64).sqrt();
    let mut out = Matrix::zeros(m.nrows(), n_obs);
    for (i, &orig) in qr.row_perm.iter().enumerate() {
        let dst = out.col_mut(orig);
        for k in 0..q {
            let qik = qr.q[(i, k)] * scale;
            if qik != 0.0 {
                for (d, r) in dst.iter_mut().enumerate() {
                    *r += m[(d, k)] * qik;
                }
            }
        }
    }
    out
}

/// Two-sided orthogonal (URV) reduction of the factored data to `q` dimensions.
///
/// `qr` must factor `X_cᵀ / sqrt(n-1)`. Returns the `q x n` reduced data
/// `sqrt(n-1) · T · Π₃ᵀ · Q_[1]ᵀ` and the `p x q` basis `Π₁ · Ω₁` with
/// orthonormal columns, so that `X_c ≈ basis · x_reduced`.
pub fn urv_reduce(qr: &PivotedQr, rank: &RankDecision, n_obs: usize) -> Result<(Matrix, Matrix)> {
    check_reducible(qr, rank, n_obs)?;
    let p = qr.ncols();
    let q = rank.q;
    // stacked (R_11ᵀ; R_12ᵀ) is the transpose of the first q rows of R
    let stacked = Matrix::from_fn(p, q, |i, j| qr.r[(j, i)]);
    let second = qr_pivoted(&stacked, true, false)?;
    // T Π₃ᵀ: column col_perm[j] of the result is column j of T
    let mut t_perm = Matrix::zeros(q, q);
    for (j, &orig) in second.col_perm.iter().enumerate() {
        for i in 0..=j {
            t_perm[(i, orig)] = second.r[(i, j)];
        }
    }
    let x_reduced = times_q1_transposed(&t_perm, qr, n_obs);
    let mut basis = Matrix::zeros(p, q);
    for (i, &orig) in qr.col_perm.iter().enumerate() {
        for j in 0..q {
            basis[(orig, j)] = second.q[(i, j)];
        }
    }
    Ok((x_reduced, basis))
}

/// Keeps the first `q` pivoted coordinates: `sqrt(n-1) · R_[11]ᵀ · Q_[1]ᵀ`,
/// together with the original indices of the kept variables.
pub fn truncate_reduce(
    qr: &PivotedQr,
    rank: &RankDecision,
    n_obs: usize,
) -> Result<(Matrix, Vec<usize>)> {
    check_reducible(qr, rank, n_obs)?;
    let q = rank.q;
    let r11t = Matrix::from_fn(q, q, |i, j| if j <= i { qr.r[(j, i)] } else { 0.0 });
    let x_reduced = times_q1_transposed(&r11t, qr, n_obs);
    Ok((x_reduced, qr.col_perm[..q].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn successive_and_leading_examples() {
        let d = numerical_rank(&[10.0, 5.0, 1.0], 1e-8, RankCriterion::Successive).unwrap();
        assert_eq!(d.q, 3);
        assert!(d.is_full());
        let d = numerical_rank(&[10.0, 5.0, 1e-9], 1e-8, RankCriterion::Successive).unwrap();
        assert_eq!(d.q, 2);
        let d = numerical_rank(&[1.0, 1e-5, 1e-10], 1e-8, RankCriterion::Leading).unwrap();
        assert_eq!(d.q, 2);
        // the same diagonal under the successive rule keeps everything
        let d = numerical_rank(&[1.0, 1e-5, 1e-10], 1e-8, RankCriterion::Successive).unwrap();
        assert_eq!(d.q, 3);
    }

    #[test]
    fn unsorted_diagonal_is_rejected() {
        let err = numerical_rank(&[1.0, 2.0], 1e-8, RankCriterion::Leading).unwrap_err();
        assert!(matches!(err, Error::NotSorted { index: 1 }));
        // rounding-level increases are tolerated
        assert!(numerical_rank(&[1.0, 1.0 + 1e-14], 1e-8, RankCriterion::Leading).is_ok());
    }

    #[test]
    fn zero_leading_entry_is_degenerate() {
        let err = numerical_rank(&[0.0, 0.0], 1e-8, RankCriterion::Leading).unwrap_err();
        assert!(matches!(err, Error::DegenerateData));
    }

    #[test]
    fn full_rank_cannot_be_reduced() {
        let a = Matrix::from_fn(6, 2, |i, j| ((i + 1) as f64).powi(j as i32 + 1) - 2.0);
        let qr = qr_pivoted(&a, true, false).unwrap();
        let rank = numerical_rank(&qr.r_diag_abs, 1e-8, RankCriterion::Leading).unwrap();
        assert_eq!(rank.q, 2);
        assert!(matches!(urv_reduce(&qr, &rank, 6), Err(Error::Shape(_))));
        assert!(matches!(truncate_reduce(&qr, &rank, 6), Err(Error::Shape(_))));
    }
}
