//! Invariant coordinate selection for the cov–cov_w scatter pair.
//!
//! Two routes compute the same decomposition `B cov Bᵀ = I`, `B cov_w Bᵀ = D`:
//! [`ics_eigen`] goes through the spectral decomposition of the explicit
//! covariance, [`ics_qr`] works on a pivoted QR factorization of the centered
//! data and never forms `cov` or its inverse square root.

mod eigen;
mod qr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, RankCriterion};
use crate::scatter::WeightSpec;

pub use eigen::ics_eigen;
pub use qr::{ics_qr, reduce_then_ics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Algorithm {
    Eigen,
    Qr,
}

/// How rank-deficient data is placed in a lower-dimensional subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reduction {
    #[default]
    Urv,
    Truncate,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignConvention {
    /// Each row of B has its largest-magnitude entry positive.
    #[default]
    MaxAbsPositive,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IcsOptions {
    pub weight: WeightSpec,
    /// Presort observations by decreasing ℓ∞ norm before the QR.
    pub row_pivot: bool,
    pub rank_epsilon: f64,
    pub rank_criterion: RankCriterion,
    /// Run the diagonal rank scan in [`ics_qr`]. When off, only an exactly
    /// singular triangular factor is treated as rank deficient.
    pub rank_scan: bool,
    pub reduction: Reduction,
    pub sign_convention: SignConvention,
    /// Adjacent eigenvalues closer than this (relative) are flagged in the diagnostics.
    pub gap_tolerance: f64,
}

impl Default for IcsOptions {
    fn default() -> Self {
        IcsOptions {
            weight: WeightSpec::cov4(),
            row_pivot: true,
            rank_epsilon: 1e-8,
            rank_criterion: RankCriterion::Leading,
            rank_scan: true,
            reduction: Reduction::Urv,
            sign_convention: SignConvention::MaxAbsPositive,
            gap_tolerance: 1e-6,
        }
    }
}

impl IcsOptions {
    pub fn with_weight(mut self, weight: WeightSpec) -> Self {
        self.weight = weight;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rank_epsilon > 0.0 && self.rank_epsilon < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "rank tolerance must lie in (0, 1), got {}",
                self.rank_epsilon
            )));
        }
        if !(self.gap_tolerance >= 0.0) {
            return Err(Error::InvalidSpec("gap tolerance must be non-negative".into()));
        }
        self.weight.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Estimate of κ(X_c): `|R_11| / |R_pp|` for QR, `sqrt(λ_max / λ_min)` of cov for EIGEN.
    pub condition_estimate: f64,
    /// Smallest relative gap between adjacent eigenvalues.
    pub min_relative_gap: f64,
    /// Adjacent index pairs whose relative gap is below the tolerance.
    pub near_equal: Vec<(usize, usize)>,
}

impl Diagnostics {
    pub(crate) fn new(eigenvalues: &[f64], condition_estimate: f64, tol: f64) -> Self {
        let mut near_equal = Vec::new();
        let mut min_relative_gap = f64::INFINITY;
        for i in 1..eigenvalues.len() {
            let (a, b) = (eigenvalues[i - 1], eigenvalues[i]);
            let scale = a.abs().max(b.abs());
            let gap = if scale > 0.0 { (a - b).abs() / scale } else { 0.0 };
            min_relative_gap = min_relative_gap.min(gap);
            if gap < tol {
                near_equal.push((i - 1, i));
            }
        }
        Diagnostics {
            condition_estimate,
            min_relative_gap,
            near_equal,
        }
    }

    pub fn has_near_equal(&self) -> bool {
        !self.near_equal.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct IcsResult {
    /// `diag(D)`, non-increasing.
    pub eigenvalues: Vec<f64>,
    /// `B`, `rank_used x p`; square unless the data was reduced.
    pub unmixing: Matrix,
    /// `Z = B X_c`, `rank_used x n`.
    pub scores: Matrix,
    pub algorithm: Algorithm,
    pub rank_used: usize,
    /// Column pivoting of the variables; identity for EIGEN.
    pub col_perm: Vec<usize>,
    pub diagnostics: Diagnostics,
}

/// Flips rows of `B` (and `Z`) so that the largest-magnitude entry of each row
/// of `B` is positive. Ties go to the lowest column index.
pub fn fix_signs(mut result: IcsResult) -> IcsResult {
    let (rows, cols) = result.unmixing.shape();
    for i in 0..rows {
        let mut best = 0;
        for j in 1..cols {
            if result.unmixing[(i, j)].abs() > result.unmixing[(i, best)].abs() {
                best = j;
            }
        }
        if result.unmixing[(i, best)] < 0.0 {
            for j in 0..cols {
                result.unmixing[(i, j)] = -result.unmixing[(i, j)];
            }
            for j in 0..result.scores.ncols() {
                result.scores[(i, j)] = -result.scores[(i, j)];
            }
        }
    }
    result
}

pub(crate) fn apply_sign_convention(result: IcsResult, convention: SignConvention) -> IcsResult {
    match convention {
        SignConvention::MaxAbsPositive => fix_signs(result),
        SignConvention::None => result,
    }
}

/// Squared ICS distances from the first `k` invariant coordinates.
pub fn ics_distances(result: &IcsResult, k: usize) -> Result<Vec<f64>> {
    let available = result.scores.nrows();
    if k == 0 || k > available {
        return Err(Error::shape(format!(
            "number of components must lie in 1..={available}, got {k}"
        )));
    }
    let z = &result.scores;
    Ok((0..z.ncols())
        .map(|i| z.col(i)[..k].iter().map(|v| v * v).sum())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result_with_b(rows: &[[f64; 2]]) -> IcsResult {
        let b = Matrix::from_rows(rows).unwrap();
        let z = Matrix::from_fn(rows.len(), 3, |i, j| (i + j) as f64 + 1.0);
        IcsResult {
            eigenvalues: vec![1.0; rows.len()],
            unmixing: b,
            scores: z,
            algorithm: Algorithm::Qr,
            rank_used: rows.len(),
            col_perm: vec![0, 1],
            diagnostics: Diagnostics::new(&[1.0, 1.0], 1.0, 1e-6),
        }
    }

    #[test]
    fn sign_fix_examples() {
        let r = fix_signs(result_with_b(&[[-2.0, 1.0], [0.5, -0.5]]));
        assert_eq!(r.unmixing.row(0), vec![2.0, -1.0]);
        assert_eq!(r.scores.row(0), vec![-1.0, -2.0, -3.0]);
        assert_eq!(r.unmixing.row(1), vec![0.5, -0.5]);
        assert_eq!(r.scores.row(1), vec![2.0, 3.0, 4.0]);
        let again = fix_signs(r.clone());
        assert_eq!(again.unmixing, r.unmixing);
        assert_eq!(again.scores, r.scores);
    }

    #[test]
    fn distances_sum_leading_squares() {
        let r = result_with_b(&[[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(ics_distances(&r, 1).unwrap(), vec![1.0, 4.0, 9.0]);
        assert_eq!(ics_distances(&r, 2).unwrap(), vec![5.0, 13.0, 25.0]);
        assert!(ics_distances(&r, 0).is_err());
        assert!(ics_distances(&r, 3).is_err());
    }

    #[test]
    fn near_equal_eigenvalues_are_flagged() {
        let d = Diagnostics::new(&[3.0, 2.0, 2.0 - 1e-9, 1.0], 1.0, 1e-6);
        assert_eq!(d.near_equal, vec![(1, 2)]);
        assert!(d.min_relative_gap < 1e-8);
        assert!(!Diagnostics::new(&[3.0, 2.0, 1.0], 1.0, 1e-6).has_near_equal());
    }

    #[test]
    fn rank_tolerance_must_be_inside_unit_interval() {
        let mut o = IcsOptions::default();
        assert!(o.validate().is_ok());
        o.rank_epsilon = 1.0;
        assert!(o.validate().is_err());
        o.rank_epsilon = 0.0;
        assert!(o.validate().is_err());
    }
}
