use super::{apply_sign_convention, Algorithm, Diagnostics, IcsOptions, IcsResult, Reduction};
use crate::error::{Error, Result};
use crate::linalg::{
    numerical_rank, qr_pivoted, solve_upper_triangular, svd_values_right, truncate_reduce,
    urv_reduce, Matrix, PivotedQr, RankDecision,
};
use crate::scatter::{center, leverage_scores, CenteredData};

/// Pivoted QR of `X_cᵀ / sqrt(n-1)`. The scaling is applied to R after the
/// factorization, which leaves Q and the pivot order untouched.
fn factor_centered(cd: &CenteredData, row_pivot: bool) -> Result<PivotedQr> {
    let mut qr = qr_pivoted(&cd.xc_t(), true, row_pivot)?;
    let s = 1.0 / ((cd.n_obs - 1) as f64).sqrt();
    qr.r = qr.r.scale(s);
    for d in &mut qr.r_diag_abs {
        *d *= s;
    }
    Ok(qr)
}

fn check_shape(cd: &CenteredData) -> Result<()> {
    if cd.n_obs <= cd.p_vars {
        return Err(Error::shape(format!(
            "ICS needs n > p, got p = {}, n = {}",
            cd.p_vars, cd.n_obs
        )));
    }
    Ok(())
}

/// Rank used when the diagonal scan is switched off: everything up to the
/// first exactly zero pivot.
fn exact_rank(qr: &PivotedQr, opts: &IcsOptions) -> RankDecision {
    let p = qr.r_diag_abs.len();
    RankDecision {
        q: qr.r_diag_abs.iter().position(|&d| d == 0.0).unwrap_or(p),
        epsilon: opts.rank_epsilon,
        criterion: opts.rank_criterion,
        r_diag_abs: qr.r_diag_abs.clone(),
    }
}

/// ICS through the pivoted QR factorization of the centered data.
///
/// Steps: QR of `X_cᵀ/sqrt(n-1)`; leverage scores `q_i`; SVD of
/// `Diag(sqrt(w((n-1) q_i))) Q` giving `D = ((n-1)/n) σ²` and `Ũ`;
/// `B = (R⁻¹ Ũ)ᵀ` by back substitution; `Zᵀ = sqrt(n-1) Q Ũ`.
///
/// When the rank scan detects `q < p`, the data is reduced according to
/// `opts.reduction`, or [`Error::RankDeficient`] is returned for [`Reduction::None`].
pub fn ics_qr(cd: &CenteredData, opts: &IcsOptions) -> Result<IcsResult> {
    opts.validate()?;
    check_shape(cd)?;
    let qr = factor_centered(cd, opts.row_pivot)?;
    if qr.r_diag_abs[0] == 0.0 {
        return Err(Error::DegenerateData);
    }
    let rank = if opts.rank_scan {
        numerical_rank(&qr.r_diag_abs, opts.rank_epsilon, opts.rank_criterion)?
    } else {
        exact_rank(&qr, opts)
    };
    if rank.is_full() {
        let result = ics_qr_full_rank(cd, &qr, opts)?;
        Ok(apply_sign_convention(result, opts.sign_convention))
    } else {
        reduced(cd, &qr, rank, opts).map(|(result, _)| result)
    }
}

/// Centers `x` (`p x n`), determines the numerical rank from the pivoted QR and,
/// when it is below `p`, runs ICS on the data reduced to the rank-`q` subspace.
/// With `opts.rank_scan` off only exactly zero pivots reduce the rank.
///
/// Returns the result, the rank decision and the `p x q` basis mapping reduced
/// coordinates back to the original variables. The result's unmixing matrix is
/// already expressed in the original variables (`q x p`).
pub fn reduce_then_ics(x: &Matrix, opts: &IcsOptions) -> Result<(IcsResult, RankDecision, Matrix)> {
    opts.validate()?;
    let cd = center(x)?;
    check_shape(&cd)?;
    let qr = factor_centered(&cd, opts.row_pivot)?;
    if qr.r_diag_abs[0] == 0.0 {
        return Err(Error::DegenerateData);
    }
    let rank = if opts.rank_scan {
        numerical_rank(&qr.r_diag_abs, opts.rank_epsilon, opts.rank_criterion)?
    } else {
        exact_rank(&qr, opts)
    };
    if rank.is_full() {
        let result = ics_qr_full_rank(&cd, &qr, opts)?;
        let p = cd.p_vars;
        return Ok((
            apply_sign_convention(result, opts.sign_convention),
            rank,
            Matrix::identity(p),
        ));
    }
    let (result, basis) = reduced(&cd, &qr, rank.clone(), opts)?;
    Ok((result, rank, basis))
}

fn reduced(
    cd: &CenteredData,
    qr: &PivotedQr,
    rank: RankDecision,
    opts: &IcsOptions,
) -> Result<(IcsResult, Matrix)> {
    let (p, n, q) = (cd.p_vars, cd.n_obs, rank.q);
    let (x_reduced, basis) = match opts.reduction {
        Reduction::None => return Err(Error::RankDeficient(rank)),
        Reduction::Urv => urv_reduce(qr, &rank, n)?,
        Reduction::Truncate => {
            let (x, kept) = truncate_reduce(qr, &rank, n)?;
            let mut basis = Matrix::zeros(p, q);
            for (j, &v) in kept.iter().enumerate() {
                basis[(v, j)] = 1.0;
            }
            (x, basis)
        }
    };
    // removes the rounding-level mean left by the reduction
    let cd_reduced = center(&x_reduced)?;
    let inner_opts = IcsOptions {
        reduction: Reduction::None,
        sign_convention: super::SignConvention::None,
        ..*opts
    };
    let inner = ics_qr(&cd_reduced, &inner_opts)?;
    let unmixing = inner.unmixing.matmul(&basis.transpose());
    let result = IcsResult {
        unmixing,
        rank_used: q,
        col_perm: qr.col_perm.clone(),
        ..inner
    };
    Ok((apply_sign_convention(result, opts.sign_convention), basis))
}

fn ics_qr_full_rank(cd: &CenteredData, qr: &PivotedQr, opts: &IcsOptions) -> Result<IcsResult> {
    let (p, n) = (cd.p_vars, cd.n_obs);
    let nm1 = (n - 1) as f64;

    let d2: Vec<f64> = leverage_scores(qr).iter().map(|l| nm1 * l).collect();
    let weights = opts.weight.weights(&d2)?;

    // row i of Q belongs to observation row_perm[i]
    let mut weighted_q = qr.q.clone();
    for j in 0..p {
        for (v, &orig) in weighted_q.col_mut(j).iter_mut().zip(&qr.row_perm) {
            *v *= weights[orig].sqrt();
        }
    }
    let (sigma, u2) = svd_values_right(&weighted_q)?;
    let eigenvalues: Vec<f64> = sigma.iter().map(|s| nm1 / n as f64 * s * s).collect();

    let x = solve_upper_triangular(&qr.r, &u2).map_err(|e| match e {
        Error::SingularTriangular { index } => Error::RankDeficient(RankDecision {
            q: index,
            epsilon: opts.rank_epsilon,
            criterion: opts.rank_criterion,
            r_diag_abs: qr.r_diag_abs.clone(),
        }),
        other => other,
    })?;
    // B = xᵀ acts on pivoted variables; column j of B belongs to variable col_perm[j]
    let mut unmixing = Matrix::zeros(p, p);
    for (j, &var) in qr.col_perm.iter().enumerate() {
        for k in 0..p {
            unmixing[(k, var)] = x[(j, k)];
        }
    }

    let qu = qr.q.matmul(&u2);
    let scale = nm1.sqrt();
    let mut scores = Matrix::zeros(p, n);
    for k in 0..p {
        let col = qu.col(k);
        for (i, &orig) in qr.row_perm.iter().enumerate() {
            scores[(k, orig)] = scale * col[i];
        }
    }

    let condition = qr.r_diag_abs[0] / qr.r_diag_abs[p - 1];
    let diagnostics = Diagnostics::new(&eigenvalues, condition, opts.gap_tolerance);
    Ok(IcsResult {
        eigenvalues,
        unmixing,
        scores,
        algorithm: Algorithm::Qr,
        rank_used: p,
        col_perm: qr.col_perm.clone(),
        diagnostics,
    })
}
