//! Thin SVD: pivoted QR preconditioning followed by one-sided Jacobi on the
//! triangular factor. Column scaling of the input does not degrade the
//! relative accuracy of the small singular values.

use super::matrix::{dot, norm2, Matrix};
use super::qr::{qr_pivoted, qr_r_only, row_presort_linf};
use crate::error::{Error, Result};

/// Cap on Jacobi sweeps before reporting non-convergence.
pub const MAX_SWEEPS: usize = 30;

#[derive(Debug, Clone)]
pub struct ThinSvd {
    /// `n x p`, orthonormal columns.
    pub u: Matrix,
    /// Non-increasing, non-negative.
    pub sigma: Vec<f64>,
    /// `p x p` orthogonal.
    pub v: Matrix,
}

/// `a = u · Diag(sigma) · vᵀ` for a tall `n x p` matrix.
pub fn thin_svd(a: &Matrix) -> Result<ThinSvd> {
    let (n, p) = a.shape();
    if n < p {
        return Err(Error::shape(format!("thin SVD needs n >= p, got {n}x{p}")));
    }
    let qr = qr_pivoted(a, true, true)?;
    let jac = jacobi_columns(qr.r.clone())?;
    let order = descending_order(&jac.sigma);

    let mut u_small = jac.w.select_cols(&order);
    let sigma: Vec<f64> = order.iter().map(|&k| jac.sigma[k]).collect();
    for (j, &s) in sigma.iter().enumerate() {
        if s > 0.0 {
            for v in u_small.col_mut(j) {
                *v /= s;
            }
        }
    }
    complete_orthonormal(&mut u_small, &sigma);

    let u_perm = qr.q.matmul(&u_small);
    let mut u = Matrix::zeros(n, p);
    for j in 0..p {
        let src = u_perm.col(j);
        let dst = u.col_mut(j);
        for (i, &orig) in qr.row_perm.iter().enumerate() {
            dst[orig] = src[i];
        }
    }

    let v_sorted = jac.v.select_cols(&order);
    let mut v = Matrix::zeros(p, p);
    for (i, &orig) in qr.col_perm.iter().enumerate() {
        for j in 0..p {
            v[(orig, j)] = v_sorted[(i, j)];
        }
    }
    Ok(ThinSvd { u, sigma, v })
}

/// Singular values and right singular vectors of a tall matrix, without forming U.
pub(crate) fn svd_values_right(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let (n, p) = a.shape();
    if n < p {
        return Err(Error::shape(format!("SVD needs n >= p, got {n}x{p}")));
    }
    let rows = row_presort_linf(a)?;
    let (r, perm) = qr_r_only(a.select_rows(&rows), true);
    let jac = jacobi_columns(r)?;
    let order = descending_order(&jac.sigma);
    let sigma = order.iter().map(|&k| jac.sigma[k]).collect();
    let v_sorted = jac.v.select_cols(&order);
    let mut v = Matrix::zeros(p, p);
    for (i, &orig) in perm.iter().enumerate() {
        for j in 0..p {
            v[(orig, j)] = v_sorted[(i, j)];
        }
    }
    Ok((sigma, v))
}

struct Jacobi {
    /// Mutually orthogonal columns `W V`; column norms are the singular values.
    w: Matrix,
    v: Matrix,
    sigma: Vec<f64>,
}

/// One-sided (Hestenes) Jacobi: rotates column pairs of `w` until all are
/// numerically orthogonal, accumulating the rotations in `v`.
fn jacobi_columns(mut w: Matrix) -> Result<Jacobi> {
    let p = w.ncols();
    let mut v = Matrix::identity(p);
    let tol = f64::EPSILON * (p as f64).sqrt();
    let mut converged = p < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for i in 0..p - 1 {
            for j in (i + 1)..p {
                let alpha = dot(w.col(i), w.col(i));
                let beta = dot(w.col(j), w.col(j));
                let gamma = dot(w.col(i), w.col(j));
                if gamma == 0.0 || gamma.abs() <= tol * alpha.sqrt() * beta.sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                rotate(&mut w, i, j, c, s);
                rotate(&mut v, i, j, c, s);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::Convergence { sweeps: MAX_SWEEPS });
    }
    let sigma = (0..p).map(|j| norm2(w.col(j))).collect();
    Ok(Jacobi { w, v, sigma })
}

#[inline]
fn rotate(m: &mut Matrix, i: usize, j: usize, c: f64, s: f64) {
    let (ci, cj) = m.two_cols_mut(i, j);
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    order
}

/// Replaces the columns belonging to zero singular values by an orthonormal
/// completion of the others (Gram–Schmidt against unit vectors, applied twice).
fn complete_orthonormal(u: &mut Matrix, sigma: &[f64]) {
    let p = u.ncols();
    let m = u.nrows();
    let mut candidate = 0;
    for j in 0..p {
        if sigma[j] > 0.0 {
            continue;
        }
        loop {
            let mut x = vec![0.0; m];
            x[candidate % m] = 1.0;
            candidate += 1;
            for _ in 0..2 {
                for k in 0..p {
                    if k == j || (sigma[k] == 0.0 && k > j) {
                        continue;
                    }
                    let c = dot(u.col(k), &x);
                    for (xi, uk) in x.iter_mut().zip(u.col(k)) {
                        *xi -= c * uk;
                    }
                }
            }
            let nx = norm2(&x);
            if nx > 0.5 {
                for (d, xi) in u.col_mut(j).iter_mut().zip(&x) {
                    *d = xi / nx;
                }
                break;
            }
            if candidate > 2 * m {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_returns_sorted_diagonal() {
        let a = Matrix::from_rows(&[[1.0, 0.0], [0.0, 3.0]]).unwrap();
        let svd = thin_svd(&a).unwrap();
        assert_eq!(svd.sigma, vec![3.0, 1.0]);
        for i in 0..2 {
            for j in 0..2 {
                let e = if i + j == 1 { 1.0 } else { 0.0 };
                assert_eq!(svd.u[(i, j)].abs(), e);
                assert_eq!(svd.v[(i, j)].abs(), e);
            }
        }
    }

    #[test]
    fn zero_column_gives_zero_singular_value_and_orthonormal_u() {
        let a = Matrix::from_rows(&[[1.0, 0.0, 2.0], [2.0, 0.0, 1.0], [0.5, 0.0, -1.0], [1.0, 0.0, 0.0]])
            .unwrap();
        let svd = thin_svd(&a).unwrap();
        assert!(svd.sigma[2] <= f64::EPSILON * svd.sigma[0]);
        let utu = svd.u.tr_matmul(&svd.u);
        assert!(utu.sub(&Matrix::identity(3)).max_abs() < 1e-14);
    }

    #[test]
    fn right_only_route_matches_full_svd() {
        let a = Matrix::from_fn(9, 3, |i, j| ((i * 7 + j * 3) % 5) as f64 - 1.5 + 0.1 * j as f64);
        let full = thin_svd(&a).unwrap();
        let (sigma, v) = svd_values_right(&a).unwrap();
        for k in 0..3 {
            assert!((sigma[k] - full.sigma[k]).abs() < 1e-13 * full.sigma[0]);
            let d = dot(v.col(k), full.v.col(k)).abs();
            assert!((d - 1.0).abs() < 1e-12);
        }
    }
}
