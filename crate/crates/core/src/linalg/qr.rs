//! Householder QR with Businger–Golub column pivoting and optional ℓ∞ row presorting.

use std::cmp::Ordering;

use super::matrix::{dot, norm2, Matrix};
use crate::error::{Error, Result};

/// Economy-size pivoted QR factorization `A[row_perm, col_perm] = Q R`.
#[derive(Debug, Clone)]
pub struct PivotedQr {
    /// `n x p`, orthonormal columns, rows in `row_perm` order.
    pub q: Matrix,
    /// `p x p` upper triangular.
    pub r: Matrix,
    /// Column `j` of `Q R` is column `col_perm[j]` of `A`.
    pub col_perm: Vec<usize>,
    /// Row `i` of `Q R` is row `row_perm[i]` of `A`. Identity without row pivoting.
    pub row_perm: Vec<usize>,
    /// `|R_11|, ..., |R_pp|`.
    pub r_diag_abs: Vec<f64>,
}

impl PivotedQr {
    pub fn nrows(&self) -> usize {
        self.q.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.r.ncols()
    }
}

/// Compact Householder factorization: reflectors below the diagonal, R on and above.
pub(crate) struct Householder {
    pub(crate) a: Matrix,
    pub(crate) tau: Vec<f64>,
    pub(crate) perm: Vec<usize>,
}

impl Householder {
    /// Factors `a` in place. With `pivot`, step `k` brings the remaining column of
    /// largest trailing 2-norm to position `k`, smallest index on ties.
    pub(crate) fn factor(mut a: Matrix, pivot: bool) -> Householder {
        let (n, p) = a.shape();
        let steps = n.min(p);
        let mut perm: Vec<usize> = (0..p).collect();
        let mut tau = vec![0.0; steps];
        // trailing norms are recomputed exactly while each column is updated
        let mut norms: Vec<f64> = if pivot {
            (0..p).map(|j| norm2(a.col(j))).collect()
        } else {
            Vec::new()
        };

        for k in 0..steps {
            if pivot {
                let mut best = k;
                for j in (k + 1)..p {
                    if norms[j] > norms[best] {
                        best = j;
                    }
                }
                if best != k {
                    let (ck, cb) = a.two_cols_mut(k, best);
                    ck.swap_with_slice(cb);
                    perm.swap(k, best);
                    norms.swap(k, best);
                }
            }

            tau[k] = make_reflector(&mut a.col_mut(k)[k..]);
            let t = tau[k];
            for j in (k + 1)..p {
                let (vk, cj) = a.two_cols_mut(k, j);
                let v = &vk[k..];
                let y = &mut cj[k..];
                if t != 0.0 {
                    apply_reflector(v, t, y);
                }
                if pivot {
                    norms[j] = norm2(&y[1..]);
                }
            }
        }
        Householder { a, tau, perm }
    }

    pub(crate) fn r(&self) -> Matrix {
        let p = self.a.ncols();
        let mut r = Matrix::zeros(p, p);
        for j in 0..p {
            for i in 0..=j.min(self.a.nrows() - 1) {
                r[(i, j)] = self.a[(i, j)];
            }
        }
        r
    }

    /// Explicit `n x p` Q by backward accumulation of the reflectors.
    pub(crate) fn q(&self) -> Matrix {
        let (n, p) = self.a.shape();
        let mut q = Matrix::zeros(n, p);
        for i in 0..p {
            q[(i, i)] = 1.0;
        }
        for k in (0..self.tau.len()).rev() {
            let t = self.tau[k];
            if t == 0.0 {
                continue;
            }
            let v = &self.a.col(k)[k..];
            for j in k..p {
                apply_reflector(v, t, &mut q.col_mut(j)[k..]);
            }
        }
        q
    }
}

/// Turns `x` into `(beta, v_2..v_m)` with `H x = beta e_1`, `H = I - tau v vᵀ`, `v_1 = 1`.
fn make_reflector(x: &mut [f64]) -> f64 {
    if x.len() <= 1 {
        return 0.0;
    }
    let alpha = x[0];
    let tail_norm = norm2(&x[1..]);
    if tail_norm == 0.0 {
        return 0.0;
    }
    let beta = -alpha.signum() * alpha.hypot(tail_norm);
    let tau = (beta - alpha) / beta;
    let scale = 1.0 / (alpha - beta);
    for v in &mut x[1..] {
        *v *= scale;
    }
    x[0] = beta;
    tau
}

/// `y <- (I - tau v vᵀ) y` where `v[0]` is implicitly one.
#[inline]
fn apply_reflector(v: &[f64], tau: f64, y: &mut [f64]) {
    let w = tau * (y[0] + dot(&v[1..], &y[1..]));
    y[0] -= w;
    for (yi, &vi) in y[1..].iter_mut().zip(&v[1..]) {
        *yi -= w * vi;
    }
}

/// Permutation sorting rows by non-increasing ℓ∞ norm; ties keep their order.
pub fn row_presort_linf(a: &Matrix) -> Result<Vec<usize>> {
    if !a.is_finite() {
        let (n, p) = a.shape();
        for j in 0..p {
            for i in 0..n {
                if !a[(i, j)].is_finite() {
                    return Err(Error::NonFiniteInput { row: i, col: j });
                }
            }
        }
    }
    let mut linf = vec![0.0f64; a.nrows()];
    for j in 0..a.ncols() {
        for (m, v) in linf.iter_mut().zip(a.col(j)) {
            *m = m.max(v.abs());
        }
    }
    let mut perm: Vec<usize> = (0..a.nrows()).collect();
    perm.sort_by(|&x, &y| linf[y].partial_cmp(&linf[x]).unwrap_or(Ordering::Equal));
    Ok(perm)
}

/// Householder QR of a tall matrix with optional column pivoting and ℓ∞ row presorting.
pub fn qr_pivoted(a: &Matrix, column_pivot: bool, row_pivot: bool) -> Result<PivotedQr> {
    let (n, p) = a.shape();
    if n < p {
        return Err(Error::shape(format!(
            "pivoted QR needs at least as many rows as columns, got {n}x{p}"
        )));
    }
    let row_perm = if row_pivot {
        row_presort_linf(a)?
    } else {
        if !a.is_finite() {
            row_presort_linf(a)?;
        }
        (0..n).collect()
    };
    let work = if row_pivot {
        a.select_rows(&row_perm)
    } else {
        a.clone()
    };
    let hh = Householder::factor(work, column_pivot);
    let r = hh.r();
    let q = hh.q();
    let r_diag_abs = r.diag().iter().map(|v| v.abs()).collect();
    Ok(PivotedQr {
        q,
        r,
        col_perm: hh.perm,
        row_perm,
        r_diag_abs,
    })
}

/// R factor and column permutation only, skipping the explicit Q.
pub(crate) fn qr_r_only(a: Matrix, column_pivot: bool) -> (Matrix, Vec<usize>) {
    let hh = Householder::factor(a, column_pivot);
    (hh.r(), hh.perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_factors_trivially() {
        let qr = qr_pivoted(&Matrix::identity(3), true, false).unwrap();
        assert_eq!(qr.col_perm, vec![0, 1, 2]);
        assert_eq!(qr.row_perm, vec![0, 1, 2]);
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert_eq!(qr.q[(i, j)].abs(), e);
                assert_eq!(qr.r[(i, j)].abs(), e);
            }
        }
        assert_eq!(qr.r_diag_abs, vec![1.0; 3]);
    }

    #[test]
    fn wide_input_is_a_shape_error() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(qr_pivoted(&a, true, true), Err(Error::Shape(_))));
    }

    #[test]
    fn presort_orders_by_linf_norm() {
        let a = Matrix::from_rows(&[[1.0], [-3.0], [2.0]]).unwrap();
        assert_eq!(row_presort_linf(&a).unwrap(), vec![1, 2, 0]);

        let eq = Matrix::from_rows(&[[1.0, -1.0], [-1.0, 1.0], [1.0, 0.5]]).unwrap();
        assert_eq!(row_presort_linf(&eq).unwrap(), vec![0, 1, 2]);

        let b = Matrix::from_rows(&[[1e-9, 0.0], [1e3, 1.0], [0.5, -1.0], [-1.0, 1e3]]).unwrap();
        assert_eq!(row_presort_linf(&b).unwrap(), vec![1, 3, 2, 0]);
    }

    #[test]
    fn zero_column_is_pivoted_last() {
        let a = Matrix::from_rows(&[[0.0, 1.0, 2.0], [0.0, 3.0, 1.0], [0.0, -1.0, 0.5], [0.0, 2.0, 2.0]])
            .unwrap();
        let qr = qr_pivoted(&a, true, false).unwrap();
        assert_eq!(qr.col_perm[2], 0);
        assert_eq!(qr.r_diag_abs[2], 0.0);
        let qtq = qr.q.tr_matmul(&qr.q);
        assert!(qtq.sub(&Matrix::identity(3)).max_abs() < 1e-14);
    }
}
