use crate::error::{Error, Result};
use crate::linalg::{thin_svd, Matrix};

/// `σ_max / σ_min` of `x` (either orientation). Infinite when `σ_min` is exactly zero.
pub fn condition_number(x: &Matrix) -> Result<f64> {
    let tall = if x.nrows() >= x.ncols() {
        x.clone()
    } else {
        x.transpose()
    };
    let svd = thin_svd(&tall)?;
    let smax = svd.sigma[0];
    let smin = *svd.sigma.last().expect("non-empty spectrum");
    if smin == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(smax / smin)
}

/// Geometric scale vector `c_j = 10^(t·j/(p-1) - t/2)`, `j = 0..p`.
pub fn geometric_scales(p: usize, spread: f64) -> Vec<f64> {
    if p == 1 {
        return vec![1.0];
    }
    (0..p)
        .map(|j| 10f64.powf(spread * j as f64 / (p - 1) as f64 - spread / 2.0))
        .collect()
}

pub fn scale_rows(y: &Matrix, c: &[f64]) -> Matrix {
    Matrix::from_fn(y.nrows(), y.ncols(), |i, j| c[i] * y[(i, j)])
}

/// Rescales the variables of `y` (`p x n`) as `diag(c) · y` so that
/// `κ(x) ∈ [10^(k-0.5), 10^(k+0.5)]`.
///
/// `c` is a geometric progression centered at one; its total spread is found
/// by bisection on the measured `log10 κ`, so the intrinsic conditioning of
/// `y` is accounted for.
pub fn scale_to_condition(y: &Matrix, k: f64) -> Result<(Matrix, Vec<f64>)> {
    let p = y.nrows();
    let log_kappa = |spread: f64| -> Result<(f64, Matrix, Vec<f64>)> {
        let c = geometric_scales(p, spread);
        let x = scale_rows(y, &c);
        let kappa = condition_number(&x)?;
        Ok((kappa.log10(), x, c))
    };

    let (base, x0, c0) = log_kappa(0.0)?;
    if !base.is_finite() || base > k + 0.5 {
        return Err(Error::UnreachableCondition {
            intrinsic: 10f64.powf(base),
            target: k,
        });
    }
    if base >= k - 0.25 || (p == 1 && base >= k - 0.5) {
        return Ok((x0, c0));
    }
    if p == 1 {
        return Err(Error::UnreachableCondition {
            intrinsic: 10f64.powf(base),
            target: k,
        });
    }

    let mut lo = 0.0;
    let mut hi = k.max(1.0);
    let mut grown = 0;
    loop {
        let (f, x, c) = log_kappa(hi)?;
        if (f - k).abs() <= 0.25 {
            return Ok((x, c));
        }
        if f > k {
            break;
        }
        lo = hi;
        hi *= 2.0;
        grown += 1;
        if grown > 12 {
            return Err(Error::UnreachableCondition {
                intrinsic: 10f64.powf(base),
                target: k,
            });
        }
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let (f, x, c) = log_kappa(mid)?;
        if (f - k).abs() <= 0.25 {
            return Ok((x, c));
        }
        if f < k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::UnreachableCondition {
        intrinsic: 10f64.powf(base),
        target: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_perfectly_conditioned() {
        assert_eq!(condition_number(&Matrix::identity(4)).unwrap(), 1.0);
    }

    #[test]
    fn diagonal_ratio() {
        let x = Matrix::from_rows(&[[1e3, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
        let k = condition_number(&x).unwrap();
        assert!((k / 1e3 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exactly_singular_is_infinite() {
        let x = Matrix::from_rows(&[[1.0, 2.0, 3.0], [0.0, 0.0, 0.0]]).unwrap();
        assert_eq!(condition_number(&x).unwrap(), f64::INFINITY);
    }

    #[test]
    fn scales_are_centered_geometric() {
        let c = geometric_scales(3, 4.0);
        assert!((c[0] - 1e-2).abs() < 1e-17);
        assert!((c[1] - 1.0).abs() < 1e-15);
        assert!((c[2] - 1e2).abs() < 1e-12);
        assert_eq!(geometric_scales(1, 5.0), vec![1.0]);
    }
}
