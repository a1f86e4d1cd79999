use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Solves `r · X = rhs` by back substitution. Only the upper triangle of `r` is read.
pub fn solve_upper_triangular(r: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    let p = r.nrows();
    if r.ncols() != p || rhs.nrows() != p {
        return Err(Error::shape(format!(
            "triangular solve: r is {:?}, rhs is {:?}",
            r.shape(),
            rhs.shape()
        )));
    }
    if let Some(index) = (0..p).find(|&i| r[(i, i)] == 0.0) {
        return Err(Error::SingularTriangular { index });
    }
    let mut x = rhs.clone();
    for j in 0..x.ncols() {
        let col = x.col_mut(j);
        for i in (0..p).rev() {
            let xi = col[i] / r[(i, i)];
            col[i] = xi;
            // column-oriented update keeps the access to r contiguous
            let rc = r.col(i);
            for k in 0..i {
                col[k] -= rc[k] * xi;
            }
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_back_substitution() {
        let r = Matrix::from_rows(&[[2.0, 1.0], [0.0, 4.0]]).unwrap();
        let b = Matrix::from_rows(&[[5.0], [8.0]]).unwrap();
        let x = solve_upper_triangular(&r, &b).unwrap();
        assert_eq!(x.col(0), &[1.5, 2.0]);
    }

    #[test]
    fn identity_returns_rhs() {
        let b = Matrix::from_fn(4, 3, |i, j| (i as f64) - 2.0 * j as f64 + 0.25);
        let x = solve_upper_triangular(&Matrix::identity(4), &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn reports_first_zero_diagonal() {
        let r = Matrix::from_rows(&[[1.0, 2.0, 3.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]).unwrap();
        let err = solve_upper_triangular(&r, &Matrix::identity(3)).unwrap_err();
        assert!(matches!(err, Error::SingularTriangular { index: 1 }));
    }
}
