use approx::assert_relative_eq;
use ics_core::linalg::{
    numerical_rank, qr_pivoted, row_presort_linf, solve_upper_triangular, symmetric_eigen,
    thin_svd, Matrix, RankCriterion,
};
use ics_core::Error;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_column_slice(m.nrows(), m.ncols(), m.as_slice())
}

fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.sub(b).max_abs()
}

/// Tall matrices with entries on graded scales, `rows >= cols`.
fn tall_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..9, 0usize..12).prop_flat_map(|(p, extra)| {
        let n = p + extra;
        (
            prop::collection::vec(-1.0f64..1.0, n * p),
            prop::collection::vec(-3i32..3, p),
        )
            .prop_map(move |(vals, exps)| {
                Matrix::from_fn(n, p, |i, j| vals[j * n + i] * 10f64.powi(exps[j]))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn qr_reconstructs_permuted_input(a in tall_matrix(), row_pivot in any::<bool>()) {
        let f = qr_pivoted(&a, true, row_pivot).unwrap();
        let qtq = f.q.tr_matmul(&f.q);
        prop_assert!(max_abs_diff(&qtq, &Matrix::identity(a.ncols())) < 1e-13);
        let pa = a.select_rows(&f.row_perm).select_cols(&f.col_perm);
        let err = max_abs_diff(&f.q.matmul(&f.r), &pa);
        prop_assert!(err <= 1e-13 * a.max_abs().max(1.0));
        for i in 0..a.ncols() {
            for j in 0..i {
                prop_assert_eq!(f.r[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn pivoting_dominates_trailing_columns(a in tall_matrix()) {
        let f = qr_pivoted(&a, true, true).unwrap();
        let p = a.ncols();
        for k in 0..p {
            let rkk = f.r[(k, k)].abs();
            for j in k..p {
                let tail: f64 = (k..=j).map(|i| f.r[(i, j)].powi(2)).sum::<f64>().sqrt();
                prop_assert!(rkk >= tail * (1.0 - 1e-12), "k={k} j={j} {rkk} < {tail}");
            }
        }
        for w in f.r_diag_abs.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
    }

    #[test]
    fn trailing_block_bounded_by_next_pivot(a in tall_matrix(), q in 0usize..8) {
        let f = qr_pivoted(&a, true, true).unwrap();
        let p = a.ncols();
        prop_assume!(q < p);
        let mut fro = 0.0;
        for j in q..p {
            for i in q..=j {
                fro += f.r[(i, j)].powi(2);
            }
        }
        let bound = ((p - q) as f64).sqrt() * f.r_diag_abs[q];
        prop_assert!(fro.sqrt() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn svd_matches_reference_eigenvalues(a in tall_matrix()) {
        let s = thin_svd(&a).unwrap();
        let p = a.ncols();
        let ata = to_na(&a).transpose() * to_na(&a);
        let mut ev: Vec<f64> = ata.symmetric_eigen().eigenvalues.iter().map(|v| v.max(0.0).sqrt()).collect();
        ev.sort_by(|x, y| y.total_cmp(x));
        let scale = s.sigma[0].max(f64::MIN_POSITIVE);
        for (x, y) in s.sigma.iter().zip(&ev) {
            // Reference goes through AᵀA, so only absolute agreement at √ε·σ_max is meaningful.
            prop_assert!((x - y).abs() <= 1e-7 * scale, "{x} vs {y}");
        }
        prop_assert!(max_abs_diff(&s.v.tr_matmul(&s.v), &Matrix::identity(p)) < 1e-12);
        prop_assert!(max_abs_diff(&s.u.tr_matmul(&s.u), &Matrix::identity(p)) < 1e-12);
        let usv = s.u.matmul(&Matrix::from_diag(&s.sigma)).matmul(&s.v.transpose());
        prop_assert!(max_abs_diff(&usv, &a) <= 1e-12 * scale.max(1e-300));
        for w in s.sigma.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn symmetric_eigen_matches_nalgebra(a in tall_matrix()) {
        let c = a.tr_matmul(&a);
        let e = symmetric_eigen(&c).unwrap();
        let mut reference: Vec<f64> = to_na(&c).symmetric_eigen().eigenvalues.iter().copied().collect();
        reference.sort_by(|x, y| y.total_cmp(x));
        let scale = e.values[0].abs().max(f64::MIN_POSITIVE);
        for (x, y) in e.values.iter().zip(&reference) {
            prop_assert!((x - y).abs() <= 1e-12 * scale);
        }
        let rebuilt = e.vectors.matmul(&Matrix::from_diag(&e.values)).matmul(&e.vectors.transpose());
        prop_assert!(max_abs_diff(&rebuilt, &c) <= 1e-12 * scale);
    }

    #[test]
    fn presort_orders_by_row_maximum(a in tall_matrix()) {
        let perm = row_presort_linf(&a).unwrap();
        let norms: Vec<f64> = perm.iter().map(|&i| a.row(i).iter().fold(0.0f64, |m, v| m.max(v.abs()))).collect();
        for w in norms.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..a.nrows()).collect::<Vec<_>>());
    }
}

#[test]
fn triangular_solve_against_nalgebra() {
    let r = Matrix::from_rows(&[[4.0, -1.0, 2.0], [0.0, 3.0, 0.5], [0.0, 0.0, -2.0]]).unwrap();
    let b = Matrix::from_rows(&[[1.0, 0.0], [2.0, 1.0], [3.0, -1.0]]).unwrap();
    let x = solve_upper_triangular(&r, &b).unwrap();
    let reference = to_na(&r).solve_upper_triangular(&to_na(&b)).unwrap();
    for i in 0..3 {
        for j in 0..2 {
            assert_relative_eq!(x[(i, j)], reference[(i, j)], max_relative = 1e-15);
        }
    }
}

#[test]
fn rank_scan_on_exactly_dependent_columns() {
    // third column = first + second
    let a = Matrix::from_rows(&[
        [1.0, 0.0, 1.0],
        [0.0, 1.0, 1.0],
        [1.0, 1.0, 2.0],
        [2.0, -1.0, 1.0],
        [0.5, 0.5, 1.0],
    ])
    .unwrap();
    let f = qr_pivoted(&a, true, true).unwrap();
    let rank = numerical_rank(&f.r_diag_abs, 1e-10, RankCriterion::Leading).unwrap();
    assert_eq!(rank.q, 2);
    let rank = numerical_rank(&f.r_diag_abs, 1e-10, RankCriterion::Successive).unwrap();
    assert_eq!(rank.q, 2);
}

#[test]
fn zero_matrix_is_degenerate_for_rank() {
    let f = qr_pivoted(&Matrix::zeros(4, 2), true, true).unwrap();
    assert!(matches!(
        numerical_rank(&f.r_diag_abs, 1e-8, RankCriterion::Leading),
        Err(Error::DegenerateData)
    ));
}

#[test]
fn graded_columns_keep_relative_accuracy_in_r_diagonal() {
    // Columns scaled 1, 1e-10, 1e-20 of an orthonormal-ish base: the pivoted
    // diagonal must resolve all three scales.
    let a = Matrix::from_rows(&[
        [1.0, 1e-10, 1e-20],
        [1.0, -1e-10, 1e-20],
        [1.0, 1e-10, -1e-20],
        [1.0, -1e-10, -1e-20],
    ])
    .unwrap();
    let f = qr_pivoted(&a, true, true).unwrap();
    assert_relative_eq!(f.r_diag_abs[0], 2.0, max_relative = 1e-14);
    assert_relative_eq!(f.r_diag_abs[1], 2e-10, max_relative = 1e-12);
    assert_relative_eq!(f.r_diag_abs[2], 2e-20, max_relative = 1e-12);
}
