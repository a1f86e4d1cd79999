use approx::assert_relative_eq;
use ics_core::experiments::{gen_gaussian, scale_to_condition};
use ics_core::linalg::{qr_pivoted, Matrix};
use ics_core::scatter::{
    center, cov_w, covariance, leverage_scores, mahalanobis_sq_explicit, WeightSpec,
};
use ics_core::Error;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn data() -> impl Strategy<Value = Matrix> {
    (1usize..6, 0usize..30).prop_flat_map(|(p, extra)| {
        let n = p + 2 + extra;
        prop::collection::vec(-5.0f64..5.0, p * n)
            .prop_map(move |v| Matrix::from_col_major(p, n, v).unwrap())
    })
}

fn d2_from_qr(x: &Matrix) -> Vec<f64> {
    let cd = center(x).unwrap();
    let f = qr_pivoted(&cd.xc_t(), true, true).unwrap();
    let n1 = (cd.n_obs - 1) as f64;
    leverage_scores(&f).iter().map(|q| n1 * q).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn leverage_scores_sum_to_p_and_lie_in_unit_interval(x in data()) {
        let cd = center(&x).unwrap();
        let f = qr_pivoted(&cd.xc_t(), true, true).unwrap();
        prop_assume!(f.r_diag_abs.last().copied().unwrap() > 1e-8 * f.r_diag_abs[0]);
        let q = leverage_scores(&f);
        prop_assert!((q.iter().sum::<f64>() - cd.p_vars as f64).abs() < 1e-10);
        prop_assert!(q.iter().all(|&v| (-1e-15..=1.0 + 1e-12).contains(&v)));
    }

    #[test]
    fn mahalanobis_is_affine_invariant(x in data(), seed in 0u64..1000) {
        let cd = center(&x).unwrap();
        let f = qr_pivoted(&cd.xc_t(), true, true).unwrap();
        prop_assume!(f.r_diag_abs.last().copied().unwrap() > 1e-6 * f.r_diag_abs[0]);
        let p = x.nrows();
        let a = Matrix::from_fn(p, p, |i, j| if i == j { 2.0 + (seed % 7) as f64 } else { ((i * 3 + j + seed as usize) % 5) as f64 * 0.1 });
        let y = a.matmul(&x);
        let b = Matrix::from_fn(p, y.ncols(), |i, j| y[(i, j)] + (i as f64 - 0.5) * 100.0);
        let d_x = d2_from_qr(&x);
        let d_y = d2_from_qr(&b);
        for (u, v) in d_x.iter().zip(&d_y) {
            prop_assert!((u - v).abs() <= 1e-8 * u.abs().max(1.0));
        }
    }

    #[test]
    fn weighted_scatter_is_affine_equivariant(x in data()) {
        let cd = center(&x).unwrap();
        let f = qr_pivoted(&cd.xc_t(), true, true).unwrap();
        prop_assume!(f.r_diag_abs.last().copied().unwrap() > 1e-6 * f.r_diag_abs[0]);
        let p = x.nrows();
        let a = Matrix::from_fn(p, p, |i, j| if i == j { 1.5 } else { 0.25 * (i as f64 - j as f64) });
        let w = WeightSpec::cov4();
        let cx = cov_w(&cd, &d2_from_qr(&x), &w).unwrap();
        let y = a.matmul(&x);
        let cy = cov_w(&center(&y).unwrap(), &d2_from_qr(&y), &w).unwrap();
        let expected = a.matmul(&cx).matmul(&a.transpose());
        prop_assert!(cy.sub(&expected).max_abs() <= 1e-9 * expected.max_abs().max(1.0));
    }
}

#[test]
fn covariance_matches_nalgebra() {
    let x = gen_gaussian(4, 300, 9);
    let cd = center(&x).unwrap();
    let c = covariance(&cd);
    let xc = DMatrix::from_column_slice(4, 300, cd.xc.as_slice());
    let reference = &xc * xc.transpose() / 299.0;
    for i in 0..4 {
        for j in 0..4 {
            assert_relative_eq!(c[(i, j)], reference[(i, j)], max_relative = 1e-13, epsilon = 1e-15);
        }
    }
}

#[test]
fn leverage_matches_explicit_quadratic_form_on_scaled_data() {
    let (x, _) = scale_to_condition(&gen_gaussian(5, 400, 4), 3.0).unwrap();
    let cd = center(&x).unwrap();
    let explicit = mahalanobis_sq_explicit(&cd).unwrap();
    for (a, b) in d2_from_qr(&x).iter().zip(&explicit) {
        assert_relative_eq!(*a, *b, max_relative = 1e-9);
    }
}

#[test]
fn cov4_of_gaussian_sample_is_close_to_p_plus_two() {
    // E[d² x xᵀ] = (p + 2) I for standard normal data.
    let p = 4;
    let x = gen_gaussian(p, 200_000, 17);
    let cd = center(&x).unwrap();
    let c4 = cov_w(&cd, &d2_from_qr(&x), &WeightSpec::cov4()).unwrap();
    for i in 0..p {
        for j in 0..p {
            let target = if i == j { (p + 2) as f64 } else { 0.0 };
            assert!((c4[(i, j)] - target).abs() < 0.15, "({i},{j}) = {}", c4[(i, j)]);
        }
    }
}

#[test]
fn power_weight_evaluation() {
    let w = WeightSpec::power(-0.5);
    let v = w.weights(&[4.0, 0.25]).unwrap();
    assert_relative_eq!(v[0], 0.5, max_relative = 1e-15);
    assert_relative_eq!(v[1], 2.0, max_relative = 1e-15);
}

#[test]
fn non_finite_input_is_located() {
    let mut v = [1.0; 6];
    v[3] = f64::NAN;
    let x = Matrix::from_fn(2, 3, |i, j| v[j * 2 + i]);
    assert!(matches!(center(&x), Err(Error::NonFiniteInput { row: 1, col: 1 })));
}
