use ics_core::experiments::{
    benchmark, condition_number, gen_gaussian, gen_ica, gen_mixture, qr_factor_flops,
    scale_to_condition, sweep, IcaSpec, MixtureSpec, Source, SweepStatus,
};
use ics_core::ics::Algorithm;
use ics_core::linalg::Matrix;
use ics_core::scatter::WeightSpec;
use ics_core::Error;
use proptest::prelude::*;

#[test]
fn generators_are_reproducible() {
    let spec = MixtureSpec::reference(42);
    let a = gen_mixture(&spec).unwrap();
    let b = gen_mixture(&spec).unwrap();
    assert_eq!(a.data, b.data);
    assert_eq!(a.labels, b.labels);
    let c = gen_mixture(&MixtureSpec::reference(43)).unwrap();
    assert_ne!(a.data, c.data);
    assert_eq!(gen_gaussian(3, 10, 5), gen_gaussian(3, 10, 5));
}

#[test]
fn mixture_has_the_requested_contamination() {
    let m = gen_mixture(&MixtureSpec::reference(1)).unwrap();
    assert_eq!(m.data.shape(), (4, 10_000));
    let frac = m.labels.iter().filter(|&&l| l).count() as f64 / 10_000.0;
    assert!((frac - 0.1).abs() < 0.015);
    // Only the first coordinate is shifted.
    let mean_shift = |i: usize| {
        let (mut a, mut na, mut b, mut nb) = (0.0, 0.0, 0.0, 0.0);
        for (j, &l) in m.labels.iter().enumerate() {
            if l {
                a += m.data[(i, j)];
                na += 1.0;
            } else {
                b += m.data[(i, j)];
                nb += 1.0;
            }
        }
        a / na - b / nb
    };
    assert!((mean_shift(0) - 5.0).abs() < 0.2);
    assert!(mean_shift(1).abs() < 0.2);
}

#[test]
fn ica_sources_have_unit_variance() {
    let s = gen_ica(&IcaSpec::reference(100_000, 3)).unwrap().sources;
    for i in 0..4 {
        let row = s.row(i);
        let m = row.iter().sum::<f64>() / row.len() as f64;
        let v = row.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (row.len() - 1) as f64;
        assert!((v - 1.0).abs() < 0.05, "source {i}: variance {v}");
    }
    assert_eq!("laplace".parse::<Source>().unwrap(), Source::Laplace);
    assert!("cauchy".parse::<Source>().is_err());
}

#[test]
fn scaling_reaches_extreme_conditions() {
    let base = gen_mixture(&MixtureSpec::reference(3)).unwrap().data;
    for k in [0.0, 5.0, 12.0, 24.0, 30.0] {
        let (x, c) = scale_to_condition(&base, k).unwrap();
        let got = condition_number(&x).unwrap().log10();
        assert!((got - k).abs() <= 0.5, "k = {k}: log10 κ = {got}");
        assert_eq!(c.len(), 4);
    }
}

#[test]
fn unreachable_condition_is_reported() {
    let x = Matrix::from_rows(&[[1.0, 0.0, 0.0], [0.0, 1e-6, 0.0]]).unwrap();
    assert!(matches!(
        scale_to_condition(&x, 2.0),
        Err(Error::UnreachableCondition { .. })
    ));
}

#[test]
fn sweep_records_failures_without_aborting() {
    let base = gen_mixture(&MixtureSpec { n: 2000, p: 3, epsilon: 0.1, delta: 6.0, seed: 1 })
        .unwrap()
        .data;
    let grid = [0.0, 4.0, 12.0];
    let r = sweep(&base, &grid, &[WeightSpec::cov4()], &[Algorithm::Eigen, Algorithm::Qr]);
    assert_eq!(r.rows.len(), 6);
    let eig12 = r.cell(12.0, "cov-cov4", Algorithm::Eigen).unwrap();
    assert_eq!(eig12.status, SweepStatus::SingularError);
    assert!(eig12.eigenvalues.is_none());
    assert!(eig12.message.as_deref().unwrap().contains("computationally singular"));
    assert_eq!(r.first_failure("cov-cov4", Algorithm::Eigen), Some(12.0));
    assert_eq!(r.first_failure("cov-cov4", Algorithm::Qr), None);
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"SINGULAR_ERROR\""));
}

#[test]
fn bench_guards_and_flops() {
    assert!(matches!(benchmark(100, 5, 0, 1), Err(Error::Shape(_))));
    assert!(matches!(benchmark(5, 5, 1, 1), Err(Error::Shape(_))));
    let r = benchmark(400, 6, 3, 2).unwrap();
    assert_eq!(r.rows.len(), 2);
    assert!(r.rows.iter().all(|row| row.median_seconds >= row.min_seconds));
    assert_eq!(qr_factor_flops(3, 3), 2.0 * 9.0 * 2.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scale_to_condition_lands_in_band(seed in 0u64..1000, k in 0.0f64..16.0, p in 2usize..6) {
        let base = gen_gaussian(p, 200, seed);
        match scale_to_condition(&base, k) {
            Ok((x, _)) => {
                let got = condition_number(&x).unwrap().log10();
                prop_assert!((got - k).abs() <= 0.5);
            }
            Err(Error::UnreachableCondition { intrinsic, .. }) => {
                prop_assert!(intrinsic.log10() > k + 0.5);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
