use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::generators::gen_gaussian;
use crate::error::{Error, Result};
use crate::ics::{ics_eigen, ics_qr, Algorithm, IcsOptions};
use crate::scatter::center;

/// Flop estimate for the QR route with `n ≫ p`: `8np² - (32/3)p³`.
pub fn qr_route_flops(n: usize, p: usize) -> f64 {
    let (n, p) = (n as f64, p as f64);
    8.0 * n * p * p - 32.0 / 3.0 * p * p * p
}

/// Flop estimate for the spectral route: `6np² + 26p³`.
pub fn eigen_route_flops(n: usize, p: usize) -> f64 {
    let (n, p) = (n as f64, p as f64);
    6.0 * n * p * p + 26.0 * p * p * p
}

/// Householder QR of the `n x p` data alone: `2p²(n - p/3)`.
pub fn qr_factor_flops(n: usize, p: usize) -> f64 {
    let (n, p) = (n as f64, p as f64);
    2.0 * p * p * (n - p / 3.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub median_seconds: f64,
    pub min_seconds: f64,
    pub flops_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub p: usize,
    pub reps: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn median(&self, algorithm: Algorithm) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.algorithm == algorithm)
            .map(|r| r.median_seconds)
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Times both ICS routes (cov–cov₄) on the same well-conditioned Gaussian data.
pub fn benchmark(n: usize, p: usize, reps: usize, seed: u64) -> Result<BenchReport> {
    if reps == 0 {
        return Err(Error::shape("benchmark needs at least one repetition"));
    }
    if p == 0 || n <= p {
        return Err(Error::shape(format!("benchmark needs n > p >= 1, got n = {n}, p = {p}")));
    }
    let x = gen_gaussian(p, n, seed);
    let cd = center(&x)?;
    let opts = IcsOptions::default();

    let mut rows = Vec::new();
    for algorithm in [Algorithm::Qr, Algorithm::Eigen] {
        let mut times = Vec::with_capacity(reps);
        for _ in 0..reps {
            let start = Instant::now();
            let res = match algorithm {
                Algorithm::Qr => ics_qr(&cd, &opts),
                Algorithm::Eigen => ics_eigen(&cd, &opts),
            }?;
            times.push(start.elapsed().as_secs_f64());
            std::hint::black_box(res);
        }
        let min_seconds = times.iter().copied().fold(f64::INFINITY, f64::min);
        rows.push(BenchRow {
            algorithm,
            median_seconds: median(times),
            min_seconds,
            flops_estimate: match algorithm {
                Algorithm::Qr => qr_route_flops(n, p),
                Algorithm::Eigen => eigen_route_flops(n, p),
            },
        });
    }
    Ok(BenchReport { n, p, reps, rows })
}
