use rand::Rng;
use rand_distr::{Distribution, StandardNormal, StudentT};
use serde::{Deserialize, Serialize};

use super::rng::stream;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Two-group Gaussian mixture `(1-ε) N(μ₀, I) + ε N(μ₁, I)` with
/// `μ₀ = (1, …, 1)` and `μ₁ = (δ, 1, …, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub n: usize,
    pub p: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
}

impl MixtureSpec {
    /// n = 10000, p = 4, ε = 0.10, δ = 6.
    pub fn reference(seed: u64) -> Self {
        MixtureSpec {
            n: 10_000,
            p: 4,
            epsilon: 0.10,
            delta: 6.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidSpec("p must be positive".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "mixing proportion {} outside (0, 1)",
                self.epsilon
            )));
        }
        if (self.n as f64) * self.epsilon.min(1.0 - self.epsilon) < 10.0 {
            return Err(Error::InvalidSpec(format!(
                "n * min(eps, 1 - eps) must be at least 10 (n = {}, eps = {})",
                self.n, self.epsilon
            )));
        }
        if !self.delta.is_finite() {
            return Err(Error::InvalidSpec("delta must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Mixture {
    /// `p x n`.
    pub data: Matrix,
    /// `true` for observations drawn from the shifted group.
    pub labels: Vec<bool>,
}

pub fn gen_mixture(spec: &MixtureSpec) -> Result<Mixture> {
    spec.validate()?;
    let mut label_rng = stream(spec.seed, "mixture/labels");
    let mut noise_rng = stream(spec.seed, "mixture/noise");
    let labels: Vec<bool> = (0..spec.n)
        .map(|_| label_rng.random::<f64>() < spec.epsilon)
        .collect();
    let mut data = Matrix::zeros(spec.p, spec.n);
    for (j, &shifted) in labels.iter().enumerate() {
        let col = data.col_mut(j);
        for (i, v) in col.iter_mut().enumerate() {
            let z: f64 = StandardNormal.sample(&mut noise_rng);
            let mean = if i == 0 && shifted { spec.delta } else { 1.0 };
            *v = mean + z;
        }
    }
    Ok(Mixture { data, labels })
}

/// Latent source distributions, each standardized to mean 0 and variance 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Source {
    Gaussian,
    StudentT5,
    Uniform,
    Laplace,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Gaussian => "gaussian",
            Source::StudentT5 => "t5",
            Source::Uniform => "uniform",
            Source::Laplace => "laplace",
        }
    }

    fn sample<R: Rng>(self, rng: &mut R, t5: &StudentT<f64>) -> f64 {
        match self {
            Source::Gaussian => StandardNormal.sample(rng),
            Source::StudentT5 => t5.sample(rng) / (5.0f64 / 3.0).sqrt(),
            Source::Uniform => 3f64.sqrt() * (2.0 * rng.random::<f64>() - 1.0),
            Source::Laplace => {
                let u: f64 = rng.random::<f64>() - 0.5;
                let b = std::f64::consts::FRAC_1_SQRT_2;
                -b * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
        }
    }
}

impl std::str::FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" | "normal" => Ok(Source::Gaussian),
            "t5" | "student_t5" | "student-t5" => Ok(Source::StudentT5),
            "uniform" => Ok(Source::Uniform),
            "laplace" => Ok(Source::Laplace),
            other => Err(Error::InvalidSpec(format!("unknown source distribution '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IcaSpec {
    pub n: usize,
    pub sources: Vec<Source>,
    pub seed: u64,
}

impl IcaSpec {
    /// Gaussian, t₅, uniform and Laplace sources.
    pub fn reference(n: usize, seed: u64) -> Self {
        IcaSpec {
            n,
            sources: vec![
                Source::Gaussian,
                Source::StudentT5,
                Source::Uniform,
                Source::Laplace,
            ],
            seed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IcaSample {
    /// `p x n` observed data `mixing · sources`.
    pub x: Matrix,
    /// Diagonal `p x p` mixing matrix.
    pub mixing: Matrix,
    /// `p x n` latent sources.
    pub sources: Matrix,
}

pub fn gen_ica(spec: &IcaSpec) -> Result<IcaSample> {
    let p = spec.sources.len();
    if p == 0 {
        return Err(Error::InvalidSpec("at least one source is required".into()));
    }
    if spec.n < 2 {
        return Err(Error::InvalidSpec("at least two observations are required".into()));
    }
    let t5 = StudentT::new(5.0).expect("valid degrees of freedom");
    let mut sources = Matrix::zeros(p, spec.n);
    for (i, src) in spec.sources.iter().enumerate() {
        let mut rng = stream(spec.seed, &format!("ica/source/{i}"));
        for j in 0..spec.n {
            sources[(i, j)] = src.sample(&mut rng, &t5);
        }
    }
    let mut mix_rng = stream(spec.seed, "ica/mixing");
    let diag: Vec<f64> = (0..p).map(|_| 0.5 + 1.5 * mix_rng.random::<f64>()).collect();
    let mixing = Matrix::from_diag(&diag);
    let x = mixing.matmul(&sources);
    Ok(IcaSample { x, mixing, sources })
}

/// `p x n` standard Gaussian sample.
pub fn gen_gaussian(p: usize, n: usize, seed: u64) -> Matrix {
    let mut rng = stream(seed, "gaussian");
    Matrix::from_fn(p, n, |_, _| StandardNormal.sample(&mut rng))
}
