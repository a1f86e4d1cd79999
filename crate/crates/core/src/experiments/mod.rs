//! Synthetic data, condition-number control, stability sweeps and timing.

mod bench;
mod condition;
mod generators;
pub mod rng;
mod sweep;

pub use bench::{
    benchmark, eigen_route_flops, qr_factor_flops, qr_route_flops, BenchReport, BenchRow,
};
pub use condition::{condition_number, geometric_scales, scale_rows, scale_to_condition};
pub use generators::{
    gen_gaussian, gen_ica, gen_mixture, IcaSample, IcaSpec, Mixture, MixtureSpec, Source,
};
pub use sweep::{pair_label, sweep, sweep_options, SweepReport, SweepRow, SweepStatus};
