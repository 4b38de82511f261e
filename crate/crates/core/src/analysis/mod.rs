//! Dip fitting, synthetic data and reflectivity tolerance sweeps.

mod fit;
mod report;
mod rng;
mod sweep;
mod synth;

pub use fit::{dip_jacobian, fit_dip, seed_params, FitOptions, FitResult};
pub use report::{fit_visibility, Estimate, FitParamsJson, FitReport};
pub use rng::{stream_rng, RNG_ALGORITHM};
pub use sweep::{
    sweep_eta, Distribution, Interpretation, Metric, SweepMode, SweepReport, SweepSample, SweepSpec,
    Variation,
};
pub use synth::{synth_dip, uniform_grid};
