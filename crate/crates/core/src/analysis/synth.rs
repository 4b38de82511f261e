use rand_distr::{Distribution, Poisson};

use super::rng::stream_rng;
use crate::interference::{dip_model, DipCurve, DipParams};
use crate::{Error, Result};

/// `n` equally spaced delays from `start` to `end` inclusive.
pub fn uniform_grid(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n)
            .map(|i| start + (end - start) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Poisson-distributed coincidence counts with mean [`dip_model`] at each delay.
pub fn synth_dip(params: &DipParams<f64>, delays: &[f64], seed: u64) -> Result<DipCurve> {
    if !(params.a > 0.0 && params.w > 0.0) {
        return Err(Error::InvalidCurve("synthetic dip needs a > 0 and w > 0".into()));
    }
    let mut rng = stream_rng(seed, 0);
    let samples = delays
        .iter()
        .map(|&x| {
            let mean = dip_model(x, params).max(0.0);
            let counts = if mean == 0.0 {
                0.0
            } else {
                Poisson::new(mean)
                    .map_err(|e| Error::InvalidCurve(format!("bad Poisson mean {mean}: {e}")))?
                    .sample(&mut rng)
            };
            Ok((x, counts))
        })
        .collect::<Result<Vec<_>>>()?;
    DipCurve::new(samples)
}
