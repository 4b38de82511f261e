//! Reflectivity tolerance sweeps over labelled couplers.

use rand::Rng;
use rand_distr::{Distribution as _, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{stream_rng, RNG_ALGORITHM};
use crate::circuit::{Convention, LogicalEncoding, Netlist};
use crate::metrics::{logical_fidelity, similarity, truth_table, Permutation, TruthTable};
use crate::{Error, Result};

/// How a half-width is applied to a nominal reflectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpretation {
    /// `η ± w`
    #[default]
    Absolute,
    /// `η (1 ± w)`
    Relative,
}

/// Monte Carlo sampling law for one coupler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Distribution {
    /// Uniform on `[η - w, η + w]`.
    #[default]
    Uniform,
    /// Normal with standard deviation `w`, clamped to `[0, 1]`. Grid sweeps
    /// treat `w` as the half-range.
    Gaussian,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variation {
    pub label: String,
    pub half_width: f64,
    pub distribution: Distribution,
}

impl Variation {
    pub fn uniform(label: impl Into<String>, half_width: f64) -> Self {
        Self {
            label: label.into(),
            half_width,
            distribution: Distribution::Uniform,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// `points` evenly spaced values per axis, endpoints included.
    Grid { points: usize },
    MonteCarlo { samples: usize },
}

impl SweepMode {
    fn describe(&self) -> String {
        match self {
            Self::Grid { points } => format!("grid:{points}"),
            Self::MonteCarlo { samples } => format!("mc:{samples}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    /// Similarity of each sampled table to a reference table.
    Similarity(TruthTable<f64>),
    /// Logical basis fidelity against a target permutation.
    Fidelity(Permutation),
}

impl Metric {
    fn name(&self) -> &'static str {
        match self {
            Self::Similarity(_) => "similarity",
            Self::Fidelity(_) => "fidelity",
        }
    }

    fn evaluate(&self, table: &TruthTable<f64>) -> f64 {
        match self {
            Self::Similarity(reference) => similarity(reference, table),
            Self::Fidelity(target) => logical_fidelity(table, *target),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub vary: Vec<Variation>,
    pub mode: SweepMode,
    pub metric: Metric,
    pub interpretation: Interpretation,
    pub convention: Convention,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaAssignment {
    pub label: String,
    #[serde(serialize_with = "crate::format::sig12::serialize")]
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSample {
    #[serde(serialize_with = "crate::format::sig12::serialize")]
    pub value: f64,
    pub assignment: Vec<EtaAssignment>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    #[serde(serialize_with = "crate::format::sig12::serialize")]
    pub p01: f64,
    #[serde(serialize_with = "crate::format::sig12::serialize")]
    pub p50: f64,
    #[serde(serialize_with = "crate::format::sig12::serialize")]
    pub p99: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub metric_name: String,
    pub mode: String,
    pub interpretation: Interpretation,
    pub convention: String,
    /// Samples with a defined metric.
    pub samples: usize,
    /// Samples dropped because post-selection failed.
    pub excluded: usize,
    #[serde(serialize_with = "crate::format::sig12::serialize")]
    pub nominal: f64,
    pub worst: SweepSample,
    pub best: SweepSample,
    pub quantiles: Quantiles,
    /// Grid sweeps only: whether some corner of the grid attains the worst value.
    pub worst_at_corner: Option<bool>,
    pub seed: u64,
    pub rng: String,
}

impl SweepReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

struct Axis {
    label: String,
    nominal: f64,
    half_width: f64,
    distribution: Distribution,
}

impl Axis {
    fn lo(&self) -> f64 {
        self.nominal - self.half_width
    }

    fn hi(&self) -> f64 {
        self.nominal + self.half_width
    }
}

fn axes(netlist: &Netlist<f64>, spec: &SweepSpec) -> Result<Vec<Axis>> {
    spec.vary
        .iter()
        .map(|v| {
            let nominal = netlist.eta(&v.label)?;
            if !(v.half_width >= 0.0) {
                return Err(Error::InvalidSweep(format!("negative half-width for `{}`", v.label)));
            }
            let half_width = match spec.interpretation {
                Interpretation::Absolute => v.half_width,
                Interpretation::Relative => v.half_width * nominal,
            };
            let axis = Axis {
                label: v.label.clone(),
                nominal,
                half_width,
                distribution: v.distribution,
            };
            let bounded = v.distribution == Distribution::Gaussian
                && matches!(spec.mode, SweepMode::MonteCarlo { .. });
            if !bounded && (axis.lo() < 0.0 || axis.hi() > 1.0) {
                return Err(Error::InvalidSweep(format!(
                    "`{}` range [{}, {}] leaves [0, 1]",
                    v.label,
                    axis.lo(),
                    axis.hi()
                )));
            }
            Ok(axis)
        })
        .collect()
}

fn grid_value(axis: &Axis, k: usize, points: usize) -> f64 {
    if points == 1 {
        axis.nominal
    } else {
        axis.lo() + (axis.hi() - axis.lo()) * k as f64 / (points - 1) as f64
    }
}

/// Grid coordinates of sample `index`, last axis fastest.
fn grid_indices(mut index: usize, dims: usize, points: usize) -> Vec<usize> {
    let mut ks = vec![0; dims];
    for k in ks.iter_mut().rev() {
        *k = index % points;
        index /= points;
    }
    ks
}

fn mc_values(axes: &[Axis], seed: u64, sample: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, sample);
    axes.iter()
        .map(|a| match a.distribution {
            Distribution::Uniform => {
                let u: f64 = rng.random();
                a.lo() + (a.hi() - a.lo()) * u
            }
            Distribution::Gaussian => {
                let z: f64 = StandardNormal.sample(&mut rng);
                (a.nominal + a.half_width * z).clamp(0.0, 1.0)
            }
        })
        .collect()
}

fn evaluate(
    netlist: &Netlist<f64>,
    encoding: &LogicalEncoding,
    spec: &SweepSpec,
    axes: &[Axis],
    values: &[f64],
) -> Result<Option<f64>> {
    let mut net = netlist.clone();
    for (axis, &eta) in axes.iter().zip(values) {
        net.set_eta(&axis.label, eta)?;
    }
    match truth_table(&net, encoding, spec.convention) {
        Ok(table) => Ok(Some(spec.metric.evaluate(&table))),
        Err(Error::PostSelectionFailed { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Evaluates `spec.metric` over reflectivity assignments of the labelled
/// couplers and summarises the spread.
///
/// Sample `i` depends only on `(spec, i)`, so the report is identical
/// regardless of how samples are scheduled across threads.
pub fn sweep_eta(netlist: &Netlist<f64>, encoding: &LogicalEncoding, spec: &SweepSpec) -> Result<SweepReport> {
    let axes = axes(netlist, spec)?;
    let nominal_values: Vec<f64> = axes.iter().map(|a| a.nominal).collect();
    let nominal = evaluate(netlist, encoding, spec, &axes, &nominal_values)?.ok_or_else(|| {
        Error::InvalidSweep("metric undefined at the nominal reflectivities".into())
    })?;

    let (count, points) = match spec.mode {
        SweepMode::Grid { points } => {
            if points == 0 {
                return Err(Error::InvalidSweep("grid needs at least one point per axis".into()));
            }
            let count = u32::try_from(axes.len())
                .ok()
                .and_then(|d| points.checked_pow(d))
                .ok_or_else(|| Error::InvalidSweep("grid too large".into()))?;
            (count, points)
        }
        SweepMode::MonteCarlo { samples } => (samples, 0),
    };
    if count == 0 {
        return Err(Error::InvalidSweep("no samples requested".into()));
    }

    let assignment_of = |i: usize| -> Vec<f64> {
        match spec.mode {
            SweepMode::Grid { .. } => grid_indices(i, axes.len(), points)
                .into_iter()
                .zip(&axes)
                .map(|(k, a)| grid_value(a, k, points))
                .collect(),
            SweepMode::MonteCarlo { .. } => mc_values(&axes, spec.seed, i as u64),
        }
    };

    let results: Vec<Option<f64>> = (0..count)
        .into_par_iter()
        .map(|i| evaluate(netlist, encoding, spec, &axes, &assignment_of(i)))
        .collect::<Result<_>>()?;

    let defined: Vec<(usize, f64)> = results
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .collect();
    if defined.is_empty() {
        return Err(Error::InvalidSweep("metric undefined for every sample".into()));
    }
    let (worst_i, worst_v) = defined
        .iter()
        .copied()
        .fold(defined[0], |acc, x| if x.1 < acc.1 { x } else { acc });
    let (best_i, best_v) = defined
        .iter()
        .copied()
        .fold(defined[0], |acc, x| if x.1 > acc.1 { x } else { acc });

    let sample = |i: usize, value: f64| SweepSample {
        value,
        assignment: axes
            .iter()
            .zip(assignment_of(i))
            .map(|(a, eta)| EtaAssignment {
                label: a.label.clone(),
                eta,
            })
            .collect(),
    };

    let mut sorted: Vec<f64> = defined.iter().map(|d| d.1).collect();
    sorted.sort_by(f64::total_cmp);

    let worst_at_corner = matches!(spec.mode, SweepMode::Grid { .. }).then(|| {
        defined
            .iter()
            .filter(|(i, _)| {
                grid_indices(*i, axes.len(), points)
                    .iter()
                    .all(|&k| k == 0 || k + 1 == points)
            })
            .any(|&(_, v)| v <= worst_v + 1e-12)
    });

    Ok(SweepReport {
        metric_name: spec.metric.name().to_string(),
        mode: spec.mode.describe(),
        interpretation: spec.interpretation,
        convention: spec.convention.to_string(),
        samples: defined.len(),
        excluded: count - defined.len(),
        nominal,
        worst: sample(worst_i, worst_v),
        best: sample(best_i, best_v),
        quantiles: Quantiles {
            p01: quantile(&sorted, 0.01),
            p50: quantile(&sorted, 0.5),
            p99: quantile(&sorted, 0.99),
        },
        worst_at_corner,
        seed: spec.seed,
        rng: RNG_ALGORITHM.to_string(),
    })
}
