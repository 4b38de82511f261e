//! Weighted Levenberg–Marquardt fit of the dip line shape.

use nalgebra::{SMatrix, SVector};
use serde::Serialize;

use crate::interference::{dip_model, width_from_fwhm, DipCurve, DipParams};
use crate::{Error, Result};

const N_PARAMS: usize = 5;

type Mat5 = SMatrix<f64, N_PARAMS, N_PARAMS>;
type Vec5 = SVector<f64, N_PARAMS>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub max_iterations: usize,
    pub initial_lambda: f64,
    /// Convergence threshold on `max_j |∂χ²/∂p_j| / (2 sqrt((JᵀJ)_jj))`.
    pub gradient_tolerance: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            initial_lambda: 1e-3,
            gradient_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub params: DipParams<f64>,
    /// One-sigma errors from `(JᵀJ)⁻¹`; infinite for parameters the data
    /// does not constrain.
    pub uncertainties: DipParams<f64>,
    #[serde(skip)]
    pub covariance: [[f64; N_PARAMS]; N_PARAMS],
    /// Weighted sum of squared residuals (χ²).
    pub residual_sse: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Scaled gradient norm at the returned parameters.
    pub gradient_norm: f64,
    /// Rank-deficient normal matrix or a visibility consistent with zero.
    pub degenerate: bool,
}

impl FitResult {
    pub fn fwhm(&self) -> f64 {
        self.params.fwhm()
    }

    pub fn fwhm_uncertainty(&self) -> f64 {
        self.uncertainties.w * self.params.fwhm() / self.params.w
    }
}

/// `∂ dip_model / ∂(a, b, v, x0, w)` at `delay`.
pub fn dip_jacobian(delay: f64, p: &DipParams<f64>) -> [f64; N_PARAMS] {
    let d = delay - p.x0;
    let w2 = p.w * p.w;
    let g = (-d * d / (2.0 * w2)).exp();
    let base = p.a + p.b * d;
    let shape = 1.0 - p.v * g;
    [
        shape,
        d * shape,
        -base * g,
        -p.b * shape - base * p.v * g * d / w2,
        -base * p.v * g * d * d / (w2 * p.w),
    ]
}

/// Starting point derived from the data: baseline from the maximum,
/// centre at the minimum, depth from their ratio and width from the span
/// of points below half depth.
pub fn seed_params(curve: &DipCurve) -> DipParams<f64> {
    let pts = curve.points();
    let (imin, min) = pts
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.counts.total_cmp(&b.1.counts))
        .map(|(i, p)| (i, p.counts))
        .unwrap_or((0, 0.0));
    let max = pts.iter().map(|p| p.counts).fold(0.0, f64::max);
    let a = if max > 0.0 { max } else { 1.0 };
    let v = if max > 0.0 { 1.0 - min / max } else { 0.0 };
    let x0 = pts.get(imin).map_or(0.0, |p| p.delay);

    let span = pts.last().map_or(1.0, |l| l.delay) - pts.first().map_or(0.0, |f| f.delay);
    let half = 0.5 * (max + min);
    let (mut lo, mut hi) = (imin, imin);
    while lo > 0 && pts[lo - 1].counts < half {
        lo -= 1;
    }
    while hi + 1 < pts.len() && pts[hi + 1].counts < half {
        hi += 1;
    }
    let spacing = if pts.len() > 1 { span / (pts.len() - 1) as f64 } else { 1.0 };
    let fwhm = if v > 0.0 && hi > lo {
        pts[hi].delay - pts[lo].delay + spacing
    } else {
        span / 5.0
    };
    DipParams {
        a,
        b: 0.0,
        v,
        x0,
        w: width_from_fwhm(fwhm.max(spacing)).max(f64::MIN_POSITIVE),
    }
}

struct Problem<'a> {
    curve: &'a DipCurve,
}

impl Problem<'_> {
    fn chi2(&self, p: &DipParams<f64>) -> f64 {
        self.curve
            .points()
            .iter()
            .map(|pt| ((pt.counts - dip_model(pt.delay, p)) / pt.error).powi(2))
            .sum()
    }

    /// Normal matrix `JᵀJ` and gradient `Jᵀr` of the weighted residuals
    /// `r_i = (y_i - f(x_i)) / σ_i`.
    fn normal_equations(&self, p: &DipParams<f64>) -> (Mat5, Vec5) {
        let mut jtj = Mat5::zeros();
        let mut jtr = Vec5::zeros();
        for pt in self.curve.points() {
            let r = (pt.counts - dip_model(pt.delay, p)) / pt.error;
            let j = Vec5::from(dip_jacobian(pt.delay, p).map(|d| -d / pt.error));
            jtj += j * j.transpose();
            jtr += j * r;
        }
        (jtj, jtr)
    }
}

fn scaled_gradient(jtj: &Mat5, jtr: &Vec5) -> f64 {
    (0..N_PARAMS)
        .map(|k| {
            let s = jtj[(k, k)].sqrt();
            if s > 0.0 { (jtr[k] / s).abs() } else { jtr[k].abs() }
        })
        .fold(0.0, f64::max)
}

fn admissible(p: &DipParams<f64>) -> bool {
    p.to_array().iter().all(|x| x.is_finite()) && p.w > 0.0 && p.a > 0.0
}

/// Fits [`dip_model`] to `curve`, weighting each point by its Poisson error.
///
/// Without `initial` the fit seeds itself via [`seed_params`]. A fit that
/// exhausts its iteration budget is returned with `converged == false` and
/// the best parameters found.
pub fn fit_dip(curve: &DipCurve, initial: Option<DipParams<f64>>, options: &FitOptions) -> Result<FitResult> {
    if curve.len() < 6 {
        return Err(Error::InvalidCurve(format!("need at least 6 points, got {}", curve.len())));
    }
    let problem = Problem { curve };
    let mut p = initial.unwrap_or_else(|| seed_params(curve));
    if !admissible(&p) {
        return Err(Error::InvalidCurve(format!("initial parameters are not admissible: {p:?}")));
    }
    let mut chi2 = problem.chi2(&p);
    let mut lambda = options.initial_lambda;
    let mut converged = false;
    let mut iterations = 0;
    let (mut jtj, mut jtr) = problem.normal_equations(&p);

    while iterations < options.max_iterations {
        if scaled_gradient(&jtj, &jtr) <= options.gradient_tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let max_diag = (0..N_PARAMS).map(|k| jtj[(k, k)]).fold(0.0, f64::max);
        let floor = if max_diag > 0.0 { max_diag * 1e-12 } else { 1.0 };
        let mut accepted = false;
        while lambda <= 1e16 {
            let mut damped = jtj;
            for k in 0..N_PARAMS {
                damped[(k, k)] += lambda * jtj[(k, k)].max(floor);
            }
            let step = damped
                .cholesky()
                .map(|c| c.solve(&(-jtr)))
                .or_else(|| damped.lu().solve(&(-jtr)));
            let Some(step) = step else {
                lambda *= 10.0;
                continue;
            };
            let mut trial = p.to_array();
            for (t, s) in trial.iter_mut().zip(step.iter()) {
                *t += s;
            }
            let trial = DipParams::from_array(trial);
            let trial_chi2 = if admissible(&trial) { problem.chi2(&trial) } else { f64::INFINITY };
            if trial_chi2 < chi2 {
                p = trial;
                chi2 = trial_chi2;
                lambda = (lambda / 10.0).max(1e-15);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        (jtj, jtr) = problem.normal_equations(&p);
        if !accepted {
            // no downhill step at any damping: χ² is at a floating-point minimum
            converged = scaled_gradient(&jtj, &jtr) <= options.gradient_tolerance;
            break;
        }
    }
    if !converged && iterations < options.max_iterations {
        converged = scaled_gradient(&jtj, &jtr) <= options.gradient_tolerance;
    }

    let (covariance, unidentified) = covariance(&jtj);
    let mut sigmas = [0.0; N_PARAMS];
    for k in 0..N_PARAMS {
        sigmas[k] = if unidentified[k] {
            f64::INFINITY
        } else {
            covariance[(k, k)].max(0.0).sqrt()
        };
    }
    let uncertainties = DipParams::from_array(sigmas);
    let rank_deficient = unidentified.iter().any(|&u| u);
    let degenerate = rank_deficient || p.v.abs() <= 2.0 * uncertainties.v;
    let mut cov = [[0.0; N_PARAMS]; N_PARAMS];
    for (i, row) in cov.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            *c = covariance[(i, j)];
        }
    }
    Ok(FitResult {
        params: p,
        uncertainties,
        covariance: cov,
        residual_sse: chi2,
        converged,
        iterations,
        gradient_norm: scaled_gradient(&jtj, &jtr),
        degenerate,
    })
}

/// Pseudo-inverse of the normal matrix after unit-diagonal scaling, plus
/// a mask of parameters lying along (near-)null directions.
fn covariance(jtj: &Mat5) -> (Mat5, [bool; N_PARAMS]) {
    let scale = Vec5::from_fn(|k, _| {
        let d = jtj[(k, k)];
        if d > 0.0 { 1.0 / d.sqrt() } else { 1.0 }
    });
    let scaled = Mat5::from_fn(|i, j| jtj[(i, j)] * scale[i] * scale[j]);
    let svd = scaled.svd(true, true);
    let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
    let smax = svd.singular_values.max();
    let cutoff = smax.max(f64::MIN_POSITIVE) * 1e-12;
    let mut pinv = Mat5::zeros();
    let mut unidentified = [false; N_PARAMS];
    for k in 0..N_PARAMS {
        let s = svd.singular_values[k];
        if s > cutoff {
            pinv += vt.row(k).transpose() * u.column(k).transpose() / s;
        } else {
            for j in 0..N_PARAMS {
                if vt[(k, j)].abs() > 1e-6 {
                    unidentified[j] = true;
                }
            }
        }
    }
    (Mat5::from_fn(|i, j| pinv[(i, j)] * scale[i] * scale[j]), unidentified)
}
