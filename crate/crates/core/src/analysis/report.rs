//! JSON form of a dip fit, optionally with accidental-corrected visibility.

use serde::{Deserialize, Serialize};

use super::fit::FitResult;
use crate::interference::{correct_accidentals, v_ideal, VisibilityRecord};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    #[serde(serialize_with = "crate::format::sig12::serialize")]
    pub value: f64,
    /// `None` when the data does not constrain the parameter.
    pub uncertainty: Option<f64>,
}

impl Estimate {
    fn new(value: f64, sigma: f64) -> Self {
        Self {
            value,
            uncertainty: sigma.is_finite().then_some(crate::format::round_sig(sigma, crate::format::FILE_DIGITS)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitParamsJson {
    pub a: Estimate,
    pub b: Estimate,
    pub v: Estimate,
    pub x0: Estimate,
    pub w: Estimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub model: String,
    pub points: usize,
    pub params: FitParamsJson,
    pub fwhm_um: Estimate,
    #[serde(serialize_with = "crate::format::sig12::serialize")]
    pub residual_sse: f64,
    pub converged: bool,
    pub iterations: usize,
    pub degenerate: bool,
    pub visibility: Option<VisibilityRecord<f64>>,
}

impl FitReport {
    pub fn new(fit: &FitResult, points: usize) -> Self {
        let (p, s) = (&fit.params, &fit.uncertainties);
        Self {
            model: "(a + b(x - x0)) (1 - v exp(-(x - x0)^2 / (2 w^2)))".into(),
            points,
            params: FitParamsJson {
                a: Estimate::new(p.a, s.a),
                b: Estimate::new(p.b, s.b),
                v: Estimate::new(p.v, s.v),
                x0: Estimate::new(p.x0, s.x0),
                w: Estimate::new(p.w, s.w),
            },
            fwhm_um: Estimate::new(fit.fwhm(), fit.fwhm_uncertainty()),
            residual_sse: fit.residual_sse,
            converged: fit.converged,
            iterations: fit.iterations,
            degenerate: fit.degenerate,
            visibility: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Visibility of a fitted dip, with the accidental rate `c_acc` subtracted.
///
/// The classical rate is the fitted baseline `a` and the dip rate its
/// minimum `a (1 - v)`. Uncertainties come from the fit covariance of
/// `(a, v)` to first order; `c_acc` is taken as exact.
pub fn fit_visibility(fit: &FitResult, c_acc: f64, eta: Option<f64>) -> Result<VisibilityRecord<f64>> {
    let (a, v) = (fit.params.a, fit.params.v);
    let c_class = a;
    let c_quant = a * (1.0 - v);
    correct_accidentals(c_class, c_quant, c_acc)?;
    let mut record = VisibilityRecord::from_rates(c_class, c_quant, c_acc, eta)?;

    // v_corr = a v / (a - acc)
    let d = a - c_acc;
    let dv_da = -v * c_acc / (d * d);
    let dv_dv = a / d;
    let cov = &fit.covariance;
    let var = dv_da * dv_da * cov[0][0] + 2.0 * dv_da * dv_dv * cov[0][2] + dv_dv * dv_dv * cov[2][2];
    record.v_corrected_err = var.max(0.0).sqrt();
    let vi = eta.map(v_ideal).transpose()?;
    record.v_rel_err = vi.filter(|&x| x > 0.0).map(|x| record.v_corrected_err / x);
    record.uncertainty_method = "fit-covariance-first-order".into();
    if !record.v_corrected_err.is_finite() {
        return Err(Error::InvalidCurve("visibility uncertainty is undefined for this fit".into()));
    }
    Ok(record)
}
