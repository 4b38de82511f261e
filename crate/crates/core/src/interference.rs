//! Two-photon interference at a single coupler: ideal and measured
//! visibilities, accidental-coincidence correction and the dip line shape.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::format::{fixed_sig, FILE_DIGITS};
use crate::{Error, Real, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Ideal visibility `2η(1-η) / (1 - 2η + 2η²)` of a coupler with reflectivity `eta`.
pub fn v_ideal<T: Real>(eta: T) -> Result<T> {
    if !(eta >= T::zero() && eta <= T::one()) {
        return Err(Error::ReflectivityOutOfRange(eta.as_f64()));
    }
    let two = T::lit(2.0);
    Ok(two * eta * (T::one() - eta) / (T::one() - two * eta + two * eta * eta))
}

/// `(C_class - C_quant) / C_class`. Negative values (a peak instead of a
/// dip) are returned unchanged.
pub fn visibility<T: Real>(c_class: T, c_quant: T) -> Result<T> {
    if !(c_class > T::zero()) {
        return Err(Error::InvalidRates(format!("classical rate must be positive, got {c_class}")));
    }
    Ok((c_class - c_quant) / c_class)
}

/// Subtracts the accidental rate from both coincidence rates.
pub fn correct_accidentals<T: Real>(c_class: T, c_quant: T, c_acc: T) -> Result<(T, T)> {
    if !(c_acc >= T::zero() && c_quant >= T::zero() && c_class >= T::zero()) {
        return Err(Error::InvalidRates("rates must be non-negative".into()));
    }
    if c_acc > c_quant {
        return Err(Error::InvalidRates(format!(
            "accidental rate {c_acc} exceeds the dip rate {c_quant}"
        )));
    }
    if c_acc >= c_class {
        return Err(Error::InvalidRates(format!(
            "accidental rate {c_acc} is not below the classical rate {c_class}"
        )));
    }
    Ok((c_class - c_acc, c_quant - c_acc))
}

/// Visibility after accidental subtraction.
pub fn corrected_visibility<T: Real>(c_class: T, c_quant: T, c_acc: T) -> Result<T> {
    let (c, q) = correct_accidentals(c_class, c_quant, c_acc)?;
    visibility(c, q)
}

/// Visibility bookkeeping for one coupler measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real + Deserialize<'de>"))]
pub struct VisibilityRecord<T> {
    #[serde(serialize_with = "crate::format::sig12::real")]
    pub c_class: T,
    #[serde(serialize_with = "crate::format::sig12::real")]
    pub c_quant: T,
    #[serde(serialize_with = "crate::format::sig12::real")]
    pub c_acc: T,
    #[serde(serialize_with = "crate::format::sig12::real")]
    pub v_raw: T,
    #[serde(serialize_with = "crate::format::sig12::real")]
    pub v_corrected: T,
    #[serde(serialize_with = "crate::format::sig12::real_opt")]
    pub v_ideal: Option<T>,
    #[serde(serialize_with = "crate::format::sig12::real_opt")]
    pub v_rel: Option<T>,
    /// First-order uncertainty of `v_corrected` treating each rate as a
    /// Poisson count.
    #[serde(serialize_with = "crate::format::sig12::real")]
    pub v_corrected_err: T,
    #[serde(serialize_with = "crate::format::sig12::real_opt")]
    pub v_rel_err: Option<T>,
    pub uncertainty_method: String,
    /// Set when the raw visibility is negative.
    pub anti_dip: bool,
}

impl<T: Real> VisibilityRecord<T> {
    pub fn from_rates(c_class: T, c_quant: T, c_acc: T, eta: Option<T>) -> Result<Self> {
        let v_raw = visibility(c_class, c_quant)?;
        let v_corrected = corrected_visibility(c_class, c_quant, c_acc)?;
        let v_ideal = eta.map(v_ideal).transpose()?;
        let v_rel = v_ideal.filter(|&vi| vi > T::zero()).map(|vi| v_corrected / vi);

        // v = 1 - (q - acc) / (c - acc)
        let d = c_class - c_acc;
        let dq = -T::one() / d;
        let dc = (c_quant - c_acc) / (d * d);
        let dacc = (c_class - c_quant) / (d * d);
        let var = dq * dq * c_quant + dc * dc * c_class + dacc * dacc * c_acc;
        let v_corrected_err = var.sqrt();
        let v_rel_err = v_ideal.filter(|&vi| vi > T::zero()).map(|vi| v_corrected_err / vi);

        Ok(Self {
            c_class,
            c_quant,
            c_acc,
            v_raw,
            v_corrected,
            v_ideal,
            v_rel,
            v_corrected_err,
            v_rel_err,
            uncertainty_method: "poisson-first-order".into(),
            anti_dip: v_raw < T::zero(),
        })
    }
}

/// Parameters of the dip line shape; see [`dip_model`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipParams<T> {
    /// Baseline coincidence counts.
    pub a: T,
    /// Baseline slope, counts per μm.
    pub b: T,
    /// Dip visibility.
    pub v: T,
    /// Dip centre, μm.
    pub x0: T,
    /// Gaussian width (standard deviation), μm.
    pub w: T,
}

impl<T: Real> DipParams<T> {
    pub fn to_array(&self) -> [T; 5] {
        [self.a, self.b, self.v, self.x0, self.w]
    }

    pub fn from_array([a, b, v, x0, w]: [T; 5]) -> Self {
        Self { a, b, v, x0, w }
    }

    pub fn fwhm(&self) -> T {
        fwhm_from_width(self.w)
    }
}

/// `(a + b (x - x0)) (1 - v exp(-(x - x0)² / 2w²))`.
///
/// The slope multiplies the whole curve: a drift in collection efficiency
/// scales the dip and the baseline together.
pub fn dip_model<T: Real>(delay: T, p: &DipParams<T>) -> T {
    let d = delay - p.x0;
    let g = (-(d * d) / (T::lit(2.0) * p.w * p.w)).exp();
    (p.a + p.b * d) * (T::one() - p.v * g)
}

/// FWHM `2 w sqrt(2 ln 2)` of a Gaussian with standard deviation `w`.
pub fn fwhm_from_width<T: Real>(w: T) -> T {
    T::lit(2.0) * w * (T::lit(2.0) * T::LN_2()).sqrt()
}

pub fn width_from_fwhm<T: Real>(fwhm: T) -> T {
    fwhm / (T::lit(2.0) * (T::lit(2.0) * T::LN_2()).sqrt())
}

/// Dip FWHM in path delay (μm) for a Gaussian filter of FWHM `filter_fwhm_nm`
/// centred at `center_nm`: the coherence length `2 ln2 λ² / (π Δλ)`.
pub fn dip_fwhm_from_filter<T: Real>(center_nm: T, filter_fwhm_nm: T) -> Result<T> {
    if !(center_nm > T::zero() && filter_fwhm_nm > T::zero()) {
        return Err(Error::InvalidRates("wavelength and filter width must be positive".into()));
    }
    let nm = T::lit(2.0) * T::LN_2() * center_nm * center_nm / (T::PI() * filter_fwhm_nm);
    Ok(nm / T::lit(1000.0))
}

/// Converts a path delay in μm to seconds.
pub fn delay_um_to_seconds(delay_um: f64) -> f64 {
    delay_um * 1e-6 / SPEED_OF_LIGHT
}

/// Counting error `sqrt(max(counts, 1))`.
pub fn poisson_error(counts: f64) -> f64 {
    counts.max(1.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipPoint {
    pub delay: f64,
    pub counts: f64,
    pub error: f64,
}

/// Coincidence counts sampled against relative delay (μm), strictly
/// increasing in delay.
#[derive(Debug, Clone, PartialEq)]
pub struct DipCurve {
    points: Vec<DipPoint>,
}

impl DipCurve {
    pub fn new(samples: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let points: Vec<DipPoint> = samples
            .into_iter()
            .map(|(delay, counts)| DipPoint {
                delay,
                counts,
                error: poisson_error(counts),
            })
            .collect();
        for p in &points {
            if !p.delay.is_finite() || !p.counts.is_finite() || p.counts < 0.0 {
                return Err(Error::InvalidCurve(format!(
                    "invalid point (delay {}, counts {})",
                    p.delay, p.counts
                )));
            }
        }
        if let Some(w) = points.windows(2).find(|w| w[1].delay <= w[0].delay) {
            return Err(Error::InvalidCurve(format!(
                "delays must be strictly increasing ({} then {})",
                w[0].delay, w[1].delay
            )));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[DipPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Reads `delay_um,counts` CSV.
    pub fn read_csv(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "delay_um" || &headers[1] != "counts" {
            return Err(Error::InvalidCurve(format!(
                "expected header `delay_um,counts`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut samples = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            let field = |k: usize| -> Result<f64> {
                record[k].parse().map_err(|_| {
                    Error::InvalidCurve(format!("line {}: cannot parse `{}`", i + 2, &record[k]))
                })
            };
            samples.push((field(0)?, field(1)?));
        }
        Self::new(samples)
    }

    pub fn write_csv(&self, mut writer: impl Write) -> Result<()> {
        writeln!(writer, "delay_um,counts")?;
        for p in &self.points {
            writeln!(
                writer,
                "{},{}",
                fixed_sig(p.delay, FILE_DIGITS),
                fixed_sig(p.counts, FILE_DIGITS)
            )?;
        }
        Ok(())
    }
}
