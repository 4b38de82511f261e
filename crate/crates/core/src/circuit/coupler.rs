use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::matrix::CMatrix;
use crate::{Error, Real, Result};

/// A directional coupler's reflectivity, with optional measurement error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplerSpec<T> {
    eta: T,
    uncertainty: Option<T>,
}

impl<T: Real> CouplerSpec<T> {
    pub fn new(eta: T) -> Result<Self> {
        if !(eta >= T::zero() && eta <= T::one()) {
            return Err(Error::ReflectivityOutOfRange(eta.as_f64()));
        }
        Ok(Self {
            eta,
            uncertainty: None,
        })
    }

    pub fn with_uncertainty(eta: T, uncertainty: T) -> Result<Self> {
        let mut spec = Self::new(eta)?;
        if !(uncertainty >= T::zero()) {
            return Err(Error::InvalidRates(format!(
                "reflectivity uncertainty must be non-negative, got {uncertainty}"
            )));
        }
        spec.uncertainty = Some(uncertainty);
        Ok(spec)
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    pub fn uncertainty(&self) -> Option<T> {
        self.uncertainty
    }
}

/// Phase convention for the 2×2 coupler matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// `[[√η, √(1-η)], [√(1-η), -√η]]`
    #[default]
    Real,
    /// `[[√η, i√(1-η)], [i√(1-η), √η]]`
    Symmetric,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Real => "real",
            Self::Symmetric => "symmetric",
        })
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "real" => Ok(Self::Real),
            "symmetric" => Ok(Self::Symmetric),
            other => Err(format!("unknown convention `{other}` (expected real or symmetric)")),
        }
    }
}

pub fn coupler_unitary<T: Real>(coupler: &CouplerSpec<T>, convention: Convention) -> CMatrix<T> {
    let r = coupler.eta.sqrt();
    let t = (T::one() - coupler.eta).sqrt();
    let zero = T::zero();
    let c = |re, im| Complex::new(re, im);
    let rows = match convention {
        Convention::Real => [[c(r, zero), c(t, zero)], [c(t, zero), c(-r, zero)]],
        Convention::Symmetric => [[c(r, zero), c(zero, t)], [c(zero, t), c(r, zero)]],
    };
    CMatrix::from_fn(2, 2, |i, j| rows[i][j])
}
