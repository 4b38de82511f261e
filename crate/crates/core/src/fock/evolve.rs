use std::collections::HashMap;

use num_complex::Complex;

use super::permanent::permanent;
use super::state::{enumerate_basis, FockState};
use crate::matrix::CMatrix;
use crate::{Error, Real, Result};

/// Amplitude `⟨output| Û |input⟩` for the mode transformation `u`.
///
/// Rows of the permanent's submatrix repeat per output occupation and
/// columns per input occupation; the result is divided by
/// `sqrt(∏ in! ∏ out!)`. A single photon from mode `j` to mode `k` therefore
/// has amplitude `u[(k, j)]`.
pub fn transition_amplitude<T: Real>(
    u: &CMatrix<T>,
    input: &FockState,
    output: &FockState,
) -> Result<Complex<T>> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    for s in [input, output] {
        if s.n_modes() != u.rows() {
            return Err(Error::DimensionMismatch {
                expected: u.rows(),
                actual: s.n_modes(),
            });
        }
    }
    amplitude_unchecked(u, &input.mode_list(), input.factorial_product(), output)
}

fn amplitude_unchecked<T: Real>(
    u: &CMatrix<T>,
    in_modes: &[usize],
    in_fact: f64,
    output: &FockState,
) -> Result<Complex<T>> {
    let out_modes = output.mode_list();
    if in_modes.len() != out_modes.len() {
        return Err(Error::PhotonNumberMismatch {
            input: in_modes.len(),
            output: out_modes.len(),
        });
    }
    let n = in_modes.len();
    let sub = CMatrix::from_fn(n, n, |r, c| u[(out_modes[r], in_modes[c])]);
    let norm = T::lit((in_fact * output.factorial_product()).sqrt());
    Ok(permanent(&sub)? / norm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome<T> {
    pub state: FockState,
    pub probability: T,
    pub amplitude: Option<Complex<T>>,
}

/// Probabilities over output Fock states, kept in basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputDistribution<T> {
    n_modes: usize,
    outcomes: Vec<Outcome<T>>,
    index: HashMap<FockState, usize>,
}

impl<T: Real> OutputDistribution<T> {
    pub fn from_outcomes(n_modes: usize, outcomes: Vec<Outcome<T>>) -> Self {
        let index = outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| (o.state.clone(), i))
            .collect();
        Self {
            n_modes,
            outcomes,
            index,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn outcomes(&self) -> &[Outcome<T>] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Probability of `state`; zero when the state is absent.
    pub fn probability(&self, state: &FockState) -> T {
        self.index
            .get(state)
            .map_or(T::zero(), |&i| self.outcomes[i].probability)
    }

    pub fn amplitude(&self, state: &FockState) -> Option<Complex<T>> {
        self.index.get(state).and_then(|&i| self.outcomes[i].amplitude)
    }

    pub fn total(&self) -> T {
        self.outcomes.iter().map(|o| o.probability).sum()
    }
}

/// Evolves `input` through `u`, returning the distribution over the full
/// photon-number-conserving output basis (amplitudes retained).
pub fn evolve<T: Real>(u: &CMatrix<T>, input: &FockState) -> Result<OutputDistribution<T>> {
    u.ensure_unitary(T::unitarity_tolerance())?;
    if input.n_modes() != u.rows() {
        return Err(Error::DimensionMismatch {
            expected: u.rows(),
            actual: input.n_modes(),
        });
    }
    let basis = enumerate_basis(input.n_photons(), u.rows())?;
    let in_modes = input.mode_list();
    let in_fact = input.factorial_product();
    let outcomes = basis
        .iter()
        .map(|out| {
            let amp = amplitude_unchecked(u, &in_modes, in_fact, out)?;
            Ok(Outcome {
                state: out.clone(),
                probability: amp.norm_sqr(),
                amplitude: Some(amp),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OutputDistribution::from_outcomes(u.rows(), outcomes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeConstraint {
    Exact(usize),
    Any,
}

/// Detection pattern used for heralding.
///
/// Per-mode constraints are combined with optional group constraints that
/// fix the total photon number across a set of modes (e.g. one photon
/// somewhere in a dual-rail qubit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub modes: Vec<ModeConstraint>,
    pub groups: Vec<(Vec<usize>, usize)>,
}

impl Selection {
    pub fn any(n_modes: usize) -> Self {
        Self {
            modes: vec![ModeConstraint::Any; n_modes],
            groups: Vec::new(),
        }
    }

    pub fn per_mode(modes: Vec<ModeConstraint>) -> Self {
        Self {
            modes,
            groups: Vec::new(),
        }
    }

    pub fn with_group(mut self, modes: Vec<usize>, count: usize) -> Self {
        self.groups.push((modes, count));
        self
    }

    pub fn matches(&self, state: &FockState) -> bool {
        let occ = state.occupations();
        let per_mode = self.modes.iter().zip(occ).all(|(c, &k)| match c {
            ModeConstraint::Exact(n) => *n == k,
            ModeConstraint::Any => true,
        });
        per_mode
            && self
                .groups
                .iter()
                .all(|(modes, count)| modes.iter().map(|&m| occ.get(m).copied().unwrap_or(0)).sum::<usize>() == *count)
    }
}

/// Keeps the outcomes matching `pattern` and renormalizes them.
///
/// Returns the conditional distribution together with the success
/// probability; when nothing matches the distribution is empty and the
/// success probability is zero.
pub fn post_select<T: Real>(
    dist: &OutputDistribution<T>,
    pattern: &Selection,
) -> Result<(OutputDistribution<T>, T)> {
    if pattern.modes.len() != dist.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: dist.n_modes(),
            actual: pattern.modes.len(),
        });
    }
    if let Some(&bad) = pattern.groups.iter().flat_map(|(m, _)| m).find(|&&m| m >= dist.n_modes()) {
        return Err(Error::ModeOutOfRange {
            index: bad,
            modes: dist.n_modes(),
        });
    }
    let kept: Vec<Outcome<T>> = dist
        .outcomes()
        .iter()
        .filter(|o| pattern.matches(&o.state))
        .cloned()
        .collect();
    let success: T = kept.iter().map(|o| o.probability).sum();
    if success <= T::zero() {
        return Ok((OutputDistribution::from_outcomes(dist.n_modes(), Vec::new()), T::zero()));
    }
    let renormalized = kept
        .into_iter()
        .map(|o| Outcome {
            probability: o.probability / success,
            amplitude: o.amplitude.map(|a| a / success.sqrt()),
            state: o.state,
        })
        .collect();
    Ok((OutputDistribution::from_outcomes(dist.n_modes(), renormalized), success))
}
