//! The six-mode post-selected CNOT: a target Mach-Zehnder of two balanced
//! couplers with three 1/3 couplers between them.
//!
//! Mode layout (0-based): `0` ancilla A, `1` c0, `2` c1, `3` t0, `4` t1,
//! `5` ancilla B.

use super::coupler::{Convention, CouplerSpec};
use super::netlist::Netlist;
use crate::{Error, Real, Result};

pub const HALF_1: &str = "half-1";
pub const HALF_2: &str = "half-2";
pub const CONTROL_THIRD: &str = "control-third";
pub const LOWER_THIRD_A: &str = "lower-third-a";
pub const LOWER_THIRD_B: &str = "lower-third-b";

/// Coupler labels of the CNOT netlist, in element order.
pub const CNOT_LABELS: [&str; 5] = [HALF_1, CONTROL_THIRD, LOWER_THIRD_A, LOWER_THIRD_B, HALF_2];

/// The two embedded 1/3 couplers whose reflectivity cannot be measured directly.
pub const LOWER_THIRD_LABELS: [&str; 2] = [LOWER_THIRD_A, LOWER_THIRD_B];

/// Reflectivities of the five CNOT couplers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CnotEtas<T> {
    pub third_control: CouplerSpec<T>,
    pub third_lower_a: CouplerSpec<T>,
    pub third_lower_b: CouplerSpec<T>,
    pub half_1: CouplerSpec<T>,
    pub half_2: CouplerSpec<T>,
}

impl<T: Real> CnotEtas<T> {
    /// Design values: 1/3 and 1/2.
    pub fn nominal() -> Self {
        let third = CouplerSpec::new(T::one() / T::lit(3.0)).unwrap();
        let half = CouplerSpec::new(T::lit(0.5)).unwrap();
        Self {
            third_control: third,
            third_lower_a: third,
            third_lower_b: third,
            half_1: half,
            half_2: half,
        }
    }

    /// Characterised device: 0.442 ± 0.001 and 0.452 ± 0.001 for the
    /// balanced couplers, 0.3078 ± 0.0009 for the control 1/3 coupler; the
    /// embedded 1/3 couplers are assumed equal to the control one.
    pub fn measured() -> Self {
        let spec = |eta, unc| CouplerSpec::with_uncertainty(T::lit(eta), T::lit(unc)).unwrap();
        let third = CouplerSpec::new(T::lit(0.3078)).unwrap();
        Self {
            third_control: spec(0.3078, 0.0009),
            third_lower_a: third,
            third_lower_b: third,
            half_1: spec(0.442, 0.001),
            half_2: spec(0.452, 0.001),
        }
    }

    /// From `[third_control, third_lower_a, third_lower_b, half_1, half_2]`.
    pub fn from_values(values: [T; 5]) -> Result<Self> {
        let [tc, ta, tb, h1, h2] = values.map(CouplerSpec::new);
        Ok(Self {
            third_control: tc?,
            third_lower_a: ta?,
            third_lower_b: tb?,
            half_1: h1?,
            half_2: h2?,
        })
    }

    pub fn values(&self) -> [T; 5] {
        [
            self.third_control.eta(),
            self.third_lower_a.eta(),
            self.third_lower_b.eta(),
            self.half_1.eta(),
            self.half_2.eta(),
        ]
    }
}

/// Which modes carry the two dual-rail qubits and which must stay empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalEncoding {
    pub control: (usize, usize),
    pub target: (usize, usize),
    pub ancillas: Vec<usize>,
}

impl LogicalEncoding {
    /// Layout produced by [`cnot_netlist`].
    pub fn cnot() -> Self {
        Self {
            control: (1, 2),
            target: (3, 4),
            ancillas: vec![0, 5],
        }
    }

    pub fn validate(&self, n_modes: usize) -> Result<()> {
        let mut all = vec![self.control.0, self.control.1, self.target.0, self.target.1];
        all.extend(&self.ancillas);
        if let Some(&bad) = all.iter().find(|&&m| m >= n_modes) {
            return Err(Error::ModeOutOfRange { index: bad, modes: n_modes });
        }
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != all.len() {
            return Err(Error::InvalidEncoding(format!("encoding modes are not distinct: {all:?}")));
        }
        Ok(())
    }

    /// Control rail for bit `bit`.
    pub fn control_rail(&self, bit: usize) -> usize {
        if bit == 0 { self.control.0 } else { self.control.1 }
    }

    pub fn target_rail(&self, bit: usize) -> usize {
        if bit == 0 { self.target.0 } else { self.target.1 }
    }
}

/// Builds the CNOT netlist for `etas`.
///
/// Element order: balanced coupler on (t0, t1); the 1/3 couplers on
/// (c0, ancilla A), (c1, t0) and (ancilla B, t1); balanced coupler on
/// (t0, t1). Under [`Convention::Real`] the lower-right coupler is entered
/// from the ancilla side so that t0 and t1 pick up the same sign when the
/// control is in c0. For [`Convention::Symmetric`] every coupler on
/// (a, b) is wrapped in `-π/2` phases on `b`, which makes the assembled
/// unitary identical to the real-convention one.
pub fn cnot_netlist<T: Real>(etas: &CnotEtas<T>, convention: Convention) -> (Netlist<T>, LogicalEncoding) {
    let enc = LogicalEncoding::cnot();
    let (anc_a, anc_b) = (enc.ancillas[0], enc.ancillas[1]);
    let (c0, c1) = enc.control;
    let (t0, t1) = enc.target;
    let couplers = [
        (t0, t1, etas.half_1, HALF_1),
        (c0, anc_a, etas.third_control, CONTROL_THIRD),
        (c1, t0, etas.third_lower_a, LOWER_THIRD_A),
        (anc_b, t1, etas.third_lower_b, LOWER_THIRD_B),
        (t0, t1, etas.half_2, HALF_2),
    ];
    let mut net = Netlist::new(6).unwrap();
    let comp = -T::FRAC_PI_2();
    for (a, b, spec, label) in couplers {
        if convention == Convention::Symmetric {
            net.push_phase(b, comp, None).unwrap();
        }
        net.push_dc(a, b, spec, Some(label)).unwrap();
        if convention == Convention::Symmetric {
            net.push_phase(b, comp, None).unwrap();
        }
    }
    (net, enc)
}
