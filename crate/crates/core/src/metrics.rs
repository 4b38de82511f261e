//! Logical truth tables of two-qubit dual-rail gates and the figures of
//! merit computed from them.

use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::circuit::{assemble_unitary, Convention, LogicalEncoding, Netlist};
use crate::fock::{evolve, post_select, FockState, ModeConstraint, Selection};
use crate::{Error, Real, Result};

/// Logical basis labels, control bit first.
pub const BASIS: [&str; 4] = ["00", "01", "10", "11"];

/// Success probabilities at or below this are treated as failure.
const MIN_SUCCESS: f64 = 1e-14;

/// A permutation of the four logical basis states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Permutation(pub [usize; 4]);

impl Permutation {
    pub const IDENTITY: Self = Self([0, 1, 2, 3]);
    pub const CNOT: Self = Self([0, 1, 3, 2]);

    pub fn apply(&self, input: usize) -> usize {
        self.0[input]
    }
}

/// Conditional output probabilities `rows[input][output]` of a gate, with
/// the heralding probability of each input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthTable<T> {
    pub rows: [[T; 4]; 4],
    pub success: [T; 4],
}

impl<T: Real> TruthTable<T> {
    /// Checks entries in `[0, 1]` and row sums within `1e-9` of 1.
    pub fn validate(&self) -> Result<()> {
        let tol = T::lit(1e-9);
        for (i, row) in self.rows.iter().enumerate() {
            if row.iter().any(|&p| !(p >= -tol && p <= T::one() + tol)) {
                return Err(Error::InvalidTable(format!("row {} has entries outside [0, 1]", BASIS[i])));
            }
            let sum: T = row.iter().copied().sum();
            if (sum - T::one()).abs() > tol {
                return Err(Error::InvalidTable(format!("row {} sums to {sum}", BASIS[i])));
            }
        }
        Ok(())
    }

    /// Deterministic table of a permutation, success 1.
    pub fn from_permutation(p: Permutation) -> Self {
        let mut rows = [[T::zero(); 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            row[p.apply(i)] = T::one();
        }
        Self {
            rows,
            success: [T::one(); 4],
        }
    }

    /// Every entry 1/4.
    pub fn uniform() -> Self {
        Self {
            rows: [[T::lit(0.25); 4]; 4],
            success: [T::one(); 4],
        }
    }

    pub fn to_json_value(&self) -> TruthTableJson {
        TruthTableJson {
            basis: BASIS.map(String::from).to_vec(),
            rows: self.rows.iter().map(|r| r.iter().map(|x| x.as_f64()).collect()).collect(),
            success: self.success.iter().map(|x| x.as_f64()).collect(),
        }
    }

    pub fn write_json(&self, mut writer: impl Write) -> Result<()> {
        serde_json::to_writer_pretty(&mut writer, &self.to_json_value())?;
        writeln!(writer)?;
        Ok(())
    }

    pub fn read_json(reader: impl Read) -> Result<Self> {
        let raw: TruthTableJson = serde_json::from_reader(reader)?;
        Self::try_from(raw)
    }
}

impl<T: Real> fmt::Display for TruthTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "in\\out      00        01        10        11   success")?;
        for (i, row) in self.rows.iter().enumerate() {
            write!(f, "  {}  ", BASIS[i])?;
            for p in row {
                write!(f, "{:>10.6}", p.as_f64())?;
            }
            writeln!(f, "{:>10.6}", self.success[i].as_f64())?;
        }
        Ok(())
    }
}

/// Serialized form: `{"basis": [...], "rows": [[...]; 4], "success": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthTableJson {
    pub basis: Vec<String>,
    #[serde(serialize_with = "crate::format::sig12::matrix::serialize")]
    pub rows: Vec<Vec<f64>>,
    #[serde(serialize_with = "crate::format::sig12::vec::serialize")]
    pub success: Vec<f64>,
}

impl<T: Real> TryFrom<TruthTableJson> for TruthTable<T> {
    type Error = Error;

    fn try_from(raw: TruthTableJson) -> Result<Self> {
        if raw.basis != BASIS {
            return Err(Error::InvalidTable(format!("unexpected basis {:?}", raw.basis)));
        }
        if raw.rows.len() != 4 || raw.rows.iter().any(|r| r.len() != 4) || raw.success.len() != 4 {
            return Err(Error::InvalidTable("table must be 4x4 with 4 success values".into()));
        }
        let mut table = Self {
            rows: [[T::zero(); 4]; 4],
            success: [T::zero(); 4],
        };
        for i in 0..4 {
            for j in 0..4 {
                table.rows[i][j] = T::lit(raw.rows[i][j]);
            }
            table.success[i] = T::lit(raw.success[i]);
        }
        table.validate()?;
        Ok(table)
    }
}

/// Heralding pattern: one photon per rail pair, ancillas empty.
pub fn heralding_selection(encoding: &LogicalEncoding, n_modes: usize) -> Selection {
    let mut modes = vec![ModeConstraint::Any; n_modes];
    for &a in &encoding.ancillas {
        modes[a] = ModeConstraint::Exact(0);
    }
    Selection::per_mode(modes)
        .with_group(vec![encoding.control.0, encoding.control.1], 1)
        .with_group(vec![encoding.target.0, encoding.target.1], 1)
}

/// Post-selected logical truth table of `netlist` under `encoding`.
pub fn truth_table<T: Real>(
    netlist: &Netlist<T>,
    encoding: &LogicalEncoding,
    convention: Convention,
) -> Result<TruthTable<T>> {
    let n = netlist.n_modes();
    encoding.validate(n)?;
    let u = assemble_unitary(netlist, convention);
    let selection = heralding_selection(encoding, n);
    let logical_state = |k: usize| {
        FockState::with_photons_in(n, &[encoding.control_rail(k >> 1), encoding.target_rail(k & 1)])
    };
    let outputs = (0..4).map(logical_state).collect::<Result<Vec<_>>>()?;

    let mut table = TruthTable {
        rows: [[T::zero(); 4]; 4],
        success: [T::zero(); 4],
    };
    for (input, row) in table.rows.iter_mut().enumerate() {
        let dist = evolve(&u, &logical_state(input)?)?;
        let (kept, success) = post_select(&dist, &selection)?;
        if success <= T::lit(MIN_SUCCESS) {
            return Err(Error::PostSelectionFailed {
                input: BASIS[input].to_string(),
            });
        }
        for (p, out) in row.iter_mut().zip(&outputs) {
            *p = kept.probability(out);
        }
        table.success[input] = success;
    }
    Ok(table)
}

/// Mean probability of the target output, `(1/4) Σ_i T[i][p(i)]`.
pub fn logical_fidelity<T: Real>(table: &TruthTable<T>, target: Permutation) -> T {
    (0..4).map(|i| table.rows[i][target.apply(i)]).sum::<T>() / T::lit(4.0)
}

/// `(Σ_ij sqrt(I_ij M_ij))² / 16`: the average classical fidelity between
/// corresponding rows, squared-sum form.
pub fn similarity<T: Real>(ideal: &TruthTable<T>, measured: &TruthTable<T>) -> T {
    let overlap: T = ideal
        .rows
        .iter()
        .flatten()
        .zip(measured.rows.iter().flatten())
        .map(|(&i, &m)| (i.max(T::zero()) * m.max(T::zero())).sqrt())
        .sum();
    overlap * overlap / T::lit(16.0)
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::circuit::{cnot_netlist, CnotEtas};

    #[test]
    fn identity_netlist_table() {
        let net = Netlist::<f64>::new(4).unwrap();
        let enc = LogicalEncoding { control: (0, 1), target: (2, 3), ancillas: vec![] };
        let t = truth_table(&net, &enc, Convention::Real).unwrap();
        assert_eq!(t, TruthTable::from_permutation(Permutation::IDENTITY));
    }

    #[test]
    fn nominal_cnot() {
        let (net, enc) = cnot_netlist(&CnotEtas::<f64>::nominal(), Convention::Real);
        let t = truth_table(&net, &enc, Convention::Real).unwrap();
        let cnot = TruthTable::<f64>::from_permutation(Permutation::CNOT);
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!(t.rows[i][j], cnot.rows[i][j], epsilon = 1e-10);
            }
            assert_abs_diff_eq!(t.success[i], 1.0 / 9.0, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(logical_fidelity(&t, Permutation::CNOT), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn failed_heralding_names_input() {
        // target rails fully reflected into ancilla B: nothing survives for t1 inputs
        let mut net = Netlist::<f64>::new(6).unwrap();
        net.push_dc(4, 5, crate::circuit::CouplerSpec::new(0.0).unwrap(), None).unwrap();
        match truth_table(&net, &LogicalEncoding::cnot(), Convention::Real) {
            Err(Error::PostSelectionFailed { input }) => assert_eq!(input, "01"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fidelity_examples() {
        let perfect = TruthTable::<f64>::from_permutation(Permutation::CNOT);
        assert_eq!(logical_fidelity(&perfect, Permutation::CNOT), 1.0);
        assert_eq!(logical_fidelity(&perfect, Permutation::IDENTITY), 0.5);
        let uniform = TruthTable::<f64>::uniform();
        assert_eq!(logical_fidelity(&uniform, Permutation::CNOT), 0.25);
        assert_eq!(logical_fidelity(&uniform, Permutation([3, 2, 1, 0])), 0.25);
    }

    #[test]
    fn similarity_examples() {
        let cnot = TruthTable::<f64>::from_permutation(Permutation::CNOT);
        let id = TruthTable::<f64>::from_permutation(Permutation::IDENTITY);
        let uniform = TruthTable::<f64>::uniform();
        assert_eq!(similarity(&cnot, &cnot), 1.0);
        assert_abs_diff_eq!(similarity(&cnot, &id), 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(similarity(&cnot, &uniform), 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(similarity(&uniform, &uniform), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let (net, enc) = cnot_netlist(&CnotEtas::<f64>::measured(), Convention::Real);
        let t = truth_table(&net, &enc, Convention::Real).unwrap();
        let mut buf = Vec::new();
        t.write_json(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("\"basis\""));
        let back = TruthTable::<f64>::read_json(buf.as_slice()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!(back.rows[i][j], t.rows[i][j], epsilon = 1e-12);
            }
        }
        let bad = r#"{"basis":["00","01","10","11"],"rows":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,0.5]],"success":[1,1,1,1]}"#;
        assert!(TruthTable::<f64>::read_json(bad.as_bytes()).is_err());
        let bad_basis = r#"{"basis":["11","01","10","00"],"rows":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"success":[1,1,1,1]}"#;
        assert!(TruthTable::<f64>::read_json(bad_basis.as_bytes()).is_err());
    }
}
