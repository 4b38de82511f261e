use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mode count must be at least 1")]
    NoModes,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("photon number mismatch: input has {input}, output has {output}")]
    PhotonNumberMismatch { input: usize, output: usize },
    #[error("matrix is not unitary (max |U†U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("reflectivity {0} outside [0, 1]")]
    ReflectivityOutOfRange(f64),
    #[error("mode index {index} out of range for {modes} modes")]
    ModeOutOfRange { index: usize, modes: usize },
    #[error("invalid logical encoding: {0}")]
    InvalidEncoding(String),
    #[error("post-selection failed for logical input {input}: success probability is zero")]
    PostSelectionFailed { input: String },
    #[error("unknown element label `{label}`; available labels: {}", available.join(", "))]
    UnknownLabel { label: String, available: Vec<String> },
    #[error("invalid rates: {0}")]
    InvalidRates(String),
    #[error("invalid dip curve: {0}")]
    InvalidCurve(String),
    #[error("invalid truth table: {0}")]
    InvalidTable(String),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A `.pqc` parse failure, tagged with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct NetlistError {
    pub line: usize,
    pub kind: NetlistErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetlistErrorKind {
    UnknownDirective(String),
    MissingModes,
    DuplicateModes,
    ModeOutOfRange { index: i64, modes: usize },
    SameMode(usize),
    ReflectivityOutOfRange(f64),
    BadNumber(String),
    WrongArity { directive: &'static str, expected: &'static str },
    Empty,
}

impl fmt::Display for NetlistErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownDirective(d) => write!(f, "unknown directive `{d}`"),
            Self::MissingModes => write!(f, "first directive must be `modes <m>`"),
            Self::DuplicateModes => write!(f, "duplicate `modes` line"),
            Self::ModeOutOfRange { index, modes } => {
                write!(f, "mode index {index} out of range [1, {modes}]")
            }
            Self::SameMode(m) => write!(f, "coupler connects mode {m} to itself"),
            Self::ReflectivityOutOfRange(eta) => {
                write!(f, "reflectivity {eta} out of range [0, 1]")
            }
            Self::BadNumber(tok) => write!(f, "cannot parse number `{tok}`"),
            Self::WrongArity { directive, expected } => {
                write!(f, "`{directive}` expects {expected}")
            }
            Self::Empty => write!(f, "netlist has no `modes` line"),
        }
    }
}
