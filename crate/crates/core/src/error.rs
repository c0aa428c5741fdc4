use alloc::string::String;
use core::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A dimension was below the supported minimum or two operands disagree.
    Dimension(String),
    /// A coordinate that must be strictly positive was not.
    NonPositiveCoordinate { i: usize, j: usize },
    /// A minor that must not vanish did; the payload names it.
    VanishingMinor(String),
    /// Input is outside the totally positive stratum.
    NotTotallyPositive(String),
    /// Row/column index sets passed to a minor have different sizes.
    CardinalityMismatch { rows: usize, cols: usize },
    /// An index or index set escapes `[1, n]`.
    IndexOutOfRange(String),
    /// A triple violates `1 <= a < b < c <= n`.
    InvalidTriple { a: usize, b: usize, c: usize, n: usize },
    /// Matrix shape refinement failed (not upper triangular, not unit
    /// diagonal, zero diagonal entry, ...).
    Shape(String),
    /// Argument outside the domain of a numeric routine.
    Domain(String),
    /// Finite-difference step too coarse for the two-form probe.
    StepTooLarge,
    /// Malformed textual input (rational or decimal literal).
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension(msg) => write!(f, "dimension error: {msg}"),
            Error::NonPositiveCoordinate { i, j } => {
                write!(f, "coordinate x[{i},{j}] is not strictly positive")
            }
            Error::VanishingMinor(which) => {
                write!(f, "not in the totally positive stratum: minor {which} vanishes")
            }
            Error::NotTotallyPositive(msg) => write!(f, "not totally positive: {msg}"),
            Error::CardinalityMismatch { rows, cols } => {
                write!(f, "minor index sets differ in size: {rows} rows vs {cols} columns")
            }
            Error::IndexOutOfRange(msg) => write!(f, "index out of range: {msg}"),
            Error::InvalidTriple { a, b, c, n } => {
                write!(f, "({a},{b},{c}) is not a strictly increasing triple in [1,{n}]")
            }
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::StepTooLarge => write!(f, "finite-difference step exceeds 1e-3"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
