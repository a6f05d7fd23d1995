//! Crate-wide error type.
//!
//! Every failure mode the kernel can hit is a named variant carrying enough
//! context (degree, entry, witness) to be actionable in a report.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: String },

    #[error("vector is not in the image: remainder {remainder}")]
    NotInImage { remainder: String },

    #[error("not a complex: d*d != 0 at degree {degree}, entry ({row},{col}) = {entry}")]
    NotAComplex {
        degree: usize,
        row: usize,
        col: usize,
        entry: String,
    },

    #[error("splitting mismatch: {0}")]
    SplittingMismatch(String),

    #[error("duality failure: {0}")]
    DualityFailure(String),

    #[error("chain map failure at degree {degree}: entry ({row},{col}) = {entry}")]
    ChainMapFailure {
        degree: usize,
        row: usize,
        col: usize,
        entry: String,
    },

    #[error("lift failure at degree {degree}, column {col}: {detail}")]
    LiftFailure {
        degree: usize,
        col: usize,
        detail: String,
    },

    #[error("homotopy property failure: {0}")]
    PropertyFailure(String),

    #[error("identity failure: property ({property}) at {witness}")]
    IdentityFailure { property: String, witness: String },

    #[error("typecheck failure in the printed structure:\n{}", items.join("\n"))]
    TypecheckFailure { items: Vec<String> },

    #[error("calibration ambiguous: {} assignments pass: {}", assignments.len(), assignments.join("; "))]
    CalibrationAmbiguous { assignments: Vec<String> },

    #[error("calibration exhausted: no assignment within {searched} candidates passes; first failure of the base assignment: {base_failure}")]
    CalibrationExhausted {
        searched: usize,
        base_failure: String,
    },

    #[error("dga axiom failure: {0}")]
    DgaFailure(String),

    #[error("schema violation at {path}: {detail}")]
    SchemaViolation { path: String, detail: String },

    #[error("parse error at column {column}: {detail} in {input:?}")]
    ParseError {
        input: String,
        column: usize,
        detail: String,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
