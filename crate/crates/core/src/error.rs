//! One error type for the whole crate.

use crate::flexipath::ConnectivityProfile;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A rank table failed one of the three rank axioms.
    #[error("axiom violation ({axiom}): {witness}")]
    AxiomViolation { axiom: &'static str, witness: String },

    #[error("sets overlap: {0}")]
    OverlappingSets(String),

    #[error("label clash: {0}")]
    LabelClash(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("part `{part}` has size {left} on the left but {right} on the right")]
    PartSizeMismatch { part: String, left: usize, right: usize },

    #[error("ground set full: {0}")]
    GroundSetFull(String),

    #[error("not a circuit-hyperplane: {0}")]
    NotCircuitHyperplane(String),

    #[error("not a free basis: {0}")]
    NotFreeBasis(String),

    #[error("bad counts: {0}")]
    BadCounts(String),

    #[error("path not verified: {0}")]
    NotVerified(String),

    #[error("steps not mergeable: {0}")]
    NotMergeable(String),

    /// The profile of a verified (4,c)-flexipath matched no class. Either the
    /// input was not really a flexipath or the classifier itself is wrong.
    #[error("path lies outside the taxonomy; profile: {0}")]
    OutsideTaxonomy(Box<ConnectivityProfile>),

    #[error("unknown gallery entry `{0}`")]
    UnknownEntry(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("parse error at line {line}: {reason}")]
    ParseError { line: usize, reason: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
