use thiserror::Error;

/// Errors shared across the crate.
///
/// Every failure carries enough context to reproduce it: offending states are
/// embedded verbatim (as their display form) rather than summarized.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty tropical sum: min over zero terms is undefined")]
    EmptyTropicalSum,

    #[error("malformed rational `{input}`: {reason}")]
    RationalParse { input: String, reason: String },

    #[error("state is outside the phase space: sum(Q) = {sum_q} must be strictly less than sum(W) = {sum_w}")]
    NotInPhaseSpace { sum_q: String, sum_w: String },

    #[error("conserved vector is not generic: {violated}")]
    NonGeneric { violated: String },

    #[error("conserved vector must have strictly positive partition gaps and vertical weights: {violated}")]
    DegenerateCurve { violated: String },

    #[error("malformed box-ball state: character `{found}` at position {position} (expected '0' or '1')")]
    BbsParse { position: usize, found: char },

    #[error("box-ball state {state} violates the density bound: 2*{balls} >= {boxes} boxes")]
    BbsTooDense { state: String, balls: usize, boxes: usize },

    #[error("box-ball state {state} cannot be parsed into soliton data: {reason}")]
    BbsRunParse { state: String, reason: String },

    #[error("state {state} is not in the fundamental sector T^0: {reason}")]
    NotInT0 { state: String, reason: String },

    #[error("sector classification failed for {state}: {matches} sectors matched (exactly one expected); this falsifies the disjoint-cover property")]
    SectorCover { state: String, matches: usize },

    #[error("point ({x}, {y}) does not lie on the compact tropical curve")]
    OffCurve { x: String, y: String },

    #[error("graph point references edge {edge} but the curve has {edges} edges")]
    BadEdge { edge: usize, edges: usize },

    #[error("offset {offset} is outside [0, {len}] on edge {edge}")]
    BadOffset { edge: usize, offset: String, len: String },

    #[error("path is disconnected between segment {at} and segment {next}")]
    DisconnectedPath { at: usize, next: usize },

    #[error("divisor has {got} points but the curve has genus {genus}")]
    DivisorSize { got: usize, genus: usize },

    #[error("basis mismatch: {op} needs points in the same basis, got {left} and {right}")]
    BasisMismatch { op: String, left: String, right: String },

    #[error("dimension mismatch: expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{op} is implemented for genus {supported} only (requested genus {requested})")]
    UnsupportedGenus { op: String, supported: String, requested: usize },

    #[error("conserved vector mismatch: state has {state_c}, curve was built from {curve_c}")]
    ConservedMismatch { state_c: String, curve_c: String },

    #[error("branch selection for the eigenvector map is inconsistent on this state: {detail}")]
    BranchSelection { detail: String },

    #[error("singular matrix: {detail}")]
    SingularMatrix { detail: String },

    #[error("unknown check `{name}`")]
    UnknownCheck { name: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
