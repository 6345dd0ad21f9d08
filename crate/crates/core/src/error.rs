use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cycle has {got} coefficients but the graph has {expected} vertices")]
    VertexSetMismatch { expected: usize, got: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no edge between `{0}` and `{1}`")]
    UnknownEdge(String, String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`--`{1}`")]
    DuplicateEdge(String, String),
    #[error("self-edge on `{0}`")]
    SelfEdge(String),
    #[error("edge `{0}`--`{1}` has multiplicity {2}, expected >= 1")]
    InvalidMultiplicity(String, String, i64),
    #[error("vertex `{0}` has negative genus {1}")]
    NegativeGenus(String, i64),
    #[error("vertex `{0}` is not a smooth rational (-1)-curve")]
    NotContractible(String),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("arithmetic genus is not integral; adjunction data is inconsistent")]
    NonIntegralGenus,
    #[error("fundamental genus is 0 (rational singularity); no characteristic cycle")]
    RationalSingularity,
    #[error("search space of {volume} points exceeds the cap of {cap}")]
    BoxTooLarge { volume: u128, cap: u128 },
    #[error("invalid Hirzebruch-Jung pair ({alpha}, {beta})")]
    InvalidHjPair { alpha: i64, beta: i64 },
    #[error("invalid Brieskorn-Pham exponents ({0}, {1}, {2}); need 2 <= a <= b <= c")]
    InvalidExponents(i64, i64, i64),
    #[error("c = {c} is smaller than lcm(a, b) = {d}")]
    ExponentBelowLcm { c: i64, d: i64 },
    #[error("invalid Seifert star: {0}")]
    InvalidStar(String),
    #[error("invalid fibre: {0}")]
    InvalidFibre(String),
    #[error("blow-up script is empty")]
    EmptyScript,
    #[error("step {step}: `{vertex}` has multiplicity {mult} in the fibre; only multiplicity-one components may be blown up")]
    MultiplicityNotOne { step: usize, vertex: String, mult: i64 },
    #[error("step {step}: blowing up the intersection point of `{0}` and `{1}` is a Kodaira step, not a Kulikov step", .pair.0, .pair.1)]
    IntersectionPointBlowup { step: usize, pair: (String, String) },
    #[error("step {step}: `%{reference}` does not name an earlier step")]
    BadStepReference { step: usize, reference: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
}
