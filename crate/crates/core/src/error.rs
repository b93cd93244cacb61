use thiserror::Error;

use crate::decomposition::ReconstructionReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table is not square or has an entry out of range")]
    MalformedTable,
    #[error("table is not a Latin square (row or column {0} repeats an entry)")]
    NotLatinSquare(usize),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("element 0 is not a two-sided identity")]
    NoIdentityAtZero,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("multiplier {k} has order {actual} modulo {modulus}, expected {expected}")]
    InvalidActionOrder {
        k: u64,
        modulus: u64,
        expected: u64,
        actual: u64,
    },
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("map is not a group homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("element set is not a two-sided ideal")]
    NotIdeal,
    #[error("ring axiom violated: {0}")]
    RingAxiom(String),
    #[error("radical is not trivial (order {})", .radical.len())]
    RadicalNotTrivial { radical: Vec<usize> },
    #[error("decomposition failed verification: {}", .0.failed_check)]
    ReconstructionFailed(Box<ReconstructionReport>),
    #[error("classifier inconsistency for {name}: {detail}")]
    ClassifierInconsistency { name: String, detail: String },
    #[error("input parse error: {0}")]
    InputParse(String),
}
