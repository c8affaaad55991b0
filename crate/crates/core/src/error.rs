use thiserror::Error;

use crate::relations::Verdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("state space must contain at least one state")]
    EmptySpace,
    #[error("invalid state name `{0}`")]
    InvalidStateName(String),
    #[error("{n} states exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("events belong to different state spaces")]
    SpaceMismatch,
    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("syntax error at position {position}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),

    #[error("strict order violates {}: {}", .0.axiom, .0.describe_witness())]
    StrictAxiomViolation(Box<Verdict>),
    #[error("relation is not an acceptance preorder: {}", .0.axiom)]
    NotAcceptance(Box<Verdict>),
    #[error("members {first} and {second} disagree on the equivalence of {left} and {right}")]
    SharedEquivalenceViolated {
        first: usize,
        second: usize,
        left: String,
        right: String,
    },
    #[error("family has no members")]
    EmptyFamily,

    #[error("{kind} cannot be evaluated on a {measure} measure")]
    KindMismatch {
        kind: &'static str,
        measure: &'static str,
    },
    #[error("conditioning denominator is zero")]
    ZeroDenominator,
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("antecedent `{0}` has no models")]
    EmptyAntecedent(String),
    #[error("assertion `{0}` is reflexive (its consequent follows from its antecedent)")]
    ReflexiveAssertion(String),
    #[error("malformed conditional query `{0}` (expected `<formula> |~ <formula>`)")]
    MalformedQuery(String),

    #[error("invalid input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
