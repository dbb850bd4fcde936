use thiserror::Error;

use crate::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("probability space needs at least one atom")]
    EmptySpace,
    #[error("non-positive mass {mass} at position {index}")]
    NonPositiveMass { index: usize, mass: Rational },
    #[error("masses sum to {sum}, expected 1")]
    MassNotOne { sum: Rational },
    #[error("atom index {0} out of range")]
    AtomOutOfRange(usize),
    #[error("random variables live on different spaces")]
    SpaceMismatch,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("point has dimension {got}, vector has {expected} components")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("a random vector needs at least two components, got {0}")]
    TooFewComponents(usize),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("Z takes both strictly positive and strictly negative values")]
    SignViolation,
    #[error("vector is not pairwise counter-monotonic")]
    NotPcm,
    #[error("representation needs at least three non-degenerate components, found {0}")]
    TooFewNonDegenerate(usize),
    #[error("pair is not counter-monotonic")]
    NotCounterMonotonicPair,
    #[error("index sets overlap and the vector is not comonotonic")]
    OverlappingIndexSets,
    #[error("index {index} out of range for {n} components")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("map is not nondecreasing between {lower:?} and {upper:?}")]
    NotMonotone {
        lower: Vec<Rational>,
        upper: Vec<Rational>,
    },
    #[error("map does not cover realized input {0:?}")]
    UncoveredSupport(Vec<Rational>),
    #[error("event of probability {0} cannot be carved out without refining atoms")]
    NotRepresentable(Rational),
    #[error("Fréchet class does not support pairwise counter-monotonicity")]
    Unsupported,
    #[error("enumeration needs {needed} units, budget is {budget}")]
    TooLarge { needed: u64, budget: u64 },
    #[error("level {0} is outside (0, 1)")]
    LevelOutOfRange(Rational),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("agents are incompatible: levels sum to {0} >= 1")]
    IncompatibleAgents(Rational),
    #[error("allocation is not pairwise counter-monotonic of the first type")]
    NotPcmType1,
    #[error("total has no mass at its essential infimum")]
    NoMassAtEssInf,
    #[error("allocation is not comonotonic")]
    NotComonotonic,
    #[error("components do not sum to the total at atom {0}")]
    NotAllocation(usize),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
