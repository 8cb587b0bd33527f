use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Bernoulli number requested for odd index {0}")]
    OddBernoulliIndex(u64),
    #[error("{0} is not a prime >= 5")]
    InvalidPrime(u64),
    #[error("prime {p} is outside the admissible residue classes ({expected})")]
    ResidueClass { p: u64, expected: &'static str },
    #[error("valuation of zero is infinite")]
    ZeroValuation,
    #[error("coefficient at index {index} is not {p}-integral")]
    NotPIntegral { index: usize, p: u64 },
    #[error("series constant term is not invertible")]
    NonUnitConstantTerm,
    #[error("series constant term must be 1 for rational powers")]
    ConstantTermNotOne,
    #[error("inner series of a composition must have zero constant term")]
    NonZeroConstantTerm,
    #[error("exponent tag {0}/24 of an eta quotient is not integral")]
    FractionalShift(i64),
    #[error("weight {0} is not an even integer >= 4")]
    InvalidWeight(i64),
    #[error("not enough coefficients: need {needed}, have {have}")]
    InsufficientPrecision { needed: usize, have: usize },
    #[error("lower parameter {0} of 2F1 is a non-positive integer")]
    InvalidHypergeometric(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("singular curve")]
    SingularCurve,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown example id `{0}`")]
    UnknownExample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
