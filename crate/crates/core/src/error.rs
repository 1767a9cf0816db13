use thiserror::Error;

/// Errors raised by the algebra, the model layer and the evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {from} does not divide {to}")]
    IncompatibleModulus { from: u64, to: u64 },
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("denominator does not split into a t-part and a zeta-part")]
    NonSeparableDenominator,
    #[error("geometric expansion needs a positive q-shift, got {0}")]
    NonPositiveShift(String),
    #[error("q-series has no invertible leading term")]
    NonUnitLeadingTerm,
    #[error("isotropy group is not abelian")]
    NonAbelianGroup,
    #[error("fixed point `{0}` has non-abelian isotropy")]
    NonAbelianIsotropy(String),
    #[error("factor has a pole: u = 1 identically ({0})")]
    PoleAtFactor(String),
    #[error("denominator of {value} is not coprime to level {level}")]
    NonCoprimeDenominator { value: String, level: i64 },
    #[error("level {level} is not coprime to isotropy order {order}")]
    NonCoprimeLevel { level: i64, order: u64 },
    #[error("degenerate circle action: weights {0} and {1} are proportional to the orbifold weights")]
    DegenerateAction(usize, usize),
    #[error("age {0} is not an integer")]
    NonIntegralAge(String),
    #[error("model carries no line-bundle data")]
    MissingBundleData,
    #[error("truncation insufficient: tail bound {bound:e} exceeds {limit:e}")]
    TruncationInsufficient { bound: f64, limit: f64 },
    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
