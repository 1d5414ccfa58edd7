use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed ring spec `{0}`")]
    RingSpec(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a commutative ring (or pairwise commuting entries)")]
    NotCommutative,

    #[error("ring `{0}` is not finite")]
    NotFinite(String),

    #[error("not invertible over this localization")]
    NotInvertibleOverLocalization,

    #[error("element is not a unit")]
    NotInvertible,

    #[error("denominator rejected by predicate `{0}`")]
    BadDenominator(String),

    #[error("enumeration budget exceeded: {required} candidates required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("n = {n} exceeds the cap {cap}; replay would generate {raw_terms} raw monomials")]
    CapExceeded {
        n: usize,
        cap: usize,
        raw_terms: u128,
    },

    #[error("operands use different commutation specs")]
    SpecMismatch,

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
