use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus in [2, 2^31)")]
    NotPrime(u64),

    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),

    #[error("zero has no multiplicative order in F_{0}")]
    UndefinedOrder(u32),

    #[error("operands live over different fields (F_{0} vs F_{1})")]
    ModulusMismatch(u32, u32),

    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("generator does not divide x^{0} - 1")]
    NotCyclicGenerator(usize),

    #[error(
        "enumeration of {needed} codewords exceeds the cap of {cap}; use the MacWilliams transform"
    )]
    TooLarge { needed: String, cap: u64 },

    #[error("inconsistent weight distribution: {0}")]
    InconsistentDistribution(String),

    #[error("secret sharing scheme undefined: {0}")]
    SchemeUndefined(String),

    #[error("missing share for participant {0}")]
    MissingShare(usize),

    #[error("unauthorized set: the listed participants cannot recover the secret")]
    Unauthorized,

    #[error("malformed share file: {0}")]
    ShareFile(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
