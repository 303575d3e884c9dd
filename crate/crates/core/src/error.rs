use thiserror::Error;

/// Errors raised by the arithmetic, evaluation and p-adic layers.
///
/// The `Display` text of every variant starts with a short stable label
/// (`"pole hit"`, `"divergent region"`, ...) so front ends can echo it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not invertible: f(1) = 0")]
    NotInvertible,

    #[error("invalid twist parameter: |alpha| = {modulus} violates {constraint}")]
    InvalidTwist { modulus: f64, constraint: &'static str },

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("missing coefficient: no a_p for p = {0}")]
    MissingCoefficient(u64),

    #[error("coefficient bound violated: |a_{prime}| = {value} > {bound}")]
    CoefficientBound { prime: u64, value: f64, bound: f64 },

    #[error("prime bound exceeded: p = {prime} > {bound}")]
    PrimeBoundExceeded { prime: u64, bound: u64 },

    #[error("bad reduction at p = {0}")]
    BadReduction(u64),

    #[error("not supported by the residue-symbol method: p = {0}")]
    UnsupportedPrime(u64),

    #[error("singular curve: discriminant is zero")]
    SingularCurve,

    #[error("pole hit: |P_{prime}(alpha^p p^-s)| = {modulus:e}")]
    PoleHit { prime: u64, modulus: f64 },

    #[error("divergent region: Re(s) = {re} <= abscissa {abscissa}")]
    DivergentRegion { re: f64, abscissa: f64 },

    #[error("bound undefined: u_p = {value} >= 1 at p = {prime}")]
    BoundUndefined { prime: u64, value: f64 },

    #[error("quadrature failure: estimated error {0:e}")]
    QuadratureFailure(f64),

    #[error("outside logarithm domain: argument is not 1 mod p")]
    LogDomain,

    #[error("outside exponential domain: argument is not 0 mod p")]
    ExpDomain,

    #[error("not a unit: {0} is divisible by p")]
    NotUnit(String),

    #[error("twist not p-adically contractive: v_p(alpha) = 0")]
    NotContractive,

    #[error("insufficient prime bound: X = {given} < {required}")]
    InsufficientPrimeBound { given: u64, required: u64 },

    #[error("value not embeddable: order {order} does not divide p - 1 = {p_minus_one}")]
    NotEmbeddable { order: u64, p_minus_one: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short label identifying the error class, e.g. `"pole hit"`.
    pub fn label(&self) -> &'static str {
        match self {
            Error::NotInvertible => "not invertible",
            Error::InvalidTwist { .. } => "invalid twist parameter",
            Error::InvalidCharacter(_) => "invalid character",
            Error::MissingCoefficient(_) => "missing coefficient",
            Error::CoefficientBound { .. } => "coefficient bound violated",
            Error::PrimeBoundExceeded { .. } => "prime bound exceeded",
            Error::BadReduction(_) => "bad reduction",
            Error::UnsupportedPrime(_) => "not supported by the residue-symbol method",
            Error::SingularCurve => "singular curve",
            Error::PoleHit { .. } => "pole hit",
            Error::DivergentRegion { .. } => "divergent region",
            Error::BoundUndefined { .. } => "bound undefined",
            Error::QuadratureFailure(_) => "quadrature failure",
            Error::LogDomain => "outside logarithm domain",
            Error::ExpDomain => "outside exponential domain",
            Error::NotUnit(_) => "not a unit",
            Error::NotContractive => "twist not p-adically contractive",
            Error::InsufficientPrimeBound { .. } => "insufficient prime bound",
            Error::NotEmbeddable { .. } => "value not embeddable",
            Error::InvalidArgument(_) => "invalid argument",
            Error::Parse(_) => "parse error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
