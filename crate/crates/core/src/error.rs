use num_complex::Complex64;
use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("truncation order must be at least 1, got {0}")]
    InvalidTruncation(usize),

    #[error("series contains a non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("inner series of a composition must vanish at 0, got {0}")]
    NonzeroInnerConstant(Complex64),

    #[error("log/pow require a constant term of 1, got {0}")]
    ConstantTermNotOne(Complex64),

    #[error("series division by a series with vanishing constant term")]
    DivisionByZeroSeries,

    #[error("Laurent function evaluated at z = 0")]
    EvalAtPole,

    #[error("pole order must be at least 1, got {0}")]
    InvalidPoleOrder(i64),

    #[error("pole order mismatch: operator expects {expected}, function has {found}")]
    PoleOrderMismatch { expected: u32, found: u32 },

    #[error("gamma function pole at {0}")]
    GammaPole(Complex64),

    #[error("invalid operator parameters: {0}")]
    InvalidParams(String),

    #[error("Moebius function undefined at {0}")]
    MoebiusSingular(Complex64),

    #[error("invalid Moebius parameters: need -1 <= B < A <= 1, got A = {a}, B = {b}")]
    InvalidMoebius { a: f64, b: f64 },

    #[error("q must satisfy q(0) = 1, got {0}")]
    QNotNormalized(Complex64),

    #[error("integral form undefined: {0}")]
    IntegralUndefined(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("F(0) = {f0} does not match q(0) = {q0}")]
    CenterMismatch { f0: Complex64, q0: Complex64 },

    #[error("q' vanishes at {0}")]
    DerivativeVanishes(Complex64),

    #[error("q vanishes at {0}")]
    FunctionVanishes(Complex64),

    #[error("resonant divisor {divisor} at coefficient {index}")]
    Resonance { index: usize, divisor: Complex64 },

    #[error("bracket expression vanishes near {0}")]
    BracketVanishes(Complex64),

    #[error("invalid Schwarz function: {0}")]
    InvalidSchwarz(String),

    #[error("invalid theorem parameters: {0}")]
    InvalidTheorem(String),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
