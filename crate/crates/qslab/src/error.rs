use thiserror::Error;

#[derive(Debug, Error)]
pub enum QslabError {
    #[error("inversion of the zero scalar")]
    ZeroInverse,
    #[error("q must lie strictly between 0 and 1, got {0}")]
    BadQ(f64),
    #[error("denominator of {scalar} vanishes at q = {q}")]
    DenominatorVanishes { scalar: String, q: f64 },
    #[error("reduction exceeded the step budget of {budget} (mis-oriented rule?)")]
    ReductionBudget { budget: u64 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("word uses generators of algebra `{found}` inside `{expected}`")]
    AlgebraMismatch { expected: String, found: String },
    #[error("preset parse error at line {line}: {msg}")]
    PresetParse { line: usize, msg: String },
    #[error("preset `{0}` not found")]
    PresetNotFound(String),
    #[error("joint invariant subspace at degree {degree} has dimension {dim}, expected 1")]
    NonUniqueInvariant { degree: usize, dim: usize },
    #[error("Gram matrix is singular or not positive definite at q = {q}")]
    SingularGram { q: f64 },
    #[error("vector is not in the span of the truncated basis (residual on {word})")]
    NotInTruncatedSpan { word: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}
