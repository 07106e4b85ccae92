use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different variable contexts")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("division is not exact")]
    InexactDivision,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("term budget exceeded ({terms} terms > {budget})")]
    Budget { terms: usize, budget: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid variable subset: {0}")]
    BadSubset(String),
}
