use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial of degree {degree} exceeds the maximum degree {max}")]
    DegreeTooHigh { degree: usize, max: usize },

    #[error("polynomial is not a perfect square (relative discriminant {relative_discriminant:.3e})")]
    NotPerfectSquare { relative_discriminant: f64 },

    #[error("invalid hypergeometric form: {0}")]
    InvalidForm(&'static str),

    #[error("degenerate form: discriminant condition does not determine k")]
    DegenerateForm,

    #[error("secant quantization did not converge after {iterations} iterations (|f| = {residual:.3e})")]
    QuantizationDivergence { iterations: usize, residual: f64 },

    #[error("unsupported sigma: {0}")]
    UnsupportedSigma(&'static str),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("potential has a pole at r = {r}")]
    PoleAtR { r: f64 },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("eigenvalue solver failed: {0}")]
    EigenSolve(String),
}
