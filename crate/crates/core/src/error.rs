use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{what} cap exceeded: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("input is not monogenic (Dirac residual {residual:e})")]
    NotMonogenic { residual: f64 },

    #[error("quadrature order {0} out of range 1..=200")]
    InvalidOrder(usize),

    #[error("vacuum fails the character property (residual {residual:e})")]
    NotAVacuum { residual: f64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
