use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("DegreeTooLarge: {what} degree {requested} exceeds the supported maximum {max}")]
    DegreeTooLarge {
        what: &'static str,
        requested: usize,
        max: usize,
    },

    #[error("TauOutOfRange: tau = {tau} is outside {allowed}")]
    TauOutOfRange { tau: f64, allowed: &'static str },

    #[error("MuOutOfRange: mu = {mu} must be finite and nonnegative")]
    MuOutOfRange { mu: f64 },

    #[error(
        "TruncationTooSmall: order {order} leaves a tail of {tail:.3e} against a value of {scale:.3e}"
    )]
    TruncationTooSmall { order: usize, tail: f64, scale: f64 },

    #[error("SingularR: the symmetric matrix has a vanishing diagonal entry")]
    SingularR,

    #[error("SizeOutOfRange: matrix size {n} is outside 1..={max}")]
    SizeOutOfRange { n: usize, max: usize },

    #[error("NodesOutOfRange: {n_q} nodes per axis is outside 2..=256")]
    NodesOutOfRange { n_q: usize },

    #[error("EigensolveFailure: symmetric tridiagonal iteration did not converge")]
    EigensolveFailure,

    #[error("NoConvergence: QR iteration exceeded {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("GridMismatch: grid was built for tau = {grid_tau}, requested tau = {requested}")]
    GridMismatch { grid_tau: f64, requested: f64 },

    #[error("NonFinite: {what} must be finite")]
    NonFinite { what: &'static str },

    #[error("EnvelopeMismatch: operands carry different Gaussian envelopes")]
    EnvelopeMismatch,

    #[error("NotIntegrable: the Gaussian envelope does not decay in every direction")]
    NotIntegrable,

    #[error("UnknownSuite: no suite or criterion named '{name}'")]
    UnknownSuite { name: String },

    #[error("Io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
