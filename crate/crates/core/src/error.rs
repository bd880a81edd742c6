use thiserror::Error;

/// Distance below which an argument is treated as sitting on a gamma pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The argument lies within [`POLE_TOLERANCE`] of a pole.
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A moment order whose real part is outside the admissible strip.
    #[error("real part {rho} outside the strip ({lo}, {hi})")]
    Strip { rho: f64, lo: f64, hi: f64 },

    #[error("empty strip: {0}")]
    EmptyStrip(String),

    #[error("quadrature did not converge: achieved error {achieved:.3e}, target {target:.3e}")]
    Quadrature { achieved: f64, target: f64 },

    #[error("every sample is exactly zero")]
    AllSamplesDegenerate,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
