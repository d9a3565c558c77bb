use thiserror::Error;

pub type Result<T> = std::result::Result<T, TomoError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TomoError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("point ({p}, {q}) lies outside the grid box [-{half_width}, {half_width}]^2")]
    OutOfBox { p: f64, q: f64, half_width: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("(mu, nu) = (0, 0) has no direction; the symplectic tomogram is undefined there")]
    ZeroRadius,

    #[error("window support radius {support} exceeds quadrature half-range {range}")]
    WindowTooWide { support: f64, range: f64 },

    #[error("window has mass {mass}, expected 1")]
    NotNormalized { mass: f64 },

    #[error("characteristic value |Xi(-1)| = {0:e} vanishes; the window annihilates the unit frequency")]
    VanishingCharacteristic(f64),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("quadrature did not converge in {what}: estimates differ by {diff:e}")]
    NoConvergence { what: &'static str, diff: f64 },

    #[error("radial integrand has not decayed at the cutoff (tail estimate {0:e})")]
    RadialTail(f64),

    #[error("imaginary residue {0:e} of the reconstruction integral exceeds tolerance")]
    ImaginaryResidue(f64),

    #[error("unknown state `{0}`; valid ids: single-photon, vacuum")]
    UnknownState(String),
}

impl TomoError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        TomoError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
