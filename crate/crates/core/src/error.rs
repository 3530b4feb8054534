use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every singularity is reported as a structured error carrying the parameter
/// (when known) and the offending magnitude; nothing downstream sees a NaN.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jet order {order} outside supported range 0..={max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("jet order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("division by a jet with zero value part")]
    DivisionByZero,
    #[error("{op} domain error at value {value}")]
    Domain { op: &'static str, value: f64 },
    #[error("non-regular point at t = {t}: speed {speed}")]
    NonRegular { t: f64, speed: f64 },
    #[error("curvature vanishes at t = {t}: |γ'×γ''| = {cross}")]
    Flat { t: f64, cross: f64 },
    #[error("torsion vanishes at t = {t}: τ = {tau}")]
    TorsionZero { t: f64, tau: f64 },
    #[error("point outside open torus annulus at t = {t}: residual b²-(a-ρ)² = {residual}")]
    TorusDomain { t: f64, residual: f64 },
    #[error("parameter t = {t} inside guard band of cusp at {cusp}")]
    NearCusp { t: f64, cusp: f64 },
    #[error("singular parameter t = {t}: {what}")]
    Singular { t: f64, what: &'static str },
    #[error("parameter t = {t} outside domain [{min}, {max}]")]
    OutsideDomain { t: f64, min: f64, max: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("expression error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    /// Attaches a parameter value to errors raised below the level that knows `t`.
    pub fn at(self, t: f64) -> Self {
        match self {
            Error::NonRegular { speed, .. } => Error::NonRegular { t, speed },
            Error::Flat { cross, .. } => Error::Flat { t, cross },
            Error::TorsionZero { tau, .. } => Error::TorsionZero { t, tau },
            Error::TorusDomain { residual, .. } => Error::TorusDomain { t, residual },
            Error::Singular { what, .. } => Error::Singular { t, what },
            other => other,
        }
    }
}
