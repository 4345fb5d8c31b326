use thiserror::Error;

/// Failure modes of the constructors and checks in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiracError {
    #[error("neither AC = CA nor CD = DC holds within tolerance {tol:e} (residuals {ac_residual:e}, {cd_residual:e})")]
    NonCommutingBlocks { tol: f64, ac_residual: f64, cd_residual: f64 },
    #[error("top-left block is singular (|det A| = {det_abs:e})")]
    SingularA { det_abs: f64 },
    #[error("zero momentum: helicity needs a direction of motion")]
    ZeroMomentum,
    #[error("eta = {0} is outside [0, 1)")]
    EtaOutOfRange(f64),
    #[error("operation needs a massive state (m > 0)")]
    MasslessState,
    #[error("box volume must be positive, got {0}")]
    NonPositiveVolume(f64),
    #[error("spinor cannot be normalized: it has zero norm")]
    UnnormalizablePhi,
    #[error("direction vector must have unit length, |n| = {0}")]
    NonUnitDirection(f64),
    #[error("Lorentz index ({0}, {1}) out of range 0..=3")]
    IndexOutOfRange(usize, usize),
    #[error("unknown suite '{0}' (expected algebra, spinors, covariant, density, fermi or all)")]
    UnknownSuite(String),
    #[error("invalid physical constants: c = {c}, hbar = {hbar} (both must be positive)")]
    InvalidConstants { c: f64, hbar: f64 },
    #[error("invalid mass {0}: must be finite and non-negative")]
    InvalidMass(f64),
    #[error("bilinear expected to be real has imaginary part {0:e}")]
    ImaginaryResidue(f64),
    #[error("unknown check id '{0}'")]
    UnknownCheck(String),
    #[error("parameter grid is empty: it needs at least one eta value, theta and phi")]
    EmptyGrid,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
}

pub type Result<T> = std::result::Result<T, DiracError>;
