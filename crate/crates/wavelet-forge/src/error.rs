use thiserror::Error;

/// Errors produced by construction and verification routines.
#[derive(Error, Debug)]
pub enum WaveletError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("eigenvalue 1 of the transition operator is not simple ({multiplicity} eigenvalues within tolerance); integer shifts are linearly dependent")]
    NonSimpleEigenvalue { multiplicity: usize },

    #[error("matching-filter recursion pole: 2^{{-{order}}} is an eigenvalue of the lowpass symbol at zero")]
    RecursionPole { order: usize },

    #[error("spectral gate violated: rho(boundary block) = {rho:.6} >= 2^(-1/2)")]
    SpectralGate { rho: f64 },

    #[error("boundary system has linearly dependent rows that could not be removed")]
    DependentShifts,

    #[error("cascade ambiguity: integer-grid eigenvalue 1 is not simple")]
    CascadeAmbiguity,

    #[error("polynomial reproduction coefficients have imaginary residual {residual:.3e}")]
    NonRealCoefficients { residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),

    #[error("vanishing-moment space too small for the requested order; increase the extension window")]
    IncreaseWindow,

    #[error("rank completion failed: {0}")]
    RankCompletion(String),

    #[error("insufficient dual candidates to reach full rank")]
    InsufficientCandidates,

    #[error("singular system while solving for dual wavelets; primal wavelets are not a Riesz sequence")]
    NonRieszWavelets,

    #[error("coarse extension failed: refinement matrix pair is singular at level {level}")]
    CoarseExtension { level: i32 },

    #[error("unknown fixture name: {0}")]
    UnknownFixture(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("symmetry check failed: {0}")]
    SymmetryCheck(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, WaveletError>;
