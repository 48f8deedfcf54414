use thiserror::Error;

/// Every failure the library can report. `name()` gives the stable identifier
/// printed by the command-line front end.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("iteration did not converge after {iterations} steps (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("eigenvalue phase {phase:.6} outside the principal domain (margin {margin:.3e})")]
    OutsideInjectivityDomain { phase: f64, margin: f64 },
    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid root system presentation: {0}")]
    InvalidPresentation(String),
    #[error("unsupported Lie type {0}")]
    UnsupportedType(String),
    #[error("element is not in the complement of the centralizer (torus component {torus_part:.3e})")]
    NotInComplement { torus_part: f64 },
    #[error("element is not regular (minimal eigenvalue gap {gap:.3e})")]
    NotRegular { gap: f64 },
    #[error("target norm {norm:.6e} exceeds the admissible bound {limit:.6e}")]
    TargetTooLarge { norm: f64, limit: f64 },
    #[error("adjoint spectrum {norm:.6} exceeds the safe radius {limit:.6}")]
    SpectrumTooLarge { norm: f64, limit: f64 },
    #[error("algebra has no matrix realization")]
    NoRealization,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{stage}: {source}")]
    AtStage {
        stage: &'static str,
        source: Box<Error>,
    },
}

impl Error {
    /// Stable identifier of the underlying failure (stage wrappers are looked through).
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::OutsideInjectivityDomain { .. } => "OutsideInjectivityDomain",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::NotApplicable(_) => "NotApplicable",
            Error::InvalidPresentation(_) => "InvalidPresentation",
            Error::UnsupportedType(_) => "UnsupportedType",
            Error::NotInComplement { .. } => "NotInComplement",
            Error::NotRegular { .. } => "NotRegular",
            Error::TargetTooLarge { .. } => "TargetTooLarge",
            Error::SpectrumTooLarge { .. } => "SpectrumTooLarge",
            Error::NoRealization => "NoRealization",
            Error::Malformed(_) => "Malformed",
            Error::AtStage { source, .. } => source.name(),
        }
    }

    /// Pipeline stage that failed, if recorded.
    pub fn stage(&self) -> Option<&'static str> {
        match self {
            Error::AtStage { stage, .. } => Some(stage),
            _ => None,
        }
    }

    pub(crate) fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| match source {
            // keep the innermost stage
            e @ Error::AtStage { .. } => e,
            e => Error::AtStage {
                stage,
                source: Box::new(e),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
