use alloc::string::String;

/// Errors raised by the exact and numeric pipelines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate dependence: the {rows}x{cols} matrix has rank below {rows}")]
    DegenerateDependence { rows: usize, cols: usize },
    #[error("degenerate generator set: the Jacobian determinant of the primary invariants vanishes")]
    DegenerateGenerators,
    #[error("not expressible in the generators (X-degree {degree})")]
    NotExpressible { degree: u32 },
    #[error("group generator {index} does not have determinant 1")]
    NotUnimodular { index: usize },
    #[error("pullback for generator {name} is required but was not supplied")]
    MissingPullback { name: String },
    #[error("irregular singularity at {point}")]
    IrregularSingularity { point: String },
    #[error("non-rational exponents unsupported at {point}")]
    NonRationalExponents { point: String },
    #[error("logarithmic case unsupported: repeated exponents")]
    RepeatedExponents,
    #[error("outside the supported scope: {0}")]
    Scope(String),
    #[error("no initial point found within the retry budget")]
    NoInitialPoint,
    #[error("only ramified points found: the Jacobian is near-singular at every root")]
    OnlyRamifiedPoints,
    #[error("singular Jacobian at the base point")]
    SingularJacobian,
    #[error("integration stalled near z = {re} + {im}i")]
    IntegrationStalled { re: f64, im: f64 },
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Degenerate,
    Analysis,
    Verification,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::DivisionByZero | Error::InvalidInput(_) | Error::MissingPullback { .. } => {
                ErrorClass::Validation
            }
            Error::DegenerateDependence { .. }
            | Error::DegenerateGenerators
            | Error::NotExpressible { .. }
            | Error::NotUnimodular { .. } => ErrorClass::Degenerate,
            Error::IrregularSingularity { .. }
            | Error::NonRationalExponents { .. }
            | Error::RepeatedExponents
            | Error::Scope(_) => ErrorClass::Analysis,
            Error::NoInitialPoint
            | Error::OnlyRamifiedPoints
            | Error::SingularJacobian
            | Error::IntegrationStalled { .. } => ErrorClass::Verification,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
