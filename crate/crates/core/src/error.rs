use thiserror::Error;

/// Failures raised by the exact kernels.
///
/// Everything except [`Error::Invariant`] is a caller-side precondition
/// violation; `Invariant` means an identity that must hold by construction
/// did not, which points at a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("character component {0} is zero")]
    ZeroCharacter(usize),
    #[error("trivial character: the exact sequence needs a nontrivial local system")]
    TrivialCharacter,
    #[error("{what} = {value} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("transition determinant is not a unit: {0}")]
    NonUnitDeterminant(String),
    #[error("filtration invalid: {0}")]
    Filtration(String),
    #[error("invalid quaternionic structure: {0}")]
    Quaternionic(String),
    #[error("linearization shift {0} collides with a fixed-component weight")]
    ShiftCollision(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Dimension(_) => "dimension",
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroCharacter(_) => "zero_character",
            Error::TrivialCharacter => "trivial_character",
            Error::OutOfRange { .. } => "out_of_range",
            Error::NonUnitDeterminant(_) => "non_unit_determinant",
            Error::Filtration(_) => "filtration",
            Error::Quaternionic(_) => "quaternionic",
            Error::ShiftCollision(_) => "shift_collision",
            Error::Precondition(_) => "precondition",
            Error::Invariant(_) => "invariant",
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
