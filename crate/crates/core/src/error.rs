use thiserror::Error;

pub type Result<T, E = FrftError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrftError {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("order {order} is within 1e-6 of an even integer; use frft() for the exact path")]
    SingularOrder { order: f64 },

    #[error("symmetric LCT matrix has a zero off-diagonal entry")]
    SingularMatrix,

    #[error("signal of length {len} is shorter than the required {min}")]
    TooShort { len: usize, min: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("length {len} exceeds the limit of {max} for this O(N^2) operation")]
    TooLarge { len: usize, max: usize },
}
