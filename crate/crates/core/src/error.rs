use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("extension degree {degree} exceeds the configured bound {bound}")]
    ExtensionTooLarge { degree: u32, bound: u32 },
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("intermediate h-degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("operation requires deg f > 1 (deg f = {0}); the deg f <= 1 case is a generalized down-up algebra")]
    UnsupportedDegF(i64),
    #[error("operation requires q != 0")]
    QZero,
    #[error("invalid module specification: {0}")]
    InvalidSpec(String),
    #[error("search space of size {size} exceeds the bound {bound}")]
    SearchSpaceTooLarge { size: u128, bound: u128 },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

impl Error {
    /// Stable machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::ZeroArgument => "ZeroArgument",
            Error::InvalidField(_) => "InvalidField",
            Error::ExtensionTooLarge { .. } => "ExtensionTooLarge",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::DegreeOverflow { .. } => "DegreeOverflow",
            Error::UnsupportedDegF(_) => "UnsupportedDegF",
            Error::QZero => "QZero",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::SearchSpaceTooLarge { .. } => "SearchSpaceTooLarge",
            Error::Syntax { .. } => "SyntaxError",
            Error::DimensionMismatch(_) => "DimensionMismatch",
        }
    }
}
