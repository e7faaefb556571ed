use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("ambient mismatch: ({0}, {1}) vs ({2}, {3})")]
    Ambient(usize, usize, usize, usize),
    #[error("leading data of the zero element")]
    EmptyElement,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("relator `{relator}` has nonzero exponent sum in `{generator}`")]
    NonzeroExponentSum { relator: String, generator: String },
    #[error("word has nonzero exponent sums {0:?}")]
    NotInNormalClosure(Vec<String>),
    #[error("torsion order must be at least 1, found {0}")]
    TorsionOrder(i64),
    #[error("step budget of {0} reduction steps exceeded")]
    BudgetExceeded(u64),
    #[error("word is not the identity")]
    NotIdentity,
    #[error("tameness violated in direction {direction:?} (f = {value})")]
    TamenessViolation { direction: Vec<f64>, value: f64 },
    #[error("negative input to {0}")]
    Negative(&'static str),
    #[error("{0}")]
    Shape(String),
}

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }
}
