use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("not right-resolving: vertex `{vertex}` has two edges labeled `{label}`")]
    NotRightResolving { vertex: String, label: String },
    #[error("the presented shift is empty")]
    EmptyShift,
    #[error("letter `{0}` is not in the alphabet")]
    LetterNotInAlphabet(String),
    #[error("letter `{0}` already belongs to the alphabet")]
    LetterCollision(String),
    #[error("semigroup is not prolongable: S{element}S = {{0}}")]
    NotProlongable { element: String },
    #[error("the generator map does not generate the semigroup")]
    GensDoNotGenerate,
    #[error("invalid semigroup table: {0}")]
    InvalidTable(String),
    #[error("context bound {bound} is below the required {required}")]
    BoundTooSmall { bound: usize, required: usize },
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("the strong non-zero divisor subcategory is not a preorder")]
    NotAPreorder,
    #[error("the shift is not irreducible")]
    NotIrreducible,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable variant name, used for CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ParseError { .. } => "ParseError",
            Error::NotRightResolving { .. } => "NotRightResolving",
            Error::EmptyShift => "EmptyShift",
            Error::LetterNotInAlphabet(_) => "LetterNotInAlphabet",
            Error::LetterCollision(_) => "LetterCollision",
            Error::NotProlongable { .. } => "NotProlongable",
            Error::GensDoNotGenerate => "GensDoNotGenerate",
            Error::InvalidTable(_) => "InvalidTable",
            Error::BoundTooSmall { .. } => "BoundTooSmall",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::NotAPreorder => "NotAPreorder",
            Error::NotIrreducible => "NotIrreducible",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
