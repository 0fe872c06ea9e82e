use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input parsed but violates a dataset invariant (single class, missing column, ...).
    #[error("invalid dataset: {0}")]
    Validation(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Interpolation needs at least two rows of a class.
    #[error("degenerate class: {0}")]
    DegenerateClass(String),

    #[error("infeasible reduction: cannot remove {requested} of {available} rows (at least 2 must remain)")]
    InfeasibleReduction { requested: usize, available: usize },

    #[error("sample too small: {got} effective observations, need at least {needed}")]
    SampleTooSmall { got: usize, needed: usize },

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("fold {repetition}.{fold} failed: {source}")]
    FoldFailed {
        repetition: usize,
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by an impossible resampling/evaluation request
    /// rather than by malformed input.
    pub fn is_infeasible(&self) -> bool {
        match self {
            Error::Argument(_)
            | Error::DegenerateClass(_)
            | Error::InfeasibleReduction { .. }
            | Error::SampleTooSmall { .. } => true,
            Error::FoldFailed { source, .. } => source.is_infeasible(),
            _ => false,
        }
    }
}
