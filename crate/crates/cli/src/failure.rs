use wllab_core::Error;

pub const USAGE: u8 = 1;
pub const INPUT: u8 = 2;
pub const CAP: u8 = 3;
pub const UNDECIDED: u8 = 4;
pub const EXPECTATION: u8 = 5;

/// Everything that ends a run with a nonzero exit status.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0} required expectation(s) failed")]
    Expectations(usize),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => USAGE,
            Failure::Io { .. } | Failure::Input { .. } => INPUT,
            Failure::Core(e) => match e {
                Error::ZeroArity | Error::InvalidParameter(_) => USAGE,
                Error::CapExceeded { .. } | Error::BudgetExceeded => CAP,
                Error::SimilarityUndecided { .. } => UNDECIDED,
                _ => INPUT,
            },
            Failure::Expectations(_) => EXPECTATION,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Failure::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn input(path: &std::path::Path, message: impl ToString) -> Self {
        Failure::Input {
            path: path.display().to_string(),
            message: message.to_string(),
        }
    }
}
