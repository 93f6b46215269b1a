use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A genotype violates a structural invariant. `position` indexes the
    /// flat integer serialization.
    #[error("invalid genotype at position {position} ({location}): {message}")]
    Structure {
        position: usize,
        location: GeneLocation,
        message: String,
    },

    #[error("genotype length {0} is not of the form n*4+3 with n >= 1")]
    Length(usize),

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("crossover requires equal node counts, got {left} and {right}")]
    NodeCountMismatch { left: usize, right: usize },

    #[error("image dimensions {got:?} do not match expected {expected:?}")]
    Dimensions {
        expected: (usize, usize),
        got: (usize, usize),
    },

    #[error("report does not qualify for the uncle archive")]
    NotUncle,

    #[error("config: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    Image { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn image(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Image {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// Where in a genotype a bad gene sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneLocation {
    Node(usize),
    Output(usize),
}

impl std::fmt::Display for GeneLocation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneLocation::Node(i) => write!(f, "node {i}"),
            GeneLocation::Output(i) => write!(f, "output {i}"),
        }
    }
}
