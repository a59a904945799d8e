use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty or degenerate input: {0}")]
    Degenerate(String),
    #[error("torsion present: {0}")]
    Torsion(String),
    #[error("resonant parameter: {0}")]
    Resonant(String),
    #[error("not a perfect surface: {0}")]
    NotPerfect(String),
    #[error("no transformation at site: {0}")]
    NotApplicable(String),
    #[error("enumeration cap {cap} exceeded ({found} surfaces found)")]
    CapExceeded { cap: usize, found: usize },
    #[error("inconsistent dessin data: {0}")]
    Inconsistent(String),
    #[error("not a square matrix: {0}")]
    NotSquare(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
