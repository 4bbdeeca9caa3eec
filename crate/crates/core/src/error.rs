use thiserror::Error;

/// Errors raised by the engine. Law failures are not errors; they are
/// reported through [`crate::nat::IsoReport`] and friends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size cap exceeded while computing {what}: {size} > {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("variance mismatch: {0}")]
    Variance(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid {kind}: {violations:?}")]
    Invalid { kind: String, violations: Vec<String> },

    /// A canonical map failed its naturality certificate. This points at an
    /// engine bug, never at a law failure.
    #[error("canonical map is not natural: {0}")]
    NotNatural(String),

    /// A map out of a quotient depended on the chosen representative.
    #[error("ill-defined on classes: {0}")]
    IllDefined(String),

    #[error("lookup failed: {0}")]
    Lookup(String),

    #[error("unresolved name `{0}`")]
    Unresolved(String),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("no redex for {0}")]
    NoRedex(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: impl Into<String>, size: u128, cap: u128) -> Self {
        Error::CapExceeded { what: what.into(), size, cap }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

/// Size limits shared by every computation that can blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest disjoint union a coend may quotient.
    pub coend: usize,
    /// Largest number of partial assignments explored while enumerating
    /// natural families (ends and fiber hom-sets).
    pub family: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { coend: 1_000_000, family: 1_000_000 }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits { coend: cap, family: cap }
    }
}
