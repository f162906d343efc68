use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid Cayley table: {0}")]
    InvalidCayleyTable(String),

    #[error("arguments belong to different groups")]
    MixedGroups,

    #[error("operation requires a permutation group")]
    NotPermutationGroup,

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("set must contain at least two elements")]
    TooFewElements,

    #[error("support sizes {m} + {r} exceed n - 2 = {limit}")]
    SupportSumTooLarge { m: usize, r: usize, limit: usize },

    #[error("elements lie in different conjugacy classes")]
    DifferentClasses,

    #[error("eigenspace separation failed after {attempts} random class-matrix combinations")]
    EigSeparationFailure { attempts: usize },

    #[error("group has {classes} conjugacy classes, beyond the table cap {cap}")]
    TooManyClasses { classes: usize, cap: usize },

    #[error("character table has not passed the orthogonality audit")]
    UnverifiedTable,

    #[error("character table cache: schema version {found} does not match {expected}")]
    CacheVersionMismatch { found: u64, expected: u64 },

    #[error("character table cache: group fingerprint mismatch ({0})")]
    CacheFingerprintMismatch(String),

    #[error("inconsistent moments: E[X^2] = {e2} < E[X]^2 = {e1_sq}")]
    InconsistentMoments { e2: f64, e1_sq: f64 },

    #[error("exact enumeration requires |G| <= {cap}, but |G| = {order}")]
    ExactEnumerationCapExceeded { order: usize, cap: usize },

    #[error("no conjugator realizes the required sub-permutation relation")]
    NoRealization,

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: u32, order: usize },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
