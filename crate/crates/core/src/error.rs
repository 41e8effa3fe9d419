use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("images do not form a bijection")]
    NotBijection,
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("subgroup is not contained in the ambient group")]
    NotContained,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("index {index} exceeds bound {bound}")]
    IndexBound { index: String, bound: u64 },
    #[error("size bound exceeded: {0}")]
    Bound(String),
    #[error("not a p-group")]
    NotPGroup,
    #[error("unsupported shape: {0}")]
    Unsupported(String),
    #[error("subgroup is not p-centric")]
    NotCentric,
    #[error("module: {0}")]
    Module(String),
    #[error("element class not labeled: {0}")]
    Unlabeled(String),
    #[error("outer automorphism data inconsistent: {0}")]
    OutData(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group order {got} does not match expected {expected}")]
    OrderMismatch { expected: String, got: String },
    #[error("ambiguous class fingerprints: {0}")]
    AmbiguousClasses(String),
    #[error("prime {p} does not divide the group order")]
    PrimeDoesNotDivide { p: u64 },
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
