use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u32, modulus: u32 },

    #[error("value {value} out of range (bound {bound})")]
    OutOfRange { value: u64, bound: u64 },

    #[error("word has length {found}, expected {expected}")]
    WordLength { expected: usize, found: usize },

    #[error("not a permutation: image {image} is hit by both {first} and {second}")]
    InvalidPermutation {
        image: usize,
        first: usize,
        second: usize,
    },

    #[error("table has {found} entries, expected {expected}")]
    TableLength { expected: usize, found: usize },

    #[error("dimension mismatch: expected k={expected_k} n={expected_n}, found k={found_k} n={found_n}")]
    DimensionMismatch {
        expected_k: u32,
        expected_n: usize,
        found_k: u32,
        found_n: usize,
    },

    #[error("size guard exceeded: {what} would need {requested} entries (cap {cap})")]
    SizeGuard {
        what: &'static str,
        requested: u128,
        cap: u64,
    },

    #[error("wire {wire} out of range for {wires} wires")]
    WireOutOfRange { wire: usize, wires: usize },

    #[error("wire {0} used more than once in a gate")]
    WireCollision(usize),

    #[error("matrix is not invertible modulo {0}")]
    NotInvertible(u32),

    #[error("no row combination makes the pivot a unit")]
    NoUnitCombination,

    #[error("gate {0} is not linear")]
    NonLinearGate(String),

    #[error("permutation is not affine")]
    NotAffine,

    #[error("general synthesis needs an odd modulus k >= 3, got k={0}; bijections of Z_k^n are not finitely generated for even k")]
    EvenModulusUnsupported(u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
