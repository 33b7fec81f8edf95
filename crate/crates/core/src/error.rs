use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty diagram (use the dedicated unknot constructor for 0 crossings)")]
    EmptyDiagram,

    #[error("arc {label} appears {count} times, expected exactly 2")]
    ArcMultiplicity { label: u32, count: usize },

    #[error("diagram has {0} components, only knots are supported")]
    MultipleComponents(usize),

    #[error("inconsistent orientation at crossing {0}: tuples must start at the incoming under-strand")]
    InconsistentOrientation(usize),

    #[error("diagram is not planar ({faces} faces, expected {expected})")]
    NonPlanar { faces: usize, expected: usize },

    #[error("odd entry {0} in DT code")]
    OddDtEntry(i64),

    #[error("DT code is not realizable: {0}")]
    NonRealizable(String),

    #[error("crossing index {index} out of range for {count} crossings")]
    CrossingIndex { index: usize, count: usize },

    #[error("braid letter index out of range: {0}")]
    BraidIndex(String),

    #[error("braid closure is a {0}-component link, not a knot")]
    ClosureNotKnot(usize),

    #[error("braid word is not in quasipositive form: {0}")]
    NotQuasipositive(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("no value of s admits a nonnegative decomposition of the Khovanov polynomial")]
    DecompositionFailed,

    #[error("decomposition is not unique: candidates {0:?}")]
    DecompositionNotUnique(Vec<i32>),

    #[error("empty homology support")]
    EmptySupport,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("specialization produced a half-integer exponent or negative z power (not a knot?)")]
    BadSpecialization,

    #[error("s is ambiguous {0:?}; check inconclusive")]
    Inconclusive(Vec<i32>),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
