use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator sets differ")]
    GeneratorMismatch,
    #[error("degree {degree} exceeds the working degree {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },
    #[error("cyclic constant binding involving {0}")]
    CyclicBinding(String),
    #[error("series precondition violated: {0}")]
    SeriesDomain(String),
    #[error("unknown builtin series `{0}`")]
    UnknownSeries(String),
    #[error("relation {0} has a non-rational coefficient")]
    NonRationalRelation(usize),
    #[error("polynomial is not in the ideal (residue {0})")]
    NotInIdeal(String),
    #[error("{0} is out of range")]
    OutOfRange(String),
    #[error("inconsistent presentation in degree {0}: a syzygy carries a nonzero form")]
    Inconsistent(u32),
    #[error("result does not have the expected shape: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
