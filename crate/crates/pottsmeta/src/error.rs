use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("lattice {k}x{l} is too small: both sides must be at least 3")]
    LatticeTooSmall { k: usize, l: usize },
    #[error("spin count q={0} must be at least 3")]
    BadSpinCount(u8),
    #[error("spin {spin} outside 1..={q}")]
    SpinOutOfRange { spin: u8, q: u8 },
    #[error("vertex ({row}, {col}) outside {k}x{l} lattice")]
    VertexOutOfRange { row: usize, col: usize, k: usize, l: usize },
    #[error("move to spin {0} leaves the vertex unchanged")]
    NoOpMove(u8),
    #[error("field h={0} must satisfy 0 < h < 1")]
    FieldOutOfRange(f64),
    #[error("2/h = {0} is an integer; the critical length is degenerate")]
    DegenerateField(f64),
    #[error("configuration does not match the model: {0}")]
    ShapeMismatch(String),
    #[error("snapshot parse error: {0}")]
    Parse(String),
    #[error("state space of {states} configurations exceeds the enumeration cap {cap}")]
    EnumerationCap { states: f64, cap: usize },
    #[error("search budget of {0} states exhausted")]
    BudgetExhausted(usize),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
