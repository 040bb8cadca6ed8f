use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid layout: {0}")]
    Layout(String),

    #[error("wire {wire} is out of range for a register of {wires} wires")]
    WireOutOfRange { wire: usize, wires: usize },

    #[error("level {level} does not fit on wire {wire} of dimension {dim}")]
    LevelOutOfRange { wire: usize, level: u8, dim: u8 },

    #[error("gate needs dimension {needed} on wire {wire}, above the supported maximum of 4")]
    DimensionOverflow { wire: usize, needed: u8 },

    #[error("basis index space of this layout does not fit in 128 bits")]
    IndexOverflow,

    #[error("invalid gate: {0}")]
    Gate(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    /// True for failures caused by a size limit rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_) | Error::IndexOverflow)
    }
}
