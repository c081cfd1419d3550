use thiserror::Error;

use crate::coeff::SymbolKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("symbol `{name}` already declared as {declared:?}, cannot redeclare as {requested:?}")]
    SymbolKind {
        name: String,
        declared: SymbolKind,
        requested: SymbolKind,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("`{0}` is not an independent variable of the grid")]
    NotAnAxis(String),
    #[error("axis `{0}` has a numeric step; a spacing symbol is required here")]
    NoSpacingSymbol(String),
    #[error("expansion point is singular: denominator `{denominator}` vanishes when spacings are 0")]
    SingularExpansion { denominator: String },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("duplicate leader `{0}` in Janet assignment")]
    DuplicateLeader(String),
    #[error("equation {index} has a zero initial or separant")]
    ZeroInitial { index: usize },
    #[error("no nonzero Taylor component below weighted order {0}")]
    LimitNotFound(i64),
    #[error("negative shift after pre-shift in `{0}`")]
    NegativeShift(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
