use thiserror::Error;

use crate::incidence::{Diagnostic, Point};

/// Problems found while parsing or validating an incidence geometry.
///
/// Line indices are 0-based positions in input order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("input contains no lines")]
    Empty,
    #[error("line {line}: point label {label} is outside 1..={point_count}")]
    InvalidLabel {
        line: usize,
        label: u64,
        point_count: u32,
    },
    #[error("line {line}: a line needs at least two points")]
    LineTooShort { line: usize },
    #[error("line {line}: point {point} appears twice")]
    DuplicatePoint { line: usize, point: Point },
    #[error("line {line}: duplicates line {first}")]
    DuplicateLine { line: usize, first: usize },
    #[error("line {line}: points {} and {} already lie on line {other}", .pair.0, .pair.1)]
    Linearity {
        line: usize,
        other: usize,
        pair: (Point, Point),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("not a configuration: {0}")]
    NotConfiguration(Diagnostic),
    #[error("coloring has {found} entries but there are {expected} lines")]
    ColoringLength { expected: usize, found: usize },
    #[error("line index {index} is out of range for {line_count} lines")]
    LineIndex { index: usize, line_count: usize },
    #[error("point {point} is not on line {line}")]
    PointNotOnLine { point: Point, line: usize },
    #[error("line subset is empty")]
    EmptySubset,
    #[error("cannot join a ({}, {}) configuration with a ({}, {}) configuration", .left.0, .left.1, .right.0, .right.1)]
    ParameterMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{lines} lines exceeds the exhaustive limit of {limit}; use branch-and-bound")]
    ExhaustiveLimit { lines: usize, limit: usize },
    #[error("{lines} lines exceeds the search cap of {cap}")]
    LineCap { lines: usize, cap: usize },
    #[error("n = {n} is outside the supported range {min}..={max}")]
    VertexRange { n: usize, min: usize, max: usize },
    #[error("v = {v} is outside the supported range 7..=11")]
    EnumerationRange { v: usize },
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("unknown builtin configuration `{0}`")]
    UnknownBuiltin(String),
}

impl Error {
    /// True for refusals caused by size caps or time budgets rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::ExhaustiveLimit { .. }
                | Error::LineCap { .. }
                | Error::VertexRange { .. }
                | Error::EnumerationRange { .. }
                | Error::BudgetExhausted
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
