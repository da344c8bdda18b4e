use std::fmt;

use thiserror::Error;

use crate::point::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which family of tails a shift vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Row shifts `P_j`: `(i, j) -> (i - P_j, j)` for `i` beyond the window.
    Row,
    /// Column shifts `Q_i`: `(i, j) -> (i, j - Q_i)` for `j` beyond the window.
    Col,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Col => f.write_str("column"),
        }
    }
}

/// The first reason a candidate map fails to be a monotone injective partial map.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("points {0} and {1} have the same image")]
    InjectivityCollision(Point, Point),
    #[error("{0} <= {1} but their images are not ordered")]
    MonotonicityViolation(Point, Point),
    #[error("{axis} shift vector increases at index {index}")]
    ShiftVectorNotMonotone { axis: Axis, index: u32 },
    #[error("{axis} tail {index} shifts past coordinate 1")]
    TailUnderflow { axis: Axis, index: u32 },
    #[error("malformed representation: {0}")]
    Malformed(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("point coordinates must be positive, got ({i},{j})")]
    InvalidPoint { i: u32, j: u32 },
    #[error("window bound must be at least 1")]
    EmptyWindow,
    #[error("index {index} lies outside the window [1,{bound}]")]
    OutOfWindow { index: u32, bound: u32 },
    #[error("invalid element: {0}")]
    Invalid(#[from] Violation),
    #[error("generator index must be at least 1")]
    InvalidGeneratorIndex,
    #[error("operation requires an orientation-preserving element")]
    RequiresOrientationPreserving,
    #[error("stored orientation contradicts evaluation: {0}")]
    Consistency(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("search margin {margin} is below the required bound {required}")]
    MarginTooSmall { margin: u32, required: u32 },
    #[error("random generation gave up after {attempts} rejected attempts")]
    GenerationExhausted { attempts: u32 },
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
