use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid precision context: {0}")]
    InvalidPrecision(String),

    #[error("{value} lies on the branch cut [1, inf); a side of the cut must be supplied")]
    AmbiguousBranch { value: Complex64 },

    #[error("series needs {needed} terms, cap is {cap}")]
    PrecisionUnreachable { needed: usize, cap: usize },

    #[error("chart transition in direction {direction} leaves the domain of chart U_{chart}")]
    SingularTransition { chart: i64, direction: i8 },

    #[error("points live on different curves (q = {left} vs q = {right})")]
    CurveMismatch { left: Complex64, right: Complex64 },

    #[error("the node of the nodal fiber is not a representable point")]
    NodeNotRepresentable,

    #[error("evaluation within tolerance of a divisor point w = {point}")]
    NearSingularity { point: Complex64 },

    #[error("monodromy {u} is a power of q; the bundle is trivial")]
    TrivialBundle { u: Complex64 },

    #[error("contour integration degenerate: {0}")]
    ContourDegeneracy(String),

    #[error("degenerate divisor: {0}")]
    DegenerateDivisor(String),

    #[error("cycle has degree {degree}; the Albanese map needs degree zero")]
    Filtration { degree: i64 },

    #[error("degenerate symbol: {0}")]
    DegenerateSymbol(String),

    #[error("cochain is not closed at ({x:?}, {y:?}, {z:?})")]
    NotACocycle {
        x: [i64; 2],
        y: [i64; 2],
        z: [i64; 2],
    },

    #[error("declared relation {index} does not hold numerically (residual {residual:e})")]
    RelationViolated { index: usize, residual: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Numeric failures (contours, truncation) as opposed to bad input.
    pub fn is_numeric_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::PrecisionUnreachable { .. }
                | Error::ContourDegeneracy(_)
                | Error::NearSingularity { .. }
        )
    }
}
