use std::fmt;

use thiserror::Error;

/// Why a center set fails the general-position condition for a Cremona move.
///
/// Labels are 1-based, matching the point labels of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarViolation {
    /// The four centers lie on a common plane.
    CoplanarCenters { centers: [usize; 4] },
    /// A non-center point lies on the plane through three of the centers.
    PointOnPlane { plane: [usize; 3], point: usize },
}

impl fmt::Display for StarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarViolation::CoplanarCenters { centers } => {
                write!(f, "centers {centers:?} are coplanar")
            }
            StarViolation::PointOnPlane { plane, point } => {
                write!(f, "point {point} lies on the plane through points {plane:?}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate point: all homogeneous coordinates are zero")]
    DegeneratePoint,

    #[error("degenerate frame: points {0:?} are coplanar")]
    DegenerateFrame([usize; 4]),

    #[error("projective map is singular")]
    SingularMap,

    #[error("configuration has no five points in general position")]
    NoFrame,

    #[error("configuration needs at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },

    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),

    #[error("invalid center set {labels:?} for k = {k}")]
    InvalidCenters { labels: Vec<usize>, k: usize },

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("condition (*) fails: {0}")]
    Star(StarViolation),

    #[error("condition (*) fails at move {step}: {violation}")]
    StarAtStep { step: usize, violation: StarViolation },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("random configuration not found after {0} draws")]
    Generation(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
