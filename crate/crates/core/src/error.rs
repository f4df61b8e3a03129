use alloc::string::String;

use crate::lattice::LatticePoint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate segment: both endpoints are {0}")]
    DegenerateSegment(LatticePoint),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("coordinate {0} is outside the supported range")]
    CoordinateOutOfRange(i64),
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
    #[error("weight function is missing a value at {0}")]
    MissingWeight(LatticePoint),
    #[error("subdivision is not regular")]
    NonRegular,
    #[error("subdivision is not nodal")]
    NotNodal,
    #[error("subdivision is not simple and nodal")]
    NotSimpleNodal,
    #[error("rank {rank} differs from the Severi dimension {dim}")]
    NotMaxRank { rank: usize, dim: usize },
    #[error("polygon is not a parallelogram")]
    NotParallelogram,
    #[error("delta {delta} exceeds the number of interior lattice points {interior}")]
    DeltaTooLarge { delta: usize, interior: usize },
    #[error("delta {delta} leaves no point conditions on {points} lattice points")]
    DeltaExceedsDimension { delta: usize, points: usize },
    #[error("the zero Puiseux scalar has no valuation")]
    ZeroScalar,
    #[error("polynomial support is not contained in the polygon: {0}")]
    SupportMismatch(LatticePoint),
    #[error("linear spaces are not complementary")]
    NotComplementary,
    #[error("a non-primitive parallelogram is present; the regular-point hypothesis must be asserted")]
    RegularPointHypothesisRequired,
    #[error("point configuration is degenerate: {0}")]
    ConfigDegenerate(String),
    #[error("expected {expected} points, got {got}")]
    ConfigSize { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
