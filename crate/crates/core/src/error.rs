use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ray {index} is not primitive")]
    NonPrimitiveRay { index: usize },
    #[error("ray {index} has the wrong number of coordinates (expected {rank})")]
    RayDimension { index: usize, rank: usize },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone:?} is not simplicial")]
    NotSimplicial { cone: Vec<usize> },
    #[error("cone {cone:?} references an unknown ray")]
    UnknownRay { cone: Vec<usize> },
    #[error("cones {first:?} and {second:?} do not intersect along a common face")]
    OverlappingCones { first: Vec<usize>, second: Vec<usize> },
    #[error("ray {index} lies in no maximal cone")]
    DanglingRay { index: usize },
    #[error("cone {cone:?} is not in the fan")]
    ConeNotInFan { cone: Vec<usize> },
    #[error("{0} is not a facet of the given cone")]
    NotAFacet(String),
    #[error("fan is not unimodular")]
    NonUnimodular,
    #[error("projected ray {index} is not primitive in the quotient lattice")]
    ImagePrimitivityViolation { index: usize },
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan must be complete, simplicial and unimodular")]
    NotCompleteSimplicialUnimodular,
    #[error("point lies outside the support of the fan")]
    PointOutsideSupport,
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("vector is not primitive")]
    NonPrimitive,
    #[error("vector is not in the relative interior of the cone")]
    NotInteriorPoint,
    #[error("restriction maps do not commute around a codimension-two face")]
    IncompatibleRestrictions,
    #[error("sheaf kind has no single-class expansion: {0}")]
    UnsupportedSpec(String),
    #[error("evaluation point lies on a wall of some maximal cone")]
    DegeneratePoint,
    #[error("expected polynomial degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("Bernoulli index {0} is odd")]
    OddIndex(u32),
    #[error("fan rank {0} is odd")]
    OddRank(usize),
    #[error("fan is not locally convex")]
    NotLocallyConvex,
    #[error("no cone transverse to the subdivided cone")]
    NoTransverseCone,
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
