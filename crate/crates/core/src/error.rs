use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors. Everything the library can refuse is one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Schubert index: {0}")]
    InvalidIndex(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("incompatible Grassmannians: Gr({0},{1}) vs Gr({2},{3})")]
    IncompatibleGrassmannian(usize, usize, usize, usize),
    #[error("Gromov-Witten invariants need at least 3 classes, got {0}")]
    Arity(usize),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("boundary divisor: level {level} is not above lambda_1 = {lambda1} at point {point}")]
    BoundaryDivisor { point: usize, level: i64, lambda1: i64 },
    #[error("invalid divisor class: {0}")]
    InvalidDivisor(String),
    #[error("invalid wall: {0}")]
    InvalidWall(String),
    #[error("weight lies on the wall {0}")]
    DegenerateBase(String),
    #[error("no wall in range")]
    NoneFound,
    #[error("first wall {0} is neither of the two expected walls")]
    UnexpectedFirstWall(String),
    #[error("weight is not on the wall (residual {0})")]
    NotOnWall(String),
    #[error("simultaneous walls at {0}: perturb the weight")]
    PerturbationRequired(String),
    #[error("wall {0} has an empty crossing center")]
    EmptyCenter(String),
    #[error("splitting sign violation: {0}")]
    SplittingSign(String),
    #[error("n = {n} too small for splitting types (term {term} < -1)")]
    NTooSmall { n: usize, term: i64 },
    #[error("need n > 2r, got r = {r}, n = {n}")]
    NotAboveTwiceRank { r: usize, n: usize },
    #[error("divisor class lies outside the effective cone: {0}")]
    OutsideCone(String),
    #[error("divisor class lies on a face of codimension at least 2 ({0} tight inequalities)")]
    CornerNotSupported(usize),
    #[error("divisor class of {0} does not fit in 64-bit integers")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}
