use thiserror::Error;

/// Errors surfaced by diagram construction, moves, gluing, and surgery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge involution or vertex rotation is not a well-formed permutation")]
    PermutationMalformed,
    #[error("two components of family {0} share a vertex")]
    FamilyDisjointnessViolated(String),
    #[error("cell map is disconnected but not flagged multi-component")]
    DisconnectedWithoutFlag,
    #[error("rotation system inconsistent with an oriented surface")]
    NonOrientable,
    #[error("component is an arc, not a closed curve")]
    ComponentIsArc,
    #[error("curve is not embedded or has blocked surgery site")]
    CurveNotEmbedded,
    #[error("no such marked point")]
    NoSuchMarkedPoint,
    #[error("corridor crosses a same-family curve")]
    CorridorBlocked,
    #[error("arcs may not slide over arcs")]
    ArcOverArcForbidden,
    #[error("stabilization face contains a marked point")]
    FaceContainsMarkedPoint,
    #[error("destabilization certificate no longer matches the diagram")]
    CertificateStale,
    #[error("connected-sum face is marked")]
    MarkedFace,
    #[error("inadmissible trisection parameters")]
    InadmissibleParameters,
    #[error("intersection rank exceeds genus; not a diagram")]
    RankExceedsGenus,
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("boundary monodromies are incompatible: {0} vs {1}")]
    MonodromyMismatch(i64, i64),
    #[error("self-intersection is {0}, expected 0")]
    SelfIntersectionNotZero(i64),
    #[error("self-intersection is {0}, expected {1}")]
    WrongSelfIntersection(i64, i64),
    #[error("page is not an annulus")]
    PageNotAnnulus,
    #[error("move script inapplicable at index {0}")]
    InapplicableAt(usize),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("unsupported file format version {0}")]
    VersionUnsupported(u32),
    #[error("invalid cell map: {0}")]
    InvalidMap(String),
    #[error("invalid operand: {0}")]
    InvalidOperand(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
