use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NonTrivalentVertex { vertex: usize, degree: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("genus {genus} is below the minimum of 2")]
    GenusTooSmall { genus: usize },
    #[error("genus {genus} is above the supported maximum of {max}")]
    GenusTooLarge { genus: usize, max: usize },
    #[error("empty edge list")]
    EmptyGraph,
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("reduction along edge {edge} is degenerate: {reason}")]
    DegenerateReduction { edge: usize, reason: &'static str },
    #[error("edge {edge} is a bridge; removing it disconnects the graph")]
    DisconnectedReduction { edge: usize },
    #[error("curve is not trivalent")]
    NotTrivalent,
    #[error("canonical system has base points at edges {0:?}")]
    HasBasePoints(Vec<usize>),
    #[error("invalid marked curve: {0}")]
    InvalidCurve(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("objects live on different graphs")]
    GraphMismatch,
    #[error("loop and circle words belong to different graphs")]
    MismatchedGraph,
    #[error("gluing datum on edge {edge} is invalid: {reason}")]
    InvalidGluing { edge: usize, reason: &'static str },
    #[error("boundary classes do not match across edge {edge}")]
    GluingObstruction { edge: usize },
    #[error("no unimodular conjugator over Q(i) across edge {edge}")]
    NoExactConjugator { edge: usize },
    #[error("pants relation fails at vertex {vertex}")]
    PantsRelation { vertex: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("representation violates the surface relation")]
    RelationViolated,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}
