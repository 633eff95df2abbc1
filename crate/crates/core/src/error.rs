use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. Variants are grouped by the layer
/// that raises them, but a single enum keeps the CLI and FFI mappings flat.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // network construction
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge {u}-{v} has zero conductance")]
    ZeroConductance { u: usize, v: usize },
    #[error("vertex {vertex} out of range (network has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("network must have at least one vertex")]
    EmptyNetwork,

    // oracles
    #[error("vertices {0} and {1} lie in different components")]
    DisconnectedPair(usize, usize),
    #[error("network is disconnected")]
    Disconnected,
    #[error("grounded Laplacian is singular")]
    SingularSystem,
    #[error("u and v must be distinct (got {0} twice)")]
    SameVertex(usize),

    // hosts and blow-ups
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid host graph: {0}")]
    InvalidHost(String),
    #[error("host vertex {0} has no neighbours")]
    IsolatedHostVertex(usize),
    #[error("host graph is disconnected")]
    DisconnectedHost,
    #[error("invalid blow-up parameters: {0}")]
    InvalidSpec(String),
    #[error("vertex does not belong to this instance: {0}")]
    InvalidVertex(String),

    // transforms
    #[error("invalid terminal set: {0}")]
    InvalidTerminals(String),
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    DegreeNotTwo { vertex: usize, degree: usize },
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    DegreeNotThree { vertex: usize, degree: usize },
    #[error("vertex {0} is a terminal")]
    VertexIsTerminal(usize),
    #[error("centre vertex {0} is a terminal")]
    CenterIsTerminal(usize),
    #[error("rewrite would create a zero-resistance edge between {0} and {1}")]
    ZeroResistanceEdge(usize, usize),
    #[error("fewer than two parallel edges between {0} and {1}")]
    NotParallel(usize, usize),
    #[error("parallel edges between {0} and {1} have zero total conductance")]
    TotalConductanceZero(usize, usize),
    #[error("vertices {0:?} are not joined by exactly one edge per pair")]
    NotATriangle([usize; 3]),
    #[error("resistance sum is zero")]
    SumZero,
    #[error("vertices do not induce a unit-resistance clique: {0}")]
    NotAUnitClique(String),
    #[error("bipartite weights are not of the required form: {0}")]
    NonUniformWeights(String),
    #[error("total weight a is zero")]
    ZeroA,
    #[error("denominator n*r + 1 is zero")]
    DenominatorZero,
    #[error("not a pendant block: {0}")]
    NotAPendantBlock(String),
    #[error("terminal {0} lies inside the block")]
    TerminalInsideBlock(usize),

    // formulas
    #[error("closed form requires a complete host")]
    NonCompleteHost,
    #[error("invalid host family parameters: {0}")]
    InvalidFamilyParams(String),
}
