use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    EmptyVertexSet,
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("edge `{edge}` has dangling endpoint `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edges `{first}` and `{second}` are not composable")]
    NotComposable { first: String, second: String },
    #[error("range of the first path differs from the source of the second")]
    RangeSourceMismatch,
    #[error("a path given by edges needs at least one edge")]
    EmptyEdgeSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operands belong to different rings ({0} and {1})")]
    MixedRings(&'static str, &'static str),
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: &'static str },
    #[error("unknown ring `{0}` (expected Z, Zi, Z_half or Q)")]
    UnknownRing(String),
    #[error("malformed ring element `{0}`")]
    Malformed(String),
    #[error("kindness violated in {ring}, which is asserted kind: witness {witness}")]
    KindContradiction { ring: &'static str, witness: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live over different graphs")]
    GraphMismatch,
    #[error("operands live over different rings ({0} and {1})")]
    RingMismatch(&'static str, &'static str),
    #[error("r(mu) differs from r(nu)")]
    RangeMismatch,
    #[error("uniformization level {k} is below the longest starred leg ({needed})")]
    LevelTooSmall { k: usize, needed: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Failures of the star-analysis layer. `TheoremViolation` is kept apart
/// from every other variant: it means the engine produced a result that a
/// proven statement rules out.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("homomorphism has not been validated")]
    Unvalidated,
    #[error("homomorphism is invalid: {0}")]
    InvalidHom(String),
    #[error("missing image for generator `{0}`")]
    MissingImage(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("finite boundary path must end at a singular vertex, `{0}` is regular")]
    EndsAtRegular(String),
    #[error("cycle must start and end at the range of the prefix")]
    CycleMismatch,
    #[error("cycle must have at least one edge")]
    EmptyCycle,
    #[error("cannot shift a finite boundary path of length {len} by {n}")]
    ShiftTooFar { len: usize, n: usize },
    #[error("excluded edge `{0}` does not start at the range of the cylinder path")]
    BadExclusion(String),
    #[error("no witness: the triple is not a groupoid element")]
    NoWitness,
    #[error("elements are not composable")]
    NotComposable,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("coefficient outside ring: {0}")]
    CoefficientOutsideRing(RingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}
