use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {id} out of range for a relation over {n} elements")]
    OutOfRange { id: usize, n: usize },
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: ({0},{1}) and ({1},{2}) present but ({0},{2}) missing")]
    NotTransitive(usize, usize, usize),
    #[error("relation is not antisymmetric: {0} and {1} are mutually related")]
    NotAntisymmetric(usize, usize),
    #[error("graph has a self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph contains a directed cycle through vertex {0}")]
    Cyclic(usize),
    #[error("edge parts do not cover the edge set exactly")]
    PartsMismatch,
    #[error("weight of object {0} must be strictly positive")]
    NonPositiveWeight(usize),
    #[error("weight of vertex {0} is negative")]
    NegativeWeight(usize),
    #[error("label {label} of object {object} is not a known label")]
    UnknownLabel { object: usize, label: usize },
    #[error("unknown object {0}")]
    UnknownObject(usize),
    #[error("label order is not total")]
    LabelOrderNotTotal,
    #[error("realizer is missing")]
    MissingRealizer,
    #[error("invalid realizer: {0}")]
    InvalidRealizer(String),
    #[error("expected {expected} edge parts, found {found}")]
    WrongPartCount { expected: usize, found: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("subset is not acceptable: objects {0} and {1} violate monotonicity")]
    NotAcceptable(usize, usize),
    #[error("poset is not a lattice: {0} and {1} have no least upper bound")]
    NotALattice(usize, usize),
    #[error("join table entry for ({0},{1}) is not the least upper bound")]
    BadJoin(usize, usize),
    #[error("default label {0} is not below every accepted label")]
    BadDefault(usize),
    #[error("instance has {n} vertices, exact solver limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("alpha {0} outside [0, 1]")]
    AlphaOutOfRange(String),
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("iteration budget of {iterations} exhausted with duality gap {gap}")]
    BudgetExhausted { iterations: usize, gap: String },
    #[error("clause {clause} repeats variable {var}")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("literal {literal} in clause {clause} is not a valid variable reference")]
    BadLiteral { clause: usize, literal: i64 },
    #[error("invalid DIMACS input: {0}")]
    Dimacs(String),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}
