use thiserror::Error;

/// Errors raised while building, composing or expanding transition systems.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("variable `{var}` is not declared in system `{system}`")]
    Undeclared { system: String, var: String },
    #[error("variable `{var}` is declared twice in system `{system}`")]
    Duplicate { system: String, var: String },
    #[error("initial condition of `{system}` mentions primed variable `{var}`")]
    PrimedInInit { system: String, var: String },
    #[error("variable `{var}` is declared local in both `{first}` and `{second}`")]
    ConflictingLocality { var: String, first: String, second: String },
    #[error("cannot compose an empty list of systems")]
    EmptyComposition,
    #[error("{vars} variables exceed the expansion bound of {bound}")]
    Capacity { vars: usize, bound: usize },
    #[error("invalid Kripke structure: {0}")]
    InvalidKripke(String),
}

/// A syntax error with a 1-based source position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LtlError {
    #[error("atom `{0}` is not a variable of the structure")]
    UnknownAtom(String),
    #[error("position {pos} is outside a lasso of length {len}")]
    Position { pos: usize, len: usize },
    #[error("lasso cycle must be non-empty")]
    EmptyCycle,
    #[error("formula too large for the automaton construction: {0}")]
    TooLarge(String),
    #[error("internal error: witness rejected by lasso evaluation")]
    InvalidWitness,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StripsError {
    #[error("{vars} planning variables exceed the search bound of {bound}")]
    Capacity { vars: usize, bound: usize },
    #[error("operator `{0}` is not applicable in the given state")]
    Inapplicable(String),
    #[error("unknown planning variable `{0}`")]
    UnknownVar(String),
    #[error("cannot extend an instance of class {class} to {n} variables")]
    Shrink { n: usize, class: usize },
    #[error("invalid instance: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BddError {
    #[error("BDD belongs to a different manager")]
    ForeignManager,
    #[error("variable `{0}` is not in the ordering")]
    MissingVar(String),
    #[error("variable `{0}` appears twice in the ordering")]
    DuplicateVar(String),
    #[error("node limit of {0} exceeded")]
    NodeLimit(usize),
    #[error("assignment leaves `{0}` unset")]
    Unassigned(String),
    #[error("invalid ordering: {0}")]
    BadOrdering(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error(transparent)]
    Bdd(#[from] BddError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Ltl(#[from] LtlError),
    #[error("formula outside the symbolic fragment: {0}")]
    Unsupported(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

/// Umbrella error for pipelines that cross module boundaries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ltl(#[from] LtlError),
    #[error(transparent)]
    Strips(#[from] StripsError),
    #[error(transparent)]
    Bdd(#[from] BddError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

impl Error {
    /// Whether the failure is a resource bound rather than bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::Core(CoreError::Capacity { .. })
                | Error::Strips(StripsError::Capacity { .. })
                | Error::Bdd(BddError::NodeLimit(_))
                | Error::Symbolic(SymbolicError::Bdd(BddError::NodeLimit(_)))
                | Error::Symbolic(SymbolicError::Core(CoreError::Capacity { .. }))
        )
    }
}
