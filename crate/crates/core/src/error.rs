use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter `{0}` is not in the alphabet")]
    LetterNotInAlphabet(String),
    #[error("invalid letter name `{0}`")]
    InvalidLetter(String),
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("duplicate letter `{0}` in alphabet")]
    DuplicateLetter(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("sub-alphabet must be nonempty")]
    EmptySubalphabet,
    #[error("sub-alphabet is not contained in the alphabet (`{0}`)")]
    SubalphabetNotContained(String),

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("symbol `{0}` is declared both as a terminal and as a nonterminal")]
    NameClash(String),
    #[error("duplicate nonterminal `{0}`")]
    DuplicateNonterminal(String),
    #[error("grammar pipeline stage `{0}` has not been run")]
    PipelineNotRun(&'static str),
    #[error("unit-production cycle through {0:?}; the grammar is ambiguous")]
    UnitCycle(Vec<String>),
    #[error("ambiguity detected: axiom mass {0} exceeds 1")]
    AmbiguityDetected(String),

    #[error("position {position} out of range for word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("assignment space too large: {0}")]
    DomainTooLarge(String),
    #[error("domain mismatch between gates {0} and {1}")]
    DomainMismatch(usize, usize),
    #[error("unknown gate id {0}")]
    UnknownGate(usize),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("size cap of {0} words exceeded")]
    SizeCapExceeded(usize),
    #[error("state-space cap of {0} nodes exceeded")]
    StateSpaceCapExceeded(usize),
    #[error("slice is ambiguous; witness word `{0}`")]
    AmbiguousSlice(String),

    #[error("too many variables for brute force: {0}")]
    TooManyVariables(usize),
    #[error("word too long for brute force: |alphabet|^{0} exceeds the enumeration guard")]
    WordTooLong(usize),
    #[error("cannot draw {requested} distinct clauses out of {available}")]
    InfeasibleClauseCount { requested: usize, available: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
