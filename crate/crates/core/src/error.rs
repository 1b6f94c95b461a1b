use thiserror::Error;

/// Errors raised across the toolkit.
///
/// The variants fall into three groups that the command line maps onto
/// distinct exit statuses: domain errors, input errors and resource caps.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("family member `{0}` has a finite language")]
    InfiniteMemberViolation(String),
    #[error("no family member contains every example")]
    InconsistentExamples,
    #[error("duplicate example `{0}`")]
    DuplicateExample(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u64, max: u64 },
    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),
    #[error("invalid pushdown automaton: {0}")]
    InvalidPda(String),
    #[error("invalid Turing machine: {0}")]
    InvalidMachine(String),
    #[error("oracle value required: both encoded languages are infinite")]
    OracleRequired,
    #[error("resource cap reached: {0}")]
    ResourceCap(String),
    #[error("search caps exceeded before resolution: {0}")]
    CapExceeded(String),
    #[error("machine did not halt within {0} configurations")]
    Timeout(usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for this error: 1 domain, 2 input, 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) => 2,
            Error::ResourceCap(_) | Error::CapExceeded(_) | Error::BudgetExceeded(_) | Error::Timeout(_) => 3,
            _ => 1,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
