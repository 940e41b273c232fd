use thiserror::Error;

/// Errors raised by model construction, checkers, solvers and parsers.
///
/// Agent ids carried in messages are 1-indexed, matching the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("agent count {0} is not a positive multiple of 3")]
    AgentCount(usize),

    #[error("unknown agent {agent} (game has {num_agents} agents)")]
    UnknownAgent { agent: usize, num_agents: usize },

    #[error("agent {0} has a nonzero valuation of itself")]
    SelfValuation(usize),

    #[error("valuations too large: utilities could overflow 64-bit arithmetic")]
    ValuationOverflow,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(
        "{agents} agents exceeds the oracle cap of {cap} ({partitions} partitions into triples)"
    )]
    CapExceeded {
        agents: usize,
        cap: usize,
        partitions: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
