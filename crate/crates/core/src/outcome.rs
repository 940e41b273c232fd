use std::fmt;

use crate::game::PartitionIntoTriples;

/// Why a solver concluded that no partition exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// The isolated agents cannot absorb the components of size `3k+1` and `3k+2`.
    IsolatedShortfall,
    /// The underlying graph is k ≥ 2 disjoint 4-cycles plus one isolated agent.
    FourCycleFamily,
    /// Every partition was ruled out by search.
    Exhaustive,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::IsolatedShortfall => "Lemma-1 condition violated",
            Certificate::FourCycleFamily => "Definition-2 family",
            Certificate::Exhaustive => "exhaustive",
        })
    }
}

/// Uniform solver result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Partition(PartitionIntoTriples),
    NoneExists {
        certificate: Certificate,
    },
    /// The search budget ran out before a verdict.
    Unknown,
}

impl SolveOutcome {
    pub fn partition(&self) -> Option<&PartitionIntoTriples> {
        match self {
            SolveOutcome::Partition(p) => Some(p),
            _ => None,
        }
    }

    pub fn into_partition(self) -> Option<PartitionIntoTriples> {
        match self {
            SolveOutcome::Partition(p) => Some(p),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<Certificate> {
        match self {
            SolveOutcome::NoneExists { certificate } => Some(*certificate),
            _ => None,
        }
    }

    pub fn is_none_exists(&self) -> bool {
        matches!(self, SolveOutcome::NoneExists { .. })
    }

    /// `Some(true)` if a partition was found, `Some(false)` if none exists.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            SolveOutcome::Partition(_) => Some(true),
            SolveOutcome::NoneExists { .. } => Some(false),
            SolveOutcome::Unknown => None,
        }
    }
}
