//! Exact searches: powers of Hamilton cycles and paths, pattern embeddings,
//! transitive subtournaments and factors, and the exhaustive tournament
//! scanners.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

pub mod certificate;
pub mod embed;
pub mod factor;
pub mod hampower;
pub mod scan;
pub mod transitive;

pub use certificate::{is_k_path, validate_certificate, CycleCertificate, Mode};
pub use embed::{embed, validate_embedding};
pub use factor::transitive_factor;
pub use hampower::find_ham_power;
pub use scan::{ramsey_scan, tiling_scan, RamseyScan, TilingScan};
pub use transitive::{contains_transitive, find_transitive, TransitiveMode, TransitiveReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("order is not a permutation of the vertex set")]
    NotAPermutation,
    #[error("greedy descent ran out of vertices after placing {placed}")]
    GreedyStuck { placed: usize },
    #[error("scan over 2^{bits} labelled tournaments exceeds the 2^{limit} guard")]
    InfeasibleScan { bits: usize, limit: usize },
}

/// Node and wall-clock limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            max_millis: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    /// A witness was found and validated.
    Found,
    /// The search space was exhausted: a proof of absence.
    Exhausted,
    /// The budget ran out; nothing is claimed.
    Budget,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Found => "FOUND",
            Outcome::Exhausted => "EXHAUSTED",
            Outcome::Budget => "BUDGET",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport<W> {
    pub outcome: Outcome,
    pub witness: Option<W>,
    pub nodes_expanded: u64,
    pub elapsed_ms: u64,
}

impl<W> SearchReport<W> {
    pub fn is_found(&self) -> bool {
        self.outcome == Outcome::Found
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> SearchReport<V> {
        SearchReport {
            outcome: self.outcome,
            witness: self.witness.map(f),
            nodes_expanded: self.nodes_expanded,
            elapsed_ms: self.elapsed_ms,
        }
    }
}

/// Counts expanded nodes and enforces a [`SearchBudget`].
#[derive(Debug)]
pub(crate) struct Meter {
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    start: Instant,
    aborted: bool,
}

impl Meter {
    pub(crate) fn new(budget: SearchBudget) -> Self {
        let start = Instant::now();
        Meter {
            nodes: 0,
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget.max_millis.map(|ms| start + Duration::from_millis(ms)),
            start,
            aborted: false,
        }
    }

    /// Records one node; returns `false` once the budget is spent.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.aborted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
        } else if self.nodes & 0xfff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                }
            }
        }
        !self.aborted
    }

    pub(crate) fn aborted(&self) -> bool {
        self.aborted
    }

    pub(crate) fn finish<W>(&self, witness: Option<W>) -> SearchReport<W> {
        let outcome = if witness.is_some() {
            Outcome::Found
        } else if self.aborted {
            Outcome::Budget
        } else {
            Outcome::Exhausted
        };
        SearchReport {
            outcome,
            witness,
            nodes_expanded: self.nodes.min(self.max_nodes),
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}
