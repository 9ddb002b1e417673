//! Decomposition searches and the brute-force oracles used to check them.

pub mod bisect;
pub mod bldup;
pub mod brute;
pub mod cliques;
pub mod counterexample;
pub mod semilattice;
pub mod stabl;
mod state;
pub mod topdown;

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::measures::Measure;

pub use bisect::{bisect_best, Bisection};
pub use bldup::{bldup_agglomerate, Agglomeration};
pub use brute::{brute_force_bipartition, brute_force_maximal_cliques, BRUTE_FORCE_LIMIT};
pub use cliques::maximal_cliques;
pub use counterexample::{build_misplaced_vertex_instance, CounterexampleInstance};
pub use semilattice::{recompose_semilattice, Semilattice, SemilatticeNode};
pub use stabl::{stabl_search, CycleTrace, StablOutcome};
pub use topdown::{decompose_set, decompose_topdown, DecompositionTree, Split};

/// How STABL chooses among equally good moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// `Exhaustive` up to [`AUTO_EXHAUSTIVE_LIMIT`] vertices, else `FirstCanonical`.
    #[default]
    Auto,
    /// Lowest element, then the destination cell with the lowest smallest member.
    FirstCanonical,
    /// Branch on every tie, remembering visited partitions, within `tie_branch_cap`.
    Exhaustive,
    /// Uniform choice among the tied moves.
    SeededRandom,
}

pub const AUTO_EXHAUSTIVE_LIMIT: usize = 24;

impl TiePolicy {
    pub fn resolve(self, m: usize) -> TiePolicy {
        match self {
            TiePolicy::Auto if m <= AUTO_EXHAUSTIVE_LIMIT => TiePolicy::Exhaustive,
            TiePolicy::Auto => TiePolicy::FirstCanonical,
            p => p,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            TiePolicy::Auto => "auto",
            TiePolicy::FirstCanonical => "first-canonical",
            TiePolicy::Exhaustive => "exhaustive",
            TiePolicy::SeededRandom => "seeded-random",
        }
    }
}

impl FromStr for TiePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [TiePolicy::Auto, TiePolicy::FirstCanonical, TiePolicy::Exhaustive, TiePolicy::SeededRandom]
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::Unknown { kind: "tie policy", name: s.to_string() })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub measure: Measure,
    /// Random starting bipartitions per bisection.
    pub latis: usize,
    pub seed: u64,
    pub max_depth: Option<usize>,
    /// Cells of this size or smaller are not split.
    pub min_size: usize,
    pub tie_policy: TiePolicy,
    /// Partitions the exhaustive tie search may visit.
    pub tie_branch_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            measure: Measure::Hidecs2Decomp,
            latis: 100,
            seed: 0,
            max_depth: None,
            min_size: 3,
            tie_policy: TiePolicy::Auto,
            tie_branch_cap: 100_000,
        }
    }
}

impl SearchConfig {
    pub fn with_measure(measure: Measure) -> Self {
        Self { measure, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.latis == 0 {
            return Err(Error::InvalidArgument("latis must be at least 1".into()));
        }
        if self.min_size < 2 {
            return Err(Error::InvalidArgument("min_size must be at least 2".into()));
        }
        if self.tie_branch_cap == 0 {
            return Err(Error::InvalidArgument("tie_branch_cap must be positive".into()));
        }
        Ok(())
    }
}
