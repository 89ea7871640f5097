//! Subdegrees of `S_n` and `A_n` on subsets and uniform partitions, an
//! orbit-based oracle for them, and the finite parameter sweeps that use
//! them.

mod formulas;
mod oracle;
mod sweeps;

use serde::Serialize;

pub use formulas::{
    partition_classes, partition_subdegrees, partition_subdegrees_alternating, subset_fixed_points,
    subset_subdegrees, PartitionClass,
};
pub use oracle::subdegrees_oracle;
pub use sweeps::{
    imprimitive_sweep, intransitive_sweep, primitive_degree_bound, primitive_sweep, SweepCase, SweepEntry,
    SweepResult, IMPRIMITIVE_BOUND_PAIRS_WINDOW, INTRANSITIVE_WINDOWS, ORACLE_FEASIBLE, PRIMITIVE_SEARCH_LIMIT,
};

/// One nontrivial suborbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdegreeEntry {
    pub label: String,
    pub length: u64,
}

/// Nontrivial subdegrees of a transitive action. The trivial suborbit is
/// implied and counted in `total`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdegreeProfile {
    pub action: String,
    pub group: String,
    pub entries: Vec<SubdegreeEntry>,
    pub total: u64,
}

impl SubdegreeProfile {
    fn new(action: String, group: &str, entries: Vec<SubdegreeEntry>) -> Self {
        let total = 1 + entries.iter().map(|e| e.length).sum::<u64>();
        SubdegreeProfile {
            action,
            group: group.to_string(),
            entries,
            total,
        }
    }

    /// Nontrivial lengths, ascending.
    pub fn lengths(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.entries.iter().map(|e| e.length).collect();
        out.sort_unstable();
        out
    }

    /// Number of suborbits including the trivial one.
    pub fn rank(&self) -> usize {
        self.entries.len() + 1
    }
}
