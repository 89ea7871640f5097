//! Permutations, stabilizer chains and permutation groups.

mod chain;
mod group;
mod io;
mod permutation;
mod subgroups;

pub use chain::StabChain;
pub use group::{centralizer_ratio_3cycle, PermGroup};
pub use io::{parse_group, parse_permutation, write_group};
pub use permutation::Permutation;
pub use subgroups::{derived_subgroup, index2_subgroups, subgroups_of_order, SubgroupClasses};
