//! Permutation-group and design machinery for checking block-transitive
//! Steiner 3-designs with alternating or symmetric socle.

pub mod acceptance;
pub mod actions;
pub mod caps;
pub mod error;
pub mod perm;
pub mod search;
pub mod sieve;
pub mod subdeg;

pub use caps::Caps;
pub use error::{Error, Result};
pub mod design;
mod serde_util;
pub mod fixtures;
