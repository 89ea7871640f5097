//! Induced actions on points, subsets and balanced partitions.

mod matrix;
mod space;

pub use matrix::{intersection_class, intersection_matrix, IntersectionMatrix};
pub use space::{binomial, factorial, ActionKind, ActionSpace};
