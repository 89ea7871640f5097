//! Group generators and designs shipped with the crate. The same files live
//! under `fixtures/` in the source tree.

use crate::design::{parse_design, Design};
use crate::perm::{parse_group, PermGroup};

pub const D3_10_4: &str = include_str!("../fixtures/d3_10_4.txt");
pub const A5_DEGREE10: &str = include_str!("../fixtures/a5_degree10.txt");
pub const A5_POINT_STABILIZER: &str = include_str!("../fixtures/a5_point_stabilizer.txt");
pub const A5_BLOCK_STABILIZER: &str = include_str!("../fixtures/a5_block_stabilizer.txt");
pub const S6_2: &str = include_str!("../fixtures/s6_2.txt");
pub const S6_2_BLOCK_STABILIZER: &str = include_str!("../fixtures/s6_2_block_stabilizer.txt");
pub const PGL29: &str = include_str!("../fixtures/pgl29.txt");
pub const PGL29_BLOCK_STABILIZER: &str = include_str!("../fixtures/pgl29_block_stabilizer.txt");

/// `(file name, contents)` for every fixture.
pub const ALL: &[(&str, &str)] = &[
    ("d3_10_4.txt", D3_10_4),
    ("a5_degree10.txt", A5_DEGREE10),
    ("a5_point_stabilizer.txt", A5_POINT_STABILIZER),
    ("a5_block_stabilizer.txt", A5_BLOCK_STABILIZER),
    ("s6_2.txt", S6_2),
    ("s6_2_block_stabilizer.txt", S6_2_BLOCK_STABILIZER),
    ("pgl29.txt", PGL29),
    ("pgl29_block_stabilizer.txt", PGL29_BLOCK_STABILIZER),
];

pub fn d3_10_4() -> Design {
    parse_design(D3_10_4).expect("fixture parses")
}

pub fn group(text: &str) -> PermGroup {
    parse_group(text).expect("fixture parses")
}
