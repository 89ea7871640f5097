//! Steiner designs: representation, verification, transitivity and
//! automorphisms.

mod automorphism;
mod coverage;
mod params;
mod transitivity;

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use automorphism::automorphism_group;
pub use coverage::{verify_steiner, CoverageReport, TripleWitness};
pub use params::{design_params, DesignParams};
pub use transitivity::{flag_transitivity, is_block_transitive, is_flag_transitive, BlockTransitivity, FlagTransitivity};

/// A design on points `0..v` (1-based in text) with blocks of size `k`.
///
/// Blocks are sorted internally and the block list is sorted and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    v: usize,
    k: usize,
    blocks: Vec<Vec<u32>>,
}

impl Design {
    /// Builds a design from 0-based blocks.
    pub fn new(v: usize, k: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
            let distinct = block.windows(2).all(|w| w[0] != w[1]);
            if block.len() != k || !distinct {
                return Err(Error::InvalidParameters(format!(
                    "block {} does not have {k} distinct points",
                    format_block(block)
                )));
            }
            if let Some(&p) = block.iter().find(|&&p| p as usize >= v) {
                return Err(Error::PointOutOfRange {
                    point: p as u64 + 1,
                    degree: v,
                });
            }
        }
        blocks.sort_unstable();
        blocks.dedup();
        Ok(Design { v, k, blocks })
    }

    /// Builds a design from 1-based blocks.
    pub fn from_one_based(v: usize, k: usize, blocks: &[Vec<u32>]) -> Result<Self> {
        let mut zero = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.contains(&0) {
                return Err(Error::PointOutOfRange { point: 0, degree: v });
            }
            zero.push(block.iter().map(|&p| p - 1).collect());
        }
        Design::new(v, k, zero)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn blocks_one_based(&self) -> Vec<Vec<u32>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&p| p + 1).collect())
            .collect()
    }

    /// Images of the blocks under a point permutation.
    pub fn relabel(&self, pi: &Permutation) -> Result<Design> {
        if pi.degree() != self.v {
            return Err(Error::DegreeMismatch {
                expected: self.v,
                found: pi.degree(),
            });
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&p| pi.apply(p)).collect())
            .collect();
        Design::new(self.v, self.k, blocks)
    }

    /// Number of blocks through each point.
    pub fn replication_numbers(&self) -> Vec<usize> {
        let mut r = vec![0usize; self.v];
        for block in &self.blocks {
            for &p in block {
                r[p as usize] += 1;
            }
        }
        r
    }

    /// Number of blocks containing every point of `points` (0-based).
    pub fn multiplicity(&self, points: &[u32]) -> usize {
        self.blocks
            .iter()
            .filter(|b| points.iter().all(|p| b.binary_search(p).is_ok()))
            .count()
    }

    pub(crate) fn block_index(&self) -> HashMap<&[u32], usize> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.as_slice(), i))
            .collect()
    }
}

impl serde::Serialize for Design {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Design", 3)?;
        s.serialize_field("v", &self.v)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("blocks", &self.blocks_one_based())?;
        s.end()
    }
}

/// `{1,5,6,7}` style rendering of a 0-based block.
pub fn format_block(block: &[u32]) -> String {
    let inner: Vec<String> = block.iter().map(|p| (p + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Reads the design text format: a `v k` line, then one block per line.
pub fn parse_design(text: &str) -> Result<Design> {
    let mut header: Option<(usize, usize)> = None;
    let mut blocks = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{t}` is not a positive integer"),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        match header {
            None => {
                if nums.len() != 2 || nums[0] == 0 || nums[1] == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected header `v k`".into(),
                    });
                }
                header = Some((nums[0] as usize, nums[1] as usize));
            }
            Some((v, k)) => {
                if nums.len() != k {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("block has {} points, expected {k}", nums.len()),
                    });
                }
                if let Some(&p) = nums.iter().find(|&&p| p == 0 || p as usize > v) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("point {p} outside 1..={v}"),
                    });
                }
                blocks.push(nums);
            }
        }
    }
    let (v, k) = header.ok_or_else(|| Error::Parse {
        line: 0,
        message: "missing `v k` header".into(),
    })?;
    Design::from_one_based(v, k, &blocks)
}

/// Canonical text form: sorted blocks, sorted block list.
pub fn write_design(design: &Design) -> String {
    let mut out = format!("{} {}\n", design.v, design.k);
    for block in design.blocks_one_based() {
        let line: Vec<String> = block.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let d = parse_design("# tiny\n5 4\n4 3 2 1\n1 2 3 5\n\n1 2 3 4 # again\n").unwrap();
        assert_eq!(d.blocks().len(), 2);
        assert_eq!(write_design(&d), "5 4\n1 2 3 4\n1 2 3 5\n");
        assert_eq!(parse_design(&write_design(&d)).unwrap(), d);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_design("5 4\n1 2 3\n").is_err());
        assert!(parse_design("5 4\n1 2 3 6\n").is_err());
        assert!(parse_design("5 4\n1 1 2 3\n").is_err());
        assert!(parse_design("1 2 3 4\n").is_err());
        assert!(parse_design("").is_err());
    }

    #[test]
    fn replication_and_multiplicity() {
        let d = Design::from_one_based(5, 4, &[vec![1, 2, 3, 4], vec![1, 2, 3, 5]]).unwrap();
        assert_eq!(d.replication_numbers(), vec![2, 2, 2, 1, 1]);
        assert_eq!(d.multiplicity(&[0, 1, 2]), 2);
        assert_eq!(d.multiplicity(&[0, 3, 4]), 0);
        assert_eq!(format_block(&d.blocks()[0]), "{1,2,3,4}");
    }
}
