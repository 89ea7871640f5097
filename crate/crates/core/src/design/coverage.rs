use std::collections::BTreeMap;

use serde::Serialize;

use super::Design;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// A 3-subset whose multiplicity is not 1, with the blocks covering it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleWitness {
    /// 1-based points.
    pub triple: [u32; 3],
    pub multiplicity: u32,
    /// 1-based blocks containing the triple.
    pub blocks: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub v: usize,
    pub k: usize,
    pub block_count: usize,
    pub triple_count: u64,
    pub is_steiner: bool,
    /// Multiplicity -> number of triples covered that many times.
    pub lambda_map: BTreeMap<u32, u64>,
    /// At most [`CoverageReport::MAX_WITNESSES`] offending triples, in
    /// lexicographic order.
    pub witnesses: Vec<TripleWitness>,
}

impl CoverageReport {
    pub const MAX_WITNESSES: usize = 10;

    pub fn uncovered(&self) -> u64 {
        self.lambda_map.get(&0).copied().unwrap_or(0)
    }

    pub fn over_covered(&self) -> u64 {
        self.lambda_map.range(2..).map(|(_, c)| c).sum()
    }
}

#[inline]
fn triple_rank(a: u32, b: u32, c: u32) -> usize {
    let (a, b, c) = (a as usize, b as usize, c as usize);
    a + b * (b - 1) / 2 + c * (c - 1) * (c - 2) / 6
}

/// Counts how often every 3-subset of points lies in a block.
pub fn verify_steiner(design: &Design, caps: &Caps) -> Result<CoverageReport> {
    let (v, k) = (design.v(), design.k());
    if k <= 3 || k >= v {
        return Err(Error::InvalidParameters(format!(
            "Steiner verification needs 3 < k < v, got v={v}, k={k}"
        )));
    }
    let triples = (v * (v - 1) * (v - 2) / 6) as u64;
    caps.check("3-subsets to count", "coverage_triples", triples, caps.coverage_triples)?;
    let mut counts = vec![0u32; triples as usize];
    for block in design.blocks() {
        for (i, &a) in block.iter().enumerate() {
            for (j, &b) in block.iter().enumerate().skip(i + 1) {
                for &c in &block[j + 1..] {
                    counts[triple_rank(a, b, c)] += 1;
                }
            }
        }
    }
    let mut lambda_map = BTreeMap::new();
    for &c in &counts {
        *lambda_map.entry(c).or_insert(0u64) += 1;
    }
    let mut witnesses = Vec::new();
    'outer: for a in 0..v as u32 {
        for b in a + 1..v as u32 {
            for c in b + 1..v as u32 {
                let m = counts[triple_rank(a, b, c)];
                if m == 1 {
                    continue;
                }
                if witnesses.len() == CoverageReport::MAX_WITNESSES {
                    break 'outer;
                }
                let blocks = design
                    .blocks()
                    .iter()
                    .filter(|blk| [a, b, c].iter().all(|p| blk.binary_search(p).is_ok()))
                    .map(|blk| blk.iter().map(|&p| p + 1).collect())
                    .collect();
                witnesses.push(TripleWitness {
                    triple: [a + 1, b + 1, c + 1],
                    multiplicity: m,
                    blocks,
                });
            }
        }
    }
    let is_steiner = lambda_map.len() == 1 && lambda_map.contains_key(&1);
    Ok(CoverageReport {
        v,
        k,
        block_count: design.blocks().len(),
        triple_count: triples,
        is_steiner,
        lambda_map,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(v: usize, k: usize) -> Design {
        let mut blocks = Vec::new();
        fn rec(start: u32, v: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for p in start..v {
                cur.push(p);
                rec(p + 1, v, k, cur, out);
                cur.pop();
            }
        }
        rec(0, v as u32, k, &mut Vec::new(), &mut blocks);
        Design::new(v, k, blocks).unwrap()
    }

    #[test]
    fn triple_rank_is_dense() {
        let mut seen = vec![false; 20];
        for c in 2..6u32 {
            for b in 1..c {
                for a in 0..b {
                    let r = triple_rank(a, b, c);
                    assert!(!seen[r]);
                    seen[r] = true;
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn complete_design_covers_three_times() {
        let report = verify_steiner(&complete(6, 4), &Caps::default()).unwrap();
        assert!(!report.is_steiner);
        assert_eq!(report.lambda_map, BTreeMap::from([(3, 20)]));
        assert_eq!(report.witnesses.len(), 10);
        assert_eq!(report.witnesses[0].triple, [1, 2, 3]);
        assert_eq!(report.witnesses[0].blocks.len(), 3);
    }

    #[test]
    fn trivial_parameters_rejected() {
        assert!(verify_steiner(&complete(6, 3), &Caps::default()).is_err());
        assert!(verify_steiner(&complete(5, 5), &Caps::default()).is_err());
    }
}
