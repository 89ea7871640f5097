//! Block-transitive design search: candidate base blocks, their orbit
//! designs, and drivers that replay the case analyses.

mod cases;

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::actions::ActionSpace;
use crate::caps::Caps;
use crate::design::{design_params, is_block_transitive, verify_steiner, CoverageReport, Design, TripleWitness};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

pub use cases::{reproduce_case, CaseId, CaseReport, Claim, SieveRun};

/// The group acting on the points of `space`, one generator per original
/// generator.
pub fn induced_group(group: &PermGroup, space: &ActionSpace, caps: &Caps) -> Result<PermGroup> {
    let v = space.materializable_len(caps)?;
    let gens = group
        .generators()
        .iter()
        .map(|g| space.induced_permutation(g, caps))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(v, gens)
}

/// The `G`-orbit of `block` (0-based indices into `space`) as a design on
/// `space`, together with its coverage report.
pub fn orbit_design(
    group: &PermGroup,
    space: &ActionSpace,
    block: &[u32],
    caps: &Caps,
) -> Result<(Design, CoverageReport)> {
    let design = block_orbit(&induced_group(group, space, caps)?, block, caps)?;
    let report = verify_steiner(&design, caps)?;
    Ok((design, report))
}

/// Orbit of a block under a group acting directly on the design points.
fn block_orbit(group: &PermGroup, block: &[u32], caps: &Caps) -> Result<Design> {
    let v = group.degree();
    let mut start = block.to_vec();
    start.sort_unstable();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(b) = queue.pop_front() {
        for g in group.generators() {
            let mut image: Vec<u32> = b.iter().map(|&p| g.apply(p)).collect();
            image.sort_unstable();
            if !seen.contains(&image) {
                caps.check("block orbit", "orbit_design", seen.len() as u64 + 1, caps.orbit_design)?;
                seen.insert(image.clone());
                queue.push_back(image);
            }
        }
    }
    Design::new(v, block.len(), seen.into_iter().collect())
}

/// Index sets of `sizes` whose entries sum to `k`, in lexicographic order.
pub fn unions_of_sizes(sizes: &[u64], k: u64) -> Vec<Vec<usize>> {
    fn go(sizes: &[u64], from: usize, left: u64, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(chosen.clone());
            return;
        }
        for i in from..sizes.len() {
            if sizes[i] <= left {
                chosen.push(i);
                go(sizes, i + 1, left - sizes[i], chosen, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(sizes, 0, k, &mut Vec::new(), &mut out);
    out
}

fn unions_of_orbits(orbits: &[Vec<u64>], k: u64) -> Vec<Vec<u32>> {
    let sizes: Vec<u64> = orbits.iter().map(|o| o.len() as u64).collect();
    let mut blocks: Vec<Vec<u32>> = unions_of_sizes(&sizes, k)
        .into_iter()
        .map(|choice| {
            let mut b: Vec<u32> = choice.iter().flat_map(|&i| orbits[i].iter().map(|&x| x as u32)).collect();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort();
    blocks
}

/// All unions of distinct `H`-orbits on `space` with `k` elements, as
/// sorted 0-based index sets in lexicographic order. These are exactly the
/// `H`-invariant `k`-subsets.
pub fn orbit_union_blocks(group: &PermGroup, space: &ActionSpace, k: u64, caps: &Caps) -> Result<Vec<Vec<u32>>> {
    let orbits = group.orbits_on(space, caps)?;
    Ok(unions_of_orbits(&orbits, k))
}

/// The first element (in sorted element order) whose order is divisible by
/// `p`, raised to the power that leaves order exactly `p`.
pub fn element_of_order(group: &PermGroup, p: u64, caps: &Caps) -> Result<Permutation> {
    for g in group.elements(caps.small_group)? {
        let order = g.order();
        if order % p == 0 {
            return Ok(g.pow(order / p));
        }
    }
    Err(Error::NoElementOfOrder(p))
}

/// `k`-subsets of `space` that are unions of `<sigma>`-orbits.
pub fn invariant_blocks_for(sigma: &Permutation, space: &ActionSpace, k: u64, caps: &Caps) -> Result<Vec<Vec<u32>>> {
    let cyclic = PermGroup::new(sigma.degree(), vec![sigma.clone()])?;
    let orbits = cyclic.orbits_on(space, caps)?;
    let blocks = unions_of_orbits(&orbits, k);
    if blocks.is_empty() {
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        return Err(Error::NoCombination {
            k: k as usize,
            sizes: sizes.join(", "),
        });
    }
    Ok(blocks)
}

/// Candidate base blocks fixed by an element of prime order `p`, chosen by
/// [`element_of_order`]. When every block stabilizer contains an element of
/// order `p` and those elements are all conjugate, every block orbit meets
/// this list.
pub fn invariant_block_candidates(
    group: &PermGroup,
    space: &ActionSpace,
    k: u64,
    p: u64,
    caps: &Caps,
) -> Result<Vec<Vec<u32>>> {
    let sigma = element_of_order(group, p, caps)?;
    invariant_blocks_for(&sigma, space, k, caps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateVerdict {
    /// Fewer blocks than a Steiner design needs.
    ShortOrbit,
    /// More blocks than a Steiner design needs.
    LongOrbit,
    /// Right block count, but some triple is covered 0 or 2+ times.
    NotSteiner,
    Steiner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateOutcome {
    pub label: String,
    /// 1-based design points.
    pub block: Vec<u32>,
    pub orbit_size: u64,
    pub verdict: CandidateVerdict,
    /// First over-covered and first uncovered triple among the report's
    /// witnesses, when the block count was right.
    pub over_covered: Option<TripleWitness>,
    pub uncovered: Option<TripleWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub group: String,
    pub group_order: String,
    pub space: String,
    pub v: u64,
    pub k: u64,
    /// Block count of a 3-(v,k,1) design, possibly fractional.
    pub expected_blocks: String,
    pub method: String,
    pub candidates: Vec<CandidateOutcome>,
    /// Distinct Steiner designs found, each checked block-transitive.
    pub designs: Vec<Design>,
}

impl SearchReport {
    pub fn count(&self, verdict: CandidateVerdict) -> usize {
        self.candidates.iter().filter(|c| c.verdict == verdict).count()
    }
}

/// Builds the orbit design of each labelled candidate and sorts out which
/// ones are Steiner designs.
pub fn evaluate_candidates(
    group: &PermGroup,
    space: &ActionSpace,
    k: u64,
    method: &str,
    candidates: Vec<(String, Vec<u32>)>,
    caps: &Caps,
) -> Result<SearchReport> {
    let acting = induced_group(group, space, caps)?;
    let v = space.len_u64()?;
    let params = design_params(v, k)?;
    let expected: Option<BigUint> = params
        .blocks
        .is_integer()
        .then(|| params.blocks.to_integer().to_biguint().unwrap());
    let evaluated: Vec<(CandidateOutcome, Option<Design>)> = candidates
        .into_par_iter()
        .map(|(label, block)| -> Result<_> {
            let design = block_orbit(&acting, &block, caps)?;
            let orbit_size = design.blocks().len() as u64;
            let size = BigUint::from(orbit_size);
            let mut outcome = CandidateOutcome {
                label,
                block: block.iter().map(|&p| p + 1).collect(),
                orbit_size,
                verdict: CandidateVerdict::ShortOrbit,
                over_covered: None,
                uncovered: None,
            };
            let mut found = None;
            match &expected {
                Some(b) if size == *b => {
                    let report = verify_steiner(&design, caps)?;
                    if report.is_steiner {
                        let transitivity = is_block_transitive(&acting, &design)?;
                        assert!(transitivity.transitive, "an orbit design is block-transitive");
                        outcome.verdict = CandidateVerdict::Steiner;
                        found = Some(design);
                    } else {
                        outcome.verdict = CandidateVerdict::NotSteiner;
                        outcome.over_covered = report.witnesses.iter().find(|w| w.multiplicity >= 2).cloned();
                        outcome.uncovered = report.witnesses.iter().find(|w| w.multiplicity == 0).cloned();
                    }
                }
                Some(b) if size > *b => outcome.verdict = CandidateVerdict::LongOrbit,
                Some(_) => {}
                None => outcome.verdict = CandidateVerdict::NotSteiner,
            }
            Ok((outcome, found))
        })
        .collect::<Result<_>>()?;
    let mut outcomes = Vec::with_capacity(evaluated.len());
    let mut designs: Vec<Design> = Vec::new();
    for (outcome, found) in evaluated {
        if let Some(design) = found {
            if !designs.contains(&design) {
                designs.push(design);
            }
        }
        outcomes.push(outcome);
    }
    designs.sort_by(|a, b| a.blocks().cmp(b.blocks()));
    Ok(SearchReport {
        group: group.describe(),
        group_order: group.order().to_string(),
        space: space.describe(),
        v,
        k,
        expected_blocks: params.blocks.to_string(),
        method: method.to_string(),
        candidates: outcomes,
        designs,
    })
}

fn numbered(blocks: Vec<Vec<u32>>) -> Vec<(String, Vec<u32>)> {
    blocks
        .into_iter()
        .enumerate()
        .map(|(i, b)| (format!("candidate {}", i + 1), b))
        .collect()
}

/// Search with a known block stabilizer: candidates are the unions of its
/// orbits.
pub fn search_orbit_union(
    group: &PermGroup,
    stabilizer: &PermGroup,
    space: &ActionSpace,
    k: u64,
    caps: &Caps,
) -> Result<SearchReport> {
    let blocks = orbit_union_blocks(stabilizer, space, k, caps)?;
    evaluate_candidates(group, space, k, "orbit-union", numbered(blocks), caps)
}

/// Search with the invariant-element method for a prime `p`.
pub fn search_invariant(group: &PermGroup, space: &ActionSpace, k: u64, p: u64, caps: &Caps) -> Result<SearchReport> {
    let sigma = element_of_order(group, p, caps)?;
    let blocks = invariant_blocks_for(&sigma, space, k, caps)?;
    evaluate_candidates(group, space, k, &format!("invariant:{p} (element {sigma})"), numbered(blocks), caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn unions_from_sizes() {
        assert_eq!(unions_of_sizes(&[1, 5, 10, 10, 10, 20], 11), vec![vec![0, 2], vec![0, 3], vec![0, 4]]);
        assert!(unions_of_sizes(&[6, 20, 30], 11).is_empty());
    }

    #[test]
    fn example_design_is_an_orbit() {
        let caps = Caps::default();
        let g = fixtures::group(fixtures::S6_2);
        let space = ActionSpace::points(10).unwrap();
        let (design, report) = orbit_design(&g, &space, &[0, 4, 5, 6], &caps).unwrap();
        assert_eq!(design, fixtures::d3_10_4());
        assert!(report.is_steiner);
    }

    #[test]
    fn a5_candidates() {
        let caps = Caps::default();
        let h = fixtures::group(fixtures::A5_BLOCK_STABILIZER);
        let space = ActionSpace::points(10).unwrap();
        let blocks = orbit_union_blocks(&h, &space, 4, &caps).unwrap();
        assert_eq!(blocks.len(), 10);
        assert_eq!(blocks[0], vec![0, 1, 3, 8]);
        let g = fixtures::group(fixtures::A5_DEGREE10);
        let (design, report) = orbit_design(&g, &space, &[1, 2, 3, 9], &caps).unwrap();
        assert_eq!(design.blocks().len(), 30);
        assert_eq!(design.multiplicity(&[0, 5, 9]), 2);
        assert!(!report.is_steiner);
        // {2,4,6,8} has only 5 images, none through {1,6,10}.
        let (design, _) = orbit_design(&g, &space, &[1, 3, 5, 7], &caps).unwrap();
        assert_eq!(design.blocks().len(), 5);
        assert_eq!(design.multiplicity(&[0, 5, 9]), 0);
        let (short, _) = orbit_design(&g, &space, &[0, 1, 3, 8], &caps).unwrap();
        assert!(short.blocks().len() < 30);
    }

    #[test]
    fn invariant_candidates_in_degree_56() {
        let caps = Caps::default();
        let s8 = PermGroup::symmetric(8);
        let space = ActionSpace::subsets(8, 3).unwrap();
        let sigma = element_of_order(&s8, 5, &caps).unwrap();
        assert_eq!(sigma.cycle_type().iter().filter(|&&c| c == 5).count(), 1);
        assert_eq!(invariant_block_candidates(&s8, &space, 11, 5, &caps).unwrap().len(), 55);
        assert_eq!(invariant_block_candidates(&s8, &space, 10, 5, &caps).unwrap().len(), 55);
        assert!(matches!(
            invariant_block_candidates(&s8, &space, 7, 5, &caps),
            Err(Error::NoCombination { k: 7, .. })
        ));
        assert!(matches!(
            element_of_order(&PermGroup::symmetric(4), 5, &caps),
            Err(Error::NoElementOfOrder(5))
        ));
    }
}
