use serde::Serialize;

use super::{format_block, Design};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockTransitivity {
    pub transitive: bool,
    pub orbit_count: usize,
    /// Orbit sizes, ordered by the smallest block in each orbit.
    pub orbit_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagTransitivity {
    pub flag_transitive: bool,
    pub blocks: BlockTransitivity,
    /// 1-based first block, whose stabilizer is examined.
    pub block: Vec<u32>,
    /// Order of its setwise stabilizer, as a decimal string.
    pub block_stabilizer_order: String,
    /// Orbit sizes of the block stabilizer on the block's points.
    pub stabilizer_orbits_on_block: Vec<usize>,
}

/// Permutations of block indices induced by the generators.
fn block_action(group: &PermGroup, design: &Design) -> Result<Vec<Vec<usize>>> {
    if group.degree() != design.v() {
        return Err(Error::DegreeMismatch {
            expected: design.v(),
            found: group.degree(),
        });
    }
    let index = design.block_index();
    let mut out = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        let mut images = Vec::with_capacity(design.blocks().len());
        for block in design.blocks() {
            let mut image: Vec<u32> = block.iter().map(|&p| g.apply(p)).collect();
            image.sort_unstable();
            match index.get(image.as_slice()) {
                Some(&j) => images.push(j),
                None => {
                    return Err(Error::NotAnAutomorphism {
                        generator: g.to_string(),
                        block: format_block(block),
                    })
                }
            }
        }
        out.push(images);
    }
    Ok(out)
}

/// Checks that every generator preserves the block set and counts the
/// block orbits.
pub fn is_block_transitive(group: &PermGroup, design: &Design) -> Result<BlockTransitivity> {
    let action = block_action(group, design)?;
    let b = design.blocks().len();
    let mut seen = vec![false; b];
    let mut sizes = Vec::new();
    for start in 0..b {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            for images in &action {
                let j = images[i];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        sizes.push(size);
    }
    Ok(BlockTransitivity {
        transitive: sizes.len() == 1,
        orbit_count: sizes.len(),
        orbit_sizes: sizes,
    })
}

/// Block-transitivity plus transitivity of a block stabilizer on its block.
pub fn flag_transitivity(group: &PermGroup, design: &Design) -> Result<FlagTransitivity> {
    let blocks = is_block_transitive(group, design)?;
    let first = design.blocks().first().cloned().unwrap_or_default();
    let stab = group.setwise_stabilizer(&first)?;
    let restricted = PermGroup::new(
        group.degree(),
        stab.generators().iter().map(Permutation::clone).collect(),
    )?;
    let mut on_block: Vec<usize> = Vec::new();
    let mut seen = vec![false; group.degree()];
    for &p in &first {
        if seen[p as usize] {
            continue;
        }
        let orbit = restricted.orbit_of_point(p);
        for &q in &orbit {
            seen[q as usize] = true;
        }
        on_block.push(orbit.len());
    }
    Ok(FlagTransitivity {
        flag_transitive: blocks.transitive && on_block.len() == 1,
        blocks,
        block: first.iter().map(|&p| p + 1).collect(),
        block_stabilizer_order: stab.order().to_string(),
        stabilizer_orbits_on_block: on_block,
    })
}

pub fn is_flag_transitive(group: &PermGroup, design: &Design) -> Result<bool> {
    Ok(flag_transitivity(group, design)?.flag_transitive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn fano_plus() -> Design {
        // 3-(8,4,1): the affine space AG(3,2).
        let planes = [
            [1, 2, 3, 4], [5, 6, 7, 8], [1, 2, 5, 6], [3, 4, 7, 8], [1, 3, 5, 7], [2, 4, 6, 8],
            [1, 4, 5, 8], [2, 3, 6, 7], [1, 2, 7, 8], [3, 4, 5, 6], [1, 3, 6, 8], [2, 4, 5, 7],
            [1, 4, 6, 7], [2, 3, 5, 8],
        ];
        Design::from_one_based(8, 4, &planes.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn trivial_group_has_singleton_orbits() {
        let d = fano_plus();
        let t = is_block_transitive(&PermGroup::trivial(8), &d).unwrap();
        assert!(!t.transitive);
        assert_eq!(t.orbit_count, 14);
    }

    #[test]
    fn translations_are_block_transitive_but_not_flag_transitive() {
        let d = fano_plus();
        // Translations of AG(3,2) with points 1..8 labelled by binary 0..7.
        let g = PermGroup::new(
            8,
            vec![
                parse_permutation(8, "(1,2)(3,4)(5,6)(7,8)").unwrap(),
                parse_permutation(8, "(1,3)(2,4)(5,7)(6,8)").unwrap(),
                parse_permutation(8, "(1,5)(2,6)(3,7)(4,8)").unwrap(),
            ],
        )
        .unwrap();
        let t = is_block_transitive(&g, &d).unwrap();
        assert_eq!(t.orbit_sizes.iter().sum::<usize>(), 14);
        assert!(!t.transitive);
        assert!(!is_flag_transitive(&g, &d).unwrap());
    }

    #[test]
    fn non_automorphism_is_named() {
        let d = fano_plus();
        let g = PermGroup::new(8, vec![parse_permutation(8, "(1,2)").unwrap()]).unwrap();
        let err = is_block_transitive(&g, &d).unwrap_err();
        assert!(matches!(err, Error::NotAnAutomorphism { .. }));
        assert!(err.to_string().contains("(1,2)"), "{err}");
    }
}
