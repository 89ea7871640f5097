use super::Design;
use crate::caps::Caps;
use crate::error::Result;
use crate::perm::{PermGroup, Permutation, StabChain};

/// Backtrack state for one search: images of a prefix of the point order.
struct Search<'a> {
    order: &'a [u32],
    replication: &'a [usize],
    masks: &'a [u32],
    image: Vec<Option<u32>>,
    used: u32,
}

impl Search<'_> {
    /// Bitmask of `mask` restricted to the mapped points, pushed through the
    /// partial map.
    fn push_forward(&self, mask: u32, domain: u32) -> u32 {
        let mut out = 0u32;
        let mut bits = mask & domain;
        while bits != 0 {
            let p = bits.trailing_zeros();
            bits &= bits - 1;
            out |= 1 << self.image[p as usize].unwrap();
        }
        out
    }

    /// Block traces on the domain, mapped, must match the traces on the
    /// image as multisets.
    fn consistent(&self, depth: usize) -> bool {
        let domain: u32 = self.order[..depth].iter().fold(0, |acc, &p| acc | 1 << p);
        let mut mapped: Vec<u32> = self.masks.iter().map(|&b| self.push_forward(b, domain)).collect();
        let mut traced: Vec<u32> = self.masks.iter().map(|&b| b & self.used).collect();
        mapped.sort_unstable();
        traced.sort_unstable();
        mapped == traced
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        for q in 0..self.order.len() as u32 {
            if self.used & (1 << q) != 0 || self.replication[q as usize] != self.replication[p as usize] {
                continue;
            }
            self.image[p as usize] = Some(q);
            self.used |= 1 << q;
            if self.consistent(depth + 1) && self.extend(depth + 1) {
                return true;
            }
            self.used &= !(1 << q);
            self.image[p as usize] = None;
        }
        false
    }
}

/// All point permutations preserving the block set.
///
/// Works down a base given by the point order (replication number
/// descending, then natural order). At each level it looks for one
/// automorphism per point outside the orbit found so far, fixing the
/// earlier base points.
pub fn automorphism_group(design: &Design, caps: &Caps) -> Result<PermGroup> {
    let v = design.v();
    caps.check("design point count", "automorphism_points", v as u64, caps.automorphism_points.min(32))?;
    let replication = design.replication_numbers();
    let mut order: Vec<u32> = (0..v as u32).collect();
    order.sort_by_key(|&p| std::cmp::Reverse(replication[p as usize]));
    let masks: Vec<u32> = design
        .blocks()
        .iter()
        .map(|b| b.iter().fold(0u32, |acc, &p| acc | 1 << p))
        .collect();

    let mut gens: Vec<Permutation> = Vec::new();
    for level in (0..v).rev() {
        let base = order[level];
        let prefix = &order[..=level];
        let mut chain = StabChain::with_base_prefix(v, &gens, prefix);
        for q in 0..v as u32 {
            if replication[q as usize] != replication[base as usize] || chain.fundamental_orbit(level).contains(&q) {
                continue;
            }
            let mut search = Search {
                order: &order,
                replication: &replication,
                masks: &masks,
                image: vec![None; v],
                used: 0,
            };
            for &p in &order[..level] {
                search.image[p as usize] = Some(p);
                search.used |= 1 << p;
            }
            search.image[base as usize] = Some(q);
            search.used |= 1 << q;
            if !search.consistent(level + 1) {
                continue;
            }
            if search.extend(level + 1) {
                let images = search.image.iter().map(|x| x.unwrap()).collect();
                gens.push(Permutation::from_images(images)?);
                chain = StabChain::with_base_prefix(v, &gens, prefix);
            }
        }
    }
    PermGroup::new(v, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn all_subsets(v: u32, k: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << v) {
            if mask.count_ones() as usize == k {
                out.push((0..v).filter(|p| mask >> p & 1 == 1).collect());
            }
        }
        out
    }

    #[test]
    fn complete_design_has_full_symmetric_group() {
        let d = Design::new(6, 4, all_subsets(6, 4)).unwrap();
        let aut = automorphism_group(&d, &Caps::default()).unwrap();
        assert_eq!(aut.order(), BigUint::from(720u32));
    }

    #[test]
    fn affine_space_has_agl32() {
        let planes = [
            [1, 2, 3, 4], [5, 6, 7, 8], [1, 2, 5, 6], [3, 4, 7, 8], [1, 3, 5, 7], [2, 4, 6, 8],
            [1, 4, 5, 8], [2, 3, 6, 7], [1, 2, 7, 8], [3, 4, 5, 6], [1, 3, 6, 8], [2, 4, 5, 7],
            [1, 4, 6, 7], [2, 3, 5, 8],
        ];
        let d = Design::from_one_based(8, 4, &planes.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap();
        let aut = automorphism_group(&d, &Caps::default()).unwrap();
        assert_eq!(aut.order(), BigUint::from(1344u32));
    }

    #[test]
    fn point_cap() {
        let d = Design::new(6, 4, all_subsets(6, 4)).unwrap();
        let caps = Caps::default().with_overrides("automorphism_points=5").unwrap();
        assert!(automorphism_group(&d, &caps).is_err());
    }
}
