use num_bigint::BigUint;

use super::{SubdegreeEntry, SubdegreeProfile};
use crate::actions::ActionSpace;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabChain};

/// Subdegrees of `group` on `space` by explicit orbits: the stabilizer of
/// object 0 is built from Schreier generators until its order is
/// `|G| / |space|`, then its orbits are merged with a union-find.
///
/// Entries are ordered by the smallest index in each suborbit and labelled
/// with that object.
pub fn subdegrees_oracle(group: &PermGroup, space: &ActionSpace, caps: &Caps) -> Result<SubdegreeProfile> {
    space.check_group_degree(group.degree())?;
    let size = space.len_u64()?;
    caps.check("oracle action space", "oracle_space", size, caps.oracle_space)?;
    let n = size as usize;
    let degree = group.degree();

    let induced: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| space.induced_permutation(g, caps))
        .collect::<Result<_>>()?;

    // Transversal: reps[i] maps object 0 to object i.
    let mut reps: Vec<Option<Permutation>> = vec![None; n];
    reps[0] = Some(Permutation::identity(degree));
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let beta = queue[head] as usize;
        head += 1;
        for (g, ind) in group.generators().iter().zip(&induced) {
            let gamma = ind.apply(beta as u32) as usize;
            if reps[gamma].is_none() {
                reps[gamma] = Some(reps[beta].as_ref().unwrap().then(g));
                queue.push(gamma as u32);
            }
        }
    }
    if queue.len() != n {
        return Err(Error::NotTransitive {
            orbit: queue.len() as u64,
            size: size.to_string(),
        });
    }

    let target = group.order() / BigUint::from(size);
    let mut stab_gens: Vec<Permutation> = Vec::new();
    let mut chain = StabChain::new(degree, &stab_gens);
    'schreier: for &beta in &queue {
        let u_beta = reps[beta as usize].as_ref().unwrap();
        for (g, ind) in group.generators().iter().zip(&induced) {
            if chain.order() == target {
                break 'schreier;
            }
            let gamma = ind.apply(beta) as usize;
            let s = u_beta.then(g).then(&reps[gamma].as_ref().unwrap().inverse());
            if !chain.contains(&s) {
                stab_gens.push(s);
                chain = StabChain::new(degree, &stab_gens);
            }
        }
    }
    debug_assert_eq!(chain.order(), target);

    let mut uf = UnionFind::new(n);
    for s in &stab_gens {
        let ind = space.induced_permutation(s, caps)?;
        for (i, &j) in ind.images().iter().enumerate() {
            uf.union(i, j as usize);
        }
    }

    let mut lengths: Vec<u64> = vec![0; n];
    for i in 0..n {
        lengths[uf.find(i)] += 1;
    }
    let mut entries = Vec::new();
    let mut seen = vec![false; n];
    for i in 1..n {
        let root = uf.find(i);
        if !seen[root] {
            seen[root] = true;
            entries.push(SubdegreeEntry {
                label: space.format_object(&space.object(i as u64)?),
                length: lengths[root],
            });
        }
    }
    Ok(SubdegreeProfile::new(space.describe(), &group.describe(), entries))
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[self.parent[x] as usize];
            self.parent[x] = up;
            x = up as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdeg::{partition_subdegrees, subset_subdegrees};

    #[test]
    fn spec_examples() {
        let caps = Caps::default();
        let s7 = PermGroup::symmetric(7);
        let space = ActionSpace::subsets(7, 2).unwrap();
        let oracle = subdegrees_oracle(&s7, &space, &caps).unwrap();
        assert_eq!(oracle.lengths(), subset_subdegrees(7, 2).unwrap().lengths());
        let a7 = PermGroup::alternating(7);
        assert_eq!(subdegrees_oracle(&a7, &space, &caps).unwrap().lengths(), oracle.lengths());
        let s6 = PermGroup::symmetric(6);
        let parts = ActionSpace::partitions(3, 2).unwrap();
        assert_eq!(subdegrees_oracle(&s6, &parts, &caps).unwrap().lengths(), vec![9]);
        assert_eq!(partition_subdegrees(3, 2).unwrap().lengths(), vec![9]);
    }

    #[test]
    fn point_action_has_rank_two() {
        let caps = Caps::default();
        let space = ActionSpace::points(9).unwrap();
        let p = subdegrees_oracle(&PermGroup::alternating(9), &space, &caps).unwrap();
        assert_eq!(p.lengths(), vec![8]);
        assert_eq!(p.entries[0].label, "2");
    }

    #[test]
    fn intransitive_group_is_rejected() {
        let caps = Caps::default();
        let g = PermGroup::new(6, vec![Permutation::from_cycles(6, &[vec![1, 2, 3]]).unwrap()]).unwrap();
        let space = ActionSpace::subsets(6, 2).unwrap();
        assert!(matches!(subdegrees_oracle(&g, &space, &caps), Err(Error::NotTransitive { .. })));
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps::default().with_overrides("oracle_space=20").unwrap();
        let space = ActionSpace::subsets(7, 2).unwrap();
        assert!(matches!(
            subdegrees_oracle(&PermGroup::symmetric(7), &space, &caps),
            Err(Error::CapExceeded { .. })
        ));
    }
}
