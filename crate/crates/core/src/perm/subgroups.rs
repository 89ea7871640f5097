use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::chain::StabChain;
use super::group::PermGroup;
use super::permutation::Permutation;
use crate::caps::Caps;
use crate::error::{Error, Result};

fn check_small(group: &PermGroup, caps: &Caps) -> Result<u64> {
    let order = group.order();
    if order > BigUint::from(caps.small_group) {
        return Err(Error::CapExceeded {
            what: "group order".into(),
            cap_name: "small_group",
            value: order.to_string(),
            cap: caps.small_group,
        });
    }
    Ok(order.to_u64().unwrap())
}

/// Adds `g` to `gens` unless the current chain already contains it.
fn absorb(degree: usize, gens: &mut Vec<Permutation>, chain: &mut StabChain, g: Permutation) -> bool {
    if chain.contains(&g) {
        return false;
    }
    gens.push(g);
    *chain = StabChain::new(degree, gens);
    true
}

/// The commutator subgroup, as the normal closure of the commutators of
/// generator pairs.
pub fn derived_subgroup(group: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    check_small(group, caps)?;
    let n = group.degree();
    let gens_g = group.generators();
    let mut gens = Vec::new();
    let mut chain = StabChain::new(n, &gens);
    for (i, a) in gens_g.iter().enumerate() {
        for b in &gens_g[i + 1..] {
            absorb(n, &mut gens, &mut chain, a.commutator(b));
        }
    }
    let mut i = 0;
    while i < gens.len() {
        for s in gens_g {
            let c = gens[i].conjugate_by(s);
            absorb(n, &mut gens, &mut chain, c);
        }
        i += 1;
    }
    Ok(PermGroup::with_chain(n, gens, chain))
}

/// Dense element table of a small group.
struct Table {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    identity: u32,
}

impl Table {
    fn new(group: &PermGroup, caps: &Caps) -> Result<Self> {
        check_small(group, caps)?;
        let elements = group.elements(caps.small_group)?;
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        let identity = index[&Permutation::identity(group.degree())];
        Ok(Table {
            elements,
            index,
            identity,
        })
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&self.elements[a as usize].then(&self.elements[b as usize])]
    }

    /// Sorted element set of `<gens>`, or `None` once it outgrows `limit`.
    fn closure(&self, gens: &[u32], limit: usize) -> Option<Vec<u32>> {
        let mut seen = vec![false; self.len()];
        seen[self.identity as usize] = true;
        let mut members = vec![self.identity];
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            next += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                    if members.len() > limit {
                        return None;
                    }
                }
            }
        }
        members.sort_unstable();
        Some(members)
    }

    fn conjugate_set(&self, set: &[u32], g: u32) -> Vec<u32> {
        let g = &self.elements[g as usize];
        let mut out: Vec<u32> = set
            .iter()
            .map(|&h| self.index[&self.elements[h as usize].conjugate_by(g)])
            .collect();
        out.sort_unstable();
        out
    }

    /// A small generating set for the subgroup with the given elements.
    fn subgroup(&self, degree: usize, members: &[u32]) -> PermGroup {
        let mut gens = Vec::new();
        let mut chain = StabChain::new(degree, &gens);
        for &m in members {
            absorb(degree, &mut gens, &mut chain, self.elements[m as usize].clone());
        }
        PermGroup::with_chain(degree, gens, chain)
    }
}

/// All subgroups of index 2, one per surjection onto the group of order 2,
/// in order of the generator sign vectors.
pub fn index2_subgroups(group: &PermGroup, caps: &Caps) -> Result<Vec<PermGroup>> {
    let table = Table::new(group, caps)?;
    let gens: Vec<u32> = group
        .generators()
        .iter()
        .map(|g| table.index[g])
        .collect();
    let r = gens.len();
    if r > 20 {
        return Err(Error::InvalidParameters(format!(
            "index2_subgroups tries every sign vector; {r} generators is too many"
        )));
    }
    let mut out = Vec::new();
    for signs in 1u32..(1u32 << r) {
        // Propagate parities from the identity; a clash means this sign
        // vector does not extend to a homomorphism.
        let mut parity: Vec<Option<bool>> = vec![None; table.len()];
        parity[table.identity as usize] = Some(false);
        let mut stack = vec![table.identity];
        let mut consistent = true;
        'bfs: while let Some(x) = stack.pop() {
            let px = parity[x as usize].unwrap();
            for (j, &s) in gens.iter().enumerate() {
                let y = table.mul(x, s);
                let py = px ^ (signs >> j & 1 == 1);
                match parity[y as usize] {
                    None => {
                        parity[y as usize] = Some(py);
                        stack.push(y);
                    }
                    Some(q) if q != py => {
                        consistent = false;
                        break 'bfs;
                    }
                    Some(_) => {}
                }
            }
        }
        if !consistent {
            continue;
        }
        let kernel: Vec<u32> = (0..table.len() as u32)
            .filter(|&i| parity[i as usize] == Some(false))
            .collect();
        out.push(table.subgroup(group.degree(), &kernel));
    }
    Ok(out)
}

/// Conjugacy-class representatives of subgroups of a fixed order.
#[derive(Debug, Clone)]
pub struct SubgroupClasses {
    pub order: u64,
    pub classes: Vec<PermGroup>,
    /// Largest generating-set size tried.
    pub generator_bound: usize,
    /// True when a new class of order dividing `order` still appeared at
    /// the last level, so larger generating sets might find more.
    pub saturated: bool,
}

/// Subgroups of order `m` up to conjugacy, from generating sets of at most
/// `caps.subgroup_generators` elements.
///
/// Level `t` extends each class found at level `t - 1` by one element.
/// Only subgroups whose order divides `m` are kept.
pub fn subgroups_of_order(group: &PermGroup, m: u64, caps: &Caps) -> Result<SubgroupClasses> {
    let table = Table::new(group, caps)?;
    let order = table.len() as u64;
    if m == 0 || order % m != 0 {
        return Err(Error::InvalidParameters(format!(
            "{m} does not divide the group order {order}"
        )));
    }
    let bound = caps.subgroup_generators.max(1) as usize;
    let limit = m as usize;
    let g_count = table.len() as u32;

    // Every conjugate of every class seen so far.
    let mut known: HashSet<Vec<u32>> = HashSet::new();
    // Per class: its element set (the first one found) and generators.
    let mut classes: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    let mut saturated = false;

    let mut register = |members: Vec<u32>, gens: Vec<u32>, classes: &mut Vec<(Vec<u32>, Vec<u32>)>| -> bool {
        if known.contains(&members) {
            return false;
        }
        for g in 0..g_count {
            known.insert(table.conjugate_set(&members, g));
        }
        classes.push((members, gens));
        true
    };

    for level in 1..=bound {
        let mut fresh = Vec::new();
        if level == 1 {
            for x in 0..g_count {
                let el_order = table.elements[x as usize].order();
                if m % el_order != 0 {
                    continue;
                }
                let members = table.closure(&[x], limit).unwrap();
                if register(members, vec![x], &mut classes) {
                    fresh.push(classes.len() - 1);
                }
            }
        } else {
            for &c in &frontier {
                let (base, gens) = classes[c].clone();
                let in_base: HashSet<u32> = base.iter().copied().collect();
                for b in 0..g_count {
                    if in_base.contains(&b) {
                        continue;
                    }
                    let mut ext = gens.clone();
                    ext.push(b);
                    let Some(members) = table.closure(&ext, limit) else {
                        continue;
                    };
                    if m % members.len() as u64 != 0 {
                        continue;
                    }
                    if register(members, ext, &mut classes) {
                        fresh.push(classes.len() - 1);
                    }
                }
            }
        }
        if fresh.is_empty() {
            saturated = false;
            break;
        }
        saturated = level == bound;
        frontier = fresh;
    }

    let mut found: Vec<(Vec<u32>, Vec<u32>)> = classes
        .into_iter()
        .filter(|(members, _)| members.len() as u64 == m)
        .map(|(members, gens)| {
            let canon = (0..g_count)
                .map(|g| table.conjugate_set(&members, g))
                .min()
                .unwrap();
            (canon, gens)
        })
        .collect();
    found.sort();
    let classes = found
        .into_iter()
        .map(|(_, gens)| {
            let gens: Vec<Permutation> = gens.iter().map(|&i| table.elements[i as usize].clone()).collect();
            PermGroup::new(group.degree(), gens).unwrap()
        })
        .collect();
    Ok(SubgroupClasses {
        order: m,
        classes,
        generator_bound: bound,
        saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| parse_permutation(n, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn two_element_group() {
        let caps = Caps::default();
        let g = group(2, &["(1,2)"]);
        assert_eq!(derived_subgroup(&g, &caps).unwrap().order(), BigUint::from(1u32));
        let subs = index2_subgroups(&g, &caps).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].order(), BigUint::from(1u32));
    }

    #[test]
    fn symmetric_groups_have_one_index_two_subgroup() {
        let caps = Caps::default();
        for n in 3..=6 {
            let s = PermGroup::symmetric(n);
            let subs = index2_subgroups(&s, &caps).unwrap();
            assert_eq!(subs.len(), 1);
            assert_eq!(subs[0].order(), PermGroup::alternating(n).order());
            assert_eq!(derived_subgroup(&s, &caps).unwrap().order(), PermGroup::alternating(n).order());
        }
    }

    #[test]
    fn klein_four_in_s4() {
        let caps = Caps::default();
        let s4 = PermGroup::symmetric(4);
        // Two classes of Klein four-groups, one of cyclic order-4 subgroups.
        let four = subgroups_of_order(&s4, 4, &caps).unwrap();
        assert_eq!(four.classes.len(), 3);
        let whole = subgroups_of_order(&s4, 24, &caps).unwrap();
        assert_eq!(whole.classes.len(), 1);
        assert_eq!(whole.classes[0].order(), BigUint::from(24u32));
        assert!(subgroups_of_order(&s4, 5, &caps).is_err());
        // S4 has exactly 11 conjugacy classes of subgroups.
        let total: usize = [1u64, 2, 3, 4, 6, 8, 12, 24]
            .iter()
            .map(|&m| subgroups_of_order(&s4, m, &caps).unwrap().classes.len())
            .sum();
        assert_eq!(total, 11);
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps::default().with_overrides("small_group=100").unwrap();
        assert!(matches!(
            index2_subgroups(&PermGroup::symmetric(5), &caps),
            Err(Error::CapExceeded { .. })
        ));
    }
}
