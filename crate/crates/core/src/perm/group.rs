use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::chain::StabChain;
use super::permutation::Permutation;
use crate::actions::ActionSpace;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// A finite permutation group given by generators.
///
/// The stabilizer chain is built on first use and cached; the cell is
/// synchronised so concurrent first use is safe.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// Wraps generators whose chain is already known.
    pub(crate) fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermGroup {
            degree,
            generators,
            chain: cell,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    /// Symmetric group on `n` points, generated by `(1,2)` and `(1,..,n)`.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(1..=n as u32).collect()]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    /// Alternating group on `n` points, generated by `(1,2,3)` and an
    /// even long cycle.
    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2, 3]]).unwrap());
        }
        if n >= 4 {
            let cycle: Vec<u32> = if n % 2 == 1 {
                (1..=n as u32).collect()
            } else {
                (2..=n as u32).collect()
            };
            gens.push(Permutation::from_cycles(n, &[cycle]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as `u64`, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Every element, sorted, after checking `|G|` against `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "group order".into(),
                cap_name: "small_group",
                value: order.to_string(),
                cap,
            });
        }
        let mut out = Vec::with_capacity(order.to_usize().unwrap_or(0));
        self.chain().for_each_element(|g| out.push(g.clone()));
        out.sort();
        Ok(out)
    }

    /// Orbit of a point in the natural action, ascending.
    pub fn orbit_of_point(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut stack = vec![x];
        let mut orbit = vec![x];
        while let Some(p) = stack.pop() {
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                    stack.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Point orbits, each ascending, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut assigned = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree as u32 {
            if assigned[x as usize] {
                continue;
            }
            let orbit = self.orbit_of_point(x);
            for &p in &orbit {
                assigned[p as usize] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit_of_point(0).len() == self.degree
    }

    /// Orbit of the object with index `x` in `space`, as ascending indices.
    pub fn orbit(&self, x: u64, space: &ActionSpace) -> Result<Vec<u64>> {
        space.check_group_degree(self.degree)?;
        let len = space.len_u64()?;
        if x >= len {
            return Err(Error::PointOutOfRange {
                point: x + 1,
                degree: len as usize,
            });
        }
        let mut seen = HashSet::new();
        seen.insert(x);
        let mut queue = VecDeque::from([x]);
        while let Some(i) = queue.pop_front() {
            let object = space.object(i)?;
            for g in &self.generators {
                let j = space.index_of_image(&object, g)?;
                if seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        let mut orbit: Vec<u64> = seen.into_iter().collect();
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// Orbits on a whole (materialisable) action space.
    pub fn orbits_on(&self, space: &ActionSpace, caps: &Caps) -> Result<Vec<Vec<u64>>> {
        let induced: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| space.induced_permutation(g, caps))
            .collect::<Result<_>>()?;
        let len = space.len_u64()? as usize;
        let mut assigned = vec![false; len];
        let mut out = Vec::new();
        for start in 0..len {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            let mut orbit = vec![start as u64];
            let mut stack = vec![start as u32];
            while let Some(i) = stack.pop() {
                for g in &induced {
                    let j = g.apply(i);
                    if !assigned[j as usize] {
                        assigned[j as usize] = true;
                        orbit.push(j as u64);
                        stack.push(j);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        Ok(out)
    }

    /// The stabilizer of point `x` (0-based) in the natural action.
    pub fn point_stabilizer(&self, x: u32) -> Result<PermGroup> {
        if x as usize >= self.degree {
            return Err(Error::PointOutOfRange {
                point: x as u64 + 1,
                degree: self.degree,
            });
        }
        let chain = StabChain::with_base_prefix(self.degree, &self.generators, &[x]);
        let gens = chain.stabilizer_generators(1);
        let group = PermGroup::new(self.degree, gens)?;
        // Reuse the tail of the chain for the stabilizer's own order.
        Ok(group)
    }

    /// Pointwise stabilizer of several points.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermGroup> {
        let chain = StabChain::with_base_prefix(self.degree, &self.generators, points);
        PermGroup::new(self.degree, chain.stabilizer_generators(points.len()))
    }

    /// `{g : S^g = S}` for a set of 0-based points, by backtracking over a
    /// chain whose base starts with `S`. A partial product is abandoned as
    /// soon as it sends a point of `S` outside `S`.
    pub fn setwise_stabilizer(&self, set: &[u32]) -> Result<PermGroup> {
        let mut prefix: Vec<u32> = set.to_vec();
        prefix.sort_unstable();
        prefix.dedup();
        if let Some(&p) = prefix.iter().find(|&&p| p as usize >= self.degree) {
            return Err(Error::PointOutOfRange {
                point: p as u64 + 1,
                degree: self.degree,
            });
        }
        let mut in_set = vec![false; self.degree];
        for &p in &prefix {
            in_set[p as usize] = true;
        }
        let chain = StabChain::with_base_prefix(self.degree, &self.generators, &prefix);
        let depth = prefix.len();

        // Pointwise stabilizer of S lies in the answer.
        let mut gens = chain.stabilizer_generators(depth);
        let mut found = StabChain::new(self.degree, &gens);

        // Element = w * u_{depth-1} ... u_0 with w fixing S pointwise; the
        // image of base point j is (beta_j)^{u_{j-1} ... u_0}.
        fn search(
            chain: &StabChain,
            level: usize,
            depth: usize,
            suffix: &Permutation,
            in_set: &[bool],
            found: &mut StabChain,
            gens: &mut Vec<Permutation>,
        ) {
            if level == depth {
                if !found.contains(suffix) {
                    gens.push(suffix.clone());
                    *found = StabChain::new(suffix.degree(), gens);
                }
                return;
            }
            for &beta in chain.fundamental_orbit(level) {
                if !in_set[suffix.apply(beta) as usize] {
                    continue;
                }
                let u = chain.transversal(level, beta).unwrap();
                search(chain, level + 1, depth, &u.then(suffix), in_set, found, gens);
            }
        }
        // Walk levels from the top, composing on the left as we descend.
        fn descend(
            chain: &StabChain,
            depth: usize,
            in_set: &[bool],
            found: &mut StabChain,
            gens: &mut Vec<Permutation>,
        ) {
            search(chain, 0, depth, &Permutation::identity(chain.degree()), in_set, found, gens);
        }
        descend(&chain, depth, &in_set, &mut found, &mut gens);
        Ok(PermGroup::with_chain(self.degree, gens, found))
    }

    /// `{h in G : hg = gh}` by filtering group elements.
    pub fn centralizer(&self, g: &Permutation, caps: &Caps) -> Result<PermGroup> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        let order = self.order();
        if order > BigUint::from(caps.centralizer_elements) {
            return Err(Error::UseClosedForm {
                order: order.to_string(),
                cap: caps.centralizer_elements,
            });
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut found = StabChain::new(self.degree, &gens);
        self.chain().for_each_element(|h| {
            if h.then(g) == g.then(h) && !found.contains(h) {
                gens.push(h.clone());
                found = StabChain::new(self.degree, &gens);
            }
        });
        Ok(PermGroup::with_chain(self.degree, gens, found))
    }

    /// Group generated by `self` and extra elements.
    pub fn extended(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        PermGroup::new(self.degree, gens)
    }

    /// Relabels points by `pi`: the result is `pi^-1 G pi`.
    pub fn conjugate_by(&self, pi: &Permutation) -> Result<PermGroup> {
        PermGroup::new(
            self.degree,
            self.generators.iter().map(|g| g.conjugate_by(pi)).collect(),
        )
    }

    /// Canonical sorted generator strings; handy for stable reports.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        format!("<{}> on {} points", gens.join(", "), self.degree)
    }

    /// Index of a subgroup, exact.
    pub fn index_of(&self, sub: &PermGroup) -> Option<BigUint> {
        let (q, r) = num_integer::Integer::div_rem(&self.order(), &sub.order());
        (r == BigUint::from(0u32)).then_some(q)
    }
}

/// `n(n-1)(n-2)/3`, the index of the centralizer of a 3-cycle in `S_n`
/// (and in `A_n`, where both orders halve) for `n >= 7`.
pub fn centralizer_ratio_3cycle(n: u64, alternating: bool) -> Result<u64> {
    if n < 7 {
        return Err(Error::InvalidParameters(format!(
            "centralizer_ratio_3cycle needs n >= 7, got {n}"
        )));
    }
    // For n >= 5 (so also here) Sym({4..n}) holds an odd permutation, so
    // the ratio is the same for both groups.
    let _ = alternating;
    Ok(n * (n - 1) * (n - 2) / 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        crate::perm::parse_permutation(n, s).unwrap()
    }

    fn a5() -> PermGroup {
        PermGroup::new(
            10,
            vec![
                perm(10, "(2, 3, 5)(4, 7, 10)(6, 9, 8)"),
                perm(10, "(1, 2, 4)(3, 6, 7)(5, 8, 10)"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::trivial(5);
        assert_eq!(g.order(), BigUint::from(1u32));
        assert_eq!(g.orbit_of_point(3), vec![3]);
        assert_eq!(g.point_stabilizer(2).unwrap().order(), BigUint::from(1u32));
        assert!(g.contains(&Permutation::identity(5)));
    }

    #[test]
    fn a5_order_and_stabilizer() {
        let g = a5();
        assert_eq!(g.order(), BigUint::from(60u32));
        assert!(g.is_transitive());
        for x in 0..10 {
            assert_eq!(g.point_stabilizer(x).unwrap().order(), BigUint::from(6u32));
        }
    }

    #[test]
    fn block_stabilizer_orbits() {
        let h = PermGroup::new(10, vec![perm(10, "(2,4)(3,10)(5,7)(6,8)")]).unwrap();
        let mut sizes: Vec<usize> = h.orbits().iter().map(|o| o.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2, 2]);
    }

    #[test]
    fn setwise_stabilizer_full_set_is_whole_group() {
        let g = a5();
        let all: Vec<u32> = (0..10).collect();
        assert_eq!(g.setwise_stabilizer(&all).unwrap().order(), g.order());
        assert_eq!(g.setwise_stabilizer(&[]).unwrap().order(), g.order());
    }

    #[test]
    fn centralizers_of_three_cycle() {
        let caps = Caps::default();
        for n in 7..=9usize {
            let g = Permutation::from_cycles(n, &[vec![1, 2, 3]]).unwrap();
            for group in [PermGroup::symmetric(n), PermGroup::alternating(n)] {
                let c = group.centralizer(&g, &caps).unwrap();
                let ratio = group.order() / c.order();
                let alt = group.order() < PermGroup::symmetric(n).order();
                assert_eq!(ratio, BigUint::from(centralizer_ratio_3cycle(n as u64, alt).unwrap()));
            }
        }
        let s7 = PermGroup::symmetric(7);
        let g = Permutation::from_cycles(7, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(s7.centralizer(&g, &caps).unwrap().order(), BigUint::from(72u32));
        let id = Permutation::identity(7);
        assert_eq!(s7.centralizer(&id, &caps).unwrap().order(), s7.order());
    }

    #[test]
    fn centralizer_cap_points_to_closed_form() {
        let caps = Caps::default().with_overrides("centralizer_elements=100").unwrap();
        let g = Permutation::from_cycles(7, &[vec![1, 2, 3]]).unwrap();
        let err = PermGroup::symmetric(7).centralizer(&g, &caps).unwrap_err();
        assert!(matches!(err, Error::UseClosedForm { .. }));
        assert!(err.to_string().contains("centralizer_ratio_3cycle"));
    }

    #[test]
    fn closed_form_ratio() {
        assert_eq!(centralizer_ratio_3cycle(7, false).unwrap(), 70);
        assert_eq!(centralizer_ratio_3cycle(9, true).unwrap(), 168);
        assert!(centralizer_ratio_3cycle(6, false).is_err());
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(PermGroup::symmetric(8).order(), BigUint::from(40320u32));
        assert_eq!(PermGroup::alternating(8).order(), BigUint::from(20160u32));
        assert_eq!(PermGroup::alternating(7).order(), BigUint::from(2520u32));
        assert_eq!(PermGroup::alternating(3).order(), BigUint::from(3u32));
        assert_eq!(PermGroup::symmetric(1).order(), BigUint::from(1u32));
    }
}
