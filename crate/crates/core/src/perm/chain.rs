use num_bigint::BigUint;

use super::permutation::Permutation;

/// One level of a base and strong generating set.
#[derive(Debug, Clone)]
struct Level {
    base: u32,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// Fundamental orbit of `base`, in discovery order.
    orbit: Vec<u32>,
    /// `transversal[b]` maps `base` to `b`; `inverse[b]` is its inverse.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base as usize] = Some(Permutation::identity(degree));
        inverse[base as usize] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            inverse,
        }
    }
}

/// Stabilizer chain built by the incremental deterministic Schreier-Sims
/// algorithm. New base points are the smallest point moved by the generator
/// that needs them, so the chain is reproducible.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Builds a chain whose base starts with `prefix` (0-based, distinct).
    pub fn with_base_prefix(degree: usize, generators: &[Permutation], prefix: &[u32]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        for g in generators {
            if !g.is_identity() {
                chain.add_generator(g.clone(), 0);
            }
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strong generators of the pointwise stabilizer of the first `level`
    /// base points.
    pub fn stabilizer_generators(&self, level: usize) -> Vec<Permutation> {
        match self.levels.get(level) {
            Some(l) => l.gens.clone(),
            None => Vec::new(),
        }
    }

    pub fn fundamental_orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    pub fn base_point(&self, level: usize) -> u32 {
        self.levels[level].base
    }

    /// Coset representative mapping the `level` base point to `point`.
    pub fn transversal(&self, level: usize, point: u32) -> Option<&Permutation> {
        self.levels[level].transversal[point as usize].as_ref()
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`depth()` when it ran through every level).
    pub fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.apply(level.base) as usize;
            match &level.inverse[b] {
                Some(inv) => g = g.then(inv),
                None => return (g, i),
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, level) = self.sift(g.clone(), 0);
        level == self.levels.len() && residue.is_identity()
    }

    /// Adds a strong generator fixing the base points before `from`.
    fn add_generator(&mut self, g: Permutation, from: usize) {
        let mut last = from;
        while last < self.levels.len() && g.apply(self.levels[last].base) == self.levels[last].base {
            last += 1;
        }
        if last == self.levels.len() {
            let base = g.first_moved().expect("identity is never added as a strong generator");
            self.levels.push(Level::new(base, self.degree));
        }
        for level in (from..=last).rev() {
            self.levels[level].gens.push(g.clone());
            let new_gen = self.levels[level].gens.len() - 1;
            self.close_level(level, new_gen);
        }
    }

    /// Restores the Schreier-Sims invariant at `level` after generator
    /// `new_gen` was appended: the orbit is closed and every Schreier
    /// generator sifts through the deeper levels.
    fn close_level(&mut self, level: usize, new_gen: usize) {
        // Pairs (orbit position, generator index) still to process.
        let mut work: Vec<(usize, usize)> = (0..self.levels[level].orbit.len())
            .map(|pos| (pos, new_gen))
            .collect();
        while let Some((pos, gi)) = work.pop() {
            let (gamma, u_beta_s, gamma_known) = {
                let l = &self.levels[level];
                let beta = l.orbit[pos];
                let s = &l.gens[gi];
                let gamma = s.apply(beta);
                let u_beta = l.transversal[beta as usize].as_ref().expect("orbit point has a representative");
                (gamma, u_beta.then(s), l.transversal[gamma as usize].is_some())
            };
            if !gamma_known {
                let inv = u_beta_s.inverse();
                let l = &mut self.levels[level];
                l.transversal[gamma as usize] = Some(u_beta_s);
                l.inverse[gamma as usize] = Some(inv);
                l.orbit.push(gamma);
                let new_pos = l.orbit.len() - 1;
                for g in 0..l.gens.len() {
                    work.push((new_pos, g));
                }
                continue;
            }
            let schreier = {
                let l = &self.levels[level];
                u_beta_s.then(l.inverse[gamma as usize].as_ref().unwrap())
            };
            if schreier.is_identity() {
                continue;
            }
            let (residue, _) = self.sift(schreier, level + 1);
            if !residue.is_identity() {
                self.add_generator(residue, level + 1);
            }
        }
    }

    /// Calls `f` on every group element, in a fixed order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        // Elements factor uniquely as u_{k-1} ... u_1 u_0 (left to right).
        fn rec<F: FnMut(&Permutation)>(chain: &StabChain, level: usize, prefix: &Permutation, f: &mut F) {
            if level == 0 {
                f(prefix);
                return;
            }
            let l = &chain.levels[level - 1];
            for &b in &l.orbit {
                let u = l.transversal[b as usize].as_ref().unwrap();
                rec(chain, level - 1, &prefix.then(u), f);
            }
        }
        rec(self, self.levels.len(), &Permutation::identity(self.degree), &mut f);
    }
}
