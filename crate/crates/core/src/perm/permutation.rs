use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection on `{0, .., n-1}` stored as an image table.
///
/// Points are 0-based here and 1-based in every textual form. Products are
/// read left to right: `p.then(&q)` maps `i` to `q(p(i))`, matching the
/// exponent notation `x^(pq) = (x^p)^q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotABijection { degree: n });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images_one_based(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::NotABijection {
                degree: images.len(),
            });
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p as usize > degree {
                    return Err(Error::PointOutOfRange {
                        point: p as u64,
                        degree,
                    });
                }
                if touched[p as usize - 1] {
                    return Err(Error::NotABijection { degree });
                }
                touched[p as usize - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                images[p as usize - 1] = q - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`. Fails on a degree mismatch.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right product; degrees must agree.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other^-1 * self * other`, i.e. relabel `self` by `other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation { images }
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn is_even(&self) -> bool {
        let moved: usize = self.cycle_lengths().iter().map(|l| l - 1).sum();
        moved % 2 == 0
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Non-trivial cycles, 0-based, each starting at its smallest point and
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle type as a sorted list of cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths = self.cycle_lengths();
        lengths.sort_unstable();
        lengths
    }
}

impl fmt::Display for Permutation {
    /// Canonical disjoint-cycle form, 1-based, no spaces; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn left_to_right_convention() {
        let p = cyc(3, &[&[1, 2]]);
        let q = cyc(3, &[&[2, 3]]);
        assert_eq!(p.compose(&q).unwrap(), cyc(3, &[&[1, 3, 2]]));
        assert_eq!(p.compose(&q).unwrap().to_string(), "(1,3,2)");
    }

    #[test]
    fn identity_and_inverse() {
        let p = cyc(10, &[&[2, 3, 5], &[4, 7, 10], &[6, 9, 8]]);
        let id = Permutation::identity(10);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4));
        assert!(matches!(err, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Permutation::from_cycles(4, &[vec![1, 5]]).is_err());
    }

    #[test]
    fn order_parity_and_pow() {
        let p = cyc(10, &[&[3, 6, 8, 5, 7, 10, 9, 4]]);
        assert_eq!(p.order(), 8);
        assert!(!p.is_even());
        let q = cyc(5, &[&[1, 2], &[3, 4, 5]]);
        assert_eq!(q.order(), 6);
        assert!(!q.is_even());
        assert!(q.pow(6).is_identity());
        assert_eq!(q.pow(3), cyc(5, &[&[1, 2]]));
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let g = cyc(4, &[&[1, 2, 3]]);
        let h = cyc(4, &[&[3, 4]]);
        assert_eq!(g.conjugate_by(&h), cyc(4, &[&[1, 2, 4]]));
        assert_eq!(g.conjugate_by(&h), h.inverse().then(&g).then(&h));
    }

    #[test]
    fn canonical_display() {
        let p = cyc(10, &[&[6, 9, 8], &[4, 7, 10], &[3, 5, 2]]);
        assert_eq!(p.to_string(), "(2,3,5)(4,7,10)(6,9,8)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }
}
