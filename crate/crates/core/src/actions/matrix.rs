use std::fmt;

use serde::Serialize;

use super::space::{ActionKind, ActionSpace};
use crate::error::{Error, Result};

/// Square matrix of block-intersection sizes `|V_r ∩ W_s|` of two
/// partitions, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntersectionMatrix {
    size: usize,
    entries: Vec<u32>,
}

impl IntersectionMatrix {
    /// Checks squareness and that all row and column sums agree.
    pub fn new(size: usize, entries: Vec<u32>) -> Result<Self> {
        if size == 0 || entries.len() != size * size {
            return Err(Error::InvalidParameters(format!(
                "intersection matrix needs {size}x{size} entries, got {}",
                entries.len()
            )));
        }
        let matrix = IntersectionMatrix { size, entries };
        let target = matrix.row_sum(0);
        if (0..size).any(|i| matrix.row_sum(i) != target || matrix.col_sum(i) != target) {
            return Err(Error::InvalidParameters(
                "intersection matrix rows and columns must share one sum".into(),
            ));
        }
        Ok(matrix)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, r: usize, s: usize) -> u32 {
        self.entries[r * self.size + s]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    fn row_sum(&self, r: usize) -> u32 {
        self.entries[r * self.size..(r + 1) * self.size].iter().sum()
    }

    fn col_sum(&self, s: usize) -> u32 {
        (0..self.size).map(|r| self.entry(r, s)).sum()
    }

    /// The common row sum, i.e. the block size.
    pub fn line_sum(&self) -> u32 {
        self.row_sum(0)
    }

    /// Lexicographically least row-major matrix under independent row and
    /// column permutations. For each row order the best column order is
    /// the ascending sort of the columns, so only rows are searched.
    pub fn canonical(&self) -> IntersectionMatrix {
        let n = self.size;
        let mut order: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u32>> = None;
        let mut consider = |order: &[usize]| {
            let mut cols: Vec<Vec<u32>> = (0..n)
                .map(|s| order.iter().map(|&r| self.entry(r, s)).collect())
                .collect();
            cols.sort_unstable();
            let mut flat = vec![0u32; n * n];
            for (s, col) in cols.iter().enumerate() {
                for (r, &x) in col.iter().enumerate() {
                    flat[r * n + s] = x;
                }
            }
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
        };
        // Heap's algorithm over row orders.
        let mut c = vec![0usize; n];
        consider(&order);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    order.swap(0, i);
                } else {
                    order.swap(c[i], i);
                }
                consider(&order);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        IntersectionMatrix {
            size: n,
            entries: best.unwrap(),
        }
    }

    /// True when each row has a single nonzero entry (the partitions agree).
    pub fn is_trivial(&self) -> bool {
        self.entries
            .chunks(self.size)
            .all(|row| row.iter().filter(|&&x| x != 0).count() == 1)
    }
}

impl fmt::Debug for IntersectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl fmt::Display for IntersectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Raw intersection matrix of two canonical partitions of a partition space.
pub fn intersection_matrix(space: &ActionSpace, alpha: &[u32], beta: &[u32]) -> Result<IntersectionMatrix> {
    let ActionKind::Partitions { m, l } = space.kind() else {
        return Err(Error::InvalidParameters(
            "intersection matrices need a partition space".into(),
        ));
    };
    space.validate(alpha)?;
    space.validate(beta)?;
    let mut block_of = vec![0usize; m * l];
    for (s, block) in beta.chunks(m).enumerate() {
        for &p in block {
            block_of[p as usize] = s;
        }
    }
    let mut entries = vec![0u32; l * l];
    for (r, block) in alpha.chunks(m).enumerate() {
        for &p in block {
            entries[r * l + block_of[p as usize]] += 1;
        }
    }
    Ok(IntersectionMatrix { size: l, entries })
}

/// Canonical class of the intersection matrix of `alpha` and `beta`.
pub fn intersection_class(space: &ActionSpace, alpha: &[u32], beta: &[u32]) -> Result<IntersectionMatrix> {
    Ok(intersection_matrix(space, alpha, beta)?.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_partitions_give_diagonal_class() {
        let space = ActionSpace::partitions(3, 3).unwrap();
        let a = space.object(17).unwrap();
        let class = intersection_class(&space, &a, &a).unwrap();
        assert_eq!(class.rows(), vec![vec![0, 0, 3], vec![0, 3, 0], vec![3, 0, 0]]);
        assert!(class.is_trivial());
    }

    #[test]
    fn two_by_two_example() {
        let space = ActionSpace::partitions(3, 2).unwrap();
        let class = intersection_class(&space, &[0, 1, 2, 3, 4, 5], &[0, 1, 3, 2, 4, 5]).unwrap();
        assert_eq!(class, IntersectionMatrix::new(2, vec![2, 1, 1, 2]).unwrap().canonical());
        assert_eq!(class.rows(), vec![vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn canonical_is_exhaustive_minimum() {
        // Compare with a brute-force search over both row and column orders.
        let m = IntersectionMatrix::new(3, vec![2, 1, 0, 0, 1, 2, 1, 1, 1]).unwrap();
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        let mut best: Option<Vec<u32>> = None;
        for rp in &perms {
            for cp in &perms {
                let flat: Vec<u32> = (0..9).map(|i| m.entry(rp[i / 3], cp[i % 3])).collect();
                if best.as_ref().is_none_or(|b| flat < *b) {
                    best = Some(flat);
                }
            }
        }
        assert_eq!(m.canonical().entries(), best.unwrap().as_slice());
    }

    #[test]
    fn rejects_unbalanced() {
        assert!(IntersectionMatrix::new(2, vec![2, 1, 0, 2]).is_err());
        assert!(IntersectionMatrix::new(2, vec![1, 1, 1]).is_err());
    }
}
