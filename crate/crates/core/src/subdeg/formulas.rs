use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{SubdegreeEntry, SubdegreeProfile};
use crate::actions::{binomial, factorial, ActionSpace, IntersectionMatrix};
use crate::error::{Error, Result};

fn to_u64(x: &BigUint, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::InvalidParameters(format!("{what} {x} does not fit in 64 bits")))
}

/// Nontrivial subdegrees of `S_n` (equivalently `A_n`) on `m`-subsets:
/// `d_i = C(m,i) C(n-m,m-i)` for the suborbit of subsets meeting the base
/// subset in `i` points, `i = 0..m-1`.
pub fn subset_subdegrees(n: u64, m: u64) -> Result<SubdegreeProfile> {
    if m == 0 || n < 2 * m + 1 || n < 5 {
        return Err(Error::InvalidParameters(format!(
            "subset subdegrees need m >= 1, n >= 2m+1 and n >= 5, got n={n}, m={m}"
        )));
    }
    let entries = (0..m)
        .map(|i| {
            let d = binomial(m, i) * binomial(n - m, m - i);
            Ok(SubdegreeEntry {
                label: format!("|A∩B|={i}"),
                length: to_u64(&d, "subdegree")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let space = ActionSpace::subsets(n as usize, m as usize)?;
    Ok(SubdegreeProfile::new(space.describe(), "S_n, A_n", entries))
}

/// Number of `m`-subsets fixed by a permutation with the given cycle type:
/// the ways of choosing whole cycles with total length `m`.
pub fn subset_fixed_points(cycle_type: &[usize], m: usize) -> BigUint {
    let mut ways = vec![BigUint::from(0u32); m + 1];
    ways[0] = BigUint::one();
    for &len in cycle_type {
        for total in (len..=m).rev() {
            let add = ways[total - len].clone();
            ways[total] += add;
        }
    }
    ways[m].clone()
}

/// One nontrivial suborbit class of `S_{ml}` on partitions into `l` blocks
/// of size `m`, keyed by its canonical intersection matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionClass {
    pub matrix: IntersectionMatrix,
    /// Pairs of row and column permutations fixing the matrix.
    pub automorphisms: u64,
    /// Distinct matrices under row and column permutations.
    pub class_size: u64,
    pub length: u64,
    /// The suborbit splits into two equal `A_{ml}`-suborbits.
    pub splits_in_alternating: bool,
}

fn check_partition_params(m: usize, l: usize) -> Result<()> {
    if m < 2 || l < 2 {
        return Err(Error::InvalidParameters(format!(
            "partition subdegrees need m >= 2 and l >= 2, got m={m}, l={l}"
        )));
    }
    if l > 8 {
        return Err(Error::InvalidParameters(format!(
            "partition subdegrees search all row permutations; l={l} is above the supported 8"
        )));
    }
    Ok(())
}

/// All nontrivial intersection-matrix classes, in ascending canonical order.
pub fn partition_classes(m: usize, l: usize) -> Result<Vec<PartitionClass>> {
    check_partition_params(m, l)?;
    let mut seen = BTreeSet::new();
    let mut rows = Vec::with_capacity(l);
    let mut col_rem = vec![m as u32; l];
    let mut ties = vec![true; l.saturating_sub(1)];
    doubly_lex(m as u32, l, &mut rows, &mut col_rem, &mut ties, &mut |flat| {
        let matrix = IntersectionMatrix::new(l, flat.to_vec()).expect("sums are balanced");
        if !matrix.is_trivial() {
            seen.insert(matrix.canonical());
        }
    });

    let l_fact = factorial(l as u64);
    let m_fact = factorial(m as u64);
    seen.into_iter()
        .map(|matrix| {
            let (automorphisms, all_even) = automorphisms(&matrix, m);
            let mut count = l_fact.clone();
            for r in 0..l {
                let mut row_ways = m_fact.clone();
                for s in 0..l {
                    row_ways /= factorial(matrix.entry(r, s) as u64);
                }
                count *= row_ways;
            }
            let length = count / BigUint::from(automorphisms);
            let class_size = &l_fact * &l_fact / BigUint::from(automorphisms);
            Ok(PartitionClass {
                splits_in_alternating: all_even,
                automorphisms,
                class_size: to_u64(&class_size, "class size")?,
                length: to_u64(&length, "subdegree")?,
                matrix,
            })
        })
        .collect()
}

/// Enumerates matrices with all line sums `m` whose rows and columns are
/// both in non-increasing lexicographic order. Every matrix is equivalent
/// to at least one of these.
fn doubly_lex(
    m: u32,
    l: usize,
    rows: &mut Vec<Vec<u32>>,
    col_rem: &mut [u32],
    ties: &mut [bool],
    emit: &mut dyn FnMut(&[u32]),
) {
    if rows.len() == l {
        if col_rem.iter().all(|&c| c == 0) {
            let flat: Vec<u32> = rows.iter().flatten().copied().collect();
            emit(&flat);
        }
        return;
    }
    let left_after = (l - rows.len() - 1) as u32;
    let mut row = vec![0u32; l];
    fill_row(m, l, 0, m, true, rows, col_rem, ties, &mut row, left_after, emit);
}

#[allow(clippy::too_many_arguments)]
fn fill_row(
    m: u32,
    l: usize,
    s: usize,
    remaining: u32,
    equal_prev: bool,
    rows: &mut Vec<Vec<u32>>,
    col_rem: &mut [u32],
    ties: &mut [bool],
    row: &mut Vec<u32>,
    left_after: u32,
    emit: &mut dyn FnMut(&[u32]),
) {
    if s == l {
        if remaining != 0 {
            return;
        }
        let new_ties: Vec<bool> = (0..l - 1).map(|t| ties[t] && row[t] == row[t + 1]).collect();
        let saved = ties.to_vec();
        ties.copy_from_slice(&new_ties);
        for t in 0..l {
            col_rem[t] -= row[t];
        }
        rows.push(row.clone());
        doubly_lex(m, l, rows, col_rem, ties, emit);
        rows.pop();
        for t in 0..l {
            col_rem[t] += row[t];
        }
        ties.copy_from_slice(&saved);
        return;
    }
    let mut hi = remaining.min(col_rem[s]);
    if equal_prev {
        if let Some(prev) = rows.last() {
            hi = hi.min(prev[s]);
        }
    }
    if s > 0 && ties[s - 1] {
        hi = hi.min(row[s - 1]);
    }
    for x in (0..=hi).rev() {
        // Whatever this column still needs must fit in the rows after this one.
        if col_rem[s] - x > left_after * m {
            break;
        }
        row[s] = x;
        let still_equal = equal_prev && rows.last().is_some_and(|p| p[s] == x);
        fill_row(m, l, s + 1, remaining - x, still_equal, rows, col_rem, ties, row, left_after, emit);
    }
    row[s] = 0;
}

/// `|Aut(M)|` over row and column permutations, and whether every
/// automorphism induces an even permutation of the points of `S_{ml}`
/// fixing both partitions.
fn automorphisms(matrix: &IntersectionMatrix, m: usize) -> (u64, bool) {
    let l = matrix.size();
    let columns: Vec<Vec<u32>> = (0..l).map(|s| (0..l).map(|r| matrix.entry(r, s)).collect()).collect();
    let mut sorted_cols = columns.clone();
    sorted_cols.sort_unstable();
    let mut column_symmetry: u64 = 1;
    let mut duplicate_columns = false;
    let mut i = 0;
    while i < l {
        let mut j = i;
        while j < l && sorted_cols[j] == sorted_cols[i] {
            j += 1;
        }
        column_symmetry *= (1..=(j - i) as u64).product::<u64>();
        duplicate_columns |= j - i > 1;
        i = j;
    }
    // A point swap inside a cell is odd, as is swapping two equal columns
    // when they hold an odd number of points each.
    let cells_are_points = matrix.entries().iter().all(|&x| x <= 1);
    let mut all_even = cells_are_points && !(duplicate_columns && m % 2 == 1);

    let mut count = 0u64;
    let mut sigma: Vec<usize> = (0..l).collect();
    let mut c = vec![0usize; l];
    let mut visit = |sigma: &[usize], all_even: &mut bool| {
        // Column s moved by sigma: entry r lands in row sigma[r].
        let moved: Vec<Vec<u32>> = columns
            .iter()
            .map(|col| {
                let mut out = vec![0u32; l];
                for r in 0..l {
                    out[sigma[r]] = col[r];
                }
                out
            })
            .collect();
        let mut sorted_moved = moved.clone();
        sorted_moved.sort_unstable();
        if sorted_moved != sorted_cols {
            return;
        }
        count += column_symmetry;
        if *all_even {
            // Parity depends only on sigma here; pick one matching tau.
            let mut used = vec![false; l];
            let tau: Vec<usize> = moved
                .iter()
                .map(|col| {
                    let t = (0..l).find(|&t| !used[t] && columns[t] == *col).unwrap();
                    used[t] = true;
                    t
                })
                .collect();
            let cells: Vec<(usize, usize)> = (0..l * l)
                .map(|i| (i / l, i % l))
                .filter(|&(r, s)| matrix.entry(r, s) == 1)
                .collect();
            let image: Vec<usize> = cells
                .iter()
                .map(|&(r, s)| cells.iter().position(|&x| x == (sigma[r], tau[s])).unwrap())
                .collect();
            if !is_even(&image) {
                *all_even = false;
            }
        }
    };
    visit(&sigma, &mut all_even);
    let mut i = 0;
    while i < l {
        if c[i] < i {
            if i % 2 == 0 {
                sigma.swap(0, i);
            } else {
                sigma.swap(c[i], i);
            }
            visit(&sigma, &mut all_even);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    (count, all_even)
}

fn is_even(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut x = start;
        let mut len = 0;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

fn check_profile_domain(m: usize, l: usize) -> Result<()> {
    check_partition_params(m, l)?;
    if l == 2 && m < 3 {
        return Err(Error::InvalidParameters("partitions into 2 blocks need m >= 3".into()));
    }
    Ok(())
}

/// Nontrivial subdegrees of `S_{ml}` on partitions into `l` blocks of size
/// `m`. For two blocks this is the closed form
/// `d_i = 2^{-floor(2i/m)} C(m,i)^2`, `i = 1..floor(m/2)`; otherwise one
/// entry per intersection-matrix class.
pub fn partition_subdegrees(m: usize, l: usize) -> Result<SubdegreeProfile> {
    check_profile_domain(m, l)?;
    let space = ActionSpace::partitions(m, l)?;
    let entries = if l == 2 {
        let entries = (1..=m / 2)
            .map(|i| {
                let c = binomial(m as u64, i as u64);
                let d = (&c * &c) >> (2 * i / m);
                let label = IntersectionMatrix::new(2, vec![(m - i) as u32, i as u32, i as u32, (m - i) as u32])
                    .expect("balanced")
                    .canonical()
                    .to_string();
                Ok(SubdegreeEntry {
                    label,
                    length: to_u64(&d, "subdegree")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        assert_eq!(entries.len() + 1, m / 2 + 1);
        entries
    } else {
        partition_classes(m, l)?
            .into_iter()
            .map(|c| SubdegreeEntry {
                label: c.matrix.to_string(),
                length: c.length,
            })
            .collect()
    };
    Ok(SubdegreeProfile::new(space.describe(), "S_n", entries))
}

/// The same profile for `A_{ml}`: a class splits into two halves exactly
/// when the `S_{ml}`-stabilizer of the pair is even.
pub fn partition_subdegrees_alternating(m: usize, l: usize) -> Result<SubdegreeProfile> {
    check_profile_domain(m, l)?;
    let space = ActionSpace::partitions(m, l)?;
    let mut entries = Vec::new();
    for c in partition_classes(m, l)? {
        let label = c.matrix.to_string();
        if c.splits_in_alternating {
            for half in 1..=2 {
                entries.push(SubdegreeEntry {
                    label: format!("{label} (half {half})"),
                    length: c.length / 2,
                });
            }
        } else {
            entries.push(SubdegreeEntry { label, length: c.length });
        }
    }
    Ok(SubdegreeProfile::new(space.describe(), "A_n", entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_examples() {
        let p = subset_subdegrees(7, 2).unwrap();
        assert_eq!(p.lengths(), vec![10, 10]);
        assert_eq!(p.total, 21);
        let p = subset_subdegrees(8, 3).unwrap();
        assert_eq!(p.entries.iter().map(|e| e.length).collect::<Vec<_>>(), vec![10, 30, 15]);
        assert_eq!(p.total, 56);
        assert_eq!(subset_subdegrees(5, 2).unwrap().entries[1].length, 6);
        assert!(subset_subdegrees(6, 3).is_err());
        assert!(subset_subdegrees(4, 1).is_err());
    }

    #[test]
    fn two_block_examples() {
        assert_eq!(partition_subdegrees(3, 2).unwrap().lengths(), vec![9]);
        let p = partition_subdegrees(4, 2).unwrap();
        assert_eq!(p.entries.iter().map(|e| e.length).collect::<Vec<_>>(), vec![16, 18]);
        assert_eq!(p.total, 35);
        assert_eq!(partition_subdegrees(5, 2).unwrap().lengths(), vec![25, 100]);
        assert!(partition_subdegrees(2, 2).is_err());
    }

    #[test]
    fn closed_form_matches_matrix_route() {
        for m in 3..=30 {
            let closed = partition_subdegrees(m, 2).unwrap();
            let classes = partition_classes(m, 2).unwrap();
            assert_eq!(classes.len(), m / 2, "m={m}");
            let mut lengths: Vec<u64> = classes.iter().map(|c| c.length).collect();
            lengths.sort_unstable();
            assert_eq!(closed.lengths(), lengths, "m={m}");
            // The halving comes from the one class that is a single matrix.
            for c in &classes {
                let balanced = c.matrix.entries().iter().all(|&x| 2 * x as usize == m);
                assert_eq!(c.class_size, if balanced { 1 } else { 2 }, "m={m}");
            }
        }
    }

    #[test]
    fn totals_are_space_sizes() {
        for (m, l) in [(2, 3), (3, 3), (2, 4), (4, 3), (3, 4), (2, 5), (2, 6), (6, 3), (2, 7)] {
            let size = ActionSpace::partitions(m, l).unwrap().len_u64().unwrap();
            assert_eq!(partition_subdegrees(m, l).unwrap().total, size, "({m},{l})");
            assert_eq!(partition_subdegrees_alternating(m, l).unwrap().total, size, "({m},{l})");
        }
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = [(3, 3), (4, 3), (5, 3), (6, 3), (2, 4), (3, 4), (2, 5), (2, 6), (2, 7)]
            .iter()
            .map(|&(m, l)| partition_classes(m, l).unwrap().len())
            .collect();
        assert_eq!(counts, vec![4, 8, 12, 21, 4, 11, 6, 10, 14]);
    }

    #[test]
    fn alternating_splits() {
        let lengths = |m, l| partition_subdegrees_alternating(m, l).unwrap().lengths();
        // Pairs of perfect matchings on 8 points: the union is a 4-cycle plus
        // two doubled edges, two 4-cycles, a 6-cycle plus a doubled edge, or
        // an 8-cycle. The two classes without doubled edges split.
        assert_eq!(partition_subdegrees(2, 4).unwrap().lengths(), vec![12, 12, 32, 48]);
        assert_eq!(lengths(2, 4), vec![6, 6, 12, 24, 24, 32]);
        assert_eq!(lengths(4, 2), vec![16, 18]);
    }

    #[test]
    fn fixed_subsets_of_a_three_cycle() {
        assert_eq!(subset_fixed_points(&[3, 1, 1, 1, 1, 1], 3), BigUint::from(11u32));
        assert_eq!(subset_fixed_points(&[5, 1, 1, 1], 3), BigUint::from(1u32));
        assert_eq!(subset_fixed_points(&[1; 8], 3), BigUint::from(56u32));
    }
}
