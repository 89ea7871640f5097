use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{
    partition_subdegrees, partition_subdegrees_alternating, subdegrees_oracle, subset_subdegrees,
    SubdegreeProfile,
};
use crate::actions::{binomial, factorial, ActionSpace};
use crate::caps::Caps;
use crate::perm::PermGroup;
use crate::sieve::{self, Check, Constraint};

/// `(m, first n, last n)` for the subset actions the intransitive sweep
/// covers.
pub const INTRANSITIVE_WINDOWS: &[(u64, u64, u64)] = &[
    (2, 7, 31),
    (3, 7, 16),
    (4, 9, 15),
    (5, 11, 14),
    (6, 13, 14),
    (7, 15, 15),
];

/// Largest block size and block count tried by the imprimitive sweep.
pub const IMPRIMITIVE_BOUND_PAIRS_WINDOW: u64 = 20;

/// Spaces up to this size are cross-checked against the orbit oracle
/// during sweeps; larger ones rely on the closed forms alone.
pub const ORACLE_FEASIBLE: u64 = 5000;

/// Degrees tried by [`primitive_degree_bound`].
pub const PRIMITIVE_SEARCH_LIMIT: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepCase {
    Intransitive,
    Imprimitive,
    Primitive,
}

/// One parameter tuple. Checks run in order and stop at the first failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub tuple: Vec<u64>,
    pub group: String,
    pub checks: Vec<Check>,
    pub surviving: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepResult {
    pub case: SweepCase,
    /// Names of the components of each tuple.
    pub tuple_keys: Vec<String>,
    /// Tuples that passed the pre-filter and were expanded into entries.
    pub candidates: Vec<Vec<u64>>,
    pub examined: Vec<SweepEntry>,
    /// Distinct surviving tuples, ascending.
    pub survivors: Vec<Vec<u64>>,
    /// Candidates whose closed-form profile was confirmed by the oracle.
    pub oracle_checked: Vec<Vec<u64>>,
    pub notes: Vec<String>,
}

impl SweepResult {
    fn new(case: SweepCase, keys: &[&str]) -> Self {
        SweepResult {
            case,
            tuple_keys: keys.iter().map(|k| k.to_string()).collect(),
            candidates: Vec::new(),
            examined: Vec::new(),
            survivors: Vec::new(),
            oracle_checked: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, tuple: Vec<u64>, group: &str, checks: impl IntoIterator<Item = Check>) {
        let mut ran = Vec::new();
        for check in checks {
            let pass = check.pass;
            ran.push(check);
            if !pass {
                break;
            }
        }
        let surviving = ran.iter().all(|c| c.pass);
        self.examined.push(SweepEntry {
            tuple,
            group: group.to_string(),
            checks: ran,
            surviving,
        });
    }

    fn finish(mut self) -> Self {
        let survivors: BTreeSet<Vec<u64>> = self
            .examined
            .iter()
            .filter(|e| e.surviving)
            .map(|e| e.tuple.clone())
            .collect();
        self.survivors = survivors.into_iter().collect();
        self
    }
}

fn distinct_lengths(profile: &SubdegreeProfile) -> Vec<u64> {
    let mut out = profile.lengths();
    out.dedup();
    out
}

fn oracle_agrees(group: &PermGroup, space: &ActionSpace, expected: &SubdegreeProfile) -> bool {
    let oracle = subdegrees_oracle(group, space, &Caps::default()).expect("feasible space");
    oracle.lengths() == expected.lengths()
}

/// Strict upper bound on `k` when the group is intransitive on points and
/// acts on `m`-subsets: `3n(n-1)(n-2) / ((n-m)(n-m-1)(n-m-2)) + 2`.
fn intransitive_k_bound(n: u64, m: u64) -> BigRational {
    let num = BigUint::from(3u32) * n * (n - 1) * (n - 2);
    let den = BigUint::from(n - m) * (n - m - 1) * (n - m - 2);
    BigRational::new(num.into(), den.into()) + BigRational::from_integer(2.into())
}

/// Subset actions of `S_n` / `A_n` in the fixed windows, with `k` below the
/// intransitive bound, filtered by subdegree divisibility.
pub fn intransitive_sweep() -> SweepResult {
    let mut result = SweepResult::new(SweepCase::Intransitive, &["n", "m", "k"]);
    for &(m, lo, hi) in INTRANSITIVE_WINDOWS {
        for n in lo..=hi {
            result.candidates.push(vec![n, m]);
            let profile = subset_subdegrees(n, m).expect("windows satisfy n >= 2m+1");
            let v = profile.total;
            if v <= ORACLE_FEASIBLE {
                let space = ActionSpace::subsets(n as usize, m as usize).unwrap();
                assert!(oracle_agrees(&PermGroup::symmetric(n as usize), &space, &profile));
                assert!(oracle_agrees(&PermGroup::alternating(n as usize), &space, &profile));
                result.oracle_checked.push(vec![n, m]);
            }
            let bound = intransitive_k_bound(n, m);
            let lengths = distinct_lengths(&profile);
            let mut k = 4;
            while k < v && BigRational::from_integer(k.into()) < bound {
                let checks = lengths.iter().map(|&d| sieve::subdegree_divisibility(v, k, d));
                result.push(vec![n, m, k], "S_n, A_n", checks);
                k += 1;
            }
        }
    }
    let mut result = result.finish();
    for t in result.survivors.clone() {
        let v = binomial(t[0], t[1]).to_u64().unwrap();
        let cameron = sieve::cameron_bound(v, t[2]);
        result.notes.push(format!(
            "survivor (n={}, m={}, k={}) has v={v}; cameron_bound {} (k^2-3k+4 = {})",
            t[0],
            t[1],
            t[2],
            if cameron.pass { "passes" } else { "fails" },
            cameron.witness["k^2-3k+4"]
        ));
    }
    for range in ["m=4, n>=16", "m=5, n>=15", "m=6, n>=15", "m=7, n>=16"] {
        result
            .notes
            .push(format!("{range}: out of window (not covered by the finite sweep)"));
    }
    result
}

/// Pairs `(m, l)` with `m, l <= 20`, `ml >= 7` and `9 v < (ml)^6`, where
/// `v` is the number of partitions into `l` blocks of size `m`.
fn imprimitive_pairs() -> Vec<(u64, u64, BigUint)> {
    let mut out = Vec::new();
    for l in 2..=IMPRIMITIVE_BOUND_PAIRS_WINDOW {
        for m in 2..=IMPRIMITIVE_BOUND_PAIRS_WINDOW {
            let n = m * l;
            if n < 7 {
                continue;
            }
            let v = factorial(n) / (factorial(m).pow(l as u32) * factorial(l));
            if BigUint::from(9u32) * &v < BigUint::from(n).pow(6) {
                out.push((m, l, v));
            }
        }
    }
    out
}

/// Partition actions passing the degree bound, with every `k` in
/// `4..=floor(sqrt(v))+2` filtered by subdegree divisibility for both the
/// symmetric and the alternating profile.
pub fn imprimitive_sweep() -> SweepResult {
    let mut result = SweepResult::new(SweepCase::Imprimitive, &["m", "l", "k"]);
    for (m, l, v) in imprimitive_pairs() {
        result.candidates.push(vec![m, l]);
        let v = v.to_u64().expect("bound keeps v small");
        let profiles = [
            ("S_n", partition_subdegrees(m as usize, l as usize).unwrap()),
            ("A_n", partition_subdegrees_alternating(m as usize, l as usize).unwrap()),
        ];
        if v <= ORACLE_FEASIBLE {
            let space = ActionSpace::partitions(m as usize, l as usize).unwrap();
            let n = (m * l) as usize;
            assert!(oracle_agrees(&PermGroup::symmetric(n), &space, &profiles[0].1));
            assert!(oracle_agrees(&PermGroup::alternating(n), &space, &profiles[1].1));
            result.oracle_checked.push(vec![m, l]);
        }
        let k_max = sieve::cameron_k_max(v).min(v - 1);
        for (group, profile) in &profiles {
            let lengths = distinct_lengths(profile);
            for k in 4..=k_max {
                let checks = lengths.iter().map(|&d| sieve::subdegree_divisibility(v, k, d));
                result.push(vec![m, l, k], group, checks);
            }
        }
    }
    result.examined.sort_by(|a, b| a.tuple.cmp(&b.tuple).then(a.group.cmp(&b.group)));
    result.finish()
}

/// Degrees `n >= 7` with `n! / (2 n^(1+floor(log2 n))) < n^6 / 9`, tried up
/// to [`PRIMITIVE_SEARCH_LIMIT`].
pub fn primitive_degree_bound() -> Vec<u64> {
    (7..=PRIMITIVE_SEARCH_LIMIT)
        .filter(|&n| {
            let log2 = 63 - n.leading_zeros() as u64;
            BigUint::from(9u32) * factorial(n) < BigUint::from(2u32) * BigUint::from(n).pow((7 + log2) as u32)
        })
        .collect()
}

/// The odd-degree primitive cases: `v = 15`, where an element of order 3
/// without fixed points forces `k | v`, then `lambda2` decides.
pub fn primitive_sweep() -> SweepResult {
    let mut result = SweepResult::new(SweepCase::Primitive, &["v", "k"]);
    result.candidates = primitive_degree_bound().into_iter().map(|n| vec![n]).collect();
    let v = 15;
    for verdict in sieve::run_sieve(v, &[Constraint::KDividesV, Constraint::Lambda2Integral]) {
        result.push(vec![v, verdict.k], "A_7, A_8", verdict.checks);
    }
    result.notes.push(format!(
        "candidates are the degrees n passing the primitive order bound for n <= {PRIMITIVE_SEARCH_LIMIT}"
    ));
    result.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intransitive_k_bound_at_56() {
        // 3*8*7*6 / (5*4*3) + 2 = 18.8
        let b = intransitive_k_bound(8, 3);
        assert_eq!(b, BigRational::new(94.into(), 5.into()));
    }

    #[test]
    fn bound_pairs() {
        let mut pairs: Vec<(u64, u64)> = imprimitive_pairs().into_iter().map(|(m, l, _)| (m, l)).collect();
        pairs.sort();
        let mut expected: Vec<(u64, u64)> = (4..=15).map(|m| (m, 2)).collect();
        expected.extend([(3, 3), (4, 3), (5, 3), (6, 3), (2, 4), (3, 4), (2, 5), (2, 6), (2, 7)]);
        expected.sort();
        assert_eq!(pairs, expected);
        let v33 = imprimitive_pairs().into_iter().find(|p| (p.0, p.1) == (3, 3)).unwrap().2;
        assert_eq!(v33, BigUint::from(280u32));
    }

    #[test]
    fn primitive_bound() {
        assert_eq!(primitive_degree_bound(), (7..=13).collect::<Vec<_>>());
    }

    #[test]
    fn primitive_v15() {
        let r = primitive_sweep();
        assert!(r.survivors.is_empty());
        let k5 = r.examined.iter().find(|e| e.tuple == vec![15, 5]).unwrap();
        let last = k5.checks.last().unwrap();
        assert_eq!(last.name, "lambda2_integral");
        assert_eq!(last.witness["lambda2"], "13/3");
    }
}
