//! Arithmetic filters on `(v, k)` for 3-(v,k,1) designs with a
//! block-transitive group.
//!
//! Group data (stabilizer orders, subdegrees, fixed-point counts) is passed
//! in rather than recomputed, so the filters work on plain parameter
//! tables. All arithmetic is exact.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::design::design_params;

/// Outcome of one filter, with the numbers it compared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: BTreeMap<String, String>,
}

impl Check {
    fn new(name: &str, pass: bool, witness: &[(&str, String)]) -> Self {
        Check {
            name: name.to_string(),
            pass,
            witness: witness.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SieveVerdict {
    pub v: u64,
    pub k: u64,
    pub checks: Vec<Check>,
    pub surviving: bool,
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn falling3(x: u64) -> BigUint {
    big(x) * big(x.saturating_sub(1)) * big(x.saturating_sub(2))
}

/// `v >= k^2 - 3k + 4`.
pub fn cameron_bound(v: u64, k: u64) -> Check {
    let rhs = (k as u128) * (k as u128) + 4 - 3 * k as u128;
    Check::new(
        "cameron_bound",
        v as u128 >= rhs,
        &[("v", v.to_string()), ("k^2-3k+4", rhs.to_string()), ("floor(sqrt(v))+2", (cameron_k_max(v)).to_string())],
    )
}

/// `floor(sqrt(v)) + 2`, the block-size ceiling used to bound searches.
pub fn cameron_k_max(v: u64) -> u64 {
    v.isqrt() + 2
}

/// `(v-1)(v-2) <= ratio * k(k-1)(k-2)`, where `ratio = |G| / |C_G(g)|`
/// for an element `g` with an orbit of length at least 3.
pub fn centralizer_bound(v: u64, k: u64, ratio: u64) -> Check {
    let lhs = big(v - 1) * big(v - 2);
    let rhs = big(ratio) * falling3(k);
    Check::new(
        "centralizer_bound",
        lhs <= rhs,
        &[("(v-1)(v-2)", lhs.to_string()), ("ratio*k(k-1)(k-2)", rhs.to_string())],
    )
}

/// Exclusive upper bound `(c+2)^2` on `v`.
pub fn v_upper_from_c(c: u64) -> BigUint {
    let s = big(c) + big(2);
    &s * &s
}

/// `(v-1)(v-2)` divides `k(k-1)(k-2) |G_alpha|`.
pub fn stabilizer_divisibility(v: u64, k: u64, stab_order: &BigUint) -> Check {
    let lhs = big(v - 1) * big(v - 2);
    let rhs = falling3(k) * stab_order;
    Check::new(
        "stabilizer_divisibility",
        (&rhs % &lhs).is_zero(),
        &[("(v-1)(v-2)", lhs.to_string()), ("k(k-1)(k-2)|G_a|", rhs.to_string())],
    )
}

/// `(v-1)(v-2)` divides `k(k-1)(k-2) d(d-1)` for a nontrivial subdegree `d`.
pub fn subdegree_divisibility(v: u64, k: u64, d: u64) -> Check {
    let lhs = big(v - 1) * big(v - 2);
    let rhs = falling3(k) * big(d) * big(d.saturating_sub(1));
    Check::new(
        "subdegree_divisibility",
        (&rhs % &lhs).is_zero(),
        &[("d", d.to_string()), ("(v-1)(v-2)", lhs.to_string()), ("k(k-1)(k-2)d(d-1)", rhs.to_string())],
    )
}

/// `fix <= 2(v-k)/(k-2) + k - 2` for the fixed points of a nontrivial
/// element.
pub fn fix_bound(v: u64, k: u64, fix_count: u64) -> Check {
    let bound = BigRational::new((2 * (v as i128 - k as i128)).into(), (k as i128 - 2).into())
        + BigRational::from_integer((k as i128 - 2).into());
    let fix = BigRational::from_integer((fix_count as i128).into());
    Check::new(
        "fix_bound",
        fix <= bound,
        &[("fix", fix_count.to_string()), ("2(v-k)/(k-2)+k-2", bound.to_string())],
    )
}

/// `k | v`, forced when an element of order 3 fixes no point.
pub fn k_divides_v_filter(v: u64, k: u64) -> Check {
    Check::new("k_divides_v", v % k == 0, &[("v mod k", (v % k).to_string())])
}

/// Flag-transitivity is forced when both `k` and 4 divide `v`.
pub fn flag_force(v: u64, k: u64) -> bool {
    v % k == 0 && v % 4 == 0
}

/// `(v-2)/(k-2)` is an integer.
pub fn lambda2_integral(v: u64, k: u64) -> Check {
    let p = design_params(v, k).expect("sieve keeps 3 < k < v");
    Check::new("lambda2_integral", p.lambda2.is_integer(), &[("lambda2", p.lambda2.to_string())])
}

/// Block count and both replication numbers are integers.
pub fn params_integral(v: u64, k: u64) -> Check {
    let p = design_params(v, k).expect("sieve keeps 3 < k < v");
    Check::new(
        "params_integral",
        p.all_integral,
        &[
            ("blocks", p.blocks.to_string()),
            ("lambda1", p.lambda1.to_string()),
            ("lambda2", p.lambda2.to_string()),
        ],
    )
}

/// Block-transitivity needs `|B|` to be an integer dividing `|G|`.
pub fn orbit_size_filter(v: u64, k: u64, group_order: &BigUint) -> Check {
    let p = design_params(v, k).expect("sieve keeps 3 < k < v");
    let pass = p.blocks.is_integer() && {
        let b = p.blocks.to_integer().to_biguint().unwrap();
        group_order.is_multiple_of(&b)
    };
    Check::new(
        "orbit_size",
        pass,
        &[("blocks", p.blocks.to_string()), ("group_order", group_order.to_string())],
    )
}

/// A filter applied by [`run_sieve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    Lambda2Integral,
    ParamsIntegral,
    KDividesV,
    StabilizerOrder(BigUint),
    Subdegree(u64),
    CentralizerRatio(u64),
    FixCount(u64),
    GroupOrder(BigUint),
}

impl Constraint {
    fn apply(&self, v: u64, k: u64) -> Check {
        match self {
            Constraint::Lambda2Integral => lambda2_integral(v, k),
            Constraint::ParamsIntegral => params_integral(v, k),
            Constraint::KDividesV => k_divides_v_filter(v, k),
            Constraint::StabilizerOrder(s) => stabilizer_divisibility(v, k, s),
            Constraint::Subdegree(d) => subdegree_divisibility(v, k, *d),
            Constraint::CentralizerRatio(r) => centralizer_bound(v, k, *r),
            Constraint::FixCount(f) => fix_bound(v, k, *f),
            Constraint::GroupOrder(g) => orbit_size_filter(v, k, g),
        }
    }
}

/// One verdict for each `k` in `4..=floor(sqrt(v))+2` with `k < v`. The
/// Cameron bound is always the first check.
pub fn run_sieve(v: u64, constraints: &[Constraint]) -> Vec<SieveVerdict> {
    if v <= 4 {
        return Vec::new();
    }
    let k_max = cameron_k_max(v).min(v - 1);
    (4..=k_max)
        .map(|k| {
            let mut checks = vec![cameron_bound(v, k)];
            checks.extend(constraints.iter().map(|c| c.apply(v, k)));
            let surviving = checks.iter().all(|c| c.pass);
            SieveVerdict { v, k, checks, surviving }
        })
        .collect()
}

/// `k` values that pass every check.
pub fn survivors(verdicts: &[SieveVerdict]) -> Vec<u64> {
    verdicts.iter().filter(|v| v.surviving).map(|v| v.k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cameron_examples() {
        assert!(cameron_bound(10, 4).pass);
        assert!(!cameron_bound(10, 5).pass);
        assert!(cameron_bound(36, 7).pass);
        assert_eq!(cameron_k_max(36), 8);
        // Equality passes.
        assert!(cameron_bound(8, 4).pass);
        assert!(!cameron_bound(7, 4).pass);
    }

    #[test]
    fn centralizer_examples() {
        assert!(centralizer_bound(10, 4, 3).pass);
        assert!(!centralizer_bound(100, 4, 3).pass);
        assert_eq!(v_upper_from_c(70), big(5184));
        assert_eq!(v_upper_from_c(3), big(25));
        assert_eq!(v_upper_from_c(1), big(9));
    }

    #[test]
    fn divisibility_examples() {
        assert!(stabilizer_divisibility(10, 4, &big(144)).pass);
        assert!(stabilizer_divisibility(56, 11, &big(720)).pass);
        assert!(!stabilizer_divisibility(100, 4, &big(5)).pass);
        assert!(subdegree_divisibility(56, 11, 15).pass);
        assert!(subdegree_divisibility(56, 11, 30).pass);
        assert!(!subdegree_divisibility(21, 4, 10).pass);
    }

    #[test]
    fn fix_examples() {
        assert!(fix_bound(56, 11, 11).pass);
        assert!(fix_bound(10, 4, 8).pass);
        assert!(!fix_bound(10, 4, 9).pass);
    }

    #[test]
    fn divisibility_by_k() {
        assert!(k_divides_v_filter(15, 5).pass);
        assert!(!flag_force(15, 5));
        assert!(flag_force(36, 4));
        assert!(!k_divides_v_filter(15, 4).pass);
    }

    #[test]
    fn sieve_examples() {
        let v45 = run_sieve(45, &[Constraint::Lambda2Integral]);
        assert_eq!(v45.iter().map(|v| v.k).collect::<Vec<_>>(), vec![4, 5, 6, 7, 8]);
        assert!(survivors(&v45).is_empty());
        let v36 = run_sieve(36, &[Constraint::Lambda2Integral]);
        assert_eq!(survivors(&v36), vec![4]);
        let with_order = run_sieve(36, &[Constraint::Lambda2Integral, Constraint::GroupOrder(big(720))]);
        assert!(survivors(&with_order).is_empty());
        let check = &with_order[0].checks[2];
        assert_eq!(check.witness["blocks"], "1785");
        assert!(!check.pass);
    }

    #[test]
    fn orbit_size_on_a_real_design() {
        assert!(orbit_size_filter(10, 4, &big(1440)).pass);
        assert!(orbit_size_filter(10, 4, &big(60)).pass);
        assert!(!orbit_size_filter(10, 4, &big(20)).pass);
    }
}
