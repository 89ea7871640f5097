use steiner_core::actions::{binomial, ActionSpace};
use steiner_core::perm::PermGroup;
use steiner_core::subdeg::{
    imprimitive_sweep, intransitive_sweep, partition_subdegrees, partition_subdegrees_alternating,
    subdegrees_oracle, subset_subdegrees,
};
use steiner_core::Caps;

#[test]
fn subsets_agree_with_oracle() {
    let caps = Caps::default();
    for n in 5..=16u64 {
        for m in 1..=(n - 1) / 2 {
            if binomial(n, m) > 5000u32.into() {
                continue;
            }
            let formula = subset_subdegrees(n, m).unwrap();
            let space = ActionSpace::subsets(n as usize, m as usize).unwrap();
            for group in [PermGroup::symmetric(n as usize), PermGroup::alternating(n as usize)] {
                let oracle = subdegrees_oracle(&group, &space, &caps).unwrap();
                assert_eq!(oracle.lengths(), formula.lengths(), "n={n} m={m}");
                assert_eq!(oracle.total, formula.total);
            }
        }
    }
}

#[test]
fn partitions_agree_with_oracle() {
    let caps = Caps::default();
    for l in 2..=6usize {
        for m in 2..=8usize {
            if l == 2 && m < 3 {
                continue;
            }
            let space = ActionSpace::partitions(m, l).unwrap();
            if *space.size() > 5000u32.into() {
                continue;
            }
            let n = m * l;
            let s = subdegrees_oracle(&PermGroup::symmetric(n), &space, &caps).unwrap();
            assert_eq!(s.lengths(), partition_subdegrees(m, l).unwrap().lengths(), "m={m} l={l}");
            let a = subdegrees_oracle(&PermGroup::alternating(n), &space, &caps).unwrap();
            assert_eq!(a.lengths(), partition_subdegrees_alternating(m, l).unwrap().lengths(), "m={m} l={l}");
        }
    }
}

#[test]
fn intransitive_survivor() {
    let r = intransitive_sweep();
    assert_eq!(r.survivors, vec![vec![8, 3, 11]]);
    assert_eq!(r, intransitive_sweep());
    assert!(r.examined.iter().filter(|e| e.tuple[..2] == [7, 2]).all(|e| !e.surviving));
}

#[test]
fn imprimitive_has_no_survivors() {
    let r = imprimitive_sweep();
    assert!(r.survivors.is_empty());
    assert_eq!(r.candidates.len(), 21);
}
