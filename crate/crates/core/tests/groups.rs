use std::collections::HashSet;

use num_bigint::BigUint;
use steiner_core::design::{flag_transitivity, is_block_transitive, verify_steiner};
use steiner_core::fixtures;
use steiner_core::perm::{derived_subgroup, index2_subgroups, subgroups_of_order, PermGroup, Permutation};
use steiner_core::Caps;

/// Closure of the generators by breadth-first multiplication.
fn closure(group: &PermGroup) -> HashSet<Permutation> {
    let id = Permutation::identity(group.degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in group.generators() {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn orders_match_closure() {
    for text in [fixtures::A5_DEGREE10, fixtures::S6_2, fixtures::PGL29, fixtures::PGL29_BLOCK_STABILIZER] {
        let g = fixtures::group(text);
        assert_eq!(g.order(), big(closure(&g).len() as u64));
    }
    assert_eq!(fixtures::group(fixtures::A5_DEGREE10).order(), big(60));
    assert_eq!(fixtures::group(fixtures::S6_2).order(), big(1440));
}

#[test]
fn example_group_orbits_and_stabilizers() {
    let g = fixtures::group(fixtures::S6_2);
    assert_eq!(g.orbits(), vec![(0..10).collect::<Vec<u32>>()]);
    for x in 0..10 {
        assert_eq!(g.point_stabilizer(x).unwrap().order(), big(144));
    }
    let stab = g.setwise_stabilizer(&[0, 4, 5, 6]).unwrap();
    assert_eq!(stab.order(), big(48));
    let shipped = fixtures::group(fixtures::S6_2_BLOCK_STABILIZER);
    assert!(shipped.is_subgroup_of(&stab));
    assert_eq!(shipped.order(), big(48));
}

#[test]
fn a6_and_index_two_subgroups() {
    let caps = Caps::default();
    let g = fixtures::group(fixtures::S6_2);
    let d = fixtures::d3_10_4();
    let a6 = derived_subgroup(&g, &caps).unwrap();
    assert_eq!(a6.order(), big(360));
    assert!(a6.is_transitive());
    assert_eq!(a6.order(), big(closure(&a6).len() as u64));
    let t = is_block_transitive(&a6, &d).unwrap();
    assert_eq!(t.orbit_sizes, vec![15, 15]);
    for block in d.blocks() {
        assert_eq!(a6.setwise_stabilizer(block).unwrap().order(), big(24));
    }
    let subs = index2_subgroups(&g, &caps).unwrap();
    assert_eq!(subs.len(), 3);
    let mut transitive = 0;
    for h in &subs {
        assert_eq!(h.order(), big(720));
        for s in g.generators() {
            for x in h.generators() {
                assert!(h.contains(&x.conjugate_by(s)));
            }
        }
        let f = flag_transitivity(h, &d).unwrap();
        if f.blocks.transitive {
            transitive += 1;
            assert!(f.flag_transitive);
            assert_eq!(f.block_stabilizer_order, "24");
        }
    }
    assert_eq!(transitive, 2);
    assert!(verify_steiner(&d, &caps).unwrap().is_steiner);
}

#[test]
fn subgroup_classes() {
    let caps = Caps::default();
    let a6 = derived_subgroup(&fixtures::group(fixtures::S6_2), &caps).unwrap();
    let twelve = subgroups_of_order(&a6, 12, &caps).unwrap();
    assert_eq!(twelve.classes.len(), 2);
    for h in &twelve.classes {
        let mut sizes: Vec<usize> = h.orbits().iter().map(|o| o.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![4, 6]);
    }
    let pgl = fixtures::group(fixtures::PGL29);
    let t24 = subgroups_of_order(&pgl, 24, &caps).unwrap();
    assert_eq!(t24.classes.len(), 1);
    let mut sizes: Vec<usize> = t24.classes[0].orbits().iter().map(|o| o.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![4, 6]);
    let whole = subgroups_of_order(&pgl, 720, &caps).unwrap();
    assert_eq!(whole.classes.len(), 1);
}
