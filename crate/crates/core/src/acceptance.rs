//! Acceptance criteria 1-10, checked against brute-force counts where a
//! direct count is feasible, each with a runtime limit.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::actions::{binomial, ActionSpace};
use crate::design::{automorphism_group, design_params, flag_transitivity, is_block_transitive, Design};
use crate::fixtures;
use crate::perm::{derived_subgroup, index2_subgroups, subgroups_of_order, PermGroup, Permutation};
use crate::search::{orbit_union_blocks, search_invariant, search_orbit_union, CandidateVerdict};
use crate::sieve::{cameron_bound, fix_bound, run_sieve, survivors, Constraint};
use crate::subdeg::{
    imprimitive_sweep, intransitive_sweep, partition_subdegrees, partition_subdegrees_alternating,
    primitive_degree_bound, primitive_sweep, subdegrees_oracle, subset_subdegrees,
};
use crate::Caps;
use serde::Serialize;

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// Number of blocks containing each 3-subset of the points, by direct count.
fn triple_counts(v: usize, blocks: &[Vec<u32>]) -> Vec<u32> {
    let mut counts = vec![0u32; v * v * v];
    for b in blocks {
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                for l in j + 1..b.len() {
                    let mut t = [b[i], b[j], b[l]];
                    t.sort_unstable();
                    counts[(t[0] as usize * v + t[1] as usize) * v + t[2] as usize] += 1;
                }
            }
        }
    }
    counts
}

fn triples(v: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..v).flat_map(move |a| (a + 1..v).flat_map(move |b| (b + 1..v).map(move |c| (a, b, c))))
}

/// Orbit of a block under the generators, by closure.
fn block_orbit(group: &PermGroup, block: &[u32]) -> Vec<Vec<u32>> {
    let mut start = block.to_vec();
    start.sort_unstable();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(b) = stack.pop() {
        for g in group.generators() {
            let mut image: Vec<u32> = b.iter().map(|&p| g.apply(p)).collect();
            image.sort_unstable();
            if seen.insert(image.clone()) {
                stack.push(image);
            }
        }
    }
    seen.into_iter().collect()
}

fn profile(group: &PermGroup) -> Vec<usize> {
    let mut sizes: Vec<usize> = group.orbits().iter().map(|o| o.len()).collect();
    sizes.sort_unstable();
    sizes
}

fn criterion_1() -> Outcome {
    let design = fixtures::d3_10_4();
    ensure(design.blocks().len() == 30, format!("{} blocks", design.blocks().len()))?;
    let counts = triple_counts(10, design.blocks());
    let covered = triples(10)
        .filter(|&(a, b, c)| counts[(a as usize * 10 + b as usize) * 10 + c as usize] == 1)
        .count();
    ensure(covered == 120, format!("{covered} of 120 triples covered once"))?;
    let p = design_params(10, 4).map_err(err)?;
    let got = (p.blocks.to_string(), p.lambda1.to_string(), p.lambda2.to_string());
    ensure(got == ("30".into(), "12".into(), "4".into()), format!("params {got:?}"))?;
    Ok("30 blocks, 120/120 triples once, params (30, 12, 4)".into())
}

fn criterion_2() -> Outcome {
    let caps = Caps::default();
    let design = fixtures::d3_10_4();
    let aut = automorphism_group(&design, &caps).map_err(err)?;
    ensure(aut.order() == BigUint::from(1440u32), format!("|Aut| = {}", aut.order()))?;
    let blocks: HashSet<&Vec<u32>> = design.blocks().iter().collect();
    for g in aut.generators() {
        let preserved = design.blocks().iter().all(|b| {
            let mut image: Vec<u32> = b.iter().map(|&p| g.apply(p)).collect();
            image.sort_unstable();
            blocks.contains(&image)
        });
        ensure(preserved, format!("generator {g} moves a block off the design"))?;
    }
    ensure(flag_transitivity(&aut, &design).map_err(err)?.flag_transitive, "Aut is not flag-transitive")?;
    let index_two = index2_subgroups(&aut, &caps).map_err(err)?;
    ensure(index_two.len() == 3, format!("{} index-2 subgroups", index_two.len()))?;
    let mut transitive = 0;
    for sub in &index_two {
        ensure(sub.order() == BigUint::from(720u32), "index-2 subgroup of wrong order")?;
        if is_block_transitive(sub, &design).map_err(err)?.transitive {
            transitive += 1;
            let flags = flag_transitivity(sub, &design).map_err(err)?;
            ensure(flags.flag_transitive, "block-transitive index-2 subgroup is not flag-transitive")?;
            ensure(flags.block_stabilizer_order == "24", format!("|G_B| = {}", flags.block_stabilizer_order))?;
            ensure(flags.stabilizer_orbits_on_block == vec![4], "G_B is not transitive on B")?;
        }
    }
    ensure(transitive == 2, format!("{transitive} block-transitive index-2 subgroups"))?;
    let derived = derived_subgroup(&aut, &caps).map_err(err)?;
    ensure(derived.order() == BigUint::from(360u32), format!("|Aut'| = {}", derived.order()))?;
    let mut orbits = is_block_transitive(&derived, &design).map_err(err)?.orbit_sizes;
    orbits.sort_unstable();
    ensure(orbits == vec![15, 15], format!("derived block orbits {orbits:?}"))?;
    Ok("|Aut| = 1440, 3 index-2 subgroups (2 flag-transitive, |G_B| = 24), derived orbits 15+15".into())
}

fn criterion_3() -> Outcome {
    let caps = Caps::default();
    let g = fixtures::group(fixtures::A5_DEGREE10);
    let h = fixtures::group(fixtures::A5_BLOCK_STABILIZER);
    let points = ActionSpace::points(10).map_err(err)?;
    let labelled: [[u32; 4]; 10] = [
        [1, 2, 4, 9],
        [1, 3, 9, 10],
        [1, 5, 7, 9],
        [1, 6, 8, 9],
        [2, 3, 4, 10],
        [2, 4, 5, 7],
        [2, 4, 6, 8],
        [3, 5, 7, 10],
        [5, 6, 7, 8],
        [3, 6, 8, 10],
    ];
    let mut expected: Vec<Vec<u32>> = labelled.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
    expected.sort();
    let found = orbit_union_blocks(&h, &points, 4, &caps).map_err(err)?;
    ensure(found == expected, format!("candidates {found:?}"))?;

    let probe = [0u32, 5, 9];
    let (mut short, mut doubled, mut missing) = (Vec::new(), Vec::new(), Vec::new());
    let mut sizes = Vec::new();
    for (i, c) in labelled.iter().enumerate() {
        let block: Vec<u32> = c.iter().map(|p| p - 1).collect();
        let orbit = block_orbit(&g, &block);
        let counts = triple_counts(10, &orbit);
        let through = orbit.iter().filter(|b| probe.iter().all(|p| b.contains(p))).count();
        sizes.push(orbit.len());
        match i + 1 {
            1..=4 if orbit.len() < 30 => short.push(i + 1),
            5 | 6 | 9 | 10 if orbit.len() == 30 && counts.iter().any(|&n| n >= 2) => doubled.push(i + 1),
            7 | 8 if through == 0 => missing.push(i + 1),
            _ => {}
        }
    }
    ensure(
        (short.len(), doubled.len(), missing.len()) == (4, 4, 2),
        format!("short {short:?}, doubled {doubled:?}, missing {{1,6,10}} {missing:?}"),
    )?;
    let report = search_orbit_union(&g, &h, &points, 4, &caps).map_err(err)?;
    ensure(report.designs.is_empty(), "a Steiner design was found")?;
    Ok(format!(
        "short C1-C4, doubled C5 C6 C9 C10, C7 C8 miss {{1,6,10}}; orbit sizes {sizes:?}"
    ))
}

fn criterion_4() -> Outcome {
    let caps = Caps::default();
    let mut checked = 0;
    for n in 5..=20usize {
        for m in 1..=(n - 1) / 2 {
            if binomial(n as u64, m as u64) > BigUint::from(5000u32) {
                continue;
            }
            let space = ActionSpace::subsets(n, m).map_err(err)?;
            let formula = subset_subdegrees(n as u64, m as u64).map_err(err)?.lengths();
            for group in [PermGroup::symmetric(n), PermGroup::alternating(n)] {
                let oracle = subdegrees_oracle(&group, &space, &caps).map_err(err)?.lengths();
                ensure(oracle == formula, format!("subsets ({n},{m}) {}: {oracle:?} vs {formula:?}", group.describe()))?;
                checked += 1;
            }
        }
    }
    for l in 2..=8usize {
        for m in 2..=12usize {
            if l == 2 && m < 3 {
                continue;
            }
            let space = ActionSpace::partitions(m, l).map_err(err)?;
            if *space.size() > BigUint::from(5000u32) {
                continue;
            }
            let n = m * l;
            let pairs = [
                (PermGroup::symmetric(n), partition_subdegrees(m, l).map_err(err)?),
                (PermGroup::alternating(n), partition_subdegrees_alternating(m, l).map_err(err)?),
            ];
            for (group, formula) in pairs {
                let oracle = subdegrees_oracle(&group, &space, &caps).map_err(err)?.lengths();
                ensure(
                    oracle == formula.lengths(),
                    format!("partitions ({m},{l}) {}: {oracle:?} vs {:?}", group.describe(), formula.lengths()),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (space, group) profiles agree with the oracle"))
}

fn criterion_5() -> Outcome {
    let sweep = intransitive_sweep();
    ensure(sweep.survivors == vec![vec![8, 3, 11]], format!("survivors {:?}", sweep.survivors))?;
    Ok(format!("{} tuples examined, survivor (8,3,11)", sweep.examined.len()))
}

fn criterion_6() -> Outcome {
    let caps = Caps::default();
    let space = ActionSpace::subsets(8, 3).map_err(err)?;
    let mut summary = Vec::new();
    for group in [PermGroup::symmetric(8), PermGroup::alternating(8)] {
        let report = search_invariant(&group, &space, 11, 5, &caps).map_err(err)?;
        ensure(report.candidates.len() == 55, format!("{} candidates", report.candidates.len()))?;
        ensure(report.designs.is_empty(), "a Steiner design was found")?;
        ensure(report.count(CandidateVerdict::Steiner) == 0, "a candidate is Steiner")?;
        let full = report.candidates.iter().filter(|c| c.orbit_size == 168).count();
        ensure(
            full == report.count(CandidateVerdict::NotSteiner),
            "a 168-block family was not checked for exact cover",
        )?;
        summary.push(format!("{}: {full}/55 families of 168 blocks fail exact cover", group.describe()));
    }
    Ok(summary.join("; "))
}

fn criterion_7() -> Outcome {
    let sweep = imprimitive_sweep();
    let mut expected: Vec<Vec<u64>> = (4..=15).map(|m| vec![m, 2]).collect();
    expected.extend([[3, 3], [4, 3], [5, 3], [6, 3], [2, 4], [3, 4], [2, 5], [2, 6], [2, 7]].map(|p| p.to_vec()));
    expected.sort();
    let mut found = sweep.candidates.clone();
    found.sort();
    ensure(found == expected, format!("pairs {found:?}"))?;
    ensure(sweep.survivors.is_empty(), format!("survivors {:?}", sweep.survivors))?;
    Ok(format!("{} pairs, no surviving k", found.len()))
}

fn criterion_8() -> Outcome {
    let degrees = primitive_degree_bound();
    ensure(degrees == (7..=13).collect::<Vec<_>>(), format!("degrees {degrees:?}"))?;
    let forced = survivors(&run_sieve(15, &[Constraint::KDividesV]));
    ensure(forced == vec![5], format!("k | 15 leaves {forced:?}"))?;
    let sweep = primitive_sweep();
    let k5 = sweep.examined.iter().find(|e| e.tuple == vec![15, 5]).ok_or("no entry for k=5")?;
    let last = k5.checks.last().ok_or("no checks")?;
    ensure(!last.pass && last.witness.get("lambda2").map(String::as_str) == Some("13/3"), format!("{last:?}"))?;
    ensure(sweep.survivors.is_empty(), "v=15 survives")?;
    Ok("degrees 7..13; v=15 forces k=5, lambda2 = 13/3".into())
}

fn criterion_9() -> Outcome {
    let caps = Caps::default();
    let lambda = survivors(&run_sieve(45, &[Constraint::Lambda2Integral]));
    ensure(lambda.is_empty(), format!("v=45 leaves {lambda:?}"))?;
    let ks: Vec<u64> = run_sieve(45, &[]).iter().map(|v| v.k).collect();
    ensure(ks == (4..=8).collect::<Vec<_>>(), format!("v=45 range {ks:?}"))?;
    let forced = survivors(&run_sieve(36, &[Constraint::Lambda2Integral]));
    ensure(forced == vec![4], format!("v=36 leaves {forced:?}"))?;
    let with_order = run_sieve(36, &[Constraint::Lambda2Integral, Constraint::GroupOrder(BigUint::from(720u32))]);
    let k4 = with_order.iter().find(|v| v.k == 4).ok_or("no k=4 verdict")?;
    let last = k4.checks.last().ok_or("no checks")?;
    ensure(
        last.name == "orbit_size" && !last.pass && last.witness.get("blocks").map(String::as_str) == Some("1785"),
        format!("{last:?}"),
    )?;

    let aut = fixtures::group(fixtures::S6_2);
    let a6 = derived_subgroup(&aut, &caps).map_err(err)?;
    let classes = subgroups_of_order(&a6, 12, &caps).map_err(err)?;
    ensure(!classes.classes.is_empty(), "A6 has no subgroup of order 12")?;
    for h in &classes.classes {
        ensure(profile(h) == vec![4, 6], format!("A6 order-12 class with orbits {:?}", profile(h)))?;
    }
    let pgl_gens = fixtures::group(fixtures::PGL29);
    let pgl = index2_subgroups(&aut, &caps)
        .map_err(err)?
        .into_iter()
        .find(|s| pgl_gens.is_subgroup_of(s))
        .ok_or("no index-2 subgroup contains PGL(2,9)")?;
    let pgl_classes = subgroups_of_order(&pgl, 24, &caps).map_err(err)?;
    let profiles: Vec<Vec<usize>> = pgl_classes.classes.iter().map(profile).collect();
    ensure(profiles == vec![vec![4, 6]], format!("PGL order-24 classes with orbits {profiles:?}"))?;
    let profiled = &pgl_classes.classes;
    let points = ActionSpace::points(10).map_err(err)?;
    let report = search_orbit_union(&pgl, &profiled[0], &points, 4, &caps).map_err(err)?;
    let example: Design = fixtures::d3_10_4();
    ensure(report.designs == vec![example], "the 4-orbit does not give the example design")?;
    Ok(format!(
        "v=45 empty, v=36 k=4 blocks 1785 vs 720; {} A6 order-12 classes and the PGL order-24 class have orbits 4+6",
        classes.classes.len()
    ))
}

/// Group order by closing the generators under multiplication.
fn closure_order(group: &PermGroup) -> usize {
    let identity = Permutation::identity(group.degree());
    let mut seen = HashSet::from([identity.clone()]);
    let mut stack = vec![identity];
    while let Some(x) = stack.pop() {
        for g in group.generators() {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

fn criterion_10() -> Outcome {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..100 {
        let n = rng.gen_range(3..=7);
        let gens = (0..rng.gen_range(1..=3)).map(|_| random_perm(&mut rng, n)).collect();
        let group = PermGroup::new(n, gens).map_err(err)?;
        let x = rng.gen_range(0..n as u32);
        let orbit = group.orbit_of_point(x).len();
        let stab = group.point_stabilizer(x).map_err(err)?.order();
        ensure(
            BigUint::from(orbit) * &stab == group.order() && group.order() == BigUint::from(closure_order(&group)),
            format!("trial {trial}: orbit {orbit}, stabilizer {stab}, order {}", group.order()),
        )?;
    }
    for trial in 0..50 {
        let n = rng.gen_range(4..=8);
        let (g, h) = (random_perm(&mut rng, n), random_perm(&mut rng, n));
        let mut spaces = vec![ActionSpace::points(n).map_err(err)?];
        spaces.push(ActionSpace::subsets(n, rng.gen_range(1..n)).map_err(err)?);
        if n % 2 == 0 {
            spaces.push(ActionSpace::partitions(n / 2, 2).map_err(err)?);
        }
        for space in &spaces {
            let lhs = space.induced_permutation(&g.then(&h), &caps).map_err(err)?;
            let rhs = space
                .induced_permutation(&g, &caps)
                .map_err(err)?
                .then(&space.induced_permutation(&h, &caps).map_err(err)?);
            ensure(lhs == rhs, format!("trial {trial}: induced action on {} is not a homomorphism", space.describe()))?;
        }
    }
    for n in 5..=40u64 {
        for m in 1..=(n - 1) / 2 {
            let p = subset_subdegrees(n, m).map_err(err)?;
            let sum: u64 = p.lengths().iter().sum();
            ensure(BigUint::from(sum + 1) == binomial(n, m), format!("subsets ({n},{m}) sum {sum}"))?;
        }
    }
    for (m, l) in [(3, 2), (8, 2), (3, 3), (6, 3), (2, 4), (3, 4), (2, 7)] {
        let space = ActionSpace::partitions(m, l).map_err(err)?;
        for p in [partition_subdegrees(m, l).map_err(err)?, partition_subdegrees_alternating(m, l).map_err(err)?] {
            let sum: u64 = p.lengths().iter().sum();
            ensure(&BigUint::from(sum + 1) == space.size(), format!("partitions ({m},{l}) sum {sum}"))?;
        }
    }
    for k in 4..500u64 {
        let edge = k * k - 3 * k + 4;
        ensure(cameron_bound(edge, k).pass && !cameron_bound(edge - 1, k).pass, format!("cameron_bound at k={k}"))?;
    }
    for k in 4..40u64 {
        for t in 1..20u64 {
            let v = k + t * (k - 2);
            let bound = 2 * t + k - 2;
            ensure(
                fix_bound(v, k, bound).pass && !fix_bound(v, k, bound + 1).pass,
                format!("fix_bound at v={v}, k={k}"),
            )?;
        }
    }
    Ok("100 orbit-stabilizer pairs, 50 functoriality trials, normalization, bound edges".into())
}

/// Result of one criterion. `elapsed_secs` is wall-clock time and is not
/// serialized, so reports stay byte-identical between runs.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub limit_secs: f64,
    #[serde(skip)]
    pub elapsed: Duration,
    pub within_limit: bool,
    pub pass: bool,
    pub detail: String,
}

type Criterion = (u32, &'static str, fn() -> Outcome, f64);

const CRITERIA: [Criterion; 10] = [
    (1, "example design verification", criterion_1, 0.1),
    (2, "automorphism group of the example design", criterion_2, 30.0),
    (3, "A5 elimination", criterion_3, 5.0),
    (4, "subdegree oracle agreement", criterion_4, 60.0),
    (5, "intransitive sweep", criterion_5, 60.0),
    (6, "degree-56 elimination", criterion_6, 120.0),
    (7, "imprimitive sweep", criterion_7, 120.0),
    (8, "primitive filters", criterion_8, 1.0),
    (9, "small-case parameter eliminations", criterion_9, 60.0),
    (10, "property suites", criterion_10, 30.0),
];

/// Runs every criterion in order. A criterion passes when its checks hold
/// and it finishes within its limit.
pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .map(|&(id, name, run, limit_secs)| {
            let start = Instant::now();
            let outcome = run();
            let elapsed = start.elapsed();
            let within_limit = elapsed <= Duration::from_secs_f64(limit_secs);
            let (checks_hold, detail) = match outcome {
                Ok(detail) => (true, detail),
                Err(why) => (false, why),
            };
            CriterionOutcome {
                id,
                name,
                limit_secs,
                elapsed,
                within_limit,
                pass: checks_hold && within_limit,
                detail,
            }
        })
        .collect()
}
