use std::fmt::Display;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use super::{
    evaluate_candidates, orbit_design, orbit_union_blocks, search_invariant, search_orbit_union, unions_of_sizes,
    CandidateVerdict, SearchReport,
};
use crate::actions::{binomial, ActionSpace};
use crate::caps::Caps;
use crate::design::{automorphism_group, design_params, flag_transitivity, is_block_transitive, Design};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::perm::{derived_subgroup, index2_subgroups, subgroups_of_order, PermGroup};
use crate::sieve::{self, run_sieve, survivors, Constraint, SieveVerdict};
use crate::subdeg::{imprimitive_sweep, intransitive_sweep, primitive_degree_bound, primitive_sweep, SweepResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseId {
    A5,
    A6Family,
    Pgl29,
    M10,
    AutA6,
    S8Degree56,
    A8Degree56,
    Sweeps,
}

impl CaseId {
    pub const ALL: [CaseId; 8] = [
        CaseId::A5,
        CaseId::A6Family,
        CaseId::Pgl29,
        CaseId::M10,
        CaseId::AutA6,
        CaseId::S8Degree56,
        CaseId::A8Degree56,
        CaseId::Sweeps,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::A5 => "a5",
            CaseId::A6Family => "a6_family",
            CaseId::Pgl29 => "pgl29",
            CaseId::M10 => "m10",
            CaseId::AutA6 => "aut_a6",
            CaseId::S8Degree56 => "s8_degree56",
            CaseId::A8Degree56 => "a8_degree56",
            CaseId::Sweeps => "sweeps",
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

/// A checked statement: `holds` when the observed value equals the
/// expected one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub statement: String,
    pub expected: String,
    pub observed: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SieveRun {
    pub label: String,
    pub v: u64,
    pub verdicts: Vec<SieveVerdict>,
    pub survivors: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub case: CaseId,
    pub claims: Vec<Claim>,
    pub sieves: Vec<SieveRun>,
    pub searches: Vec<SearchReport>,
    pub sweeps: Vec<SweepResult>,
    /// Observations that differ from the customary account of the case
    /// without changing its outcome.
    pub findings: Vec<String>,
    /// Every claim holds.
    pub consistent: bool,
}

struct Builder {
    report: CaseReport,
}

impl Builder {
    fn new(case: CaseId) -> Self {
        Builder {
            report: CaseReport {
                case,
                claims: Vec::new(),
                sieves: Vec::new(),
                searches: Vec::new(),
                sweeps: Vec::new(),
                findings: Vec::new(),
                consistent: true,
            },
        }
    }

    fn claim(&mut self, statement: &str, expected: impl Display, observed: impl Display) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        self.report.claims.push(Claim {
            statement: statement.to_string(),
            holds: expected == observed,
            expected,
            observed,
        });
    }

    fn sieve(&mut self, label: &str, v: u64, constraints: &[Constraint]) -> Vec<u64> {
        let verdicts = run_sieve(v, constraints);
        let surv = survivors(&verdicts);
        self.report.sieves.push(SieveRun {
            label: label.to_string(),
            v,
            verdicts,
            survivors: surv.clone(),
        });
        surv
    }

    fn finish(mut self) -> CaseReport {
        self.report.consistent = self.report.claims.iter().all(|c| c.holds);
        self.report
    }
}

fn list<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn orbit_profile(group: &PermGroup) -> String {
    let mut sizes: Vec<usize> = group.orbits().iter().map(|o| o.len()).collect();
    sizes.sort_unstable();
    list(sizes)
}

fn order_of(x: u64) -> Constraint {
    Constraint::GroupOrder(BigUint::from(x))
}

/// Runs one case and compares every outcome with the expected one. A
/// mismatch is reported through `consistent`, not as an error.
pub fn reproduce_case(case: CaseId, caps: &Caps) -> Result<CaseReport> {
    let mut b = Builder::new(case);
    match case {
        CaseId::A5 => a5(&mut b, caps)?,
        CaseId::A6Family => a6_family(&mut b, caps)?,
        CaseId::Pgl29 => {
            let groups = A6Overgroups::new(caps)?;
            let fixture = fixtures::group(fixtures::PGL29);
            b.claim("the fixture generators give the identified subgroup", "true", fixture.order() == groups.pgl.order() && fixture.is_subgroup_of(&groups.pgl));
            index_two_case(&mut b, &groups.pgl, &groups, caps)?;
            let stab = fixtures::group(fixtures::PGL29_BLOCK_STABILIZER);
            b.claim("|fixture block stabilizer|", 24, stab.order());
            b.claim("fixture block stabilizer lies in the group", "true", stab.is_subgroup_of(&groups.pgl));
            b.claim("orbits of the fixture block stabilizer", "4, 6", orbit_profile(&stab));
        }
        CaseId::M10 => {
            let groups = A6Overgroups::new(caps)?;
            index_two_case(&mut b, &groups.m10, &groups, caps)?;
        }
        CaseId::AutA6 => aut_a6(&mut b, caps)?,
        CaseId::S8Degree56 => degree56(&mut b, PermGroup::symmetric(8), 240, caps)?,
        CaseId::A8Degree56 => degree56(&mut b, PermGroup::alternating(8), 120, caps)?,
        CaseId::Sweeps => sweeps(&mut b),
    }
    Ok(b.finish())
}

/// The ten candidate blocks for the degree-10 `A_5`, in their customary
/// numbering.
const A5_LABELLED: [[u32; 4]; 10] = [
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

fn a5(b: &mut Builder, caps: &Caps) -> Result<()> {
    let g = fixtures::group(fixtures::A5_DEGREE10);
    let h = fixtures::group(fixtures::A5_BLOCK_STABILIZER);
    let point_stab = fixtures::group(fixtures::A5_POINT_STABILIZER);
    let points = ActionSpace::points(10)?;
    b.claim("|G|", 60, g.order());
    b.claim("G is transitive on 10 points", "true", g.is_transitive());
    b.claim("|G_1|", 6, g.point_stabilizer(0)?.order());
    b.claim("fixture point stabilizer is G_1", "true", point_stab.is_subgroup_of(&g) && point_stab.order() == g.point_stabilizer(0)?.order() && point_stab.orbit_of_point(0) == vec![0]);
    let surv = b.sieve("v=10, |G|=60", 10, &[Constraint::Lambda2Integral, order_of(60)]);
    b.claim("block sizes left for v=10", "4", list(surv));
    b.claim("orbits of the block stabilizer H", "1, 1, 2, 2, 2, 2", orbit_profile(&h));

    let blocks = orbit_union_blocks(&h, &points, 4, caps)?;
    let label_of = |block: &[u32]| {
        let one_based: Vec<u32> = block.iter().map(|p| p + 1).collect();
        A5_LABELLED
            .iter()
            .position(|c| c[..] == one_based[..])
            .map(|i| format!("C{}", i + 1))
            .unwrap_or_else(|| format!("unlisted {one_based:?}"))
    };
    let labelled: Vec<(String, Vec<u32>)> = blocks.iter().map(|bl| (label_of(bl), bl.clone())).collect();
    b.claim("H-invariant 4-subsets", 10, labelled.len());
    let report = evaluate_candidates(&g, &points, 4, "orbit-union", labelled, caps)?;

    let by_number = |mut labels: Vec<String>| {
        labels.sort_by_key(|l| l.trim_start_matches('C').parse::<u32>().unwrap_or(u32::MAX));
        list(labels)
    };
    let probe = [0u32, 5, 9];
    let mut doubled = Vec::new();
    for c in &report.candidates {
        let block: Vec<u32> = c.block.iter().map(|p| p - 1).collect();
        let (design, _) = orbit_design(&g, &points, &block, caps)?;
        let through: Vec<String> = design
            .blocks()
            .iter()
            .filter(|bl| probe.iter().all(|p| bl.contains(p)))
            .map(|bl| crate::design::format_block(bl))
            .collect();
        let label = c.label.as_str();
        match label {
            "C1" | "C2" | "C3" | "C4" => {
                b.claim(&format!("(C{})^G has fewer than 30 blocks", &label[1..]), "true", c.orbit_size < 30);
            }
            "C7" | "C8" => {
                b.claim(&format!("no block of ({label})^G contains {{1,6,10}}"), "", list(&through));
            }
            _ => {}
        }
        if matches!(label, "C5" | "C6" | "C7" | "C8" | "C9" | "C10") && c.orbit_size != 30 {
            b.report.findings.push(format!(
                "({label})^G has {} blocks, not 30; it is also eliminated by its block count",
                c.orbit_size
            ));
        }
        if c.orbit_size == 30 && through.len() >= 2 {
            let expected = match label {
                "C5" | "C10" => "{1,3,6,10}, {1,6,8,10}",
                "C6" | "C9" => "{1,2,6,10}, {1,6,9,10}",
                _ => "",
            };
            b.claim(&format!("blocks of ({label})^G through {{1,6,10}}"), expected, list(&through));
            doubled.push(c.label.clone());
        }
    }
    b.claim("30-block candidates covering {1,6,10} twice", "C5, C6, C9, C10", by_number(doubled));
    b.claim("Steiner designs found", 0, report.designs.len());
    b.report.searches.push(report);
    Ok(())
}

/// `Aut(A_6)` in degree 10 with its derived subgroup and the three
/// subgroups of index 2, told apart by membership and involutions.
struct A6Overgroups {
    aut: PermGroup,
    a6: PermGroup,
    index_two: Vec<PermGroup>,
    s6: PermGroup,
    pgl: PermGroup,
    m10: PermGroup,
}

impl A6Overgroups {
    fn new(caps: &Caps) -> Result<Self> {
        let aut = fixtures::group(fixtures::S6_2);
        let a6 = derived_subgroup(&aut, caps)?;
        let index_two = index2_subgroups(&aut, caps)?;
        let pgl_gens = fixtures::group(fixtures::PGL29);
        let mut pgl = None;
        let mut m10 = None;
        let mut s6 = None;
        for sub in &index_two {
            let outer_involutions = sub
                .elements(caps.small_group)?
                .into_iter()
                .filter(|g| g.order() == 2 && !a6.contains(g))
                .count();
            if pgl_gens.is_subgroup_of(sub) {
                pgl = Some(sub.clone());
            } else if outer_involutions == 0 {
                m10 = Some(sub.clone());
            } else {
                s6 = Some(sub.clone());
            }
        }
        let missing = || Error::InvalidParameters("index-2 subgroups of the fixture group are not as expected".into());
        Ok(A6Overgroups {
            pgl: pgl.ok_or_else(missing)?,
            m10: m10.ok_or_else(missing)?,
            s6: s6.ok_or_else(missing)?,
            aut,
            a6,
            index_two,
        })
    }
}

/// Runs the subgroup-class search on 10 points: every class of subgroups of
/// order `|G| / 30` is a possible block stabilizer.
fn stabilizer_class_search(b: &mut Builder, group: &PermGroup, caps: &Caps) -> Result<Vec<Design>> {
    let points = ActionSpace::points(10)?;
    let order = group.order_u64().expect("small group");
    let stab_order = order / 30;
    let classes = subgroups_of_order(group, stab_order, caps)?;
    let mut designs: Vec<Design> = Vec::new();
    for (i, h) in classes.classes.iter().enumerate() {
        let mut report = search_orbit_union(group, h, &points, 4, caps)?;
        report.method = format!(
            "orbit-union over class {} of {} subgroups of order {stab_order} (orbits {}; generating sets of size <= {})",
            i + 1,
            classes.classes.len(),
            orbit_profile(h),
            classes.generator_bound
        );
        for d in &report.designs {
            if !designs.contains(d) {
                designs.push(d.clone());
            }
        }
        b.report.searches.push(report);
    }
    Ok(designs)
}

fn a6_family(b: &mut Builder, caps: &Caps) -> Result<()> {
    let groups = A6Overgroups::new(caps)?;
    let (a6, s6) = (&groups.a6, &groups.s6);
    let design = fixtures::d3_10_4();
    b.claim("|A6|", 360, a6.order());
    b.claim("A6 is transitive on 10 points", "true", a6.is_transitive());
    b.claim("|A6_1|", 36, a6.point_stabilizer(0)?.order());
    let surv = b.sieve("A6, v=10", 10, &[Constraint::Lambda2Integral, order_of(360)]);
    b.claim("A6, v=10: block sizes left", "4", list(surv));
    let classes = subgroups_of_order(a6, 12, caps)?;
    b.claim("A6: classes of subgroups of order 12", 2, classes.classes.len());
    for (i, h) in classes.classes.iter().enumerate() {
        b.claim(&format!("A6: orbits of order-12 class {}", i + 1), "4, 6", orbit_profile(h));
        let four = h.orbits().into_iter().find(|o| o.len() == 4).unwrap_or_default();
        b.claim(&format!("A6: setwise stabilizer of the 4-orbit of class {}", i + 1), 24, a6.setwise_stabilizer(&four)?.order());
        let (orbit, _) = orbit_design(a6, &ActionSpace::points(10)?, &four, caps)?;
        b.claim(&format!("A6: blocks in the orbit of that 4-orbit (class {})", i + 1), 15, orbit.blocks().len());
    }
    let a6_designs = stabilizer_class_search(b, a6, caps)?;
    b.claim("A6: Steiner designs found", 0, a6_designs.len());
    b.claim("A6: block orbits on the example design", "15, 15", list(is_block_transitive(a6, &design)?.orbit_sizes));
    let surv = b.sieve("A6, v=15", 15, &[Constraint::Lambda2Integral]);
    b.claim("A6, v=15: block sizes left", "", list(surv));

    b.claim("|S6|", 720, s6.order());
    b.claim("S6 contains A6", "true", a6.is_subgroup_of(s6));
    let surv = b.sieve("S6, v=10", 10, &[Constraint::Lambda2Integral, order_of(720)]);
    b.claim("S6, v=10: block sizes left", "4", list(surv));
    let s6_designs = stabilizer_class_search(b, s6, caps)?;
    b.claim("S6: Steiner designs found", 0, s6_designs.len());
    let surv = b.sieve("S6, v=15", 15, &[Constraint::Lambda2Integral]);
    b.claim("S6, v=15: block sizes left", "", list(surv));
    Ok(())
}

fn large_degree_sieves(b: &mut Builder, order: u64) {
    let surv = b.sieve("v=36, lambda2 only", 36, &[Constraint::Lambda2Integral]);
    b.claim("v=36: block sizes passing lambda2", "4", list(surv));
    let surv = b.sieve(&format!("v=36, |G|={order}"), 36, &[Constraint::Lambda2Integral, order_of(order)]);
    b.claim(&format!("v=36: block sizes left with |G|={order}"), "", list(surv));
    let params = design_params(36, 4).expect("valid");
    b.claim("v=36, k=4: block count", 1785, params.blocks);
    let surv = b.sieve("v=45", 45, &[Constraint::Lambda2Integral]);
    b.claim("v=45: block sizes left", "", list(surv));
}

fn index_two_case(b: &mut Builder, group: &PermGroup, groups: &A6Overgroups, caps: &Caps) -> Result<()> {
    let design = fixtures::d3_10_4();
    b.claim("|G|", 720, group.order());
    b.claim("G contains A6 with index 2", "2", group.index_of(&groups.a6).map(|i| i.to_string()).unwrap_or_default());
    b.claim("G is transitive on 10 points", "true", group.is_transitive());
    large_degree_sieves(b, 720);
    let surv = b.sieve("v=10, |G|=720", 10, &[Constraint::Lambda2Integral, order_of(720)]);
    b.claim("v=10: block sizes left", "4", list(surv));
    let classes = subgroups_of_order(group, 24, caps)?;
    b.claim("classes of subgroups of order 24 with orbits 4, 6", 1, classes.classes.iter().filter(|h| orbit_profile(h) == "4, 6").count());
    let designs = stabilizer_class_search(b, group, caps)?;
    b.claim("Steiner designs found", 1, designs.len());
    b.claim("the design found is the example design", "true", designs.first() == Some(&design));
    let (orbit, report) = orbit_design(group, &ActionSpace::points(10)?, &[0, 4, 5, 6], caps)?;
    b.claim("orbit of {1,5,6,7} is the example design", "true", orbit == design && report.is_steiner);
    let flags = flag_transitivity(group, &design)?;
    b.claim("G is flag-transitive on the example design", "true", flags.flag_transitive);
    b.claim("|G_B|", 24, &flags.block_stabilizer_order);
    Ok(())
}

fn aut_a6(b: &mut Builder, caps: &Caps) -> Result<()> {
    let design = fixtures::d3_10_4();
    let report = crate::design::verify_steiner(&design, caps)?;
    b.claim("example design blocks", 30, design.blocks().len());
    b.claim("example design is a 3-(10,4,1) design", "true", report.is_steiner);
    let params = design_params(10, 4)?;
    b.claim("(blocks, lambda1, lambda2) for (10,4)", "(30, 12, 4)", format!("({}, {}, {})", params.blocks, params.lambda1, params.lambda2));
    let aut = automorphism_group(&design, caps)?;
    let groups = A6Overgroups::new(caps)?;
    b.claim("|Aut|", 1440, aut.order());
    b.claim("Aut equals the fixture group", "true", aut.is_subgroup_of(&groups.aut) && groups.aut.is_subgroup_of(&aut));
    b.claim("Aut is flag-transitive", "true", flag_transitivity(&aut, &design)?.flag_transitive);
    b.claim("subgroups of index 2", 3, groups.index_two.len());
    let mut transitive = 0;
    for sub in &groups.index_two {
        if is_block_transitive(sub, &design)?.transitive {
            transitive += 1;
            let flags = flag_transitivity(sub, &design)?;
            b.claim("block-transitive index-2 subgroup is flag-transitive", "true", flags.flag_transitive);
            b.claim("its block stabilizer order", 24, &flags.block_stabilizer_order);
            b.claim("its block stabilizer is transitive on the block", "4", list(flags.stabilizer_orbits_on_block));
        }
    }
    b.claim("block-transitive index-2 subgroups", 2, transitive);
    b.claim("|derived subgroup|", 360, groups.a6.order());
    b.claim("block orbits of the derived subgroup", "15, 15", list(is_block_transitive(&groups.a6, &design)?.orbit_sizes));
    b.claim(
        "the block-transitive index-2 subgroups are the PGL and M10 candidates",
        "true",
        is_block_transitive(&groups.pgl, &design)?.transitive
            && is_block_transitive(&groups.m10, &design)?.transitive
            && !is_block_transitive(&groups.s6, &design)?.transitive,
    );
    large_degree_sieves(b, 1440);
    let designs = stabilizer_class_search(b, &aut, caps)?;
    b.claim("Steiner designs found from order-48 stabilizers", 1, designs.len());
    b.claim("the design found is the example design", "true", designs.first() == Some(&design));
    Ok(())
}

fn degree56(b: &mut Builder, group: PermGroup, stab_order: u64, caps: &Caps) -> Result<()> {
    let space = ActionSpace::subsets(8, 3)?;
    let (v, k) = (56u64, 11u64);
    let params = design_params(v, k)?;
    b.claim("|B| for (56,11)", 168, &params.blocks);
    b.claim("|G| / |B|", stab_order, group.order() / BigUint::from(168u32));
    b.claim("5 divides the block stabilizer order", "true", stab_order % 5 == 0);
    b.claim("168 * C(11,3) = C(56,3)", binomial(56, 3), BigUint::from(168u32) * binomial(11, 3));
    let subdegree_checks: Vec<bool> = [10, 30, 15].iter().map(|&d| sieve::subdegree_divisibility(v, k, d).pass).collect();
    b.claim("subdegrees 10, 30, 15 pass divisibility at k=11", "true, true, true", list(subdegree_checks));
    if stab_order == 240 {
        b.claim("unions of orbit sizes 1,5,10,10,10,20 with 11 points", 3, unions_of_sizes(&[1, 5, 10, 10, 10, 20], 11).len());
        b.claim("unions of orbit sizes 6,20,30 with 11 points", 0, unions_of_sizes(&[6, 20, 30], 11).len());
    }
    let report = search_invariant(&group, &space, k, 5, caps)?;
    b.claim("candidates fixed by the order-5 element", 55, report.candidates.len());
    let full = report.candidates.iter().filter(|c| c.orbit_size == 168).count();
    b.claim("candidates with 168 blocks that fail exact cover", full, report.count(CandidateVerdict::NotSteiner));
    b.claim("Steiner designs found", 0, report.designs.len());
    b.report.searches.push(report);
    Ok(())
}

fn sweeps(b: &mut Builder) {
    let intransitive = intransitive_sweep();
    b.claim("intransitive survivors (n, m, k)", "[8, 3, 11]", list(intransitive.survivors.iter().map(|t| format!("{t:?}"))));
    b.claim("(8,3): v", 56, binomial(8, 3));
    b.claim("(8,3,11): |B|", 168, design_params(56, 11).expect("valid").blocks);
    let none_for_21 = intransitive.examined.iter().filter(|e| e.tuple[..2] == [7, 2]).all(|e| !e.surviving);
    b.claim("(7,2): no block size survives", "true", none_for_21);

    let imprimitive = imprimitive_sweep();
    let mut expected: Vec<Vec<u64>> = (4..=15).map(|m| vec![m, 2]).collect();
    expected.extend([[3, 3], [4, 3], [5, 3], [6, 3], [2, 4], [3, 4], [2, 5], [2, 6], [2, 7]].map(|p| p.to_vec()));
    let mut found = imprimitive.candidates.clone();
    found.sort();
    expected.sort();
    b.claim("imprimitive pairs (m, l) passing the degree bound", format!("{expected:?}"), format!("{found:?}"));
    b.claim("imprimitive survivors", 0, imprimitive.survivors.len());

    b.claim("primitive degrees passing the order bound", list(7..=13), list(primitive_degree_bound()));
    let primitive = primitive_sweep();
    b.claim("primitive v=15 survivors", 0, primitive.survivors.len());
    let lambda = primitive
        .examined
        .iter()
        .find(|e| e.tuple == [15, 5])
        .and_then(|e| e.checks.iter().find(|c| c.name == "lambda2_integral"))
        .map(|c| c.witness["lambda2"].clone())
        .unwrap_or_default();
    b.claim("v=15, k=5: lambda2", "13/3", lambda);
    b.report.sweeps = vec![intransitive, imprimitive, primitive];
}
