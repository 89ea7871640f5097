mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use steiner_core::actions::ActionSpace;
use steiner_core::design::{automorphism_group, flag_transitivity, is_block_transitive, parse_design, verify_steiner, Design};
use steiner_core::perm::{parse_group, PermGroup};
use steiner_core::search::{reproduce_case, search_invariant, search_orbit_union, CaseId};
use steiner_core::sieve::{run_sieve, Constraint};
use steiner_core::subdeg::{
    imprimitive_sweep, intransitive_sweep, partition_subdegrees, partition_subdegrees_alternating, primitive_sweep,
    subdegrees_oracle, subset_subdegrees, SubdegreeProfile,
};
use steiner_core::{acceptance, Caps, Error};

#[derive(Parser)]
#[command(name = "steiner-sieve", version, about = "Block-transitive Steiner 3-design checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a design file is a Steiner 3-design.
    VerifyDesign {
        #[arg(long)]
        design: PathBuf,
    },
    /// Automorphism group of a design.
    Aut {
        #[arg(long)]
        design: PathBuf,
    },
    /// Block- and flag-transitivity of a group on a design.
    Transitivity {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        design: PathBuf,
    },
    /// Arithmetic filters on (v, k) for every k up to the Cameron bound.
    Sieve {
        #[arg(long)]
        v: u64,
        /// Order of a point stabilizer.
        #[arg(long)]
        stab_order: Option<BigUint>,
        /// A subdegree; may be repeated.
        #[arg(long)]
        subdegree: Vec<u64>,
        /// |C_G(g)| / |C_{G_x}(g)| for a 3-cycle g.
        #[arg(long)]
        ratio: Option<u64>,
        /// Fixed points of a non-identity element.
        #[arg(long)]
        fix: Option<u64>,
        /// Order of the block-transitive group.
        #[arg(long)]
        group_order: Option<BigUint>,
        /// Require k | v.
        #[arg(long)]
        k_divides_v: bool,
    },
    /// Subdegrees of S_n or A_n on subsets or uniform partitions.
    Subdegrees {
        #[command(subcommand)]
        action: SubdegreeAction,
    },
    /// Finite sweeps over the parameter families.
    Sweep {
        #[arg(value_enum)]
        case: SweepKind,
    },
    /// Orbit-design search for a 3-(v,k,1) design on an action space.
    Search {
        #[arg(long)]
        group: PathBuf,
        /// `subsets:n,m` or `points:n`.
        #[arg(long)]
        space: String,
        #[arg(long)]
        k: u64,
        /// `orbit-union:STABFILE` or `invariant:p`.
        #[arg(long)]
        method: String,
    },
    /// Replay a case analysis, or `all` for every case and the acceptance
    /// suite.
    Reproduce { case: String },
}

#[derive(Subcommand)]
enum SubdegreeAction {
    Subsets {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// Cross-check against explicit orbits.
        #[arg(long)]
        oracle: bool,
    },
    Partitions {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        oracle: bool,
        /// Profile of A_n instead of S_n.
        #[arg(long)]
        alternating: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Intransitive,
    Imprimitive,
    Primitive,
}

/// Failure before a report exists; exit code 2 for bad input, 1 otherwise.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::InvalidCaps(_)
            | Error::UnknownCase(_)
            | Error::NotABijection { .. }
            | Error::PointOutOfRange { .. }
            | Error::InvalidParameters(_)
            | Error::DegreeMismatch { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_design(path: &Path) -> Result<Design, Failure> {
    parse_design(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<PermGroup, Failure> {
    parse_group(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn parse_space(spec: &str) -> Result<ActionSpace, Failure> {
    let bad = || usage(format!("--space expects subsets:n,m or points:n, got `{spec}`"));
    let (kind, args) = spec.split_once(':').ok_or_else(bad)?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match (kind, nums.as_slice()) {
        ("subsets", &[n, m]) => Ok(ActionSpace::subsets(n, m)?),
        ("points", &[n]) => Ok(ActionSpace::points(n)?),
        _ => Err(bad()),
    }
}

/// `agree` is null when no oracle ran.
fn subdegree_body(formula: SubdegreeProfile, oracle: Vec<SubdegreeProfile>) -> (Value, bool) {
    let agree = (!oracle.is_empty()).then(|| oracle.iter().all(|o| o.lengths() == formula.lengths()));
    let body = json!({
        "formula": to_value(&formula),
        "oracle": to_value(&oracle),
        "agree": agree,
    });
    (body, agree != Some(false))
}

/// Runs a command; returns the report body and whether every check held.
fn run(command: &Command, caps: &Caps) -> Result<(Value, bool), Failure> {
    match command {
        Command::VerifyDesign { design } => {
            let d = load_design(design)?;
            let report = verify_steiner(&d, caps)?;
            let ok = report.is_steiner;
            Ok((to_value(&report), ok))
        }
        Command::Aut { design } => {
            let d = load_design(design)?;
            let aut = automorphism_group(&d, caps)?;
            let generators: Vec<String> = aut.generators().iter().map(|g| g.to_string()).collect();
            let body = json!({
                "order": aut.order().to_string(),
                "generators": generators,
                "flag_transitivity": to_value(&flag_transitivity(&aut, &d)?),
            });
            Ok((body, true))
        }
        Command::Transitivity { group, design } => {
            let g = load_group(group)?;
            let d = load_design(design)?;
            let body = json!({
                "group_order": g.order().to_string(),
                "blocks": to_value(&is_block_transitive(&g, &d)?),
                "flags": to_value(&flag_transitivity(&g, &d)?),
            });
            Ok((body, true))
        }
        Command::Sieve {
            v,
            stab_order,
            subdegree,
            ratio,
            fix,
            group_order,
            k_divides_v,
        } => {
            let mut constraints = vec![Constraint::ParamsIntegral];
            if *k_divides_v {
                constraints.push(Constraint::KDividesV);
            }
            constraints.extend(stab_order.iter().cloned().map(Constraint::StabilizerOrder));
            constraints.extend(subdegree.iter().copied().map(Constraint::Subdegree));
            constraints.extend(ratio.map(Constraint::CentralizerRatio));
            constraints.extend(fix.map(Constraint::FixCount));
            constraints.extend(group_order.iter().cloned().map(Constraint::GroupOrder));
            let verdicts = run_sieve(*v, &constraints);
            Ok((to_value(&verdicts), true))
        }
        Command::Subdegrees { action } => match action {
            SubdegreeAction::Subsets { n, m, oracle } => {
                let formula = subset_subdegrees(*n, *m)?;
                let mut checked = Vec::new();
                if *oracle {
                    let space = ActionSpace::subsets(*n as usize, *m as usize)?;
                    let degree = *n as usize;
                    for group in [PermGroup::symmetric(degree), PermGroup::alternating(degree)] {
                        checked.push(subdegrees_oracle(&group, &space, caps)?);
                    }
                }
                Ok(subdegree_body(formula, checked))
            }
            SubdegreeAction::Partitions {
                m,
                l,
                oracle,
                alternating,
            } => {
                let formula = if *alternating {
                    partition_subdegrees_alternating(*m, *l)?
                } else {
                    partition_subdegrees(*m, *l)?
                };
                let mut checked = Vec::new();
                if *oracle {
                    let space = ActionSpace::partitions(*m, *l)?;
                    let n = m * l;
                    let group = if *alternating {
                        PermGroup::alternating(n)
                    } else {
                        PermGroup::symmetric(n)
                    };
                    checked.push(subdegrees_oracle(&group, &space, caps)?);
                }
                Ok(subdegree_body(formula, checked))
            }
        },
        Command::Sweep { case } => {
            let result = match case {
                SweepKind::Intransitive => intransitive_sweep(),
                SweepKind::Imprimitive => imprimitive_sweep(),
                SweepKind::Primitive => primitive_sweep(),
            };
            Ok((to_value(&result), true))
        }
        Command::Search { group, space, k, method } => {
            let g = load_group(group)?;
            let space = parse_space(space)?;
            let report = if let Some(path) = method.strip_prefix("orbit-union:") {
                let stabilizer = load_group(Path::new(path))?;
                search_orbit_union(&g, &stabilizer, &space, *k, caps)?
            } else if let Some(p) = method.strip_prefix("invariant:") {
                let p: u64 = p.parse().map_err(|_| usage(format!("`{p}` is not a prime")))?;
                search_invariant(&g, &space, *k, p, caps)?
            } else {
                return Err(usage(format!("--method expects orbit-union:FILE or invariant:p, got `{method}`")));
            };
            Ok((to_value(&report), true))
        }
        Command::Reproduce { case } => {
            if case == "all" {
                let mut reports = Vec::new();
                let mut ok = true;
                for id in CaseId::ALL {
                    let report = reproduce_case(id, caps)?;
                    ok &= report.consistent;
                    reports.push(to_value(&report));
                }
                let criteria = acceptance::run_all();
                ok &= criteria.iter().all(|c| c.pass);
                Ok((json!({"cases": reports, "acceptance": to_value(&criteria)}), ok))
            } else {
                let report = reproduce_case(case.parse()?, caps)?;
                let ok = report.consistent;
                Ok((to_value(&report), ok))
            }
        }
    }
}

fn configure() -> Result<Caps, Failure> {
    if let Ok(threads) = std::env::var("STEINER_SIEVE_THREADS") {
        let n: usize = threads
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| usage(format!("STEINER_SIEVE_THREADS must be a positive integer, got `{threads}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    match std::env::var("STEINER_SIEVE_CAPS") {
        Ok(spec) => Ok(Caps::default().with_overrides(&spec)?),
        Err(_) => Ok(Caps::default()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let outcome = configure().and_then(|caps| run(&cli.command, &caps));
    match outcome {
        Ok((body, ok)) => {
            let report = json!({
                "command": echo.join(" "),
                "status": if ok { "consistent" } else { "check_failed" },
                "result": body,
            });
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("json")),
                Format::Text => print!("{}", render::render(&report)),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
