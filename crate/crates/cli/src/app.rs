//! Command-line driver: report generation, JSON emission, golden-table
//! verification and the property-suite runner.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error. All JSON
//! is UTF-8 with sorted keys and rationals rendered as `p/q` strings.

use crate::suites::{self, VerifyOptions};
use cascade_lie::cascade::{compute_layers, kostant_cascade, LayerPair};
use cascade_lie::liealg::{
    algebra_to_json, build_restricted_nilradical, build_split_nilradical, build_upper_triangular,
    NilpotentAlgebra,
};
use cascade_lie::plancherel::{
    find_nondegenerate_lambda_with_seed, multiplicity_table, plancherel_constant,
    plancherel_polynomial, LatticeSpec,
};
use cascade_lie::ratio::rat_to_string;
use cascade_lie::roots::{build_root_system, RootSystem, TypeLabel};
use cascade_lie::{Error as CoreError, VerificationReport};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "cascade-lie",
    version,
    about = "Cascades of strongly orthogonal roots, layered nilpotent algebras, \
             density polynomials and lattice multiplicities, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SystemArgs {
    /// Cartan type, rank optionally attached (e.g. E7, A5, BC3)
    #[arg(long = "type")]
    type_: String,
    /// Rank, when not attached to --type
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Strictly upper-triangular matrices of the given size
    #[arg(long, conflicts_with_all = ["split", "restricted"])]
    upper: Option<usize>,
    /// Split nilradical of the given system (e.g. --split G2)
    #[arg(long, conflicts_with = "restricted")]
    split: Option<String>,
    /// Rank for --split when not attached to the label
    #[arg(long)]
    rank: Option<usize>,
    /// Restricted nilradical: slnh<k> (quaternion linear) or e6f4
    #[arg(long)]
    restricted: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the cascade of strongly orthogonal roots, by generation
    Cascade {
        #[command(flatten)]
        sys: SystemArgs,
        /// Also write a JSON report to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the layer decomposition with its pair lists
    Layers {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build a layered nilpotent algebra and print its shape
    Algebra {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Write the full structure-constant JSON to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Density polynomial, constant c and formal-degree data
    Pfaffian {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Multiplicity table for the upper-triangular group over the
    /// standard integer lattice
    Multiplicity {
        #[arg(long)]
        upper: usize,
        /// Sup-norm bound of the enumerated dual-lattice box
        #[arg(long = "box")]
        bound: i64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run verification suites (appendix | jacobi | setup | all)
    Verify {
        #[arg(value_parser = ["appendix", "jacobi", "setup", "all"])]
        what: String,
        /// Restrict per-system suites to one system
        #[arg(long = "type")]
        type_: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// With `all`: run a single suite by name
        #[arg(long)]
        only: Option<String>,
        /// Include the floating-point identity checks
        #[arg(long)]
        numeric: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Entry point used by `main`; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(AppError::Failed(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

enum AppError {
    /// Bad selectors or invalid combinations: exit 2.
    Usage(String),
    /// Well-formed request that could not be satisfied: exit 1.
    Failed(String),
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidSystem(_)
            | CoreError::UnsupportedPattern(_)
            | CoreError::InvalidRestriction(_)
            | CoreError::RankMismatch { .. } => AppError::Usage(e.to_string()),
            other => AppError::Failed(other.to_string()),
        }
    }
}

fn parse_system(type_: &str, rank: Option<usize>) -> Result<RootSystem, AppError> {
    let (label, embedded) = TypeLabel::parse_with_rank(type_)?;
    let rank = rank
        .or(embedded)
        .ok_or_else(|| AppError::Usage(format!("missing rank for type {label}")))?;
    Ok(build_root_system(label, rank)?)
}

fn build_algebra(args: &AlgebraArgs) -> Result<(String, NilpotentAlgebra), AppError> {
    if let Some(ell) = args.upper {
        return Ok((
            format!("upper-triangular {ell}"),
            build_upper_triangular(ell)?,
        ));
    }
    if let Some(split) = &args.split {
        let sys = parse_system(split, args.rank)?;
        let name = format!("split {}", sys.name());
        return Ok((name, build_split_nilradical(&sys)?));
    }
    if let Some(restricted) = &args.restricted {
        let lower = restricted.to_ascii_lowercase();
        if lower == "e6f4" {
            let sys = build_root_system(TypeLabel::E, 6)?;
            return Ok((
                "restricted e6(F4)".into(),
                build_restricted_nilradical(&sys, &[2, 3, 4, 5])?,
            ));
        }
        if let Some(k) = lower.strip_prefix("slnh") {
            let k: usize = k
                .parse()
                .map_err(|_| AppError::Usage(format!("bad quaternion size in {restricted:?}")))?;
            if k < 2 {
                return Err(AppError::Usage("quaternion size must be at least 2".into()));
            }
            let sys = build_root_system(TypeLabel::A, 2 * k - 1)?;
            let odds: Vec<usize> = (1..=2 * k - 1).step_by(2).collect();
            return Ok((
                format!("restricted sl({k},H)"),
                build_restricted_nilradical(&sys, &odds)?,
            ));
        }
        return Err(AppError::Usage(format!(
            "unknown restricted pattern {restricted:?}; use slnh<k> or e6f4"
        )));
    }
    Err(AppError::Usage(
        "choose one of --upper, --split, --restricted".into(),
    ))
}

fn write_json(path: &PathBuf, value: &serde_json::Value) -> Result<(), AppError> {
    let text = serde_json::to_string_pretty(value).expect("serializable value");
    std::fs::write(path, text + "\n")
        .map_err(|e| AppError::Failed(format!("writing {}: {e}", path.display())))
}

fn report_outcome(
    report: &VerificationReport,
    json: Option<&PathBuf>,
) -> Result<i32, AppError> {
    print!("{}", report.render());
    let passed = report.checks.iter().filter(|c| c.passed).count();
    println!("{passed}/{} checks passed", report.checks.len());
    if let Some(path) = json {
        let value = serde_json::to_value(report).expect("report serializes");
        write_json(path, &value)?;
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn dispatch(cli: Cli) -> Result<i32, AppError> {
    match cli.cmd {
        Cmd::Cascade { sys, json } => {
            let system = parse_system(&sys.type_, sys.rank)?;
            let cascade = kostant_cascade(&system);
            println!(
                "{}: {} cascade roots in {} generations",
                system.name(),
                cascade.len(),
                cascade.generations().len()
            );
            for (g, gen) in cascade.generation_roots().iter().enumerate() {
                let roots: Vec<String> = gen.iter().map(|r| r.to_string()).collect();
                println!("generation {}: {}", g + 1, roots.join(", "));
            }
            if let Some(path) = &json {
                let betas: Vec<Vec<i64>> = cascade
                    .betas()
                    .iter()
                    .map(|b| b.coeffs().to_vec())
                    .collect();
                write_json(
                    path,
                    &json!({
                        "type": system.name(),
                        "betas": betas,
                        "generations": cascade.generations(),
                    }),
                )?;
            }
            Ok(0)
        }
        Cmd::Layers { sys, json } => {
            let system = parse_system(&sys.type_, sys.rank)?;
            let cascade = kostant_cascade(&system);
            let layers = compute_layers(&system, &cascade)?;
            println!(
                "{}: {} layers over {} positive roots",
                system.name(),
                layers.len(),
                system.num_positive()
            );
            let mut layer_values = Vec::new();
            for (r, beta) in cascade.betas().iter().enumerate() {
                println!("layer {} (β = {beta}, {} roots):", r + 1, layers.layer(r).len());
                let mut pair_json = Vec::new();
                let mut half_json = Vec::new();
                for pair in layers.pairs(r) {
                    match pair {
                        LayerPair::Pair(a, b) => {
                            println!("  {{{a}, {b}}}");
                            pair_json.push(json!([a.coeffs(), b.coeffs()]));
                        }
                        LayerPair::Half(a) => {
                            println!("  {{{a}}} (= β/2)");
                            half_json.push(json!(a.coeffs()));
                        }
                    }
                }
                layer_values.push(json!({
                    "beta": beta.coeffs(),
                    "pairs": pair_json,
                    "halves": half_json,
                }));
            }
            if let Some(path) = &json {
                write_json(
                    path,
                    &json!({ "type": system.name(), "layers": layer_values }),
                )?;
            }
            Ok(0)
        }
        Cmd::Algebra { alg, json } => {
            let (name, algebra) = build_algebra(&alg)?;
            println!(
                "{name}: dimension {}, {} layers",
                algebra.dim(),
                algebra.num_layers()
            );
            for r in 0..algebra.num_layers() {
                println!(
                    "  m_{}: dim {} (center {}, complement {})",
                    r + 1,
                    algebra.layer(r).len(),
                    algebra.center(r).len(),
                    algebra.complement(r).len()
                );
            }
            if let Some(path) = &json {
                write_json(path, &algebra_to_json(&algebra))?;
            }
            Ok(0)
        }
        Cmd::Pfaffian { alg, json } => {
            let (name, algebra) = build_algebra(&alg)?;
            let c = plancherel_constant(&algebra)?;
            let ds = algebra.half_dims()?;
            println!("{name}: d = {ds:?}, c = {c}");
            match plancherel_polynomial(&algebra) {
                Ok(p) => {
                    let terms: Vec<String> = p
                        .terms()
                        .iter()
                        .map(|(exps, coeff)| {
                            let mono: Vec<String> = exps
                                .iter()
                                .enumerate()
                                .filter(|(_, &e)| e > 0)
                                .map(|(i, &e)| {
                                    if e == 1 {
                                        p.vars()[i].clone()
                                    } else {
                                        format!("{}^{}", p.vars()[i], e)
                                    }
                                })
                                .collect();
                            let mono = if mono.is_empty() {
                                "1".to_string()
                            } else {
                                mono.join("·")
                            };
                            format!("{} {mono}", rat_to_string(coeff))
                        })
                        .collect();
                    println!("P = {}", terms.join(" + "));
                    if let Some(path) = &json {
                        let mut value = p.to_json();
                        value["c"] = json!(c.to_string());
                        value["half_dims"] = json!(ds);
                        write_json(path, &value)?;
                    }
                    Ok(0)
                }
                Err(CoreError::SymbolicBudget(msg)) => {
                    println!("symbolic density over budget ({msg}); numeric witnesses:");
                    let seed = suites::seed_from_env();
                    let mut witness_values = Vec::new();
                    for r in 0..algebra.num_layers() {
                        let w = find_nondegenerate_lambda_with_seed(&algebra, r, seed)?;
                        match &w.witness {
                            Some(lam) => {
                                let coords: Vec<String> = lam.iter().map(rat_to_string).collect();
                                println!(
                                    "  layer {}: λ = [{}] ({}, {} trials, seed {})",
                                    r + 1,
                                    coords.join(", "),
                                    w.method.unwrap_or("?"),
                                    w.trials,
                                    w.seed
                                );
                                witness_values.push(json!({
                                    "layer": r + 1,
                                    "lambda": coords,
                                    "method": w.method,
                                    "seed": w.seed,
                                    "trials": w.trials,
                                }));
                            }
                            None => {
                                println!(
                                    "  layer {}: inconclusive after {} trials (seed {})",
                                    r + 1,
                                    w.trials,
                                    w.seed
                                );
                                witness_values.push(json!({
                                    "layer": r + 1,
                                    "lambda": serde_json::Value::Null,
                                    "seed": w.seed,
                                    "trials": w.trials,
                                }));
                            }
                        }
                    }
                    if let Some(path) = &json {
                        write_json(
                            path,
                            &json!({
                                "c": c.to_string(),
                                "half_dims": ds,
                                "witnesses": witness_values,
                            }),
                        )?;
                    }
                    Ok(0)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Multiplicity { upper, bound, json } => {
            let algebra = build_upper_triangular(upper)?;
            let lattice = LatticeSpec::standard(&algebra);
            let report = multiplicity_table(&algebra, &lattice, bound)?;
            println!(
                "upper-triangular {upper}, standard integer lattice, box {bound}: {} points with nonzero density",
                report.entries.len()
            );
            for (lam, m) in &report.entries {
                let coords: Vec<String> = lam.iter().map(rat_to_string).collect();
                println!("  λ = [{}]: multiplicity {}", coords.join(", "), rat_to_string(m));
            }
            if let Some(path) = &json {
                write_json(path, &report.to_json())?;
            }
            Ok(0)
        }
        Cmd::Verify {
            what,
            type_,
            rank,
            only,
            numeric,
            json,
        } => {
            let only_system = match &type_ {
                Some(t) => {
                    let s = parse_system(t, rank)?;
                    Some((s.label(), s.rank()))
                }
                None => None,
            };
            if let Some(name) = &only {
                if !suites::SUITE_NAMES.iter().any(|s| s.eq_ignore_ascii_case(name)) {
                    return Err(AppError::Usage(format!(
                        "unknown suite {name:?}; choose one of {}",
                        suites::SUITE_NAMES.join(", ")
                    )));
                }
            }
            let seed = suites::seed_from_env();
            let report = match what.as_str() {
                "appendix" => {
                    let systems = match only_system {
                        Some(pair) => vec![pair],
                        None => suites::supported_systems(),
                    };
                    let mut r = VerificationReport::new();
                    for (l, rk) in systems {
                        r.merge(suites::suite_appendix(l, rk));
                    }
                    r
                }
                "jacobi" => suites::suite_jacobi(),
                "setup" => suites::suite_setup(),
                "all" => suites::verify_all(&VerifyOptions {
                    only_system,
                    only_suite: only,
                    numeric,
                    seed,
                }),
                _ => unreachable!("clap filters the suite names"),
            };
            report_outcome(&report, json.as_ref())
        }
    }
}
