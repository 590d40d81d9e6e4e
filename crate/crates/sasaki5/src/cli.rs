//! Command-line front end.
//!
//! One subcommand per invocation; inputs are JSON documents read from
//! `--input <path>` or standard input (some commands also take inline
//! parameters).  `--format json` emits JSON with sorted keys so that
//! identical inputs yield byte-identical output.
//!
//! Exit status: 0 on success / positive verification, 1 on a negative
//! verification result, 2 on malformed input.

use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::catalog::{self, Check};
use crate::klt::{KltBoundSpec, KltNewtonSpec, KltOutcome};
use crate::links::{BPExponents, LinkSpec};
use crate::seifert::SeifertSpec;
use crate::surface::SurfaceSpec;
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "sasaki5",
    version,
    about = "Invariants of Seifert bundles over log Del Pezzo surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the invariants of a surface model.
    SurfaceShow {
        /// JSON surface description (defaults to standard input).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Catalog surface name, as a shortcut for an input document.
        #[arg(long, conflicts_with = "input")]
        name: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Analyze a Seifert bundle: smoothness, pre-SE form, homology.
    SeifertCheck {
        /// JSON bundle description (defaults to standard input).
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Closed-form klt bound min{1/local + 1/(n*mult), 1/mult}.
    KltBound {
        /// JSON document {"local": .., "mult": .., "n": ..}.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Inline alternative to --input: LOCAL MULT N.
        #[arg(value_names = ["LOCAL", "MULT", "N"], num_args = 3)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Newton-polygon klt test for a plane curve germ.
    KltNewton {
        /// JSON germ description (defaults to standard input).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Include the step-by-step polygon trace in the report.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// H_2 of the link of a Brieskorn-Pham singularity.
    LinkHomology {
        /// JSON document {"exponents": [a, b, c, d]}.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Inline alternative to --input: the four exponents.
        #[arg(value_name = "EXPONENT", num_args = 4)]
        exponents: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-derive the built-in tables and report one line per check.
    CatalogVerify {
        /// Run a single suite: table1, table2, equations, families, bundles.
        #[arg(long)]
        suite: Option<String>,
        /// Worker threads (report order is fixed regardless).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate the bundle families over the surfaces with pi_1 != 0.
    CatalogEnumerate {
        /// Only list families over bases of this degree.
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Parse the process arguments and run; returns the exit status.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Run one subcommand, printing its report; `Ok(0)` on success or a
/// positive result, `Ok(1)` on a negative verification result.
pub fn run(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::SurfaceShow { input, name, format } => {
            let spec: SurfaceSpec = match name {
                Some(n) => SurfaceSpec::Catalog { name: n.clone() },
                None => parse_input(input)?,
            };
            surface_show(&spec, *format)
        }
        Command::SeifertCheck { input, format } => {
            let spec: SeifertSpec = parse_input(input)?;
            seifert_check(&spec, *format)
        }
        Command::KltBound { input, args, format } => {
            let spec: KltBoundSpec = if args.len() == 3 {
                KltBoundSpec {
                    local: args[0].clone(),
                    mult: args[1].clone(),
                    n: args[2]
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad multiplier count {}", args[2])))?,
                }
            } else {
                parse_input(input)?
            };
            klt_bound_cmd(&spec, *format)
        }
        Command::KltNewton { input, trace, format } => {
            let spec: KltNewtonSpec = parse_input(input)?;
            klt_newton_cmd(&spec, *trace, *format)
        }
        Command::LinkHomology { input, exponents, format } => {
            let spec = if exponents.len() == 4 {
                LinkSpec {
                    exponents: [exponents[0], exponents[1], exponents[2], exponents[3]],
                }
            } else {
                parse_input(input)?
            };
            link_homology(&spec, *format)
        }
        Command::CatalogVerify { suite, jobs, format } => catalog_verify(suite.as_deref(), *jobs, *format),
        Command::CatalogEnumerate { degree, format } => catalog_enumerate(*degree, *format),
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn parse_input<T: DeserializeOwned>(path: &Option<PathBuf>) -> Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| {
        Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    })
}

/// Serialize with sorted keys (the default `serde_json` map is ordered).
fn emit_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("report serializes"));
}

fn surface_show(spec: &SurfaceSpec, format: Format) -> Result<i32> {
    let s = spec.build()?;
    let numeric = s.pairing.is_some();
    let (k_squared, ample) = if numeric {
        let a = s.is_log_del_pezzo(&crate::surface::Div::zero(s.dim()))?;
        (Some(s.k_squared()?), Some(a))
    } else {
        (None, None)
    };
    let wmp = s.weil_mod_pic();
    let canonical = s.describe_class(&s.canonical_class());
    let status = match &ample {
        Some(a) if !a.is_ample() => 1,
        _ => 0,
    };
    match format {
        Format::Json => emit_json(&json!({
            "name": s.name,
            "basis": s.basis,
            "class_orders": s.class_orders,
            "canonical": canonical,
            "k_squared": k_squared.as_ref().map(|k| k.to_string()),
            "anticanonical_ample": ample.as_ref().map(|a| a.is_ample()),
            "degree": s.degree,
            "singularities": s.singularities,
            "weil_mod_pic": wmp.to_string(),
        })),
        Format::Text => {
            println!("surface {}", s.name);
            println!("  basis: {}", s.basis.join(", "));
            println!("  K = {canonical}");
            match &k_squared {
                Some(k) => println!("  K^2 = {k}"),
                None => println!("  K^2 = (intersection lattice not encoded)"),
            }
            if let Some(a) = &ample {
                match a {
                    crate::surface::Ampleness::Ample => println!("  -K ample: yes"),
                    crate::surface::Ampleness::Violation { curve, value } => {
                        println!("  -K ample: no ({curve} pairs to {value})")
                    }
                }
            }
            match s.degree {
                Some(d) => println!("  degree: {d}"),
                None => println!("  degree: outside the weighted blow-up family"),
            }
            for p in &s.singularities {
                println!("  singular point Z/{} <- {:?}", p.order, p.restriction);
            }
            println!("  Weil/Cartier = {wmp}");
        }
    }
    Ok(status)
}

fn seifert_check(spec: &SeifertSpec, format: Format) -> Result<i32> {
    let bundle = spec.build()?;
    let smooth = bundle.is_smooth()?;
    let pre_se = match bundle.is_pre_se() {
        Ok(p) => Some(p),
        Err(Error::OutsideFamily(_)) => None,
        Err(e) => return Err(e),
    };
    let tors = bundle.tors_h2()?;
    let h3 = bundle.h3_sequence()?;
    let chern = bundle.surface.describe_class(&bundle.chern_class());
    let status =
        if smooth.smooth && pre_se.as_ref().map_or(true, |p| p.pre_se) { 0 } else { 1 };
    match format {
        Format::Json => emit_json(&json!({
            "chern_class": chern,
            "smooth": smooth.smooth,
            "smoothness_failure": smooth.failure,
            "pre_se": pre_se.as_ref().map(|p| p.pre_se),
            "pre_se_multiplier": pre_se.as_ref().and_then(|p| p.r.as_ref().map(|r| r.to_string())),
            "pre_se_reason": pre_se.as_ref().and_then(|p| p.reason.clone()),
            "tors_h2": tors.group.to_string(),
            "tors_h2_branch_formula_only": tors.branch_formula_only,
            "h3_right_term": h3.right_term.to_string(),
            "h3_left_exact": h3.left_exact,
            "h3_split": h3.split,
        })),
        Format::Text => {
            println!("Seifert bundle over {}", bundle.surface.name);
            println!("  c_1 = {chern}");
            match smooth.failure {
                None => println!("  smooth total space: yes"),
                Some((j, n, g)) => println!(
                    "  smooth total space: no (point {j}, order {n}, gcd {g})"
                ),
            }
            match &pre_se {
                None => println!("  pre-SE: not applicable (outside the degree family)"),
                Some(p) if p.pre_se => {
                    println!("  pre-SE: yes (multiplier r = {})", p.r.as_ref().expect("r set"))
                }
                Some(p) => println!(
                    "  pre-SE: no ({})",
                    p.reason.as_deref().unwrap_or("no reason recorded")
                ),
            }
            println!(
                "  tors H_2 = {}{}",
                tors.group,
                if tors.branch_formula_only { " (branch formula only)" } else { "" }
            );
            println!(
                "  H^3 sequence: right term {}, left exact: {}, split: {}",
                h3.right_term, h3.left_exact, h3.split
            );
        }
    }
    Ok(status)
}

fn klt_bound_cmd(spec: &KltBoundSpec, format: Format) -> Result<i32> {
    let bound = spec.run()?;
    let admits_c1 = bound > crate::rint(1);
    match format {
        Format::Json => emit_json(&json!({
            "bound": bound.to_string(),
            "admits_c1": admits_c1,
        })),
        Format::Text => {
            let local = crate::klt::parse_rat(&spec.local)?;
            let mult = crate::klt::parse_rat(&spec.mult)?;
            println!(
                "klt for c < min{{{} + {}, {}}} = {bound}",
                local.recip(),
                (crate::rint(spec.n as i64) * &mult).recip(),
                mult.recip()
            );
            if admits_c1 {
                println!("c = 1 admissible");
            }
        }
    }
    Ok(0)
}

fn klt_newton_cmd(spec: &KltNewtonSpec, trace: bool, format: Format) -> Result<i32> {
    let analysis = spec.run()?;
    let klt = matches!(analysis.outcome, KltOutcome::Klt);
    match format {
        Format::Json => {
            let mut report = json!({
                "outcome": if klt { "klt" } else { "not-determined" },
                "coefficient": spec.c,
                "branch_multiplicity": spec.m,
                "cover_degree": spec.n,
            });
            if trace {
                report["trace"] = json!(analysis.trace);
            }
            emit_json(&report);
        }
        Format::Text => {
            if trace {
                for line in &analysis.trace {
                    println!("  {line}");
                }
            }
            println!(
                "c = {}: {}",
                spec.c,
                if klt { "klt" } else { "not determined by the polygon test" }
            );
        }
    }
    Ok(if klt { 0 } else { 1 })
}

fn link_homology(spec: &LinkSpec, format: Format) -> Result<i32> {
    let bp = BPExponents::new(spec.exponents)?;
    let h2 = bp.link_h2();
    match format {
        Format::Json => emit_json(&json!({
            "exponents": spec.exponents,
            "milnor_number": bp.milnor_number(),
            "rank": h2.free_rank,
            "torsion": h2.to_string(),
            "torsion_order": bp.torsion_order_det().to_string(),
        })),
        Format::Text => {
            let tors = crate::abelian::FiniteAbelianGroup {
                free_rank: 0,
                torsion: h2.torsion.clone(),
            };
            println!("rank {}, torsion {tors}", h2.free_rank);
        }
    }
    Ok(0)
}

fn catalog_verify(suite: Option<&str>, jobs: usize, format: Format) -> Result<i32> {
    let checks: Vec<Check> = match suite {
        None | Some("all") => catalog::verify_all_parallel(jobs.max(1)),
        Some(name) => {
            let f = catalog::suites()
                .into_iter()
                .find(|(n, _)| *n == name)
                .map(|(_, f)| f)
                .ok_or_else(|| Error::InvalidInput(format!("unknown suite {name}")))?;
            f()
        }
    };
    let failed = checks.iter().filter(|c| !c.ok).count();
    match format {
        Format::Json => emit_json(&json!({
            "checks": checks,
            "failed": failed,
            "total": checks.len(),
        })),
        Format::Text => {
            for c in &checks {
                println!("{} {} - {}", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            println!("{} checks, {} failed", checks.len(), failed);
        }
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

fn catalog_enumerate(degree: Option<u64>, format: Format) -> Result<i32> {
    let rows: Vec<&catalog::Table2Row> = catalog::table2()
        .iter()
        .filter(|r| degree.is_none_or(|d| r.degree == d))
        .collect();
    let (with_pi1, simply_connected, total) = catalog::family_counts();
    match format {
        Format::Json => {
            let listed: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let families = catalog::enumerate_blowup_families(r.degree);
                    json!({
                        "surface": r.singularities,
                        "degree": r.degree,
                        "pi1_orb": r.pi1_orb,
                        "count": families.len(),
                        "blowup_weights": families,
                    })
                })
                .collect();
            emit_json(&json!({
                "bases": listed,
                "families_with_pi1": with_pi1,
                "simply_connected_families": simply_connected,
                "total_families": total,
            }));
        }
        Format::Text => {
            for r in &rows {
                let families = catalog::enumerate_blowup_families(r.degree);
                println!(
                    "{} (degree {}, pi_1^orb = {}): {} families",
                    r.singularities,
                    r.degree,
                    r.pi1_orb,
                    families.len()
                );
                for f in &families {
                    println!("  blow-up weights {f:?}");
                }
            }
            println!(
                "{with_pi1} families with pi_1 != 0, {simply_connected} simply connected, {total} total"
            );
        }
    }
    Ok(0)
}
