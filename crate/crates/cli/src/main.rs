use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mtk_core::coloring::{chi, chi_list_number, chi_matroid, chi_star};
use mtk_core::constructions::{canned, CANNED};
use mtk_core::instance::{emit_instance, parse_instance, Instance};
use mtk_core::matroid::{matdim_exact, matdim_upper};
use mtk_core::meshulam::{delete_contract_certificate, gamma_e_hyper, Strategy};
use mtk_core::polytopes::{fractional_width, hyper_numbers, matroidal_numbers, ratio, PolytopeRef};
use mtk_core::topology::{eta_bar, eta_h, expansions, reduced_homology};
use mtk_core::verify::{render_table, run_suite, SuiteConfig, SUITES};
use mtk_core::{Complex, Error, RatVec};

#[derive(Parser)]
#[command(name = "mtk", version, about = "Exact invariants of matroid intersections and a verifier for their claimed relations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Report::Table)]
    report: Report,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Jsonl,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of an instance file.
    Invariants {
        file: PathBuf,
        /// Comma-separated invariant names; all applicable ones when omitted.
        #[arg(long, value_delimiter = ',')]
        what: Vec<String>,
    },
    /// Run a verification suite. Exit code 1 if any claim is violated.
    Verify {
        /// One of the suite names, or `all`.
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
        /// Number of random items per family.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Write a named construction as an instance file.
    Gen {
        name: String,
        /// `key=value` integer parameters, e.g. `q=3`.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, i64)>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// The ratio `B:A` of two polytopes of an instance.
    Ratio {
        file: PathBuf,
        #[arg(long, value_parser = ["R:P", "R:Q", "Q:P"])]
        pair: String,
    },
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v = v.trim().parse().map_err(|_| format!("`{v}` is not an integer"))?;
    Ok((k.trim().to_string(), v))
}

const COMPLEX_INVARIANTS: &[&str] =
    &["rank", "eta_h", "eta_bar", "homology", "chi", "chi_list", "chi_star", "expansions", "matdim_upper", "matdim"];
const HYPERGRAPH_INVARIANTS: &[&str] = &["gamma_e", "certificate", "hyper_numbers", "fractional_width"];
const MATROID_INVARIANTS: &[&str] = &["matroidal_numbers", "chi_matroids"];

enum Failure {
    Usage(String),
    Cap(String),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg) | Failure::Cap(msg)) => {
            eprintln!("mtk: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Invariants { file, what } => invariants(&parse_instance(&file)?, &what, cli.report),
        Command::Verify { suite, seed, max_n, max_k, samples } => {
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!("unknown suite `{suite}`; known: all, {}", SUITES.join(", "))));
            }
            let records = run_suite(&suite, &SuiteConfig { seed, max_n, max_k, samples })?;
            match cli.report {
                Report::Jsonl => records.iter().for_each(|r| println!("{}", r.to_json_line())),
                Report::Table => print!("{}", render_table(&records)),
            }
            if records.iter().any(|r| r.violated()) {
                Err(Failure::Violation)
            } else {
                Ok(())
            }
        }
        Command::Gen { name, params, output } => {
            if !CANNED.contains(&name.as_str()) {
                return Err(Failure::Usage(format!("unknown construction `{name}`; known: {}", CANNED.join(", "))));
            }
            let params: BTreeMap<String, i64> = params.into_iter().collect();
            let text = emit_instance(&canned(&name, &params)?)?;
            match output {
                Some(path) => std::fs::write(&path, text + "\n")
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => println!("{text}"),
            }
            Ok(())
        }
        Command::Ratio { file, pair } => {
            let inst = parse_instance(&file)?;
            let (b, a) = pair.split_once(':').expect("pair validated by the parser");
            let value = ratio(&polytope(&inst, b)?, &polytope(&inst, a)?)?;
            emit(cli.report, &[(format!("ratio {pair}"), json!(value.to_wire()))]);
            Ok(())
        }
    }
}

fn complex_of(inst: &Instance) -> Result<Complex, Failure> {
    match (&inst.complex, &inst.matroids) {
        (Some(c), _) => Ok(c.clone()),
        (None, Some(l)) => Ok(l.intersection()?),
        (None, None) => Err(Failure::Usage("instance has neither a complex nor matroids".into())),
    }
}

fn polytope(inst: &Instance, kind: &str) -> Result<PolytopeRef, Failure> {
    Ok(match kind {
        "P" => PolytopeRef::P(complex_of(inst)?),
        "Q" => PolytopeRef::Q(complex_of(inst)?),
        _ => PolytopeRef::R(
            inst.matroids.clone().ok_or_else(|| Failure::Usage("R needs a matroid system in the instance".into()))?,
        ),
    })
}

fn emit(report: Report, rows: &[(String, Value)]) {
    for (name, value) in rows {
        match report {
            Report::Jsonl => println!("{}", json!({ "invariant": name, "value": value })),
            Report::Table => {
                let shown = match value {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                println!("{name:<18} {shown}");
            }
        }
    }
}

fn invariants(inst: &Instance, what: &[String], report: Report) -> Result<(), Failure> {
    let has_complex = inst.complex.is_some() || inst.matroids.is_some();
    let names: Vec<String> = if what.is_empty() {
        let mut v: Vec<&str> = Vec::new();
        if has_complex {
            v.extend(COMPLEX_INVARIANTS.iter().filter(|&&n| n != "matdim"));
        }
        if inst.hypergraph.is_some() {
            v.extend(HYPERGRAPH_INVARIANTS);
        }
        if inst.matroids.is_some() {
            v.extend(MATROID_INVARIANTS);
        }
        v.into_iter().map(String::from).collect()
    } else {
        what.to_vec()
    };
    let mut rows = Vec::new();
    for name in &names {
        let value = match invariant(inst, name) {
            Ok(v) => v,
            Err(Failure::Cap(msg)) => json!(format!("skipped({msg})")),
            Err(e) => return Err(e),
        };
        rows.push((name.clone(), value));
    }
    emit(report, &rows);
    Ok(())
}

fn invariant(inst: &Instance, name: &str) -> Result<Value, Failure> {
    let need_h = || inst.hypergraph.as_ref().ok_or_else(|| Failure::Usage(format!("{name} needs a hypergraph")));
    let need_l = || inst.matroids.as_ref().ok_or_else(|| Failure::Usage(format!("{name} needs matroids")));
    let vertex_weights = |n: usize| inst.weights.h.clone().unwrap_or_else(|| RatVec::ones(n));
    Ok(match name {
        "rank" => json!(complex_of(inst)?.rank()),
        "eta_h" => json!(eta_h(&complex_of(inst)?)?.to_wire()),
        "eta_bar" => json!(eta_bar(&complex_of(inst)?)?.to_wire()),
        "homology" => serde_json::to_value(reduced_homology(&complex_of(inst)?)?).expect("serializable"),
        "chi" => json!(chi(&complex_of(inst)?)?),
        "chi_list" => json!(chi_list_number(&complex_of(inst)?)?),
        "chi_star" => {
            let c = complex_of(inst)?;
            json!(chi_star(&c, &vertex_weights(c.n()))?.value.to_string())
        }
        "expansions" => {
            let c = complex_of(inst)?;
            let e = expansions(&c, Some(&vertex_weights(c.n())))?;
            json!({
                "delta_r": e.delta_r.to_wire(),
                "delta_eta": e.delta_eta.to_wire(),
                "delta": e.delta.to_wire(),
                "delta_h": e.delta_h.to_wire(),
            })
        }
        "matdim_upper" => json!(matdim_upper(&complex_of(inst)?)?.0),
        "matdim" => json!(matdim_exact(&complex_of(inst)?)?),
        "gamma_e" => json!(gamma_e_hyper(need_h()?)?.0.to_wire()),
        "certificate" => {
            let cert = delete_contract_certificate(need_h()?, Strategy::Auto)?;
            json!({
                "bound": cert.bound.to_wire(),
                "contracted": cert.contracted.iter().map(|e| e.to_vec()).collect::<Vec<_>>(),
            })
        }
        "hyper_numbers" => {
            let h = need_h()?;
            let w = inst.weights.w.clone().filter(|w| w.len() == h.num_edges()).unwrap_or_else(|| RatVec::ones(h.num_edges()));
            let r = hyper_numbers(h, &w)?;
            json!({
                "nu": r.nu.to_string(),
                "nu_star": r.nu_star.to_string(),
                "tau_star": r.tau_star.to_string(),
                "tau": r.tau.to_string(),
                "width": r.width.to_string(),
            })
        }
        "fractional_width" => json!(fractional_width(need_h()?)?.to_string()),
        "matroidal_numbers" => {
            let l = need_l()?;
            let w = inst.weights.w.clone().filter(|w| w.len() == l.n()).unwrap_or_else(|| RatVec::ones(l.n()));
            let r = matroidal_numbers(l, &w)?;
            json!({
                "nu": r.nu.to_string(),
                "nu_star": r.nu_star.to_string(),
                "tau_star": r.tau_star.to_string(),
                "tau": r.tau.to_string(),
            })
        }
        "chi_matroids" => {
            let l = need_l()?;
            json!(l.matroids().iter().map(|m| chi_matroid(m).map_err(Failure::from)).collect::<Result<Vec<_>, _>>()?)
        }
        other => {
            let known: Vec<&str> =
                COMPLEX_INVARIANTS.iter().chain(HYPERGRAPH_INVARIANTS).chain(MATROID_INVARIANTS).copied().collect();
            return Err(Failure::Usage(format!("unknown invariant `{other}`; known: {}", known.join(", "))));
        }
    })
}
