//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a verification failed (details
//! on standard output).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use singlat::io::{self, GraphFile};
use singlat::kulikov::{self, kulikov_construct, verify_kulikov_properties};
use singlat::report::{analyze, emit_report, to_canonical_json};
use singlat::seifert::{bp_graph, bp_kulikov_genus_check, tomaru_check, tomaru_scan};
use singlat::Error;

#[derive(Parser)]
#[command(name = "singlat", version, about = "Lattice invariants of normal surface singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Graph,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a resolution graph file.
    Analyze {
        file: PathBuf,
        /// Also compute sup p_a over positive cycles.
        #[arg(long)]
        arithmetic_genus: bool,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Star-shaped resolution graph of x^a + y^b + t^c.
    Bp {
        a: i64,
        b: i64,
        c: i64,
        #[arg(long, value_enum, default_value = "graph")]
        emit: Emit,
    },
    /// Characteristic-cycle verdicts for x^a + y^b + t^c.
    Tomaru { a: i64, b: i64, c: i64 },
    /// Run `tomaru` over 2 ≤ a ≤ a_max, a ≤ b ≤ b_max, lcm(a,b) ≤ c ≤ c1_max·lcm(a,b).
    TomaruScan {
        #[arg(long)]
        a_max: i64,
        #[arg(long)]
        b_max: i64,
        #[arg(long)]
        c1_max: i64,
    },
    /// Contract rational (−1)-curves.
    MinimalModel { file: PathBuf },
    /// Kulikov construction from a fibre and a blow-up script.
    Construct {
        fibre: PathBuf,
        #[arg(long)]
        script: PathBuf,
    },
    /// Compare p_f of the Brieskorn–Pham graph with (μ − r + 1)/2.
    GenusCheck { a: i64, b: i64, c: i64 },
}

enum Failure {
    Input(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph").to_string()
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Analyze { file, arithmetic_genus, json, dot } => {
            let parsed = io::parse_graph(&read(&file)?)?;
            let GraphFile::Graph { name, graph } = parsed else {
                return Err(Failure::Input("analyze expects a `graph` file".into()));
            };
            if dot {
                print!("{}", io::emit_dot(&name, &graph));
                return Ok(());
            }
            let rep = analyze(&graph, arithmetic_genus)?;
            if json {
                print!("{}", emit_report(&rep));
            } else {
                print_summary(&name, &rep);
            }
            if rep.is_resolution_graph() {
                Ok(())
            } else {
                Err(Failure::Input(
                    rep.characteristic_cycle_reason.unwrap_or_else(|| "invalid graph".into()),
                ))
            }
        }
        Command::Bp { a, b, c, emit } => {
            let g = bp_graph(a, b, c)?;
            let name = format!("bp_{a}_{b}_{c}");
            match emit {
                Emit::Graph => print!("{}", io::write_graph(&name, &g)),
                Emit::Dot => print!("{}", io::emit_dot(&name, &g)),
                Emit::Json => print!("{}", emit_report(&analyze(&g, false)?)),
            }
            Ok(())
        }
        Command::Tomaru { a, b, c } => {
            let rep = tomaru_check(a, b, c)?;
            let mut v = serde_json::to_value(&rep).expect("report serialises");
            v["passed"] = json!(rep.passed());
            print!("{}", to_canonical_json(&v));
            verdict(rep.passed())
        }
        Command::TomaruScan { a_max, b_max, c1_max } => {
            if a_max < 2 || b_max < 2 || c1_max < 1 {
                return Err(Failure::Input("need a_max ≥ 2, b_max ≥ 2, c1_max ≥ 1".into()));
            }
            let rows = tomaru_scan(a_max, b_max, c1_max);
            let mut failures = 0;
            let mut nonrational = 0;
            for row in &rows {
                let (a, b, c) = row.exponents;
                let status = if row.passed() { "ok" } else { "FAIL" };
                failures += usize::from(!row.passed());
                match &row.report {
                    Some(r) if r.vacuous => println!("{a} {b} {c} {status} rational"),
                    Some(r) => {
                        nonrational += 1;
                        println!(
                            "{a} {b} {c} {status} p_f={} support={} cycle={} equality={}/{} chains={}",
                            r.fundamental_genus,
                            flag(r.support_matches),
                            flag(r.cycle_matches_reference_z),
                            flag(r.equality_holds),
                            r.equality_predicted,
                            flag(r.chains_found),
                        );
                    }
                    None => println!("{a} {b} {c} {status} error={}", row.error.as_deref().unwrap_or("")),
                }
            }
            println!("triples={} nonrational={nonrational} failures={failures}", rows.len());
            verdict(failures == 0)
        }
        Command::MinimalModel { file } => {
            let parsed = io::parse_graph(&read(&file)?)?;
            let GraphFile::Graph { name, graph } = parsed else {
                return Err(Failure::Input("minimal-model expects a `graph` file".into()));
            };
            let model = graph.minimal_model()?;
            println!("# input determinant {}", graph.det_intersection());
            println!("# contracted {}", model.contracted.join(" "));
            print!("{}", io::write_graph(&format!("{name}_min"), &model.graph));
            Ok(())
        }
        Command::Construct { fibre, script } => {
            let f = io::parse_fibre(&read(&fibre)?)?;
            let s = io::parse_script(&read(&script)?)?;
            let res = kulikov_construct(&f, &s)?;
            let g = &res.graph;
            let minimal = kulikov::is_minimal_family(&f);
            let verification = if minimal { Some(verify_kulikov_properties(&f, &s)?) } else { None };
            let ok = res.fundamental_cycle_is_strict_transform
                && verification.as_ref().is_none_or(|v| v.passed());
            let out = json!({
                "graph": io::write_graph(&file_stem(&fibre), g),
                "x_tilde": res.x_tilde,
                "strict_transform": res.strict_transform.to_map(g),
                "fundamental_cycle": res.fundamental_cycle.to_map(g),
                "fundamental_cycle_is_strict_transform": res.fundamental_cycle_is_strict_transform,
                "r": res.r,
                "fibre_genus": res.fibre_genus,
                "milnor_mu": res.milnor_mu,
                "minimal_family": minimal,
                "verification": verification,
                "passed": ok,
            });
            print!("{}", to_canonical_json(&out));
            verdict(ok)
        }
        Command::GenusCheck { a, b, c } => {
            let rep = bp_kulikov_genus_check(a, b, c)?;
            print!("{}", to_canonical_json(&rep));
            verdict(rep.passed)
        }
    }
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    }
}

fn print_summary(name: &str, rep: &singlat::report::AnalysisReport) {
    let show = |m: &Option<std::collections::BTreeMap<String, i64>>| match m {
        Some(m) => m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "),
        None => "-".into(),
    };
    println!("graph {name}: {} vertices", rep.graph.vertices.len());
    println!("negative definite: {}", rep.negative_definite);
    println!("determinant: {}", rep.determinant);
    if let Some(zk) = &rep.canonical_cycle {
        let s: Vec<String> = zk.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("Z_K: {}", s.join(" "));
    }
    println!("fundamental cycle: {}", show(&rep.fundamental_cycle));
    if let Some(p) = rep.p_f {
        println!("p_f: {p}");
    }
    let b = |x: Option<bool>| flag(x);
    println!("numerically gorenstein: {}", b(rep.numerically_gorenstein));
    println!("numerically kulikov: {}", b(rep.numerically_kulikov));
    println!("rational: {}", b(rep.rational));
    match (&rep.characteristic_cycle, &rep.characteristic_cycle_reason) {
        (Some(_), _) => println!("characteristic cycle: {}", show(&rep.characteristic_cycle)),
        (None, Some(r)) => println!("characteristic cycle: - ({r})"),
        (None, None) => println!("characteristic cycle: -"),
    }
    if let Some(ag) = &rep.arithmetic_genus {
        let w: Vec<String> = ag.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("arithmetic genus: {} at {}", ag.value, w.join(" "));
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}
