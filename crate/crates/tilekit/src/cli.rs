//! Command-line front end: solve, verify, reduce, gen, export-ilp, bench.
//!
//! All commands read and write JSON. Exit codes are scriptable: 0 for
//! success (feasible / solved), 2 for a NO answer (infeasible tileset,
//! budget exceeded), 1 for errors. Every solver result is re-verified
//! through the feasibility checker before it is reported.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::approx::approximate;
use crate::exact::{
    self, partition_to_tileset, solve_bruteforce, solve_dp_with_cap, tileset_to_partition,
    Partition,
};
use crate::feasibility::{is_feasible, Feasibility};
use crate::generators::{planted_partition, random_instance};
use crate::ilp::{
    self, build_hall_ilp_with_cap, build_pattern_ilp_with_cap, check_assignment, export_json,
    export_lp, solve_small, IlpModel,
};
use crate::model::{
    parse_instance, parse_tileset, serialize_instance, serialize_tileset, Instance, Tileset,
};
use crate::reductions::{parse_cover, parse_x3c, x3c_to_mft, xdc_to_mft};

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] crate::model::ModelError),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
    #[error(transparent)]
    Ilp(#[from] crate::ilp::IlpError),
    #[error(transparent)]
    Reduction(#[from] crate::reductions::ReductionError),
    #[error(transparent)]
    Generator(#[from] crate::generators::GeneratorError),
    #[error("solver produced an unverifiable result: {0}")]
    Unverified(String),
}

#[derive(Parser)]
#[command(
    name = "tilekit",
    about = "Feasible-tileset solver toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and report the tileset.
    Solve(SolveArgs),
    /// Check a tileset against an instance and emit certificates.
    Verify {
        instance: PathBuf,
        tileset: PathBuf,
    },
    /// Transform an exact-cover instance into a tileset instance.
    Reduce(ReduceArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build an integer feasibility model and print it.
    ExportIlp(ExportArgs),
    /// Compare the approximation against the exact optimum over a batch.
    Bench {
        config: PathBuf,
        /// Worker threads (defaults to the available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::Dp)]
    algorithm: Algorithm,
    /// Overrides the instance's tile budget.
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct CapArgs {
    /// Universe cap for the subset dynamic program.
    #[arg(long, default_value_t = exact::DEFAULT_DP_CAP)]
    dp_cap: usize,
    /// Scenario cap for the pattern model.
    #[arg(long, default_value_t = ilp::DEFAULT_PATTERN_CAP)]
    pattern_cap: usize,
    /// Universe cap for the Hall model.
    #[arg(long, default_value_t = ilp::DEFAULT_HALL_CAP)]
    hall_cap: usize,
    /// Fallback bound for model variables without a tighter one.
    #[arg(long, default_value_t = 1_000_000)]
    var_cap: u64,
}

impl CapArgs {
    fn warn_if_raised(&self) {
        if self.dp_cap > exact::DEFAULT_DP_CAP {
            let bytes = (1u64 << self.dp_cap) * 5 + (1u64 << self.dp_cap) / 8;
            eprintln!(
                "warning: --dp-cap {} needs roughly {} MiB of tables",
                self.dp_cap,
                bytes >> 20
            );
        }
        if self.hall_cap > ilp::DEFAULT_HALL_CAP {
            eprintln!(
                "warning: --hall-cap {} emits up to m*2^{} constraints",
                self.hall_cap, self.hall_cap
            );
        }
        if self.pattern_cap > ilp::DEFAULT_PATTERN_CAP {
            eprintln!(
                "warning: --pattern-cap {} creates on the order of {}^{} variables",
                self.pattern_cap, self.pattern_cap, self.pattern_cap
            );
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Dp,
    Brute,
    Approx,
    IlpPattern,
    IlpHall,
}

#[derive(Args)]
struct ReduceArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    from: ReduceSource,
    /// Set size for d-set covers.
    #[arg(long)]
    d: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReduceSource {
    X3c,
    Xdc,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Uniform random scenarios with coverage fix-ups.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// An instance with a planted admissible partition.
    Planted {
        /// Comma-separated part sizes, e.g. 2,3,3.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the planted tileset here.
        #[arg(long)]
        tileset_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ExportArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    model: ModelKind,
    #[arg(long, value_enum, default_value_t = ExportFormat::Lp)]
    format: ExportFormat,
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Pattern,
    Hall,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Lp,
    Json,
}

/// Parses the process arguments, runs the command, prints the report, and
/// returns the exit code: 0 success/feasible, 2 infeasible or over budget,
/// 1 error (including usage errors — 2 is reserved for NO answers).
pub fn run() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run_command(cli.command),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            code
        }
    }
}

fn run_command(command: Command) -> i32 {
    let outcome = match command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify { instance, tileset } => cmd_verify(&instance, &tileset),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Gen(gen) => cmd_gen(gen),
        Command::ExportIlp(args) => cmd_export(args),
        Command::Bench { config, jobs } => cmd_bench(&config, jobs),
    };
    match outcome {
        Ok(Report { text, exit }) => {
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

struct Report {
    text: String,
    exit: i32,
}

impl Report {
    fn json(value: Value, exit: i32) -> Report {
        Report {
            text: serde_json::to_string_pretty(&value).expect("report serialization"),
            exit,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let (instance, report) = parse_instance(&read_file(path)?)?;
    if !report.is_clean() {
        for name in &report.removed_symbols {
            eprintln!("note: removed unused symbol {name:?}");
        }
        if report.deduplicated_scenarios > 0 {
            eprintln!(
                "note: removed {} duplicate scenario(s)",
                report.deduplicated_scenarios
            );
        }
    }
    Ok(instance)
}

fn tileset_names(ts: &Tileset, inst: &Instance) -> Value {
    json!(ts
        .occurrences()
        .map(|(t, _)| [inst.symbol_name(t.a()), inst.symbol_name(t.b())])
        .collect::<Vec<_>>())
}

fn partition_names(p: &Partition, inst: &Instance) -> Value {
    json!(p
        .parts()
        .iter()
        .map(|part| part.iter().map(|&s| inst.symbol_name(s)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn cmd_solve(args: SolveArgs) -> Result<Report, CliError> {
    args.caps.warn_if_raised();
    let mut instance = load_instance(&args.instance)?;
    if args.budget.is_some() {
        instance = instance.with_budget(args.budget);
    }
    let start = Instant::now();

    match args.algorithm {
        Algorithm::Dp | Algorithm::Brute | Algorithm::Approx => {
            let (name, tileset, partition) = match args.algorithm {
                Algorithm::Dp => {
                    let s = solve_dp_with_cap(&instance, args.caps.dp_cap)?;
                    ("dp", s.tileset, Some(s.partition))
                }
                Algorithm::Brute => {
                    let s = solve_bruteforce(&instance)?;
                    let ts = partition_to_tileset(&s.partition)?;
                    ("brute", ts, Some(s.partition))
                }
                Algorithm::Approx => {
                    let ts = approximate(&instance);
                    let p = tileset_to_partition(&ts, instance.symbol_count())?;
                    ("approx", ts, Some(p))
                }
                _ => unreachable!(),
            };
            let certificates = match is_feasible(&tileset, &instance) {
                Feasibility::Feasible(cert) => cert
                    .scenarios
                    .iter()
                    .enumerate()
                    .map(|(i, fragment)| fragment.to_json(i, &instance))
                    .collect::<Vec<_>>(),
                Feasibility::Infeasible { .. } => {
                    return Err(CliError::Unverified(format!(
                        "{name} emitted an infeasible tileset"
                    )))
                }
            };
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let over_budget = instance
                .budget()
                .is_some_and(|b| tileset.size() > b);
            let report = json!({
                "algorithm": name,
                "symbols": instance.symbol_count(),
                "scenarios": instance.scenarios().len(),
                "opt": tileset.size(),
                "tiles": tileset_names(&tileset, &instance),
                "partition": partition.map(|p| partition_names(&p, &instance)),
                "certificates": certificates,
                "budget": instance.budget(),
                "feasible_at_budget": instance.budget().map(|b| tileset.size() <= b),
                "verified": true,
                "wall_ms": wall_ms,
            });
            Ok(Report::json(report, if over_budget { 2 } else { 0 }))
        }
        Algorithm::IlpPattern | Algorithm::IlpHall => {
            let (name, model): (&str, IlpModel) = match args.algorithm {
                Algorithm::IlpPattern => (
                    "ilp-pattern",
                    build_pattern_ilp_with_cap(&instance, args.caps.pattern_cap)?.model,
                ),
                Algorithm::IlpHall => (
                    "ilp-hall",
                    build_hall_ilp_with_cap(&instance, args.caps.hall_cap)?.model,
                ),
                _ => unreachable!(),
            };
            let solution = solve_small(&model, args.caps.var_cap)?;
            let verified = match &solution {
                Some(values) => {
                    if !check_assignment(&model, values)? {
                        return Err(CliError::Unverified(format!(
                            "{name} produced an assignment violating its own model"
                        )));
                    }
                    Some(true)
                }
                None => None,
            };
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let feasible = solution.is_some();
            let report = json!({
                "algorithm": name,
                "budget": instance.budget(),
                "variables": model.variables.len(),
                "constraints": model.constraints.len(),
                "feasible": feasible,
                "assignment": solution.map(|values| {
                    Value::Object(
                        values
                            .into_iter()
                            .map(|(k, v)| (k, Value::from(v)))
                            .collect(),
                    )
                }),
                "verified": verified,
                "wall_ms": wall_ms,
            });
            Ok(Report::json(report, if feasible { 0 } else { 2 }))
        }
    }
}

fn cmd_verify(instance_path: &Path, tileset_path: &Path) -> Result<Report, CliError> {
    let instance = load_instance(instance_path)?;
    let tileset = parse_tileset(&read_file(tileset_path)?, &instance)?;
    match is_feasible(&tileset, &instance) {
        Feasibility::Feasible(cert) => {
            let mut certificates: Vec<Value> = cert
                .scenarios
                .iter()
                .enumerate()
                .map(|(i, fragment)| fragment.to_json(i, &instance))
                .collect();
            if let Some(fragment) = &cert.generalized {
                let mut v = fragment.to_json(0, &instance);
                v["scenario"] = json!("generalized");
                certificates.push(v);
            }
            Ok(Report::json(
                json!({"feasible": true, "certificates": certificates}),
                0,
            ))
        }
        Feasibility::Infeasible { scenario } => {
            let failing: Value = if scenario == usize::MAX {
                json!("generalized")
            } else {
                json!(scenario)
            };
            Ok(Report::json(
                json!({"feasible": false, "failing_scenario": failing}),
                2,
            ))
        }
    }
}

fn cmd_reduce(args: ReduceArgs) -> Result<Report, CliError> {
    let text = read_file(&args.input)?;
    let reduction = match args.from {
        ReduceSource::X3c => x3c_to_mft(&parse_x3c(&text)?)?,
        ReduceSource::Xdc => {
            let d = args.d.unwrap_or(3);
            let (universe, sets) = parse_cover(&text)?;
            xdc_to_mft(&universe, &sets, d)?
        }
    };
    if let Some(note) = &reduction.note {
        eprintln!("note: {note}");
    }
    let doc = serialize_instance(&reduction.instance);
    match args.output {
        Some(path) => {
            write_file(&path, &doc)?;
            Ok(Report::json(
                json!({
                    "written": path,
                    "symbols": reduction.instance.symbol_count(),
                    "scenarios": reduction.instance.scenarios().len(),
                    "budget": reduction.instance.budget(),
                    "trivially_no": reduction.trivially_no,
                }),
                0,
            ))
        }
        None => Ok(Report { text: doc, exit: 0 }),
    }
}

fn cmd_gen(gen: GenCommand) -> Result<Report, CliError> {
    match gen {
        GenCommand::Random {
            n,
            m,
            max_size,
            seed,
            output,
        } => {
            let instance = random_instance(n, m, max_size, seed)?;
            let doc = serialize_instance(&instance);
            match output {
                Some(path) => {
                    write_file(&path, &doc)?;
                    Ok(Report::json(
                        json!({"written": path, "symbols": instance.symbol_count(),
                               "scenarios": instance.scenarios().len(), "seed": seed}),
                        0,
                    ))
                }
                None => Ok(Report { text: doc, exit: 0 }),
            }
        }
        GenCommand::Planted {
            parts,
            seed,
            output,
            tileset_out,
        } => {
            let n: usize = parts.iter().sum();
            let (instance, tileset, opt_upper) = planted_partition(n, &parts, seed)?;
            let doc = serialize_instance(&instance);
            if let Some(path) = &tileset_out {
                write_file(path, &serialize_tileset(&tileset, &instance))?;
            }
            let summary = json!({
                "symbols": instance.symbol_count(),
                "scenarios": instance.scenarios().len(),
                "planted_tileset": tileset_names(&tileset, &instance),
                "opt_upper": opt_upper,
                "seed": seed,
            });
            match output {
                Some(path) => {
                    write_file(&path, &doc)?;
                    let mut s = summary;
                    s["written"] = json!(path);
                    Ok(Report::json(s, 0))
                }
                None => {
                    let mut s = summary;
                    s["instance"] = serde_json::from_str(&doc).expect("instance doc");
                    Ok(Report::json(s, 0))
                }
            }
        }
    }
}

fn cmd_export(args: ExportArgs) -> Result<Report, CliError> {
    args.caps.warn_if_raised();
    let mut instance = load_instance(&args.instance)?;
    if args.budget.is_some() {
        instance = instance.with_budget(args.budget);
    }
    let model = match args.model {
        ModelKind::Pattern => build_pattern_ilp_with_cap(&instance, args.caps.pattern_cap)?.model,
        ModelKind::Hall => build_hall_ilp_with_cap(&instance, args.caps.hall_cap)?.model,
    };
    let text = match args.format {
        ExportFormat::Lp => export_lp(&model),
        ExportFormat::Json => {
            serde_json::to_string_pretty(&export_json(&model)).expect("model dump")
        }
    };
    match args.output {
        Some(path) => {
            write_file(&path, &text)?;
            Ok(Report::json(
                json!({"written": path, "variables": model.variables.len(),
                       "constraints": model.constraints.len()}),
                0,
            ))
        }
        None => Ok(Report { text, exit: 0 }),
    }
}

#[derive(Debug, Clone, Deserialize)]
struct BenchRun {
    n: usize,
    m: usize,
    max_size: usize,
    seed: u64,
}

#[derive(Debug, Deserialize)]
struct BenchConfig {
    #[serde(default)]
    runs: Vec<BenchRun>,
    count: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    max_size: Option<usize>,
    seed: Option<u64>,
}

fn bench_runs(config: BenchConfig) -> Vec<BenchRun> {
    let mut runs = config.runs;
    if let (Some(count), Some(n), Some(m), Some(max_size)) =
        (config.count, config.n, config.m, config.max_size)
    {
        let seed0 = config.seed.unwrap_or(0);
        runs.extend((0..count).map(|i| BenchRun {
            n,
            m,
            max_size,
            seed: seed0 + i as u64,
        }));
    }
    runs
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn ratio_string(approx: u64, opt: u64) -> String {
    let g = gcd(approx, opt).max(1);
    format!("{}/{}", approx / g, opt / g)
}

/// `a/b > c/d` over non-negative integers, exact.
fn ratio_greater(a: u64, b: u64, c: u64, d: u64) -> bool {
    (a as u128) * (d as u128) > (c as u128) * (b as u128)
}

fn cmd_bench(config_path: &Path, jobs: Option<usize>) -> Result<Report, CliError> {
    let config: BenchConfig = serde_json::from_str(&read_file(config_path)?)
        .map_err(|e| crate::reductions::ReductionError::Syntax(e.to_string()))
        .map_err(CliError::Reduction)?;
    let runs = bench_runs(config);
    if runs.is_empty() {
        return Ok(Report::json(
            json!({"rows": [], "instances": 0, "max_ratio": null, "within_bound": true}),
            0,
        ));
    }

    let workers = jobs
        .or_else(|| std::thread::available_parallelism().ok().map(|p| p.get()))
        .unwrap_or(1)
        .max(1);

    let results: Vec<Result<(u64, u64), String>> = {
        let mut results: Vec<Option<Result<(u64, u64), String>>> = vec![None; runs.len()];
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots = std::sync::Mutex::new(&mut results);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if i >= runs.len() {
                        break;
                    }
                    let outcome = bench_one(&runs[i]);
                    slots.lock().unwrap()[i] = Some(outcome);
                });
            }
        });
        results.into_iter().map(|r| r.expect("all runs done")).collect()
    };

    let mut rows = Vec::with_capacity(runs.len());
    let mut max_ratio: Option<(u64, u64)> = None;
    let mut violations = 0u64;
    for (i, (run, outcome)) in runs.iter().zip(results).enumerate() {
        let (opt, approx) = match outcome {
            Ok(pair) => pair,
            Err(message) => {
                return Err(CliError::Unverified(format!("instance {i}: {message}")))
            }
        };
        // The guarantee is 3*approx <= 4*opt, in integers.
        if 3 * approx > 4 * opt {
            violations += 1;
        }
        if max_ratio.is_none_or(|(a, o)| ratio_greater(approx, opt, a, o)) {
            max_ratio = Some((approx, opt));
        }
        rows.push(json!({
            "index": i,
            "n": run.n,
            "seed": run.seed,
            "opt": opt,
            "approx": approx,
            "ratio": ratio_string(approx, opt),
        }));
    }

    let within_bound = violations == 0;
    let report = json!({
        "rows": rows,
        "instances": rows.len(),
        "max_ratio": max_ratio.map(|(a, o)| ratio_string(a, o)),
        "within_bound": within_bound,
    });
    Ok(Report::json(report, if within_bound { 0 } else { 1 }))
}

fn bench_one(run: &BenchRun) -> Result<(u64, u64), String> {
    let instance =
        random_instance(run.n, run.m, run.max_size, run.seed).map_err(|e| e.to_string())?;
    let dp = crate::exact::solve_dp(&instance).map_err(|e| e.to_string())?;
    let ts = approximate(&instance);
    if !is_feasible(&ts, &instance).is_feasible() {
        return Err("approximation emitted an infeasible tileset".to_string());
    }
    if !is_feasible(&dp.tileset, &instance).is_feasible() {
        return Err("dp emitted an infeasible tileset".to_string());
    }
    Ok((dp.opt_tiles, ts.size()))
}

