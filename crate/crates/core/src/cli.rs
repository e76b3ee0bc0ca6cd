//! Command-line front end.
//!
//! Exit status: 0 on success, 1 for unreadable or unparsable input, 2 when
//! execution fails (including a deterministic model/oracle mismatch in
//! `--backend both` mode). Demos and the self test exit 1 when a check fails.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{
    execute, execute_traced, parse_circuit, Circuit, MeasurementRecord, OracleBackend,
};
use crate::coins::{oracle_stream, shot_stream};
use crate::context::{MemoryReport, OnticState};
use crate::demo;
use crate::differential::{check_oracle_width, paired_run};
use crate::error::Error;
use crate::oracle::QuantumState;
use crate::selftest::{run_invariant_suite, suite_passed};
use crate::timing::{default_reps, time_operations};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_EXECUTION: i32 = 2;

/// Largest width `stats` will time; larger states are only accounted for.
const MAX_TIMED_N: usize = 4096;
const FLAG_SE: f64 = 5.0;

#[derive(Debug, Parser)]
#[command(
    name = "ctxstab",
    version,
    about = "Contextual ontic simulator for stabilizer circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a circuit file (`-` for standard input) for a number of shots.
    Run(RunArgs),
    /// Step through one of the worked contextuality examples.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[arg(long, env = "CTXSTAB_SEED")]
        seed: Option<u64>,
    },
    /// Storage accounting and measured operation times for `n` qubits.
    Stats { n: usize },
    /// Run the randomized invariant suite.
    Selftest {
        #[arg(long, env = "CTXSTAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    /// Defaults to a random seed, which is printed.
    #[arg(long, env = "CTXSTAB_SEED")]
    pub seed: Option<u64>,
    /// Print the basis after every gate and measurement step (model only).
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_enum, default_value_t = BackendKind::Model)]
    pub backend: BackendKind,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Model,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    PmSquare,
    Ghz,
    Shallow,
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args, out, err),
        Command::Demo { name, seed } => cmd_demo(name, seed.unwrap_or_else(rand::random), out),
        Command::Stats { n } => cmd_stats(n, out, err),
        Command::Selftest { seed, steps } => cmd_selftest(seed, steps, out),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_EXECUTION
        }
    }
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    backend: BackendKind,
    #[serde(flatten)]
    record: &'a MeasurementRecord,
}

#[derive(Serialize)]
struct JsonTrace<'a> {
    shot: u64,
    step: &'a str,
    basis: &'a str,
}

#[derive(Debug, Clone, Serialize)]
struct Comparison {
    label: String,
    model: f64,
    oracle: f64,
    delta: f64,
    se: f64,
    flagged: bool,
}

#[derive(Serialize)]
struct JsonComparison<'a> {
    compare: &'a Comparison,
}

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: {}: {e}", args.input.display())?;
            return Ok(EXIT_INPUT);
        }
    };
    let circuit = match parse_circuit(&text) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "error: {}:{e}", args.input.display())?;
            return Ok(EXIT_INPUT);
        }
    };
    let seed = args.seed.unwrap_or_else(rand::random);
    match args.format {
        Format::Text => writeln!(
            out,
            "# seed={seed} shots={} backend={}",
            args.shots,
            json_name(args.backend)
        )?,
        Format::Jsonl => writeln!(err, "seed={seed}")?,
    }
    match execute_run(&circuit, args, seed, out) {
        Ok(code) => Ok(code),
        Err(RunError::Io(e)) => Err(e),
        Err(RunError::Exec(e)) => {
            writeln!(err, "error: {e}")?;
            Ok(EXIT_EXECUTION)
        }
    }
}

enum RunError {
    Io(io::Error),
    Exec(Error),
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Exec(e)
    }
}

fn model_shot(circuit: &Circuit, seed: u64, shot: u64) -> crate::Result<Vec<MeasurementRecord>> {
    let mut state = OnticState::prepare_canonical(circuit.n(), shot_stream(seed, shot))?;
    execute(circuit, &mut state, shot)
}

fn oracle_shot(circuit: &Circuit, seed: u64, shot: u64) -> crate::Result<Vec<MeasurementRecord>> {
    let mut backend = OracleBackend {
        state: QuantumState::zero(circuit.n())?,
        rng: oracle_stream(seed, shot),
    };
    execute(circuit, &mut backend, shot)
}

fn all_shots(
    shots: u64,
    run: impl Fn(u64) -> crate::Result<Vec<MeasurementRecord>> + Sync + Send,
) -> crate::Result<Vec<Vec<MeasurementRecord>>> {
    (0..shots).into_par_iter().map(run).collect()
}

fn execute_run(
    circuit: &Circuit,
    args: &RunArgs,
    seed: u64,
    out: &mut dyn Write,
) -> Result<i32, RunError> {
    if args.backend != BackendKind::Model {
        check_oracle_width(circuit.n())?;
    }
    if args.format == Format::Text {
        writeln!(out, "# shot backend label observable outcome")?;
    }

    let mut results: Vec<(BackendKind, Vec<Vec<MeasurementRecord>>)> = Vec::new();
    if args.backend != BackendKind::Oracle {
        let model = if args.trace {
            traced_shots(circuit, args, seed, out)?
        } else {
            all_shots(args.shots, |shot| model_shot(circuit, seed, shot))?
        };
        results.push((BackendKind::Model, model));
    }
    if args.backend != BackendKind::Model {
        let oracle = all_shots(args.shots, |shot| oracle_shot(circuit, seed, shot))?;
        results.push((BackendKind::Oracle, oracle));
    }

    for (backend, shots) in &results {
        for record in shots.iter().flatten() {
            write_record(out, args.format, *backend, record)?;
        }
    }
    if args.format == Format::Text && args.shots > 1 && circuit.measurement_count() > 0 {
        for (backend, shots) in &results {
            write_histogram(out, *backend, shots)?;
        }
    }

    if args.backend != BackendKind::Both {
        return Ok(EXIT_OK);
    }
    for c in compare(circuit, &results[0].1, &results[1].1) {
        match args.format {
            Format::Text => writeln!(
                out,
                "# compare {} model={:.4} oracle={:.4} delta={:.4} se={:.4} {}",
                c.label,
                c.model,
                c.oracle,
                c.delta,
                c.se,
                if c.flagged { "FLAG" } else { "ok" }
            )?,
            Format::Jsonl => writeln!(out, "{}", json(&JsonComparison { compare: &c }))?,
        }
    }
    let mismatches = deterministic_mismatches(circuit, seed, args.shots)?;
    if mismatches > 0 {
        if args.format == Format::Text {
            writeln!(out, "# deterministic mismatches={mismatches}")?;
        }
        return Ok(EXIT_EXECUTION);
    }
    Ok(EXIT_OK)
}

fn traced_shots(
    circuit: &Circuit,
    args: &RunArgs,
    seed: u64,
    out: &mut dyn Write,
) -> Result<Vec<Vec<MeasurementRecord>>, RunError> {
    let mut all = Vec::new();
    for shot in 0..args.shots {
        let mut state = OnticState::prepare_canonical(circuit.n(), shot_stream(seed, shot))?;
        let mut lines = vec![("start".to_string(), state.snapshot())];
        let records = execute_traced(circuit, &mut state, shot, &mut |tag, basis| {
            lines.push((tag.to_string(), basis));
        })?;
        for (step, basis) in &lines {
            match args.format {
                Format::Text => writeln!(out, "# trace {shot} {step:<16} {basis}")?,
                Format::Jsonl => writeln!(out, "{}", json(&JsonTrace { shot, step, basis }))?,
            }
        }
        all.push(records);
    }
    Ok(all)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain records serialize")
}

fn write_record(
    out: &mut dyn Write,
    format: Format,
    backend: BackendKind,
    record: &MeasurementRecord,
) -> io::Result<()> {
    match format {
        Format::Text => writeln!(
            out,
            "{} {} {} {} {}",
            record.shot,
            json_name(backend),
            record.label,
            record.observable,
            record.outcome
        ),
        Format::Jsonl => writeln!(out, "{}", json(&JsonRecord { backend, record })),
    }
}

fn json_name(backend: BackendKind) -> &'static str {
    match backend {
        BackendKind::Model => "model",
        BackendKind::Oracle => "oracle",
        BackendKind::Both => "both",
    }
}

fn write_histogram(
    out: &mut dyn Write,
    backend: BackendKind,
    shots: &[Vec<MeasurementRecord>],
) -> io::Result<()> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for shot in shots {
        let key: String = shot.iter().map(|r| char::from(b'0' + r.outcome)).collect();
        *counts.entry(key).or_default() += 1;
    }
    writeln!(out, "# histogram {}", json_name(backend))?;
    for (key, count) in counts {
        writeln!(
            out,
            "# {key} {count} {:.4}",
            count as f64 / shots.len() as f64
        )?;
    }
    Ok(())
}

fn ones_frequency(shots: &[Vec<MeasurementRecord>], index: usize) -> f64 {
    let ones: u64 = shots.iter().map(|s| u64::from(s[index].outcome)).sum();
    ones as f64 / shots.len() as f64
}

/// Per-measurement frequency of outcome 1, model against oracle, with the
/// pooled two-sample standard error.
fn compare(
    circuit: &Circuit,
    model: &[Vec<MeasurementRecord>],
    oracle: &[Vec<MeasurementRecord>],
) -> Vec<Comparison> {
    let shots = model.len() as f64;
    circuit
        .measurement_labels()
        .into_iter()
        .enumerate()
        .map(|(i, label)| {
            let (pm, po) = (ones_frequency(model, i), ones_frequency(oracle, i));
            let pooled = (pm + po) / 2.0;
            let se = (pooled * (1.0 - pooled) * 2.0 / shots).sqrt();
            let delta = pm - po;
            let flagged = if se > 0.0 {
                delta.abs() > FLAG_SE * se
            } else {
                delta != 0.0
            };
            Comparison {
                label,
                model: pm,
                oracle: po,
                delta,
                se,
                flagged,
            }
        })
        .collect()
}

/// Shots where QM predicts an outcome with certainty along the model's own
/// path and the model disagrees.
fn deterministic_mismatches(circuit: &Circuit, seed: u64, shots: u64) -> crate::Result<u64> {
    (0..shots)
        .into_par_iter()
        .map(|shot| {
            let run = paired_run(circuit, shot_stream(seed, shot))?;
            Ok(run
                .iter()
                .filter(|m| m.predicted().is_some_and(|p| p != m.outcome))
                .count() as u64)
        })
        .sum()
}

fn cmd_demo(name: DemoName, seed: u64, out: &mut dyn Write) -> io::Result<i32> {
    let report = match name {
        DemoName::PmSquare => demo::pm_square(seed),
        DemoName::Ghz => demo::ghz(seed),
        DemoName::Shallow => demo::shallow(seed),
    }
    .expect("built-in demos are valid");
    out.write_all(report.text.as_bytes())?;
    Ok(if report.passed { EXIT_OK } else { EXIT_INPUT })
}

fn cmd_stats(n: usize, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    if n == 0 {
        writeln!(err, "error: {}", Error::ZeroQubits)?;
        return Ok(EXIT_INPUT);
    }
    let report = MemoryReport::for_qubits(n);
    writeln!(out, "n {n}")?;
    writeln!(out, "context_bits {}", report.context_bits)?;
    writeln!(out, "stored_bits {}", report.stored_bits)?;
    writeln!(out, "overhead_bits {}", report.overhead_bits)?;
    let widths = [n, 2 * n];
    if widths[1] > MAX_TIMED_N {
        writeln!(out, "# timing skipped above n={MAX_TIMED_N}")?;
        return Ok(EXIT_OK);
    }
    let mut measure_ns = Vec::new();
    for w in widths {
        let t = time_operations(w, default_reps(w), 0).expect("n > 0");
        measure_ns.push(t.per_measurement.as_nanos() as f64);
        writeln!(
            out,
            "timing n={w} measure_ns={} gate_ns={}",
            t.per_measurement.as_nanos(),
            t.per_gate.as_nanos()
        )?;
    }
    if measure_ns[0] > 0.0 {
        writeln!(out, "measure_ratio {:.2}", measure_ns[1] / measure_ns[0])?;
    }
    Ok(EXIT_OK)
}

fn cmd_selftest(seed: u64, steps: usize, out: &mut dyn Write) -> io::Result<i32> {
    let reports = run_invariant_suite(seed, steps);
    for r in &reports {
        writeln!(out, "{r}")?;
    }
    let passed = suite_passed(&reports);
    writeln!(out, "result {}", if passed { "PASS" } else { "FAIL" })?;
    Ok(if passed { EXIT_OK } else { EXIT_INPUT })
}
