//! Subcommand implementations. Each writes its report to `out` and returns
//! a [`CliError`] carrying the exit code on failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use incoherence_core::guarantees::{coherence_threshold, incoherence_condition};
use incoherence_core::omp::{omp_recover, IterationRecord};
use incoherence_core::{
    coherence, construct_counterexample_with, demonstrate_failure, evaluate_guarantees,
    normalize_columns, welch_bound, CounterexampleShape, RicStatus, SensingMatrix, SparseSignal,
};

use crate::error::CliError;
use crate::experiment::{run_phase, to_csv, ExperimentConfig};
use crate::format::{read_matrix, read_vector, write_matrix};

#[derive(Debug, Parser)]
#[command(name = "incoherence", version, about = "Orthogonal matching pursuit and coherence audits")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalOpts {
    /// Override the experiment seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Rescale matrix columns to unit norm instead of rejecting them.
    #[arg(long, global = true)]
    pub normalize: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coherence, Welch bound and incoherence verdicts for a matrix file.
    Coherence { matrix: PathBuf },
    /// Run OMP on y = Phi x for a signal file.
    Run {
        matrix: PathBuf,
        signal: PathBuf,
        k: usize,
        /// Dump every iteration as a JSON line.
        #[arg(long)]
        trace: bool,
    },
    /// Brute-force restricted isometry constants and the related conditions.
    Ric { matrix: PathBuf, k: usize },
    /// Build the boundary matrix with mu = 1/(2K-1) and write it to a directory.
    Counterexample {
        k: usize,
        out_dir: PathBuf,
        /// Keep the zero row (2K x 2K instead of (2K-1) x 2K).
        #[arg(long)]
        square: bool,
    },
    /// Monte-Carlo recovery experiment described by a JSON config.
    Phase { config: PathBuf },
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Coherence { matrix } => cmd_coherence(matrix, g, out),
        Command::Run { matrix, signal, k, trace } => cmd_run(matrix, signal, *k, *trace, g, out),
        Command::Ric { matrix, k } => cmd_ric(matrix, *k, g, out),
        Command::Counterexample { k, out_dir, square } => cmd_counterexample(*k, out_dir, *square, g, out),
        Command::Phase { config } => cmd_phase(config, g, out),
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::io("writing output", e))
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string(value).expect("report types serialize");
    emit(out, text)
}

fn load_sensing(path: &Path, opts: &GlobalOpts) -> Result<SensingMatrix, CliError> {
    let raw = read_matrix(path)?;
    if opts.normalize {
        Ok(normalize_columns(&raw)?)
    } else {
        Ok(SensingMatrix::new(raw)?)
    }
}

#[derive(Serialize)]
struct Verdict {
    k: usize,
    threshold: f64,
    holds: bool,
}

#[derive(Serialize)]
struct CoherenceOutput {
    m: usize,
    n: usize,
    mu: f64,
    argpair: (usize, usize),
    welch_bound: Option<f64>,
    verdicts: Vec<Verdict>,
}

/// Largest `K` worth reporting: the first one whose threshold falls to `mu`.
fn verdict_range(mu: f64, n: usize) -> usize {
    if mu <= 0.0 {
        return n;
    }
    let k = ((1.0 / mu + 1.0) / 2.0).ceil();
    (k as usize).clamp(1, n)
}

pub fn cmd_coherence(path: &Path, opts: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    let phi = load_sensing(path, opts)?;
    let report = coherence(&phi)?;
    let welch = welch_bound(phi.m(), phi.n()).ok();
    let verdicts: Vec<Verdict> = (1..=verdict_range(report.mu, phi.n()))
        .map(|k| Verdict { k, threshold: coherence_threshold(k), holds: incoherence_condition(report.mu, k) })
        .collect();
    let output = CoherenceOutput {
        m: phi.m(),
        n: phi.n(),
        mu: report.mu,
        argpair: report.argpair,
        welch_bound: welch,
        verdicts,
    };
    if opts.json {
        return emit_json(out, &output);
    }
    emit(out, format_args!("shape {} x {}", output.m, output.n))?;
    emit(out, format_args!("mu {}", output.mu))?;
    emit(out, format_args!("argpair {} {}", output.argpair.0, output.argpair.1))?;
    match output.welch_bound {
        Some(w) => emit(out, format_args!("welch_bound {w}"))?,
        None => emit(out, "welch_bound n/a (n <= m)")?,
    }
    for v in &output.verdicts {
        emit(out, format_args!("K {} threshold {} holds {}", v.k, v.threshold, v.holds))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct RunOutput {
    k: usize,
    support: Vec<usize>,
    estimate: Vec<(usize, f64)>,
    residual_norm: f64,
    support_matches_input: bool,
}

pub fn cmd_run(
    matrix: &Path,
    signal: &Path,
    k: usize,
    trace: bool,
    opts: &GlobalOpts,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let phi = load_sensing(matrix, opts)?;
    let x = read_vector(signal)?;
    if x.len() != phi.n() {
        return Err(CliError::Input(format!(
            "signal has length {}, matrix has {} columns",
            x.len(),
            phi.n()
        )));
    }
    let y = phi.phi().mul_vec(&x)?;
    let result = omp_recover(&phi, &y, k)?;
    if trace {
        for record in &result.trace {
            emit_json(out, record as &IterationRecord)?;
        }
    }
    let input_support: Vec<usize> = match SparseSignal::from_dense(x.as_slice()) {
        Ok(s) => s.support().to_vec(),
        Err(_) => Vec::new(),
    };
    let output = RunOutput {
        k,
        support: result.support.clone(),
        estimate: result.support.iter().map(|&j| (j, result.estimate[j])).collect(),
        residual_norm: result.residual_norm,
        support_matches_input: result.support == input_support,
    };
    if opts.json {
        return emit_json(out, &output);
    }
    let support: Vec<String> = output.support.iter().map(|j| j.to_string()).collect();
    emit(out, format_args!("support {}", support.join(" ")))?;
    for (j, v) in &output.estimate {
        emit(out, format_args!("x[{j}] = {v}"))?;
    }
    emit(out, format_args!("residual_norm {}", output.residual_norm))?;
    emit(out, format_args!("support_matches_input {}", output.support_matches_input))
}

pub fn cmd_ric(path: &Path, k: usize, opts: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    let phi = load_sensing(path, opts)?;
    if k == 0 || k > phi.n() {
        return Err(CliError::Input(format!("K must lie in 1..={}", phi.n())));
    }
    let report = evaluate_guarantees(&phi, k, true)?;
    if report.ric != RicStatus::Computed {
        return Err(CliError::Input(format!(
            "C({}, {k}) supports exceed the brute-force cap; use a smaller instance",
            phi.n()
        )));
    }
    if opts.json {
        return emit_json(out, &report);
    }
    let opt = |v: Option<f64>| v.map_or("unavailable".to_string(), |d| d.to_string());
    let optb = |v: Option<bool>| v.map_or("unavailable".to_string(), |d| d.to_string());
    emit(out, format_args!("K {k}"))?;
    emit(out, format_args!("mu {}", report.mu))?;
    emit(out, format_args!("delta_K {}", opt(report.delta_bruteforce)))?;
    emit(out, format_args!("coherence_bound (K-1)mu {}", (k as f64 - 1.0) * report.mu))?;
    emit(out, format_args!("delta_K+1 {}", opt(report.delta_k_plus_1)))?;
    emit(out, format_args!("incoherence_condition {}", report.theorem1_holds))?;
    emit(out, format_args!("rip_1/(3sqrtK) {}", optb(report.rip_davenport_holds)))?;
    emit(out, format_args!("rip_1/(sqrtK+1) {}", optb(report.rip_wang_shim_holds)))
}

/// JSON sidecar written next to the boundary matrix.
#[derive(Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct CounterexampleSidecar {
    #[serde(rename = "K")]
    pub k: usize,
    pub mu: f64,
    pub null_residual: f64,
    pub ambiguity_gap: f64,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
}

pub const COUNTEREXAMPLE_MATRIX: &str = "phi.txt";
pub const COUNTEREXAMPLE_SIDECAR: &str = "counterexample.json";

pub fn cmd_counterexample(
    k: usize,
    out_dir: &Path,
    square: bool,
    opts: &GlobalOpts,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if k == 0 || k > incoherence_core::tol::COUNTEREXAMPLE_MAX_K {
        return Err(CliError::Input(format!(
            "K must lie in 1..={}",
            incoherence_core::tol::COUNTEREXAMPLE_MAX_K
        )));
    }
    let shape = if square { CounterexampleShape::Square } else { CounterexampleShape::Trimmed };
    let bundle = construct_counterexample_with(k, shape).map_err(|e| CliError::Construction(e.to_string()))?;

    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::io(format!("creating {}", out_dir.display()), e))?;
    write_matrix(&out_dir.join(COUNTEREXAMPLE_MATRIX), bundle.phi.phi())?;
    let sidecar = CounterexampleSidecar {
        k,
        mu: bundle.mu,
        null_residual: bundle.null_residual,
        ambiguity_gap: bundle.ambiguity_gap,
        x1: bundle.x1.to_dense().into_vec(),
        x2: bundle.x2.to_dense().into_vec(),
    };
    let sidecar_path = out_dir.join(COUNTEREXAMPLE_SIDECAR);
    let text = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    std::fs::write(&sidecar_path, text + "\n")
        .map_err(|e| CliError::io(format!("writing {}", sidecar_path.display()), e))?;

    let failure = demonstrate_failure(&bundle);
    if opts.json {
        #[derive(Serialize)]
        struct Summary<'a> {
            #[serde(rename = "K")]
            k: usize,
            mu: f64,
            rank: usize,
            null_residual: f64,
            ambiguity_gap: f64,
            omp_from_x1: &'a str,
            omp_from_x2: &'a str,
        }
        return emit_json(
            out,
            &Summary {
                k,
                mu: bundle.mu,
                rank: bundle.rank,
                null_residual: bundle.null_residual,
                ambiguity_gap: bundle.ambiguity_gap,
                omp_from_x1: failure.from_x1.label(),
                omp_from_x2: failure.from_x2.label(),
            },
        );
    }
    emit(out, format_args!("K {k}"))?;
    emit(out, format_args!("mu {}", bundle.mu))?;
    emit(out, format_args!("rank {}", bundle.rank))?;
    emit(out, format_args!("null_residual {:e}", bundle.null_residual))?;
    emit(out, format_args!("ambiguity_gap {:e}", bundle.ambiguity_gap))?;
    emit(out, format_args!("omp_from_x1 {}", failure.from_x1.label()))?;
    emit(out, format_args!("omp_from_x2 {}", failure.from_x2.label()))?;
    emit(out, format_args!("wrote {}", out_dir.display()))
}

pub fn cmd_phase(path: &Path, opts: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
    let mut config: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: invalid config: {e}", path.display())))?;
    if let Some(seed) = opts.seed {
        config.seed = seed;
    }
    let cells = run_phase(&config)?;
    let csv = to_csv(&cells);
    std::fs::write(&config.output_path, &csv)
        .map_err(|e| CliError::io(format!("writing {}", config.output_path.display()), e))?;
    if opts.json {
        return emit_json(out, &cells);
    }
    write!(out, "{csv}").map_err(|e| CliError::io("writing output", e))
}
