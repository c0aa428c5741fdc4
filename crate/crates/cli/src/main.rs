//! Command-line driver: generation of seeded test matrices,
//! verification campaigns with JSON reports, exact transforms, and
//! report merging.
//!
//! Exit codes: 0 on success, 1 when a verification suite finds a
//! failing identity, 2 on usage or input errors.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tpdilog_cli::campaign::{run_suite, RunConfig, Suite};
use tpdilog_cli::json::{
    coords_to_value, matrix_to_value, merge_report_values, payload_from_value, report_to_value,
    to_canonical_string, Payload,
};
use tpdilog_core::identities::{s3_value, S3Word};
use tpdilog_core::involutions::{bar, check_g, hat_g, jacobi_dprime, jacobi_prime};
use tpdilog_core::jacobi::{jacobi_to_matrix, matrix_to_jacobi};
use tpdilog_core::matrix::UpperUnitriangular;
use tpdilog_core::s3action::project_to_tilde;
use tpdilog_core::sample::{random_coords, rng_for_trial};
use tpdilog_core::tetra::{l_transform, r_transform};
use tpdilog_core::{BigFloat, JacobiCoords};

#[derive(Parser)]
#[command(
    name = "tpdilog",
    version,
    about = "Totally positive matrices and dilogarithm identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded random coordinates and the expanded matrix
    Gen(GenArgs),
    /// Run a verification suite and emit a JSON report
    Verify(VerifyArgs),
    /// Apply an exact transform to coordinates or a matrix
    Transform(TransformArgs),
    /// Merge verification reports produced with the same suite settings
    ReportMerge(MergeArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Matrix dimension
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Generator seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coordinates are p/q with p, q uniform in [1, coord-max]
    #[arg(long, default_value_t = 10)]
    coord_max: u64,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: chain | s3 | tetra | mrho | wedge | all
    #[arg(long, default_value = "chain")]
    suite: String,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Significand bits for dilogarithm evaluation (>= 53)
    #[arg(long, default_value_t = 128)]
    precision_bits: u32,
    /// Residual tolerance override, e.g. 1e-25 (default 2^-(bits/2))
    #[arg(long)]
    tol: Option<String>,
    #[arg(long, default_value_t = 10)]
    coord_max: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Corrupt one value per trial; the run must then exit 1
    #[arg(long, hide = true)]
    sabotage: bool,
}

#[derive(Args)]
struct TransformArgs {
    /// prime | dprime | bar | check-g | hat-g | l | r | s3 | project-tilde
    #[arg(long)]
    op: String,
    /// Input JSON path, or - for stdin
    #[arg(long = "in", value_name = "PATH")]
    input: String,
    /// Triple a,b,c for the l and r transforms
    #[arg(long)]
    triple: Option<String>,
    /// Involution word for s3: id, s1, s2, s1s2, s2s1, s1s2s1, s2s1s2
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MergeArgs {
    /// Report files to merge
    files: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Input/usage failure carrying the exit-2 contract.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn write_output(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(spec: &str) -> Result<Value, Failure> {
    let raw = if spec == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(spec).map_err(|e| Failure(format!("cannot read {spec}: {e}")))?
    };
    Ok(serde_json::from_str(&raw)?)
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    if args.n < 2 {
        return Err(Failure("--n must be at least 2".into()));
    }
    let coords = random_coords(args.n, args.coord_max, &mut rng_for_trial(args.seed, 0));
    let matrix = jacobi_to_matrix(&coords)?;
    let v = json!({
        "coords": coords_to_value(&coords),
        "matrix": matrix_to_value(matrix.matrix()),
        "n": args.n,
        "seed": args.seed,
    });
    write_output(&to_canonical_string(&v), args.out.as_ref())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let suite = Suite::parse(&args.suite)
        .ok_or_else(|| Failure(format!("unknown suite {:?}", args.suite)))?;
    let tolerance = match &args.tol {
        Some(s) => Some(BigFloat::from_decimal_str(s, 64).map_err(|e| Failure(e.to_string()))?),
        None => None,
    };
    let threads = std::env::var("TPDILOG_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1));
    let cfg = RunConfig {
        n: args.n,
        trials: args.trials,
        seed: args.seed,
        precision_bits: args.precision_bits,
        tolerance,
        coord_max: args.coord_max,
        sabotage: args.sabotage,
        threads,
    };
    let report = run_suite(suite, &cfg).map_err(Failure)?;
    let value = report_to_value(
        &report,
        suite.label(),
        args.seed,
        args.precision_bits,
        &cfg.tolerance(),
    );
    write_output(&to_canonical_string(&value), args.out.as_ref())?;
    Ok(report.all_pass())
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Failure(format!("--triple must be a,b,c, got {s:?}")));
    }
    let mut v = [0usize; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .parse()
            .map_err(|_| Failure(format!("bad triple component {p:?}")))?;
    }
    Ok((v[0], v[1], v[2]))
}

fn coords_of(payload: &Payload) -> Result<JacobiCoords, Failure> {
    match payload {
        Payload::Coords(c) => Ok(c.clone()),
        Payload::Matrix(m) => {
            let m = UpperUnitriangular::new(m.clone())?;
            Ok(matrix_to_jacobi(&m)?)
        }
    }
}

fn cmd_transform(args: &TransformArgs) -> Result<(), Failure> {
    let payload = payload_from_value(&read_input(&args.input)?)?;
    let matrix_in = matches!(payload, Payload::Matrix(_));

    // matrix-level involutions keep their own shape
    if args.op == "check-g" || args.op == "hat-g" {
        let m = match &payload {
            Payload::Matrix(m) => m.clone(),
            Payload::Coords(c) => jacobi_to_matrix(c)?.into_matrix(),
        };
        let out = if args.op == "check-g" { check_g(&m)? } else { hat_g(&m)? };
        return write_output(&to_canonical_string(&matrix_to_value(&out)), args.out.as_ref());
    }

    let coords = coords_of(&payload)?;
    let result = match args.op.as_str() {
        "prime" => jacobi_prime(&coords),
        "dprime" => jacobi_dprime(&coords),
        "bar" => bar(&coords),
        "project-tilde" => project_to_tilde(&coords),
        "l" | "r" => {
            let spec = args
                .triple
                .as_ref()
                .ok_or_else(|| Failure("the l and r transforms need --triple a,b,c".into()))?;
            let (a, b, c) = parse_triple(spec)?;
            if args.op == "l" {
                l_transform(&coords, a, b, c)?
            } else {
                r_transform(&coords, a, b, c)?
            }
        }
        "s3" => {
            let word = args
                .word
                .as_ref()
                .ok_or_else(|| Failure("the s3 transform needs --word".into()))?;
            let word = S3Word::parse(word)?;
            let m = jacobi_to_matrix(&coords)?;
            matrix_to_jacobi(&s3_value(&m, &word)?)?
        }
        other => return Err(Failure(format!("unknown transform {other:?}"))),
    };
    let value = if matrix_in {
        matrix_to_value(jacobi_to_matrix(&result)?.matrix())
    } else {
        coords_to_value(&result)
    };
    write_output(&to_canonical_string(&value), args.out.as_ref())
}

fn cmd_merge(args: &MergeArgs) -> Result<(), Failure> {
    if args.files.is_empty() {
        return Err(Failure("report-merge needs at least one file".into()));
    }
    let mut reports = Vec::new();
    for f in &args.files {
        let raw = std::fs::read_to_string(f)
            .map_err(|e| Failure(format!("cannot read {}: {e}", f.display())))?;
        reports.push(serde_json::from_str(&raw)?);
    }
    let merged = merge_report_values(&reports)?;
    write_output(&to_canonical_string(&merged), args.out.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(a).map(|()| true),
        Command::Verify(a) => cmd_verify(a),
        Command::Transform(a) => cmd_transform(a).map(|()| true),
        Command::ReportMerge(a) => cmd_merge(a).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
