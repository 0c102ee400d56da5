//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for invalid arguments, configuration or model
//! errors, 3 for numerical failures (no root, domain or range errors).

pub mod config;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::asymptotics::approx_passage_prob;
use crate::error::{Error, Result};
use crate::model::{LevyModel, ModelKind};
use crate::oracles::bm_exact_passage;
use crate::simulation::{auto_tilt, clt_diagnostic, mc_tilted, SimConfig};

pub use config::{parse_config, RunDefaults};
pub use table::{parse_run_csv, render, CltRow, Format, RunRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "levy-passage", version, about = "First-passage probabilities of Lévy processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regime, exponents and asymptotic approximation.
    Analyze(RunArgs),
    /// Monte Carlo estimate.
    Simulate(RunArgs),
    /// Asymptotic approximation, Monte Carlo and, for Brownian models, the exact value.
    Compare(RunArgs),
    /// Normalised first-passage time moments under the tilted law.
    Clt(RunArgs),
    /// Asymptotic and exact values along a geometric grid of horizons at fixed slope.
    Sweep(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Model configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Barrier level.
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    /// Horizon; for `sweep` a grid `T1:T2:N`.
    #[arg(long)]
    t: Option<String>,
    /// Slope x/t.
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
    #[arg(long)]
    paths: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Measure-change parameter, or `auto`.
    #[arg(long, default_value = "auto")]
    tilt: String,
    /// Maximal Gaussian sub-step.
    #[arg(long)]
    step: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Context {
    model: LevyModel,
    defaults: RunDefaults,
    sim: SimConfig,
}

fn load(args: &RunArgs) -> Result<Context> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| {
        Error::Validation(format!("cannot read {}: {e}", args.config.display()))
    })?;
    let (model, defaults) = parse_config(&text)?;
    let tilt = match args.tilt.as_str() {
        "auto" => None,
        raw => Some(raw.parse::<f64>().map_err(|_| {
            Error::Validation(format!("--tilt expects a number or auto, got {raw:?}"))
        })?),
    };
    let sim = SimConfig {
        n_paths: args.paths.unwrap_or(defaults.paths),
        master_seed: args.seed.unwrap_or(defaults.seed),
        time_step: args.step.unwrap_or(defaults.step),
        tilt,
        barrier_correction: defaults.barrier_correction,
    };
    sim.validate()?;
    Ok(Context { model, defaults, sim })
}

fn parse_real(raw: &str, flag: &str) -> Result<f64> {
    raw.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Validation(format!("{flag} expects a finite number, got {raw:?}")))
}

/// Resolves `(x, t)` from any two of `--x`, `--t`, `--v`.
fn point(args: &RunArgs) -> Result<(f64, f64)> {
    let t = args.t.as_deref().map(|raw| parse_real(raw, "--t")).transpose()?;
    match (args.x, t, args.v) {
        (Some(x), Some(t), None) => Ok((x, t)),
        (None, Some(t), Some(v)) => Ok((v * t, t)),
        (Some(x), None, Some(v)) => Ok((x, x / v)),
        _ => Err(Error::Validation("give exactly two of --x, --t, --v".into())),
    }
}

/// Parses `T1:T2:N` into `N` geometrically spaced horizons from `T1` to `T2`.
fn geometric_grid(raw: &str) -> Result<Vec<f64>> {
    let bad = || Error::Validation(format!("--t for sweep expects T1:T2:N, got {raw:?}"));
    let parts: Vec<&str> = raw.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    let a = parse_real(a, "--t")?;
    let b = parse_real(b, "--t")?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if !(a > 0.0 && b >= a && n >= 1) || (n == 1 && b != a) {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let ratio = (b / a).ln() / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { b } else { a * (ratio * i as f64).exp() })
        .collect())
}

fn oracle(model: &LevyModel, x: f64, t: f64) -> Result<Option<f64>> {
    if model.kind == ModelKind::Brownian && x >= 0.0 {
        Ok(Some(bm_exact_passage(model.drift, model.sigma, x, t)?.value()))
    } else {
        Ok(None)
    }
}

fn asymptotic_row(ctx: &Context, x: f64, t: f64) -> Result<RunRow> {
    let est = approx_passage_prob(&ctx.model, x, t)?;
    Ok(RunRow {
        model_id: ctx.defaults.model_id.clone(),
        x,
        t,
        v: x / t,
        regime: est.regime.as_str().to_string(),
        gamma: est.lundberg.gamma,
        gamma_v: est.report.map(|r| r.gamma_v),
        psi_star: est.report.map(|r| r.psi_star_v),
        log_asymptotic: est.log_prob,
        log_mc: None,
        mc_se_rel: None,
        log_oracle: None,
        n_paths: None,
        seed: None,
    })
}

fn with_mc(ctx: &Context, mut row: RunRow) -> Result<RunRow> {
    let tilt = match ctx.sim.tilt {
        Some(c) => c,
        None => auto_tilt(&ctx.model, row.x, row.t)?,
    };
    let result = mc_tilted(&ctx.model, row.x, row.t, &SimConfig { tilt: Some(tilt), ..ctx.sim })?;
    row.log_mc = Some(result.log_estimate);
    row.mc_se_rel = Some(result.std_err_rel);
    row.n_paths = Some(result.n_paths);
    row.seed = Some(result.master_seed);
    Ok(row)
}

fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Analyze(args) => {
            let ctx = load(args)?;
            let (x, t) = point(args)?;
            emit(args, &[asymptotic_row(&ctx, x, t)?])
        }
        Command::Simulate(args) => {
            let ctx = load(args)?;
            let (x, t) = point(args)?;
            emit(args, &[with_mc(&ctx, asymptotic_row(&ctx, x, t)?)?])
        }
        Command::Compare(args) => {
            let ctx = load(args)?;
            let (x, t) = point(args)?;
            let mut row = with_mc(&ctx, asymptotic_row(&ctx, x, t)?)?;
            row.log_oracle = oracle(&ctx.model, x, t)?;
            emit(args, &[row])
        }
        Command::Clt(args) => {
            let ctx = load(args)?;
            let (x, t) = point(args)?;
            let report = clt_diagnostic(&ctx.model, x, x / t, &ctx.sim)?;
            let row = CltRow {
                model_id: ctx.defaults.model_id.clone(),
                x: report.x,
                v: report.v,
                omega_sq: report.omega_sq,
                mean_tau: report.mean_tau,
                mean_z: report.mean_z,
                var_z: report.var_z,
                n: report.n,
                seed: ctx.sim.master_seed,
            };
            emit(args, &[row])
        }
        Command::Sweep(args) => {
            let ctx = load(args)?;
            let (Some(v), Some(grid), None) = (args.v, args.t.as_deref(), args.x) else {
                return Err(Error::Validation("sweep needs --v and --t T1:T2:N".into()));
            };
            let rows = geometric_grid(grid)?
                .into_iter()
                .map(|t| {
                    let mut row = asymptotic_row(&ctx, v * t, t)?;
                    row.log_oracle = oracle(&ctx.model, v * t, t)?;
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            emit(args, &rows)
        }
    }
}

fn emit<R: table::Row>(args: &RunArgs, rows: &[R]) -> Result<String> {
    let text = render(rows, args.format);
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| {
                Error::Validation(format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() || matches!(e, Error::UnsupportedModel { .. }) {
                EXIT_INPUT
            } else {
                EXIT_NUMERIC
            }
        }
    }
}
