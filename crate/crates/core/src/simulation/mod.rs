//! Monte Carlo estimation of `P(τ(x) <= t)`.
//!
//! `mc_plain` is the frequency estimator. `mc_tilted` simulates under the
//! exponentially tilted law `P^(c)` and reweights each crossing by
//! `exp(−c X(τ) + ψ(c) τ)`, which makes deep-tail probabilities reachable.
//! Paths are grouped in fixed-size chunks that are evaluated in parallel and
//! reduced in path-index order, so results do not depend on the thread count.

mod path;
mod stream;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use path::{PathOutcome, PathSimulator};
pub use stream::PathRng;

use crate::asymptotics::classify_regime;
use crate::asymptotics::Regime;
use crate::error::{Error, Result};
use crate::exponents::inverse_psi_prime;
use crate::logspace::LogSumExp;
use crate::model::LevyModel;

const CHUNK: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n_paths: u64,
    pub master_seed: u64,
    /// Maximal Gaussian sub-step between jumps.
    pub time_step: f64,
    /// Measure-change parameter; `None` selects Γ(x/t) in `mc_tilted`.
    pub tilt: Option<f64>,
    pub barrier_correction: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n_paths: 100_000,
            master_seed: 0,
            time_step: 0.01,
            tilt: None,
            barrier_correction: true,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_paths == 0 {
            return Err(Error::Validation("n_paths must be > 0".into()));
        }
        if !(self.time_step.is_finite() && self.time_step > 0.0) {
            return Err(Error::Validation(format!(
                "time_step must be finite and > 0, got {}",
                self.time_step
            )));
        }
        if let Some(c) = self.tilt {
            if !c.is_finite() {
                return Err(Error::Validation(format!("tilt must be finite, got {c}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    /// Log of the estimated probability.
    pub log_estimate: f64,
    /// Relative standard error of the linear-domain estimator.
    pub std_err_rel: f64,
    pub n_paths: u64,
    pub n_hits: u64,
    pub tilt_used: Option<f64>,
    pub master_seed: u64,
    /// No path contributed; the estimate carries no information.
    pub degenerate: bool,
}

impl SimResult {
    pub fn estimate(&self) -> f64 {
        self.log_estimate.exp()
    }

    /// Absolute standard error in the linear domain.
    pub fn std_err(&self) -> f64 {
        self.std_err_rel * self.estimate()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    sum: LogSumExp,
    sum_sq: LogSumExp,
    hits: u64,
}

impl Accumulator {
    fn push(&mut self, log_weight: f64) {
        self.sum.push(log_weight);
        self.sum_sq.push(2.0 * log_weight);
        self.hits += 1;
    }

    fn merge(&mut self, other: &Accumulator) {
        self.sum.merge(&other.sum);
        self.sum_sq.merge(&other.sum_sq);
        self.hits += other.hits;
    }
}

fn check_problem(op: &'static str, x: f64, t: f64) -> Result<()> {
    if !(x.is_finite() && t.is_finite() && t > 0.0) {
        return Err(Error::domain(op, format!("x = {x} must be finite and t = {t} > 0")));
    }
    Ok(())
}

/// Runs `n_paths` paths of `model` and reduces `log_weight(outcome)` over hits.
fn estimate<F>(model: &LevyModel, x: f64, horizon: f64, config: &SimConfig, log_weight: F) -> Accumulator
where
    F: Fn(&PathOutcome) -> Option<f64> + Sync,
{
    let sim = PathSimulator::new(model, config.time_step, config.barrier_correction);
    let n = config.n_paths;
    let chunks = n.div_ceil(CHUNK);
    let partials: Vec<Accumulator> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = Accumulator::default();
            for i in chunk * CHUNK..((chunk + 1) * CHUNK).min(n) {
                let outcome = sim.first_passage(x, horizon, &mut PathRng::new(config.master_seed, i));
                if let Some(lw) = log_weight(&outcome) {
                    acc.push(lw);
                }
            }
            acc
        })
        .collect();
    partials.iter().fold(Accumulator::default(), |mut total, p| {
        total.merge(p);
        total
    })
}

fn finish(acc: Accumulator, config: &SimConfig, tilt_used: Option<f64>) -> SimResult {
    let n = config.n_paths as f64;
    let (log_estimate, std_err_rel) = if acc.hits == 0 {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else {
        let log_s1 = acc.sum.value();
        let log_s2 = acc.sum_sq.value();
        // n Σw² / (Σw)² − 1 = n · (relative variance of one weight)
        let ratio = (log_s2 + n.ln() - 2.0 * log_s1).exp();
        (log_s1 - n.ln(), ((ratio - 1.0).max(0.0) / n).sqrt())
    };
    SimResult {
        log_estimate,
        std_err_rel,
        n_paths: config.n_paths,
        n_hits: acc.hits,
        tilt_used,
        master_seed: config.master_seed,
        degenerate: acc.hits == 0,
    }
}

/// Frequency estimator of `P(τ(x) <= t)`.
pub fn mc_plain(model: &LevyModel, x: f64, t: f64, config: &SimConfig) -> Result<SimResult> {
    check_problem("mc_plain", x, t)?;
    config.validate()?;
    let acc = estimate(model, x, t, config, |o| o.hit.then_some(0.0));
    Ok(finish(acc, config, None))
}

/// Importance-sampling estimator under `P^(c)`, `c = config.tilt` or Γ(x/t).
pub fn mc_tilted(model: &LevyModel, x: f64, t: f64, config: &SimConfig) -> Result<SimResult> {
    check_problem("mc_tilted", x, t)?;
    config.validate()?;
    let c = match config.tilt {
        Some(c) => c,
        None => inverse_psi_prime(model, x / t)?,
    };
    let tilted = model.tilt(c)?;
    let psi_c = model.psi(c)?;
    let acc = estimate(&tilted, x, t, config, |o| {
        o.tau
            .zip(o.x_at_tau)
            .map(|(tau, level)| -c * level + psi_c * tau)
    });
    Ok(finish(acc, config, Some(c)))
}

/// Tilt applied for a given problem when the user asks for an automatic choice:
/// Γ(x/t) away from the Cramér regime, no tilt inside it.
pub fn auto_tilt(model: &LevyModel, x: f64, t: f64) -> Result<f64> {
    match classify_regime(model, x, t)? {
        Regime::Cramer => Ok(0.0),
        _ => inverse_psi_prime(model, x / t),
    }
}

/// Sample moments of `(τ(x) − x/v)/(ω√x)` under `P^(Γ(v))`, `ω² = ψ″(Γ(v))/v³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CltReport {
    pub x: f64,
    pub v: f64,
    pub omega_sq: f64,
    pub mean_tau: f64,
    pub mean_z: f64,
    pub var_z: f64,
    /// Number of crossings observed (paths not crossing by the safety horizon are dropped).
    pub n: u64,
}

pub fn clt_diagnostic(model: &LevyModel, x: f64, v: f64, config: &SimConfig) -> Result<CltReport> {
    const OP: &str = "clt_diagnostic";
    if !(x.is_finite() && x > 0.0 && v.is_finite() && v > 0.0) {
        return Err(Error::domain(OP, format!("x = {x} and v = {v} must be > 0")));
    }
    config.validate()?;
    if classify_regime(model, x, x / v)? != Regime::LargeDeviation {
        return Err(Error::range(OP, format!("v = {v} must exceed psi'(gamma)")));
    }
    let g = inverse_psi_prime(model, v)?;
    let omega_sq = model.psi_derivatives(g)?.1 / v.powi(3);
    let tilted = model.tilt(g)?;
    let spread = (omega_sq * x).sqrt();
    let horizon = 2.0 * x / v + 20.0 * spread;
    let sim = PathSimulator::new(&tilted, config.time_step, config.barrier_correction);
    let taus: Vec<Option<f64>> = (0..config.n_paths)
        .into_par_iter()
        .map(|i| sim.first_passage(x, horizon, &mut PathRng::new(config.master_seed, i)).tau)
        .collect();
    let zs: Vec<f64> = taus.iter().flatten().map(|tau| (tau - x / v) / spread).collect();
    let n = zs.len() as u64;
    if n < 2 {
        return Err(Error::range(OP, "fewer than two crossings observed"));
    }
    let mean_z = zs.iter().sum::<f64>() / n as f64;
    let var_z = zs.iter().map(|z| (z - mean_z).powi(2)).sum::<f64>() / (n - 1) as f64;
    Ok(CltReport {
        x,
        v,
        omega_sq,
        mean_tau: x / v + spread * mean_z,
        mean_z,
        var_z,
        n,
    })
}
