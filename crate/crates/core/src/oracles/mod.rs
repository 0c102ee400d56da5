//! Closed-form ground truth used to validate the asymptotics and the
//! simulation engine: the exact first-passage law of drifted Brownian motion
//! (reflection formula) and the perpetual ruin probability of the classical
//! risk process with exponential claims.

mod normal_tail;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use normal_tail::{erfcx, log_mills_asymptotic, log_normal_sf};

use crate::error::{Error, Result};
use crate::logspace::log_add_exp;

/// Natural logarithm of a probability.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct LogProb(pub f64);

impl LogProb {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn prob(self) -> f64 {
        self.0.exp()
    }
}

/// `log P(sup_{s<=t} (μs + σW(s)) > x)`
/// `= log[Φ̄((x − μt)/(σ√t)) + exp(2μx/σ²) Φ̄((x + μt)/(σ√t))]`.
pub fn bm_exact_passage(mu: f64, sigma: f64, x: f64, t: f64) -> Result<LogProb> {
    const OP: &str = "bm_exact_passage";
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::domain(OP, format!("sigma = {sigma} must be > 0")));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(OP, format!("t = {t} must be > 0")));
    }
    if !(x >= 0.0 && mu.is_finite()) {
        return Err(Error::domain(OP, format!("x = {x} must be >= 0 and mu finite")));
    }
    let scale = sigma * t.sqrt();
    let direct = log_normal_sf((x - mu * t) / scale);
    let reflected = 2.0 * mu * x / (sigma * sigma) + log_normal_sf((x + mu * t) / scale);
    Ok(LogProb(log_add_exp(direct, reflected).min(0.0)))
}

/// Large-deviation rate of drifted Brownian motion, `(v − μ)²/(2σ²)`.
pub fn bm_rate(mu: f64, sigma: f64, v: f64) -> f64 {
    (v - mu) * (v - mu) / (2.0 * sigma * sigma)
}

/// Leading constant obtained by expanding both reflection terms with the
/// Mills ratio `Φ̄(z) ~ φ(z)/z`: `2vσ/((v² − μ²)√(2π))`.
pub fn bm_mills_prefactor(mu: f64, sigma: f64, v: f64) -> f64 {
    2.0 * v * sigma / ((v * v - mu * mu) * (2.0 * PI).sqrt())
}

/// Exact log-probability at `x = vt` minus the leading-order expansion
/// `log D − ½ log t − rate·t`. Tends to zero like `O(1/t)`.
pub fn bm_asymptotic_ratio(mu: f64, sigma: f64, v: f64, t: f64) -> Result<f64> {
    if v.is_nan() || v <= -mu {
        return Err(Error::range(
            "bm_asymptotic_ratio",
            format!("v = {v} must exceed psi'(gamma) = {}", -mu),
        ));
    }
    let exact = bm_exact_passage(mu, sigma, v * t, t)?.value();
    let leading =
        bm_mills_prefactor(mu, sigma, v).ln() - 0.5 * t.ln() - bm_rate(mu, sigma, v) * t;
    Ok(exact - leading)
}

/// Perpetual ruin probability of the classical risk process with
/// exponential claims: `log(λ/(cβ)) − (β − λ/c) x`.
pub fn cl_perpetual_ruin(lambda: f64, beta: f64, premium: f64, x: f64) -> Result<LogProb> {
    const OP: &str = "cl_perpetual_ruin";
    if !(lambda > 0.0 && beta > 0.0 && premium > 0.0) {
        return Err(Error::domain(OP, "lambda, beta and premium must be > 0"));
    }
    if lambda / beta >= premium {
        return Err(Error::domain(
            OP,
            format!("net profit condition fails: lambda/beta = {} >= c = {premium}", lambda / beta),
        ));
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(OP, format!("x = {x} must be >= 0")));
    }
    let rho = lambda / (premium * beta);
    Ok(LogProb(rho.ln() - (beta - lambda / premium) * x))
}
