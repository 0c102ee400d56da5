//! Exact asymptotics of `P(τ(x) <= t)` when `x, t → ∞` with `x/t → v`.
//!
//! Below the critical slope `ψ′(γ)` the probability behaves like the
//! perpetual ruin probability `C_γ e^{−γx}`; above it, like
//! `D_v t^{−1/2} e^{−ψ*(v) t}`. Closed forms for `C_γ` and `D_v` exist for
//! spectrally one-sided processes; two-sided models get the exponent only.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::{legendre, lundberg_gamma, reflected_root, ExponentReport, Lundberg};
use crate::model::{LevyModel, SpectralClass};

/// Relative half-width of the band around `ψ′(γ)` reported as the boundary case.
pub const BOUNDARY_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Cramer,
    LargeDeviation,
    Boundary,
    /// Asymptotic form not determined (the boundary slope).
    Indeterminate,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Cramer => "cramer",
            Regime::LargeDeviation => "large_deviation",
            Regime::Boundary | Regime::Indeterminate => "boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticEstimate {
    pub regime: Regime,
    pub x: f64,
    pub t: f64,
    /// Natural log of the approximation; `None` at the boundary slope.
    pub log_prob: Option<f64>,
    /// `γv` in the Cramér regime, `ψ*(v)` in the large-deviation regime.
    pub decay_rate: f64,
    /// `C_γ` or `D_v t^{−1/2}`; `None` for two-sided models and at the boundary.
    pub prefactor: Option<f64>,
    /// Set when the prefactor is unknown and `log_prob` carries the exponent only.
    pub exponent_only: bool,
    /// `(γv, ψ*(v))` at the boundary slope.
    pub boundary_rates: Option<(f64, f64)>,
    pub lundberg: Lundberg,
    pub psi_prime_gamma: f64,
    /// Roots at `v`; absent when `Γ(v)` does not exist (possible in the Cramér regime only).
    pub report: Option<ExponentReport>,
}

fn slope(op: &'static str, x: f64, t: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0 && t.is_finite() && t > 0.0) {
        return Err(Error::domain(op, format!("x = {x} and t = {t} must be finite and > 0")));
    }
    Ok(x / t)
}

fn critical_slope(model: &LevyModel) -> Result<(Lundberg, f64)> {
    let lundberg = lundberg_gamma(model)?;
    let pp = model.psi_derivatives(lundberg.gamma)?.0;
    Ok((lundberg, pp))
}

fn regime_for_slope(v: f64, critical: f64) -> Regime {
    if v < critical * (1.0 - BOUNDARY_REL_TOL) {
        Regime::Cramer
    } else if v > critical * (1.0 + BOUNDARY_REL_TOL) {
        Regime::LargeDeviation
    } else {
        Regime::Boundary
    }
}

/// Compares `v = x/t` with the critical slope `ψ′(γ)`.
pub fn classify_regime(model: &LevyModel, x: f64, t: f64) -> Result<Regime> {
    let v = slope("classify_regime", x, t)?;
    let (_, critical) = critical_slope(model)?;
    Ok(regime_for_slope(v, critical))
}

/// `C_γ`: 1 for spectrally negative models, `|ψ′(0)|/ψ′(γ)` for spectrally
/// positive ones, and `C_0 = 1` whenever the Cramér condition fails.
pub fn cramer_constant(model: &LevyModel) -> Result<f64> {
    let (lundberg, pp) = critical_slope(model)?;
    if !lundberg.cramer_condition {
        return Ok(1.0);
    }
    match model.spectral_class() {
        SpectralClass::SpectrallyNegative => Ok(1.0),
        SpectralClass::SpectrallyPositive => Ok(model.mean().abs() / pp),
        SpectralClass::TwoSided => Err(Error::unsupported(
            "cramer_constant",
            "no closed form for C_gamma with two-sided jumps",
        )),
    }
}

/// `D_v` from the one-sided closed forms.
pub fn ld_prefactor(model: &LevyModel, v: f64) -> Result<f64> {
    let report = legendre(model, v)?;
    prefactor_from_report(model, &report)
}

fn prefactor_from_report(model: &LevyModel, r: &ExponentReport) -> Result<f64> {
    const OP: &str = "ld_prefactor";
    if !(r.v > r.psi_prime_gamma && r.eta_v > 0.0) {
        return Err(Error::range(
            OP,
            format!("v = {} must exceed psi'(gamma) = {}", r.v, r.psi_prime_gamma),
        ));
    }
    let gauss = (2.0 * PI * r.psi_second_at_gamma_v).sqrt();
    match model.spectral_class() {
        SpectralClass::SpectrallyNegative => Ok(r.v / (r.eta_v * gauss)),
        SpectralClass::SpectrallyPositive => {
            let tilde = reflected_root(model, r.eta_v)?;
            Ok((r.gamma_v + tilde) / (r.gamma_v * tilde) / gauss)
        }
        SpectralClass::TwoSided => Err(Error::unsupported(
            OP,
            "no closed form for D_v with two-sided jumps",
        )),
    }
}

/// Asymptotic approximation of `P(τ(x) <= t)`.
pub fn approx_passage_prob(model: &LevyModel, x: f64, t: f64) -> Result<AsymptoticEstimate> {
    let v = slope("approx_passage_prob", x, t)?;
    let (lundberg, psi_prime_gamma) = critical_slope(model)?;
    let gamma = lundberg.gamma;
    let regime = regime_for_slope(v, psi_prime_gamma);

    let report = match regime {
        Regime::LargeDeviation => Some(legendre(model, v)?),
        // Γ(v) may legitimately be missing below the critical slope
        _ => match legendre(model, v) {
            Ok(r) => Some(r),
            Err(Error::Range { .. }) => None,
            Err(e) => return Err(e),
        },
    };

    let mut est = AsymptoticEstimate {
        regime,
        x,
        t,
        log_prob: None,
        decay_rate: gamma * v,
        prefactor: None,
        exponent_only: false,
        boundary_rates: None,
        lundberg,
        psi_prime_gamma,
        report,
    };

    match regime {
        Regime::Cramer => {
            let c = optional_constant(cramer_constant(model))?;
            est.exponent_only = c.is_none();
            est.prefactor = c;
            est.log_prob = Some(c.map_or(0.0, f64::ln) - gamma * x);
        }
        Regime::LargeDeviation => {
            let r = report.expect("legendre computed for the large-deviation regime");
            let d = optional_constant(prefactor_from_report(model, &r))?;
            est.decay_rate = r.psi_star_v;
            est.exponent_only = d.is_none();
            est.prefactor = d.map(|d| d / t.sqrt());
            est.log_prob = Some(d.map_or(0.0, f64::ln) - 0.5 * t.ln() - r.psi_star_v * t);
        }
        Regime::Boundary | Regime::Indeterminate => {
            est.regime = Regime::Indeterminate;
            let star = report.map_or(gamma * v, |r| r.psi_star_v);
            est.boundary_rates = Some((gamma * v, star));
        }
    }
    Ok(est)
}

fn optional_constant(value: Result<f64>) -> Result<Option<f64>> {
    match value {
        Ok(v) => Ok(Some(v)),
        Err(Error::UnsupportedModel { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}
