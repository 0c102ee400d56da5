//! Roots and conjugates of the Laplace exponent: the Lundberg exponent γ,
//! the right-inverse Γ of ψ′, the largest roots Φ(α) and Γ̃(v), and the
//! convex conjugate ψ*.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::LevyModel;
use crate::roots::right_crossing;

/// Lundberg exponent together with the flag telling whether the Cramér
/// condition holds. When the process does not drift to −∞ the exponent is
/// reported as `0` with `cramer_condition = false`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lundberg {
    pub gamma: f64,
    pub cramer_condition: bool,
}

/// All roots needed to evaluate the asymptotics at one slope `v = x/t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub v: f64,
    pub gamma: f64,
    pub psi_prime_gamma: f64,
    /// Γ(v), solution of ψ′(θ) = v.
    pub gamma_v: f64,
    /// η_v = ψ(Γ(v)).
    pub eta_v: f64,
    /// ψ*(v) = vΓ(v) − ψ(Γ(v)).
    pub psi_star_v: f64,
    /// ψ″(Γ(v)).
    pub psi_second_at_gamma_v: f64,
}

/// `γ = sup{θ ∈ Θ : ψ(θ) = 0}`.
pub fn lundberg_gamma(model: &LevyModel) -> Result<Lundberg> {
    if model.mean() >= 0.0 {
        return Ok(Lundberg { gamma: 0.0, cramer_condition: false });
    }
    let upper = model.theta_domain().upper;
    let eval = |th: f64| (model.psi_unchecked(th), model.psi_derivatives_unchecked(th).0);
    right_crossing(eval, 0.0, 0.0, upper)
        .map(|gamma| Lundberg { gamma, cramer_condition: true })
        .ok_or_else(|| {
            Error::no_root(
                "lundberg_gamma",
                format!("psi stays negative on (0, {upper}): Cramér condition fails"),
            )
        })
}

/// Right-inverse of ψ′ on `(0, sup Θ)`.
pub fn inverse_psi_prime(model: &LevyModel, v: f64) -> Result<f64> {
    const OP: &str = "inverse_psi_prime";
    if !v.is_finite() {
        return Err(Error::range(OP, format!("v = {v} is not finite")));
    }
    let at_zero = model.mean();
    let sup = model.psi_prime_sup();
    if v <= at_zero || v >= sup {
        return Err(Error::range(
            OP,
            format!("v = {v} outside the range ({at_zero}, {sup}) of psi' on (0, sup Theta)"),
        ));
    }
    let upper = model.theta_domain().upper;
    let eval = |th: f64| model.psi_derivatives_unchecked(th);
    right_crossing(eval, v, 0.0, upper).ok_or_else(|| {
        Error::range(OP, format!("psi' does not reach v = {v} inside the domain"))
    })
}

/// ψ*(v) together with every intermediate root.
pub fn legendre(model: &LevyModel, v: f64) -> Result<ExponentReport> {
    let lundberg = lundberg_gamma(model)?;
    let gamma = lundberg.gamma;
    let psi_prime_gamma = model.psi_derivatives(gamma)?.0;
    let gamma_v = inverse_psi_prime(model, v)?;
    let eta_v = model.psi(gamma_v)?;
    let psi_second_at_gamma_v = model.psi_derivatives(gamma_v)?.1;
    Ok(ExponentReport {
        v,
        gamma,
        psi_prime_gamma,
        gamma_v,
        eta_v,
        psi_star_v: v * gamma_v - eta_v,
        psi_second_at_gamma_v,
    })
}

/// Convex conjugate `ψ*(v) = sup_α (αv − ψ(α))` for `v` in the range of ψ′ on `(0, sup Θ)`.
pub fn psi_star(model: &LevyModel, v: f64) -> Result<f64> {
    let g = inverse_psi_prime(model, v)?;
    Ok(v * g - model.psi(g)?)
}

/// Φ(α): the largest root of `ψ(θ) = α`, `α >= 0`.
pub fn big_phi(model: &LevyModel, alpha: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::domain("big_phi", format!("alpha = {alpha} must be >= 0")));
    }
    if alpha == 0.0 {
        return Ok(lundberg_gamma(model)?.gamma);
    }
    let upper = model.theta_domain().upper;
    let eval = |th: f64| (model.psi_unchecked(th), model.psi_derivatives_unchecked(th).0);
    right_crossing(eval, alpha, 0.0, upper).ok_or_else(|| {
        Error::no_root("big_phi", format!("psi < {alpha} on the whole domain"))
    })
}

/// Largest `θ > 0` with `ψ(−θ) = level`, `level > 0`.
pub fn reflected_root(model: &LevyModel, level: f64) -> Result<f64> {
    const OP: &str = "gamma_tilde";
    if !(level.is_finite() && level > 0.0) {
        return Err(Error::range(OP, format!("level eta = {level} must be > 0")));
    }
    let upper = -model.theta_domain().lower;
    let eval = |th: f64| {
        (
            model.psi_unchecked(-th),
            -model.psi_derivatives_unchecked(-th).0,
        )
    };
    right_crossing(eval, level, 0.0, upper)
        .ok_or_else(|| Error::no_root(OP, format!("psi(-theta) < {level} on -Theta")))
}

/// Γ̃(v) = sup{θ : ψ(−θ) = ψ(Γ(v))}; requires η_v > 0.
pub fn gamma_tilde(model: &LevyModel, v: f64) -> Result<f64> {
    let eta = model.psi(inverse_psi_prime(model, v)?)?;
    reflected_root(model, eta)
}
