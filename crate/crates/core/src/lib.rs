//! Finite-time first-passage probabilities `P(τ(x) <= t)` of Lévy processes
//! with exponential moments.
//!
//! * [`model`]: drifted Brownian motion with mixed-exponential jumps and its
//!   Laplace exponent ψ.
//! * [`exponents`]: Lundberg exponent, right-inverse of ψ′, convex conjugate ψ*.
//! * [`asymptotics`]: regime classification and the asymptotic approximation
//!   `C_γ e^{−γx}` / `D_v t^{−1/2} e^{−ψ*(v) t}`.
//! * [`simulation`]: plain and exponentially tilted Monte Carlo.
//! * [`oracles`]: closed-form Brownian and classical-risk references.
//! * [`cli`]: configuration parsing and tabular output for the `levy-passage` binary.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod exponents;
pub mod logspace;
pub mod model;
pub mod oracles;
mod roots;
pub mod simulation;

pub use asymptotics::{
    approx_passage_prob, classify_regime, cramer_constant, ld_prefactor, AsymptoticEstimate,
    Regime,
};
pub use error::{Error, Result};
pub use exponents::{
    big_phi, gamma_tilde, inverse_psi_prime, legendre, lundberg_gamma, psi_star, ExponentReport,
    Lundberg,
};
pub use model::{JumpComponent, JumpSign, JumpSpec, LevyModel, ModelKind, SpectralClass, Theta};
pub use simulation::{clt_diagnostic, mc_plain, mc_tilted, CltReport, SimConfig, SimResult};
