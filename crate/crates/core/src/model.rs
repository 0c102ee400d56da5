//! Lévy process families with closed-form Laplace exponents.
//!
//! Every supported model is a drifted Brownian motion plus an optional
//! compound Poisson component whose jump sizes follow a finite mixture of
//! exponential laws of either sign. For such a model
//!
//! ```text
//! ψ(θ) = aθ + σ²θ²/2 + λ Σᵢ wᵢ (rᵢ/(rᵢ − sᵢθ) − 1)
//! ```
//!
//! which is finite on the open interval `(−min down-rate, min up-rate)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative distance to a mixture pole below which ψ is reported as undefined.
pub const POLE_GUARD: f64 = 1e-9;

/// Tolerance on the sum of mixture weights.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    Brownian,
    CramerLundberg,
    JumpDiffusion,
}

/// Direction of an exponential jump component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JumpSign {
    Up,
    Down,
}

impl JumpSign {
    #[inline]
    pub fn value(self) -> f64 {
        match self {
            JumpSign::Up => 1.0,
            JumpSign::Down => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpComponent {
    pub weight: f64,
    pub rate: f64,
    pub sign: JumpSign,
}

impl JumpComponent {
    pub fn new(weight: f64, rate: f64, sign: JumpSign) -> Self {
        Self { weight, rate, sign }
    }
}

/// Compound Poisson jump part: arrival rate and a mixed-exponential size law.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct JumpSpec {
    pub intensity: f64,
    pub components: Vec<JumpComponent>,
}

impl JumpSpec {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn new(intensity: f64, components: Vec<JumpComponent>) -> Self {
        Self { intensity, components }
    }

    /// Single exponential component.
    pub fn exponential(intensity: f64, rate: f64, sign: JumpSign) -> Self {
        Self::new(intensity, vec![JumpComponent::new(1.0, rate, sign)])
    }

    pub fn is_active(&self) -> bool {
        self.intensity > 0.0 && !self.components.is_empty()
    }

    fn has_sign(&self, sign: JumpSign) -> bool {
        self.is_active() && self.components.iter().any(|c| c.sign == sign)
    }

    fn validate(&self) -> Result<()> {
        if !(self.intensity.is_finite() && self.intensity >= 0.0) {
            return Err(Error::Validation(format!(
                "jump intensity must be finite and >= 0, got {}",
                self.intensity
            )));
        }
        if self.intensity == 0.0 {
            return Ok(());
        }
        if self.components.is_empty() {
            return Err(Error::Validation(
                "positive jump intensity requires at least one jump component".into(),
            ));
        }
        for (i, c) in self.components.iter().enumerate() {
            if !(c.rate.is_finite() && c.rate > 0.0) {
                return Err(Error::Validation(format!(
                    "jump component {i}: rate must be finite and > 0, got {}",
                    c.rate
                )));
            }
            if !(c.weight > 0.0 && c.weight <= 1.0) {
                return Err(Error::Validation(format!(
                    "jump component {i}: weight must lie in (0, 1], got {}",
                    c.weight
                )));
            }
        }
        let total: f64 = self.components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::Validation(format!(
                "jump weights must sum to 1, got {total}"
            )));
        }
        Ok(())
    }
}

/// Open interval on which the Laplace exponent is finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theta {
    pub lower: f64,
    pub upper: f64,
}

impl Theta {
    pub fn contains(&self, theta: f64) -> bool {
        theta > self.lower && theta < self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralClass {
    SpectrallyNegative,
    SpectrallyPositive,
    TwoSided,
}

/// A Lévy process `X(t) = a t + σ W(t) + compound Poisson jumps`, `X(0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevyModel {
    pub kind: ModelKind,
    pub drift: f64,
    pub sigma: f64,
    pub jumps: JumpSpec,
}

impl LevyModel {
    pub fn brownian(drift: f64, sigma: f64) -> Result<Self> {
        Self::build(ModelKind::Brownian, drift, sigma, JumpSpec::none())
    }

    /// Claim-surplus process of the classical risk model: exponential claims
    /// of rate `claim_rate` arriving at rate `lambda`, premium income `premium`.
    pub fn cramer_lundberg(lambda: f64, claim_rate: f64, premium: f64) -> Result<Self> {
        Self::build(
            ModelKind::CramerLundberg,
            -premium,
            0.0,
            JumpSpec::exponential(lambda, claim_rate, JumpSign::Up),
        )
    }

    pub fn jump_diffusion(drift: f64, sigma: f64, jumps: JumpSpec) -> Result<Self> {
        Self::build(ModelKind::JumpDiffusion, drift, sigma, jumps)
    }

    fn build(kind: ModelKind, drift: f64, sigma: f64, jumps: JumpSpec) -> Result<Self> {
        let model = Self { kind, drift, sigma, jumps };
        model.validate()?;
        Ok(model)
    }

    /// Checks the admissibility invariants: finite parameters, well-formed
    /// jump mixture, non-monotone paths and exclusion of the random-walk case.
    pub fn validate(&self) -> Result<()> {
        if !self.drift.is_finite() {
            return Err(Error::Validation(format!("drift must be finite, got {}", self.drift)));
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::Validation(format!(
                "sigma must be finite and >= 0, got {}",
                self.sigma
            )));
        }
        self.jumps.validate()?;
        if self.kind == ModelKind::Brownian && self.jumps.is_active() {
            return Err(Error::Validation("brownian model cannot carry jumps".into()));
        }
        if self.sigma > 0.0 {
            return Ok(());
        }
        let up = self.jumps.has_sign(JumpSign::Up);
        let down = self.jumps.has_sign(JumpSign::Down);
        match (up, down) {
            (false, false) => Err(Error::Validation(
                "monotone paths: sigma = 0 and no jumps".into(),
            )),
            (true, false) if self.drift >= 0.0 => Err(Error::Validation(
                "monotone paths: only upward jumps with non-negative drift".into(),
            )),
            (false, true) if self.drift <= 0.0 => Err(Error::Validation(
                "monotone paths: only downward jumps with non-positive drift".into(),
            )),
            // Upward-only jumps with negative drift is the classical risk
            // process, covered by the spectrally positive closed forms.
            (true, true) if self.drift <= 0.0 => Err(Error::Validation(
                "compound Poisson process with non-positive drift (random-walk case) is excluded"
                    .into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn theta_domain(&self) -> Theta {
        let mut upper = f64::INFINITY;
        let mut lower = f64::NEG_INFINITY;
        if self.jumps.is_active() {
            for c in &self.jumps.components {
                match c.sign {
                    JumpSign::Up => upper = upper.min(c.rate),
                    JumpSign::Down => lower = lower.max(-c.rate),
                }
            }
        }
        Theta { lower, upper }
    }

    /// Gaussian part present, or jump measure non-lattice. Mixed-exponential
    /// jump laws are absolutely continuous, so any admissible model qualifies.
    pub fn satisfies_non_lattice(&self) -> bool {
        self.sigma > 0.0 || self.jumps.is_active()
    }

    pub fn spectral_class(&self) -> SpectralClass {
        let up = self.jumps.has_sign(JumpSign::Up);
        let down = self.jumps.has_sign(JumpSign::Down);
        match (up, down) {
            (false, _) => SpectralClass::SpectrallyNegative,
            (true, false) if self.sigma == 0.0 => SpectralClass::SpectrallyPositive,
            _ => SpectralClass::TwoSided,
        }
    }

    fn check_interior(&self, op: &'static str, theta: f64) -> Result<()> {
        if !theta.is_finite() {
            return Err(Error::domain(op, format!("theta = {theta} is not finite")));
        }
        if self.jumps.is_active() {
            for c in &self.jumps.components {
                let gap = c.rate - c.sign.value() * theta;
                if gap <= POLE_GUARD * c.rate {
                    let dom = self.theta_domain();
                    return Err(Error::domain(
                        op,
                        format!(
                            "theta = {theta} outside the open domain ({}, {})",
                            dom.lower, dom.upper
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Laplace exponent `ψ(θ) = log E[exp(θ X(1))]`.
    pub fn psi(&self, theta: f64) -> Result<f64> {
        self.check_interior("psi", theta)?;
        Ok(self.psi_unchecked(theta))
    }

    pub(crate) fn psi_unchecked(&self, theta: f64) -> f64 {
        let mut value = self.drift * theta + 0.5 * self.sigma * self.sigma * theta * theta;
        if self.jumps.is_active() {
            // r/(r − sθ) − 1 = sθ/(r − sθ), exact zero at θ = 0
            let jump: f64 = self
                .jumps
                .components
                .iter()
                .map(|c| {
                    let s = c.sign.value();
                    c.weight * s * theta / (c.rate - s * theta)
                })
                .sum();
            value += self.jumps.intensity * jump;
        }
        value
    }

    /// `(ψ′(θ), ψ″(θ))`.
    pub fn psi_derivatives(&self, theta: f64) -> Result<(f64, f64)> {
        self.check_interior("psi_derivatives", theta)?;
        Ok(self.psi_derivatives_unchecked(theta))
    }

    pub(crate) fn psi_derivatives_unchecked(&self, theta: f64) -> (f64, f64) {
        let s2 = self.sigma * self.sigma;
        let mut d1 = self.drift + s2 * theta;
        let mut d2 = s2;
        if self.jumps.is_active() {
            let lambda = self.jumps.intensity;
            for c in &self.jumps.components {
                let s = c.sign.value();
                let gap = c.rate - s * theta;
                d1 += lambda * c.weight * c.rate * s / (gap * gap);
                d2 += 2.0 * lambda * c.weight * c.rate / (gap * gap * gap);
            }
        }
        (d1, d2)
    }

    /// `E[X(1)] = ψ′(0)`.
    pub fn mean(&self) -> f64 {
        self.psi_derivatives_unchecked(0.0).0
    }

    /// Esscher transform: the law of `X` under `dP^(c)/dP = exp(cX(t) − ψ(c)t)`,
    /// whose exponent is `ψ(α + c) − ψ(c)`.
    pub fn tilt(&self, c: f64) -> Result<LevyModel> {
        self.check_interior("tilt", c)?;
        let drift = self.drift + self.sigma * self.sigma * c;
        let jumps = if self.jumps.is_active() {
            let masses: Vec<f64> = self
                .jumps
                .components
                .iter()
                .map(|comp| {
                    self.jumps.intensity * comp.weight * comp.rate
                        / (comp.rate - comp.sign.value() * c)
                })
                .collect();
            let intensity: f64 = masses.iter().sum();
            let components = self
                .jumps
                .components
                .iter()
                .zip(&masses)
                .map(|(comp, m)| JumpComponent {
                    weight: m / intensity,
                    rate: comp.rate - comp.sign.value() * c,
                    sign: comp.sign,
                })
                .collect();
            JumpSpec { intensity, components }
        } else {
            self.jumps.clone()
        };
        Ok(LevyModel { kind: self.kind, drift, sigma: self.sigma, jumps })
    }

    /// Upper end of `ψ′` on the domain: `+∞` unless ψ has no Gaussian part
    /// and no upward jumps, in which case ψ′ increases to the drift.
    pub(crate) fn psi_prime_sup(&self) -> f64 {
        if self.sigma > 0.0 || self.jumps.has_sign(JumpSign::Up) {
            f64::INFINITY
        } else {
            self.drift
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_sided() -> LevyModel {
        LevyModel::jump_diffusion(
            0.3,
            0.4,
            JumpSpec::new(
                2.0,
                vec![
                    JumpComponent::new(0.25, 3.0, JumpSign::Up),
                    JumpComponent::new(0.35, 5.0, JumpSign::Up),
                    JumpComponent::new(0.40, 2.0, JumpSign::Down),
                ],
            ),
        )
        .unwrap()
    }

    #[test]
    fn psi_at_zero_is_exactly_zero() {
        assert_eq!(LevyModel::brownian(-1.0, 1.0).unwrap().psi(0.0).unwrap(), 0.0);
        assert_eq!(LevyModel::cramer_lundberg(1.0, 1.0, 2.0).unwrap().psi(0.0).unwrap(), 0.0);
        assert_eq!(two_sided().psi(0.0).unwrap(), 0.0);
    }

    #[test]
    fn brownian_exponent_values() {
        let m = LevyModel::brownian(-1.0, 1.0).unwrap();
        assert_eq!(m.psi(2.0).unwrap(), 0.0);
        assert_eq!(m.psi_derivatives(0.0).unwrap(), (-1.0, 1.0));
    }

    #[test]
    fn cramer_lundberg_exponent_values() {
        let m = LevyModel::cramer_lundberg(1.0, 1.0, 2.0).unwrap();
        assert!(m.psi(0.5).unwrap().abs() < 1e-15);
        let (d1, d2) = m.psi_derivatives(0.0).unwrap();
        assert!((d1 + 1.0).abs() < 1e-15);
        assert!((d2 - 2.0).abs() < 1e-15);
    }

    #[test]
    fn domain_and_pole_guard() {
        let m = two_sided();
        let dom = m.theta_domain();
        assert_eq!(dom, Theta { lower: -2.0, upper: 3.0 });
        assert!(matches!(m.psi(3.0), Err(Error::Domain { .. })));
        assert!(matches!(m.psi(3.0 - 1e-10), Err(Error::Domain { .. })));
        assert!(matches!(m.psi(-2.5), Err(Error::Domain { .. })));
        assert!(m.psi(2.999).is_ok());
        assert!(matches!(m.tilt(4.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn tilt_examples() {
        let bm = LevyModel::brownian(-1.0, 1.0).unwrap();
        let t = bm.tilt(2.0).unwrap();
        assert_eq!((t.drift, t.sigma), (1.0, 1.0));
        for alpha in [-0.5, 0.5, 1.0] {
            let lhs = t.psi(alpha).unwrap();
            let rhs = bm.psi(alpha + 2.0).unwrap() - bm.psi(2.0).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
        }
        assert_eq!(bm.tilt(0.0).unwrap(), bm);

        let cl = LevyModel::cramer_lundberg(1.0, 1.0, 2.0).unwrap();
        let t = cl.tilt(0.5).unwrap();
        assert_eq!(t.kind, ModelKind::CramerLundberg);
        assert_eq!(t.drift, -2.0);
        assert!((t.jumps.components[0].rate - 0.5).abs() < 1e-15);
        assert!((t.jumps.intensity - 2.0).abs() < 1e-15);
        for alpha in [-1.0, -0.2, 0.3] {
            let lhs = t.psi(alpha).unwrap();
            let rhs = cl.psi(alpha + 0.5).unwrap() - cl.psi(0.5).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn spectral_classes() {
        use SpectralClass::*;
        assert_eq!(LevyModel::brownian(-1.0, 1.0).unwrap().spectral_class(), SpectrallyNegative);
        assert_eq!(
            LevyModel::cramer_lundberg(1.0, 1.0, 2.0).unwrap().spectral_class(),
            SpectrallyPositive
        );
        assert_eq!(two_sided().spectral_class(), TwoSided);
        let up_with_diffusion = LevyModel::jump_diffusion(
            -1.0,
            0.5,
            JumpSpec::exponential(1.0, 2.0, JumpSign::Up),
        )
        .unwrap();
        assert_eq!(up_with_diffusion.spectral_class(), TwoSided);
        let down = LevyModel::jump_diffusion(
            0.5,
            0.0,
            JumpSpec::exponential(1.0, 2.0, JumpSign::Down),
        )
        .unwrap();
        assert_eq!(down.spectral_class(), SpectrallyNegative);
    }

    #[test]
    fn rejects_monotone_and_random_walk_cases() {
        assert!(LevyModel::brownian(-1.0, 0.0).is_err());
        assert!(LevyModel::brownian(1.0, -0.1).is_err());
        // increasing compound Poisson
        assert!(LevyModel::jump_diffusion(0.0, 0.0, JumpSpec::exponential(1.0, 1.0, JumpSign::Up))
            .is_err());
        // decreasing
        assert!(LevyModel::jump_diffusion(
            -0.2,
            0.0,
            JumpSpec::exponential(1.0, 1.0, JumpSign::Down)
        )
        .is_err());
        // two-sided compound Poisson without positive drift
        let both = JumpSpec::new(
            1.0,
            vec![
                JumpComponent::new(0.5, 1.0, JumpSign::Up),
                JumpComponent::new(0.5, 1.0, JumpSign::Down),
            ],
        );
        assert!(LevyModel::jump_diffusion(0.0, 0.0, both.clone()).is_err());
        assert!(LevyModel::jump_diffusion(0.1, 0.0, both.clone()).is_ok());
        assert!(LevyModel::jump_diffusion(-0.1, 0.2, both).is_ok());
        // classical risk process without net income
        assert!(LevyModel::cramer_lundberg(1.0, 1.0, 0.0).is_err());
        assert!(LevyModel::cramer_lundberg(0.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn rejects_bad_mixtures() {
        let bad_weights = JumpSpec::new(
            1.0,
            vec![
                JumpComponent::new(0.5, 1.0, JumpSign::Up),
                JumpComponent::new(0.4, 1.0, JumpSign::Down),
            ],
        );
        assert!(LevyModel::jump_diffusion(0.0, 1.0, bad_weights).is_err());
        let bad_rate = JumpSpec::exponential(1.0, 0.0, JumpSign::Up);
        assert!(LevyModel::jump_diffusion(0.0, 1.0, bad_rate).is_err());
        assert!(LevyModel::jump_diffusion(0.0, 1.0, JumpSpec::new(1.0, vec![])).is_err());
    }

    #[test]
    fn every_admissible_model_is_non_lattice() {
        assert!(two_sided().satisfies_non_lattice());
        assert!(LevyModel::cramer_lundberg(1.0, 1.0, 2.0).unwrap().satisfies_non_lattice());
    }
}
