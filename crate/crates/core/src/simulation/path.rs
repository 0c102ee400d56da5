//! Single-path first-passage simulation for jump diffusions.
//!
//! Jump epochs are exact (exponential inter-arrival times). Between jumps the
//! Gaussian part is advanced on sub-steps of length at most `time_step`. With
//! the bridge correction enabled, a sub-step whose endpoints both lie below
//! the barrier still crosses with probability
//! `exp(−2(x − X_a)(x − X_b)/(σ²Δ))`, and the crossing epoch inside a step is
//! located by recursive bisection of the Brownian bridge.

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use super::stream::PathRng;
use crate::model::LevyModel;

/// Bisection levels used to locate a diffusive crossing inside one sub-step.
const REFINE_DEPTH: u32 = 12;
/// Rejection attempts when sampling a bridge midpoint conditioned on a crossing.
const MAX_CONDITIONED_TRIES: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathOutcome {
    pub hit: bool,
    pub tau: Option<f64>,
    /// Level at the crossing: the barrier itself for continuous crossings,
    /// the post-jump level for crossings by a jump.
    pub x_at_tau: Option<f64>,
    /// Level at the horizon; only known when the path was not stopped.
    pub x_at_horizon: Option<f64>,
}

impl PathOutcome {
    fn hit(tau: f64, level: f64) -> Self {
        Self { hit: true, tau: Some(tau), x_at_tau: Some(level), x_at_horizon: None }
    }

    fn survived(level: f64) -> Self {
        Self { hit: false, tau: None, x_at_tau: None, x_at_horizon: Some(level) }
    }
}

/// Precomputed simulation parameters for one model.
#[derive(Debug, Clone)]
pub struct PathSimulator {
    drift: f64,
    sigma: f64,
    intensity: f64,
    /// (cumulative weight, rate, sign)
    components: Vec<(f64, f64, f64)>,
    time_step: f64,
    bridge: bool,
}

impl PathSimulator {
    pub fn new(model: &LevyModel, time_step: f64, bridge: bool) -> Self {
        let mut cumulative = 0.0;
        let components = if model.jumps.is_active() {
            model
                .jumps
                .components
                .iter()
                .map(|c| {
                    cumulative += c.weight;
                    (cumulative, c.rate, c.sign.value())
                })
                .collect()
        } else {
            Vec::new()
        };
        let intensity = if components.is_empty() { 0.0 } else { model.jumps.intensity };
        Self { drift: model.drift, sigma: model.sigma, intensity, components, time_step, bridge }
    }

    /// Simulates `τ(x) = inf{s : X(s) > x}` on `[0, horizon]`.
    pub fn first_passage(&self, x: f64, horizon: f64, rng: &mut PathRng) -> PathOutcome {
        if x < 0.0 {
            return PathOutcome::hit(0.0, 0.0);
        }
        let mut now = 0.0;
        let mut level = 0.0;
        loop {
            let next_jump = if self.intensity > 0.0 {
                let e: f64 = rng.main.sample(Exp1);
                now + e / self.intensity
            } else {
                f64::INFINITY
            };
            let segment_end = next_jump.min(horizon);
            if let Some(tau) = self.diffuse(&mut now, &mut level, segment_end, x, rng) {
                return PathOutcome::hit(tau, x);
            }
            if next_jump >= horizon {
                return PathOutcome::survived(level);
            }
            level += self.jump_size(rng);
            if level > x {
                return PathOutcome::hit(now, level);
            }
        }
    }

    fn jump_size(&self, rng: &mut PathRng) -> f64 {
        let (_, rate, sign) = if self.components.len() == 1 {
            self.components[0]
        } else {
            let u: f64 = rng.main.random::<f64>() * self.components.last().unwrap().0;
            *self
                .components
                .iter()
                .find(|c| u < c.0)
                .unwrap_or_else(|| self.components.last().unwrap())
        };
        let e: f64 = rng.main.sample(Exp1);
        sign * e / rate
    }

    /// Advances the continuous part from `*now` to `end`; returns the crossing epoch if any.
    fn diffuse(
        &self,
        now: &mut f64,
        level: &mut f64,
        end: f64,
        x: f64,
        rng: &mut PathRng,
    ) -> Option<f64> {
        let span = end - *now;
        if span <= 0.0 {
            return None;
        }
        if self.sigma == 0.0 {
            let start = *level;
            *level = start + self.drift * span;
            let t0 = *now;
            *now = end;
            if *level > x {
                return Some(t0 + ((x - start) / self.drift).clamp(0.0, span));
            }
            return None;
        }
        let n = (span / self.time_step).ceil().max(1.0) as u64;
        let h = span / n as f64;
        let mean = self.drift * h;
        let scale = self.sigma * h.sqrt();
        let t0 = *now;
        for i in 0..n {
            let a = t0 + h * i as f64;
            let b = if i + 1 == n { end } else { t0 + h * (i + 1) as f64 };
            let xa = *level;
            let z: f64 = rng.main.sample(StandardNormal);
            let xb = xa + mean + scale * z;
            *level = xb;
            if xb > x {
                *now = end;
                let tau = if self.bridge { self.locate(a, xa, b, xb, x, true, rng) } else { b };
                return Some(tau);
            }
            if self.bridge {
                let p = self.bridge_cross_prob(xa, xb, b - a, x);
                if p > 0.0 && rng.aux.random::<f64>() < p {
                    *now = end;
                    return Some(self.locate(a, xa, b, xb, x, false, rng));
                }
            }
        }
        *now = end;
        None
    }

    /// Probability that a Brownian bridge from `xa` to `xb` over `dt` exceeds `x`,
    /// both endpoints at or below `x`.
    #[inline]
    fn bridge_cross_prob(&self, xa: f64, xb: f64, dt: f64, x: f64) -> f64 {
        let arg = -2.0 * (x - xa) * (x - xb) / (self.sigma * self.sigma * dt);
        if arg < -745.0 {
            0.0
        } else {
            arg.exp()
        }
    }

    /// Locates the first crossing inside `[a, b]` given that one occurs.
    /// `endpoint_above` distinguishes `X(b) > x` from a bridge-detected crossing.
    #[allow(clippy::too_many_arguments)]
    fn locate(
        &self,
        mut a: f64,
        mut xa: f64,
        mut b: f64,
        mut xb: f64,
        x: f64,
        mut endpoint_above: bool,
        rng: &mut PathRng,
    ) -> f64 {
        for _ in 0..REFINE_DEPTH {
            let mid = 0.5 * (a + b);
            let sd = 0.5 * self.sigma * (b - a).sqrt();
            if endpoint_above {
                let z: f64 = rng.aux.sample(StandardNormal);
                let xm = 0.5 * (xa + xb) + sd * z;
                if xm > x {
                    b = mid;
                    xb = xm;
                } else if rng.aux.random::<f64>() < self.bridge_cross_prob(xa, xm, mid - a, x) {
                    b = mid;
                    xb = xm;
                    endpoint_above = false;
                } else {
                    a = mid;
                    xa = xm;
                }
            } else {
                // midpoint conditioned on a crossing somewhere in [a, b]
                let mut accepted = None;
                for _ in 0..MAX_CONDITIONED_TRIES {
                    let z: f64 = rng.aux.sample(StandardNormal);
                    let xm = 0.5 * (xa + xb) + sd * z;
                    let (p1, q) = if xm > x {
                        (1.0, 1.0)
                    } else {
                        let p1 = self.bridge_cross_prob(xa, xm, mid - a, x);
                        let p2 = self.bridge_cross_prob(xm, xb, b - mid, x);
                        (p1, 1.0 - (1.0 - p1) * (1.0 - p2))
                    };
                    if rng.aux.random::<f64>() < q {
                        accepted = Some((xm, p1, q));
                        break;
                    }
                }
                let Some((xm, p1, q)) = accepted else {
                    return mid;
                };
                if xm > x {
                    b = mid;
                    xb = xm;
                    endpoint_above = true;
                } else if rng.aux.random::<f64>() * q < p1 {
                    b = mid;
                    xb = xm;
                } else {
                    a = mid;
                    xa = xm;
                }
            }
        }
        0.5 * (a + b)
    }
}
