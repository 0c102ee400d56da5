//! Safeguarded Newton iteration for the increasing branch of convex functions.

use crate::model::POLE_GUARD;

pub(crate) const MAX_ITER: usize = 200;
pub(crate) const RESIDUAL_TOL: f64 = 1e-12;

/// Largest `x >= lo` with `f(x) = target`, where `f(lo) <= target` and the
/// sublevel set `{f <= target}` is an interval (true for convex `f` and for
/// increasing `f`). `domain_upper` is the open upper end of the domain of `f`.
///
/// `eval` returns `(f(x), f'(x))`. Returns `None` if no point with
/// `f > target` can be found inside the domain.
pub(crate) fn right_crossing<F>(eval: F, target: f64, lo: f64, domain_upper: f64) -> Option<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (mut lo, mut hi) = bracket_above(&eval, target, lo, domain_upper)?;
    let mut x = hi;
    let mut best = (f64::INFINITY, hi);
    for _ in 0..MAX_ITER {
        let (fx, dfx) = eval(x);
        let r = fx - target;
        if r.abs() < best.0 {
            best = (r.abs(), x);
        }
        if r.abs() <= RESIDUAL_TOL * dfx.abs().max(1.0) {
            return Some(x);
        }
        if r > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            break;
        }
        let newton = x - r / dfx;
        x = if dfx > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Some(best.1)
}

/// Finds `hi > lo` inside the domain with `f(hi) > target`.
fn bracket_above<F>(eval: &F, target: f64, lo: f64, domain_upper: f64) -> Option<(f64, f64)>
where
    F: Fn(f64) -> (f64, f64),
{
    if domain_upper.is_finite() {
        // approach the pole geometrically, never closer than the guard
        let limit = domain_upper - 2.0 * POLE_GUARD * domain_upper.abs().max(f64::MIN_POSITIVE);
        let mut gap = domain_upper - lo;
        loop {
            gap *= 0.5;
            let hi = domain_upper - gap;
            if hi > limit {
                let (f, _) = eval(limit);
                return (f > target).then_some((lo, limit));
            }
            let (f, _) = eval(hi);
            if f > target {
                return Some((lo, hi));
            }
        }
    } else {
        let mut step = lo.abs().max(1.0);
        loop {
            let hi = lo + step;
            let (f, _) = eval(hi);
            if f > target {
                return Some((lo, hi));
            }
            if !f.is_finite() || step > 1e300 {
                return None;
            }
            step *= 2.0;
        }
    }
}
