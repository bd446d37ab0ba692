//! Two-parameter Mittag-Leffler function on the real line.
//!
//! Power series where it is well conditioned; for `0 < alpha < 1` and
//! negative arguments, a real-line integral representation (reducing
//! `beta` below `1 + alpha` with the three-term recurrence first).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, recip_gamma, sin_pi};
use crate::quadrature::integrate;

const MAX_TERMS: usize = 10_000;
const SERIES_RADIUS: f64 = 5.0;
const MAX_ARGUMENT: f64 = 50.0;
// largest tolerated ratio of the biggest series term to the sum: about six
// digits may be lost when nothing else is available, two when the integral
// representation can take over
const CANCELLATION_LIMIT: f64 = 1e6;
const CANCELLATION_LIMIT_WITH_FALLBACK: f64 = 1e2;

/// `E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta)` for `|z| <= 50`.
pub fn mittag_leffler(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("alpha = {alpha} must be positive")));
    }
    if !beta.is_finite() || !z.is_finite() {
        return Err(Error::Domain("non-finite Mittag-Leffler argument".into()));
    }
    if z.abs() > MAX_ARGUMENT {
        return Err(Error::Domain(format!(
            "|z| = {} exceeds {MAX_ARGUMENT}",
            z.abs()
        )));
    }
    if z == 0.0 {
        return Ok(recip_gamma(beta));
    }
    let integral_route = z < 0.0 && alpha < 1.0;
    if integral_route && z < -SERIES_RADIUS {
        return continued(alpha, beta, z);
    }
    let limit = if integral_route {
        CANCELLATION_LIMIT_WITH_FALLBACK
    } else {
        CANCELLATION_LIMIT
    };
    match series(alpha, beta, z, limit) {
        Err(Error::PrecisionLoss(_) | Error::SeriesDivergence(_)) if integral_route => {
            continued(alpha, beta, z)
        }
        other => other,
    }
}

fn series(alpha: f64, beta: f64, z: f64, cancellation_limit: f64) -> Result<f64> {
    let ln_z = z.abs().ln();
    let negative = z < 0.0;
    // Neumaier-compensated sum
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    let mut max_term = 0.0f64;
    let mut prev_abs = f64::INFINITY;
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let arg = alpha * k as f64 + beta;
        let term = if arg > 0.0 {
            let ln_term = k as f64 * ln_z - ln_gamma(arg)?;
            if ln_term > 700.0 {
                return Err(Error::Domain(format!("E_({alpha},{beta})({z}) overflows")));
            }
            let mag = ln_term.exp();
            if negative && k % 2 == 1 {
                -mag
            } else {
                mag
            }
        } else {
            z.powi(k as i32) * recip_gamma(arg)
        };
        let t = sum + term;
        if sum.abs() >= term.abs() {
            compensation += (sum - t) + term;
        } else {
            compensation += (term - t) + sum;
        }
        sum = t;
        let abs = term.abs();
        max_term = max_term.max(abs);
        let total = (sum + compensation).abs();
        if abs <= prev_abs && abs <= 1e-16 * total {
            quiet += 1;
            if quiet >= 2 {
                let value = sum + compensation;
                if max_term > cancellation_limit * value.abs() {
                    return Err(Error::PrecisionLoss(z));
                }
                return Ok(value);
            }
        } else {
            quiet = 0;
        }
        prev_abs = abs;
    }
    Err(Error::SeriesDivergence(MAX_TERMS))
}

/// Negative `z`, `0 < alpha < 1`.
fn continued(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    if beta >= 1.0 + alpha {
        let lower = continued(alpha, beta - alpha, z)?;
        return Ok((lower - recip_gamma(beta - alpha)) / z);
    }
    Ok(real_line_integral(alpha, beta, z))
}

/// `(1/pi) int_0^inf s^{a-b} e^{-s} (s^a sin(pi(1-b)) - z sin(pi(1-b+a)))
///   / (s^{2a} - 2 s^a z cos(pi a) + z^2) ds`, valid for `b < 1 + a`.
fn real_line_integral(alpha: f64, beta: f64, z: f64) -> f64 {
    let sin_b = sin_pi(1.0 - beta);
    let sin_ab = sin_pi(1.0 - beta + alpha);
    let cos_a = (PI * alpha).cos();
    let rational = move |s: f64| {
        let sa = s.powf(alpha);
        (sa * sin_b - z * sin_ab) / (sa * sa - 2.0 * sa * z * cos_a + z * z)
    };
    // s = u^p absorbs the s^{a-b} singularity at the origin when b > a
    let p = if beta > alpha {
        1.0 / (1.0 + alpha - beta)
    } else {
        1.0
    };
    let integrand = move |u: f64| {
        if p == 1.0 {
            if u == 0.0 && alpha < beta {
                return 0.0;
            }
            u.powf(alpha - beta) * (-u).exp() * rational(u)
        } else {
            let s = u.powf(p);
            p * (-s).exp() * rational(s)
        }
    };
    let s_max = 80.0f64;
    let mut breaks = vec![0.0];
    if cos_a < 0.0 {
        let peak = (-z * -cos_a).powf(1.0 / alpha);
        if peak < s_max {
            breaks.push(peak.powf(1.0 / p));
        }
    }
    breaks.push(s_max.powf(1.0 / p));
    let pieces = |tol: f64| {
        breaks
            .windows(2)
            .map(|w| integrate(&integrand, w[0], w[1], tol, 400).0)
            .sum::<f64>()
    };
    let rough = pieces(1e-10);
    let refined = pieces(1e-15 * rough.abs().max(1e-300));
    refined / PI
}
