//! Real Gamma function.
//!
//! Lanczos approximation (Godfrey's g = 607/128, 15 terms) on [1, 2),
//! shifted there by the recurrence for moderate arguments and by
//! reflection below 1/2.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 607.0 / 128.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_76e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

// Above this, shifting down to [1, 2) costs more rounding than Lanczos itself.
const RECURRENCE_LIMIT: f64 = 60.0;

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let sum = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (k, c)| {
            acc + c / (z + (k + 1) as f64)
        });
    let t = z + LANCZOS_G + 0.5;
    // t^(z+1/2) e^(-t), split in halves so large arguments do not overflow early
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * sum
}

/// sin(pi x) with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r > 0.75 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.75 {
        -(PI * (1.0 + r)).sin()
    } else if r > 0.0 {
        (PI * (0.5 - r)).cos()
    } else {
        -(PI * (0.5 + r)).cos()
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Gamma function on the reals.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::GammaPole(x));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma_unchecked(1.0 - x));
    }
    if x < 1.0 {
        return lanczos(x + 1.0) / x;
    }
    if x > RECURRENCE_LIMIT {
        return lanczos(x);
    }
    let mut y = x;
    let mut product = 1.0;
    while y >= 2.0 {
        y -= 1.0;
        product *= y;
    }
    product * lanczos(y)
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma needs x > 0, got {x}")));
    }
    if x < 100.0 {
        return Ok(gamma_unchecked(x).ln());
    }
    let z = x - 1.0;
    let sum = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (k, c)| {
            acc + c / (z + (k + 1) as f64)
        });
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + sum.ln())
}

/// 1/Gamma(x), which is entire: zero at the poles of Gamma.
pub fn recip_gamma(x: f64) -> f64 {
    if is_pole(x) {
        0.0
    } else {
        1.0 / gamma_unchecked(x)
    }
}
