//! Finite sums of real multiples of rational powers of t, and the
//! Riemann-Liouville integral acting on them in closed form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{gamma, recip_gamma};
use crate::order::Order;

/// `coefficient * t^exponent`
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: f64,
    pub exponent: Order,
}

impl Term {
    pub fn new(coefficient: f64, exponent: Order) -> Self {
        Term {
            coefficient,
            exponent,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coefficient * t.powf(self.exponent.to_f64())
    }
}

/// Sum of terms with distinct exponents, each above -1, sorted ascending.
/// The empty sum is the zero function.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PowerSum {
    terms: Vec<Term>,
}

impl PowerSum {
    pub fn zero() -> Self {
        PowerSum { terms: Vec::new() }
    }

    pub fn monomial(coefficient: f64, exponent: Order) -> Result<Self> {
        Self::from_terms([Term::new(coefficient, exponent)])
    }

    /// Merges equal exponents and drops exact zeros.
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Result<Self> {
        let mut merged: BTreeMap<Order, f64> = BTreeMap::new();
        for term in terms {
            if term.exponent <= -1 {
                return Err(Error::NonIntegrableExponent(term.exponent));
            }
            if !term.coefficient.is_finite() {
                return Err(Error::Domain(format!(
                    "non-finite coefficient {} on t^{}",
                    term.coefficient, term.exponent
                )));
            }
            *merged.entry(term.exponent).or_insert(0.0) += term.coefficient;
        }
        Ok(Self::from_sorted_map(merged))
    }

    fn from_sorted_map(map: BTreeMap<Order, f64>) -> Self {
        let terms = map
            .into_iter()
            .filter(|&(_, c)| c != 0.0)
            .map(|(e, c)| Term::new(c, e))
            .collect();
        PowerSum { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<Order> {
        self.terms.first().map(|t| t.exponent)
    }

    pub fn coefficient_of(&self, exponent: Order) -> f64 {
        self.terms
            .iter()
            .find(|t| t.exponent == exponent)
            .map_or(0.0, |t| t.coefficient)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        if k == 0.0 {
            return Self::zero();
        }
        PowerSum {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coefficient * k, t.exponent))
                .collect(),
        }
    }

    pub fn add(&self, other: &PowerSum) -> Self {
        let mut merged: BTreeMap<Order, f64> = BTreeMap::new();
        for t in self.terms.iter().chain(other.terms.iter()) {
            *merged.entry(t.exponent).or_insert(0.0) += t.coefficient;
        }
        Self::from_sorted_map(merged)
    }

    pub fn sub(&self, other: &PowerSum) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Splits into (terms with exponent < threshold, the rest).
    pub fn split_below(&self, threshold: Order) -> (PowerSum, PowerSum) {
        let (low, high): (Vec<Term>, Vec<Term>) =
            self.terms.iter().partition(|t| t.exponent < threshold);
        (PowerSum { terms: low }, PowerSum { terms: high })
    }

    /// I^alpha applied term-wise; see [`rl_integral_power`].
    pub fn rl_integral(&self, alpha: Order) -> PowerSum {
        debug_assert!(!alpha.is_negative());
        if alpha.is_zero() {
            return self.clone();
        }
        let a = alpha.to_f64();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let g = t.exponent.to_f64();
                // exponents > -1 and alpha > 0 keep both arguments off the poles
                let ratio = gamma_ratio(g + 1.0, g + a + 1.0);
                Term::new(t.coefficient * ratio, t.exponent + alpha)
            })
            .collect();
        PowerSum { terms }
    }

    /// Terms of D^alpha applied term-wise:
    /// `D^alpha t^g = Gamma(g+1)/Gamma(g+1-alpha) t^(g-alpha)`, which vanishes
    /// when `g - alpha` is a negative integer. The result need not be
    /// integrable, so it is returned as a bare term list.
    pub fn rl_derivative_terms(&self, alpha: Order) -> Vec<Term> {
        if alpha.is_zero() {
            return self.terms.clone();
        }
        let a = alpha.to_f64();
        self.terms
            .iter()
            .filter_map(|t| {
                let g = t.exponent.to_f64();
                let shifted = t.exponent - alpha;
                if shifted.is_negative() && shifted.is_integer() {
                    return None;
                }
                let c = t.coefficient * gamma(g + 1.0).ok()? * recip_gamma(g + 1.0 - a);
                Some(Term::new(c, shifted))
            })
            .collect()
    }

    /// Pointwise value of D^alpha of this sum at `t > 0`.
    pub fn rl_derivative_at(&self, alpha: Order, t: f64) -> f64 {
        self.rl_derivative_terms(alpha)
            .iter()
            .map(|term| term.eval(t))
            .sum()
    }
}

/// Gamma(x)/Gamma(y) for arguments known to be off the poles.
fn gamma_ratio(x: f64, y: f64) -> f64 {
    match (gamma(x), gamma(y)) {
        (Ok(gx), Ok(gy)) => gx / gy,
        _ => gamma(x).unwrap_or(f64::NAN) * recip_gamma(y),
    }
}

impl fmt::Display for PowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*t^{{{}}}", t.coefficient, t.exponent)?;
        }
        Ok(())
    }
}

/// Riemann-Liouville integral of order `alpha >= 0` of a power sum:
/// `I^alpha t^g = Gamma(g+1)/Gamma(alpha+g+1) t^(alpha+g)`.
pub fn rl_integral_power(alpha: Order, p: &PowerSum) -> Result<PowerSum> {
    if alpha.is_negative() {
        return Err(Error::InvalidOrder(format!(
            "integral order {alpha} is negative"
        )));
    }
    Ok(p.rl_integral(alpha))
}

/// Whether `t^exponent` lies in the image `I^gamma L^1[0, b]`.
pub fn is_in_image(exponent: Order, gamma: Order) -> bool {
    exponent > gamma - 1
}

/// One addend `coefficient * I^gap` of the convolution operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelTerm {
    pub coefficient: f64,
    pub gap: Order,
}

impl KernelTerm {
    pub fn new(coefficient: f64, gap: Order) -> Self {
        KernelTerm { coefficient, gap }
    }
}

/// Applies `sum_j c_j I^{gap_j}` to `p`, merging like exponents.
pub fn apply_upsilon(kernel: &[KernelTerm], p: &PowerSum) -> PowerSum {
    kernel.iter().fold(PowerSum::zero(), |acc, k| {
        debug_assert!(k.gap.is_positive());
        acc.add(&p.rl_integral(k.gap).scale(k.coefficient))
    })
}
