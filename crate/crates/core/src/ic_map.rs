//! Correspondence between initial values of a strong solution and the
//! source term `f = sum_k b_k t^{b_n - m + k - 1}` of the integral form.
//!
//! Row k (lowest order first) reads
//! `a_k + e_1 a_{k-1} + ... + e_{k-1} a_1 = Gamma(b_n - m + k) b_k`
//! where `e_j` is the coefficient of `D^{b_n - j}`. The matrix is lower
//! triangular with unit diagonal, so both directions are substitutions.

use serde::{Deserialize, Serialize};

use crate::analysis::{AnalysisReport, EquationSpec};
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::power_sum::{PowerSum, Term};

/// Initial values `a_1..a_m`; `a_k` belongs to order `b_n - m + k - 1`
/// (a fractional integral at 0 when that order is negative).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IcVector(pub Vec<f64>);

/// Source coefficients `b_1..b_m`; `b_k` multiplies `t^{b_n - m + k - 1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SourceCoefficients(pub Vec<f64>);

impl SourceCoefficients {
    /// The source term as a power sum over the strong basis.
    pub fn to_power_sum(&self, report: &AnalysisReport) -> Result<PowerSum> {
        check_len(self.0.len(), report.m)?;
        PowerSum::from_terms(
            self.0
                .iter()
                .zip(&report.ic_orders)
                .map(|(&b, &e)| Term::new(b, e)),
        )
    }
}

fn check_len(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// `(e_1, ..., e_{m-1})`: coefficients of `D^{b_n - j}` relative to the
/// leading one, zero where the equation has no such term.
pub fn integer_gap_coefficients(spec: &EquationSpec, m: usize) -> Vec<f64> {
    let top = spec.top_order();
    let lead = spec.leading_coefficient();
    (1..m as i64)
        .map(|j| spec.coefficient_of(top - j) / lead)
        .collect()
}

/// `Gamma(b_n - m + k)` for k = 1..m: the value of `D^{order} t^{order}`.
fn diagonal_gammas(report: &AnalysisReport) -> Result<Vec<f64>> {
    report
        .ic_orders
        .iter()
        .map(|o| gamma(o.to_f64() + 1.0))
        .collect()
}

pub fn ic_to_source(
    a: &IcVector,
    spec: &EquationSpec,
    report: &AnalysisReport,
) -> Result<SourceCoefficients> {
    let m = report.m;
    check_len(a.0.len(), m)?;
    let e = integer_gap_coefficients(spec, m);
    let g = diagonal_gammas(report)?;
    let b = (0..m)
        .map(|k| {
            let coupled: f64 = (1..=k).map(|j| e[j - 1] * a.0[k - j]).sum();
            (a.0[k] + coupled) / g[k]
        })
        .collect();
    Ok(SourceCoefficients(b))
}

pub fn source_to_ic(
    b: &SourceCoefficients,
    spec: &EquationSpec,
    report: &AnalysisReport,
) -> Result<IcVector> {
    let m = report.m;
    check_len(b.0.len(), m)?;
    let e = integer_gap_coefficients(spec, m);
    let g = diagonal_gammas(report)?;
    let mut a = Vec::with_capacity(m);
    for k in 0..m {
        let coupled: f64 = (1..=k).map(|j| e[j - 1] * a[k - j]).sum();
        a.push(g[k] * b.0[k] - coupled);
    }
    Ok(IcVector(a))
}
