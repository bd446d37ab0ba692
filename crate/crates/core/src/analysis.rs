//! Structure of the solution space of
//! `c_1 D^{b_1} u + ... + c_n D^{b_n} u = w`: which powers of t a strong
//! solution may carry and which initial values pin it down.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::Order;
use crate::power_sum::PowerSum;
use crate::sampled::SampledFunction;

/// Right-hand side `w` of the equation.
#[derive(Clone, Debug, PartialEq)]
pub enum Rhs {
    Power(PowerSum),
    /// Reference to a `t,w` CSV that still has to be loaded.
    File(PathBuf),
    Sampled(SampledFunction),
}

impl Rhs {
    pub fn zero() -> Self {
        Rhs::Power(PowerSum::zero())
    }

    fn scale(&self, k: f64) -> Result<Rhs> {
        match self {
            Rhs::Power(p) => Ok(Rhs::Power(p.scale(k))),
            Rhs::Sampled(s) => Ok(Rhs::Sampled(s.scale(k))),
            Rhs::File(path) => Err(Error::UnloadedRhs(path.clone())),
        }
    }

    /// Value of `w` at `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            Rhs::Power(p) => Ok(p.eval(t)),
            Rhs::Sampled(s) => s.eval(t),
            Rhs::File(path) => Err(Error::UnloadedRhs(path.clone())),
        }
    }

    /// Replaces a file reference by its contents; other variants pass through.
    pub fn load(self) -> Result<Rhs> {
        match self {
            Rhs::File(path) => Ok(Rhs::Sampled(SampledFunction::read_csv_path(&path)?)),
            other => Ok(other),
        }
    }
}

/// Orders `b_1 < ... < b_n`, coefficients `c_1..c_n` and right-hand side.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSpec {
    orders: Vec<Order>,
    coefficients: Vec<f64>,
    rhs: Rhs,
}

impl EquationSpec {
    pub fn new(orders: Vec<Order>, coefficients: Vec<f64>, rhs: Rhs) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidEquation("no derivative terms".into()));
        }
        if orders.len() != coefficients.len() {
            return Err(Error::LengthMismatch {
                expected: orders.len(),
                found: coefficients.len(),
            });
        }
        if let Some(neg) = orders.iter().find(|o| o.is_negative()) {
            return Err(Error::InvalidEquation(format!("negative order {neg}")));
        }
        if orders.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidEquation(
                "orders must be strictly increasing".into(),
            ));
        }
        let top = *orders.last().unwrap();
        if !top.is_positive() {
            return Err(Error::InvalidEquation(
                "highest order must be positive".into(),
            ));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidEquation("non-finite coefficient".into()));
        }
        if *coefficients.last().unwrap() == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(EquationSpec {
            orders,
            coefficients,
            rhs,
        })
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn rhs(&self) -> &Rhs {
        &self.rhs
    }

    pub fn top_order(&self) -> Order {
        *self.orders.last().unwrap()
    }

    pub fn leading_coefficient(&self) -> f64 {
        *self.coefficients.last().unwrap()
    }

    pub fn is_normalized(&self) -> bool {
        self.leading_coefficient() == 1.0
    }

    /// Coefficient of the term of order `order`, zero if absent.
    pub fn coefficient_of(&self, order: Order) -> f64 {
        self.orders
            .iter()
            .position(|&o| o == order)
            .map_or(0.0, |i| self.coefficients[i])
    }

    pub fn with_rhs(&self, rhs: Rhs) -> EquationSpec {
        EquationSpec {
            orders: self.orders.clone(),
            coefficients: self.coefficients.clone(),
            rhs,
        }
    }

    /// Loads a file-backed right-hand side, if any.
    pub fn load_rhs(self) -> Result<EquationSpec> {
        let rhs = self.rhs.load()?;
        Ok(EquationSpec { rhs, ..self })
    }

    /// Divides the equation by its leading coefficient.
    pub fn normalize(&self) -> Result<EquationSpec> {
        let lead = self.leading_coefficient();
        if lead == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        if lead == 1.0 {
            return Ok(self.clone());
        }
        let k = 1.0 / lead;
        let mut coefficients: Vec<f64> = self.coefficients.iter().map(|c| c / lead).collect();
        *coefficients.last_mut().unwrap() = 1.0;
        Ok(EquationSpec {
            orders: self.orders.clone(),
            coefficients,
            rhs: self.rhs.scale(k)?,
        })
    }
}

/// Free-function form of [`EquationSpec::normalize`].
pub fn normalize(spec: &EquationSpec) -> Result<EquationSpec> {
    spec.normalize()
}

/// Largest order whose distance to the top order is not an integer;
/// zero when there is none.
pub fn compute_beta_star(orders: &[Order]) -> Order {
    let Some((&top, lower)) = orders.split_last() else {
        return Order::ZERO;
    };
    lower
        .iter()
        .copied()
        .filter(|&o| !(top - o).is_integer())
        .max()
        .unwrap_or(Order::ZERO)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IcKind {
    /// `D^q u(0)` with `q >= 0`
    Derivative,
    /// `I^q u(0)`, stored with negative order `-q`
    Integral,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ReportWire", try_from = "ReportWire")]
pub struct AnalysisReport {
    pub beta_star: Order,
    /// Number of initial values, `ceil(b_n - beta_star)`.
    pub m: usize,
    /// `b_n - 1` down to `b_n - ceil(b_n)`: the kernel of `D^{b_n}`.
    pub kernel_basis_exponents: Vec<Order>,
    /// `b_n - 1` down to `b_n - m`.
    pub strong_basis_exponents: Vec<Order>,
    /// `b_n - m, ..., b_n - 1`, lowest first.
    pub ic_orders: Vec<Order>,
    pub ic_kinds: Vec<IcKind>,
    pub codimension: usize,
}

impl AnalysisReport {
    pub fn top_order(&self) -> Order {
        self.ic_orders[self.m - 1] + 1
    }

    /// Dimension of the weak solution family.
    pub fn weak_dimension(&self) -> usize {
        self.kernel_basis_exponents.len()
    }

    /// Human-readable `I^{2/3}u(0)` / `D^{1/3}u(0)` labels.
    pub fn ic_labels(&self) -> Vec<String> {
        self.ic_orders
            .iter()
            .zip(&self.ic_kinds)
            .map(|(o, k)| match k {
                IcKind::Integral => format!("I^{{{}}}u(0)", -*o),
                IcKind::Derivative => format!("D^{{{o}}}u(0)"),
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct IcWire {
    kind: IcKind,
    order: Order,
}

#[derive(Serialize, Deserialize)]
struct ReportWire {
    beta_star: Order,
    m: usize,
    codimension: usize,
    kernel_basis_exponents: Vec<Order>,
    strong_basis_exponents: Vec<Order>,
    initial_conditions: Vec<IcWire>,
}

impl From<AnalysisReport> for ReportWire {
    fn from(r: AnalysisReport) -> Self {
        let initial_conditions = r
            .ic_orders
            .iter()
            .zip(&r.ic_kinds)
            .map(|(&o, &kind)| IcWire {
                kind,
                order: if kind == IcKind::Integral { -o } else { o },
            })
            .collect();
        ReportWire {
            beta_star: r.beta_star,
            m: r.m,
            codimension: r.codimension,
            kernel_basis_exponents: r.kernel_basis_exponents,
            strong_basis_exponents: r.strong_basis_exponents,
            initial_conditions,
        }
    }
}

impl TryFrom<ReportWire> for AnalysisReport {
    type Error = String;

    fn try_from(w: ReportWire) -> std::result::Result<Self, String> {
        if w.initial_conditions.len() != w.m {
            return Err(format!(
                "{} initial conditions listed for m = {}",
                w.initial_conditions.len(),
                w.m
            ));
        }
        let (ic_orders, ic_kinds) = w
            .initial_conditions
            .iter()
            .map(|ic| match ic.kind {
                IcKind::Integral => (-ic.order, ic.kind),
                IcKind::Derivative => (ic.order, ic.kind),
            })
            .unzip();
        Ok(AnalysisReport {
            beta_star: w.beta_star,
            m: w.m,
            kernel_basis_exponents: w.kernel_basis_exponents,
            strong_basis_exponents: w.strong_basis_exponents,
            ic_orders,
            ic_kinds,
            codimension: w.codimension,
        })
    }
}

/// Orders that actually take part: lower orders with a zero coefficient
/// are dropped, the top order is always kept.
fn active_orders(spec: &EquationSpec) -> Vec<Order> {
    let n = spec.orders.len();
    spec.orders
        .iter()
        .zip(&spec.coefficients)
        .enumerate()
        .filter(|&(i, (_, &c))| i == n - 1 || c != 0.0)
        .map(|(_, (&o, _))| o)
        .collect()
}

pub fn analyze(spec: &EquationSpec) -> AnalysisReport {
    let top = spec.top_order();
    let beta_star = compute_beta_star(&active_orders(spec));
    let m = (top - beta_star).ceil() as usize;
    let weak = top.ceil() as usize;
    let kernel_basis_exponents: Vec<Order> = (1..=weak as i64).map(|k| top - k).collect();
    let strong_basis_exponents = kernel_basis_exponents[..m].to_vec();
    let ic_orders: Vec<Order> = (1..=m as i64).rev().map(|k| top - k).collect();
    let ic_kinds = ic_orders
        .iter()
        .map(|o| {
            if o.is_negative() {
                IcKind::Integral
            } else {
                IcKind::Derivative
            }
        })
        .collect();
    AnalysisReport {
        beta_star,
        m,
        kernel_basis_exponents,
        strong_basis_exponents,
        ic_orders,
        ic_kinds,
        codimension: m,
    }
}

/// True iff every term of `singular_part` is a strong-basis power.
pub fn check_strong_membership(singular_part: &PowerSum, report: &AnalysisReport) -> Result<bool> {
    let mut strong = true;
    for term in singular_part.terms() {
        if !report.kernel_basis_exponents.contains(&term.exponent) {
            return Err(Error::OutsideKernelBasis(term.exponent));
        }
        strong &= report.strong_basis_exponents.contains(&term.exponent);
    }
    Ok(strong)
}
