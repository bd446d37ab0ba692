use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::power_sum::PowerSum;

use super::problem::{neumann_smooth, VolterraProblem};

/// Samples of `u = singular_part + y` on `t_i = i h`, `i = 1..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSolution {
    step: f64,
    regular: Vec<f64>,
    regular_at_origin: f64,
    singular_part: PowerSum,
}

impl GridSolution {
    /// `regular[i - 1]` is `y(t_i)`; `regular_at_origin` is `y(0)`.
    pub fn new(
        step: f64,
        regular: Vec<f64>,
        regular_at_origin: f64,
        singular_part: PowerSum,
    ) -> Result<Self> {
        if regular.len() < 2 {
            return Err(Error::GridTooSmall(regular.len()));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::NonPositiveInterval(step));
        }
        if regular.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite regular sample".into()));
        }
        Ok(GridSolution {
            step,
            regular,
            regular_at_origin,
            singular_part,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.regular.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regular.is_empty()
    }

    pub fn interval_end(&self) -> f64 {
        self.step * self.regular.len() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.step * i as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.regular.len()).map(|i| self.node(i))
    }

    pub fn regular_samples(&self) -> &[f64] {
        &self.regular
    }

    pub fn regular_at_origin(&self) -> f64 {
        self.regular_at_origin
    }

    pub fn singular_part(&self) -> &PowerSum {
        &self.singular_part
    }

    /// `u(t_i)` for `i = 1..=N`.
    pub fn values(&self) -> Vec<f64> {
        self.nodes()
            .zip(&self.regular)
            .map(|(t, y)| self.singular_part.eval(t) + y)
            .collect()
    }
}

/// Product-integration weights `w_d = int_{t_{d}}^{t_{d+1}} K(s) ds` of the
/// kernel `K(s) = sum c s^{g-1} / Gamma(g)`, for `d = 0..n`.
pub(crate) fn kernel_moments(problem: &VolterraProblem, step: f64, n: usize) -> Result<Vec<f64>> {
    let mut w = vec![0.0; n];
    for k in problem.kernel() {
        let g = k.gap.to_f64();
        let scale = k.coefficient * step.powf(g) / gamma(g + 1.0)?;
        let mut prev = 0.0;
        for (d, slot) in w.iter_mut().enumerate() {
            let next = ((d + 1) as f64).powf(g);
            *slot += scale * (next - prev);
            prev = next;
        }
    }
    Ok(w)
}

impl VolterraProblem {
    /// Diagonal entry `1 + w_0` of the discretized operator with `n` steps.
    pub fn discretization_diagonal(&self, n: usize) -> Result<f64> {
        let h = self.interval_end() / n as f64;
        Ok(1.0 + kernel_moments(self, h, 1)?[0])
    }
}

/// Solves the problem on a uniform grid of `n` intervals.
///
/// The singular source is first peeled off exactly (see
/// [`neumann_smooth`]); the remaining continuous unknown is taken
/// piecewise constant on `(t_{i-1}, t_i]` with value `y(t_i)`, the kernel
/// integrated exactly over each cell, and the lower-triangular system
/// solved by forward substitution.
pub fn solve_volterra(problem: &VolterraProblem, n: usize) -> Result<GridSolution> {
    if n < 2 {
        return Err(Error::GridTooSmall(n));
    }
    let smoothing = neumann_smooth(problem);
    let residual = &smoothing.residual;
    if let Some(e) = residual.rhs_singular().min_exponent() {
        if e.is_negative() {
            return Err(Error::SingularRhs(e));
        }
    }
    let h = problem.interval_end() / n as f64;
    let w = kernel_moments(residual, h, n)?;
    let diagonal = 1.0 + w[0];
    if diagonal.abs() < 1e-12 {
        return Err(Error::IllConditioned(diagonal));
    }
    let rhs: Vec<f64> = (1..=n)
        .map(|i| residual.rhs_at(h * i as f64))
        .collect::<Result<_>>()?;
    let mut y = vec![0.0; n];
    for i in 0..n {
        let history: f64 = (0..i).map(|j| w[i - j] * y[j]).sum();
        y[i] = (rhs[i] - history) / diagonal;
    }
    // continuous unknown: at the origin the convolution vanishes
    let origin = residual.rhs_at(0.0)?;
    GridSolution::new(h, y, origin, smoothing.accumulated)
}
