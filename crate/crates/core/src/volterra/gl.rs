//! Grünwald–Letnikov differentiation of grid solutions, used to check how
//! well a computed solution satisfies the differential equation.

use crate::analysis::EquationSpec;
use crate::error::Result;
use crate::order::Order;

use super::solver::GridSolution;

/// `w_0 = 1, w_k = w_{k-1} (1 - (alpha + 1) / k)`.
pub fn gl_weights(alpha: f64, n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n);
    let mut prev = 1.0;
    for k in 0..n {
        if k > 0 {
            prev *= 1.0 - (alpha + 1.0) / k as f64;
        }
        w.push(prev);
    }
    w
}

/// `D^alpha u` at `t_1..t_N`: the singular part exactly, the regular part
/// by the Grünwald–Letnikov sum over `y(t_0)..y(t_i)`. A negative `alpha`
/// gives the fractional integral of order `-alpha` the same way.
pub fn gl_derivative(solution: &GridSolution, alpha: Order) -> Vec<f64> {
    if alpha.is_zero() {
        return solution.values();
    }
    let n = solution.len();
    let h = solution.step();
    let a = alpha.to_f64();
    let w = gl_weights(a, n + 1);
    let origin = solution.regular_at_origin();
    let mut y = Vec::with_capacity(n + 1);
    y.push(if origin.is_finite() { origin } else { 0.0 });
    y.extend_from_slice(solution.regular_samples());
    let scale = h.powf(-a);
    (1..=n)
        .map(|i| {
            let regular: f64 = (0..=i).map(|k| w[k] * y[i - k]).sum();
            let t = solution.node(i);
            scale * regular + solution.singular_part().rl_derivative_at(alpha, t)
        })
        .collect()
}

/// `max |sum c_j D^{b_j} u - w|` over the grid nodes in `[b/10, b]`.
pub fn residual(solution: &GridSolution, spec: &EquationSpec) -> Result<f64> {
    let spec = spec.normalize()?;
    let derivatives: Vec<Vec<f64>> = spec
        .orders()
        .iter()
        .zip(spec.coefficients())
        .filter(|(_, &c)| c != 0.0)
        .map(|(&o, _)| gl_derivative(solution, o))
        .collect();
    let coefficients: Vec<f64> = spec
        .coefficients()
        .iter()
        .copied()
        .filter(|&c| c != 0.0)
        .collect();
    let start = 0.1 * solution.interval_end();
    let mut worst = 0.0f64;
    for (i, t) in solution.nodes().enumerate() {
        if t < start * (1.0 - 1e-12) {
            continue;
        }
        let lhs: f64 = coefficients
            .iter()
            .zip(&derivatives)
            .map(|(c, d)| c * d[i])
            .sum();
        worst = worst.max((lhs - spec.rhs().eval(t)?).abs());
    }
    Ok(worst)
}
