use crate::analysis::{EquationSpec, Rhs};
use crate::error::{Error, Result};
use crate::order::Order;
use crate::power_sum::{apply_upsilon, KernelTerm, PowerSum};
use crate::sampled::SampledFunction;

/// The smooth part `I^{b_n} w` of the right-hand side.
#[derive(Clone, Debug, PartialEq)]
pub enum RegularRhs {
    /// Exact, when `w` is itself a power sum.
    Power(PowerSum),
    /// Precomputed on the data grid, interpolated linearly elsewhere.
    Sampled(SampledFunction),
}

impl RegularRhs {
    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            RegularRhs::Power(p) => Ok(p.eval(t)),
            RegularRhs::Sampled(s) => s.eval(t),
        }
    }
}

/// `u + sum_j c_j I^{gap_j} u = rhs_regular + rhs_singular` on `[0, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct VolterraProblem {
    pub(crate) kernel: Vec<KernelTerm>,
    pub(crate) rhs_regular: RegularRhs,
    pub(crate) rhs_singular: PowerSum,
    pub(crate) interval_end: f64,
}

impl VolterraProblem {
    pub fn new(
        kernel: Vec<KernelTerm>,
        rhs_regular: RegularRhs,
        rhs_singular: PowerSum,
        interval_end: f64,
    ) -> Result<Self> {
        if !(interval_end > 0.0 && interval_end.is_finite()) {
            return Err(Error::NonPositiveInterval(interval_end));
        }
        if let Some(k) = kernel.iter().find(|k| !k.gap.is_positive()) {
            return Err(Error::InvalidOrder(format!(
                "kernel gap {} is not positive",
                k.gap
            )));
        }
        if let RegularRhs::Sampled(s) = &rhs_regular {
            if s.end() < interval_end * (1.0 - 1e-12) {
                return Err(Error::SampledData(format!(
                    "samples end at {} but the interval ends at {interval_end}",
                    s.end()
                )));
            }
        }
        Ok(VolterraProblem {
            kernel,
            rhs_regular,
            rhs_singular,
            interval_end,
        })
    }

    pub fn kernel(&self) -> &[KernelTerm] {
        &self.kernel
    }

    pub fn rhs_regular(&self) -> &RegularRhs {
        &self.rhs_regular
    }

    pub fn rhs_singular(&self) -> &PowerSum {
        &self.rhs_singular
    }

    pub fn interval_end(&self) -> f64 {
        self.interval_end
    }

    /// Smallest kernel gap, if any.
    pub fn min_gap(&self) -> Option<Order> {
        self.kernel.iter().map(|k| k.gap).min()
    }

    /// Value of the full right-hand side at `t`.
    pub fn rhs_at(&self, t: f64) -> Result<f64> {
        Ok(self.rhs_regular.eval(t)? + self.rhs_singular.eval(t))
    }
}

/// Integral form of the equation with source term `f`:
/// `(c_1 I^{b_n-b_1} + ... + c_{n-1} I^{b_n-b_{n-1}} + Id) u = I^{b_n} w + f`.
pub fn build_problem(spec: &EquationSpec, source: &PowerSum, b: f64) -> Result<VolterraProblem> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::NonPositiveInterval(b));
    }
    let spec = spec.normalize()?;
    let top = spec.top_order();
    let n = spec.orders().len();
    let kernel = spec.orders()[..n - 1]
        .iter()
        .zip(&spec.coefficients()[..n - 1])
        .filter(|(_, &c)| c != 0.0)
        .map(|(&o, &c)| KernelTerm::new(c, top - o))
        .collect();
    let rhs_regular = match spec.rhs() {
        Rhs::Power(w) => RegularRhs::Power(w.rl_integral(top)),
        Rhs::Sampled(w) => RegularRhs::Sampled(w.fractional_integral(top)?),
        Rhs::File(path) => return Err(Error::UnloadedRhs(path.clone())),
    };
    VolterraProblem::new(kernel, rhs_regular, source.clone(), b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NeumannSmoothing {
    /// Exact singular component `S`; the unknown is `u = S + y`.
    pub accumulated: PowerSum,
    /// Problem for `y`, whose power-sum right-hand side has only
    /// non-negative exponents.
    pub residual: VolterraProblem,
    pub iterations: usize,
}

/// Peels the singular source off the unknown: `u -> u - g` turns the
/// source `g` into `-Upsilon g`, whose exponents are higher by at least the
/// smallest gap. Repeats on the still-negative part until none is left.
pub fn neumann_smooth(problem: &VolterraProblem) -> NeumannSmoothing {
    let mut accumulated = PowerSum::zero();
    let mut continuous = PowerSum::zero();
    let mut pending = problem.rhs_singular.clone();
    let mut iterations = 0;
    while !pending.is_zero() {
        iterations += 1;
        accumulated = accumulated.add(&pending);
        let pushed = apply_upsilon(&problem.kernel, &pending).scale(-1.0);
        let (singular, smooth) = pushed.split_below(Order::ZERO);
        continuous = continuous.add(&smooth);
        pending = singular;
    }
    let residual = VolterraProblem {
        kernel: problem.kernel.clone(),
        rhs_regular: problem.rhs_regular.clone(),
        rhs_singular: continuous,
        interval_end: problem.interval_end,
    };
    NeumannSmoothing {
        accumulated,
        residual,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::gamma::gamma;
    use crate::ic_map::SourceCoefficients;
    use crate::power_sum::Term;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Order {
        Order::new(n, d).unwrap()
    }

    fn three_term() -> EquationSpec {
        let w = PowerSum::monomial(1.0, q(3, 1)).unwrap();
        EquationSpec::new(
            vec![q(1, 3), q(4, 3), q(7, 3)],
            vec![4.0, 3.0, 1.0],
            Rhs::Power(w),
        )
        .unwrap()
    }

    fn five_term() -> EquationSpec {
        let w = PowerSum::monomial(1.0, Order::ONE).unwrap();
        EquationSpec::new(
            vec![Order::ONE, q(5, 4), q(2, 1), q(9, 4), q(13, 4)],
            vec![1.0, 1.0, 1.0, 3.0, 1.0],
            Rhs::Power(w),
        )
        .unwrap()
    }

    #[test]
    fn three_term_problem() {
        let p = build_problem(&three_term(), &PowerSum::zero(), 1.0).unwrap();
        assert_eq!(
            p.kernel(),
            &[
                KernelTerm::new(4.0, q(2, 1)),
                KernelTerm::new(3.0, Order::ONE)
            ]
        );
        let RegularRhs::Power(r) = p.rhs_regular() else {
            panic!()
        };
        assert_eq!(r.len(), 1);
        assert_eq!(r.terms()[0].exponent, q(16, 3));
        let expected = gamma(4.0).unwrap() / gamma(4.0 + 7.0 / 3.0).unwrap();
        assert!((r.terms()[0].coefficient - expected).abs() < 1e-15 * expected);
    }

    #[test]
    fn five_term_problem() {
        let p = build_problem(&five_term(), &PowerSum::zero(), 1.0).unwrap();
        assert_eq!(
            p.kernel(),
            &[
                KernelTerm::new(1.0, q(9, 4)),
                KernelTerm::new(1.0, q(2, 1)),
                KernelTerm::new(1.0, q(5, 4)),
                KernelTerm::new(3.0, Order::ONE),
            ]
        );
    }

    #[test]
    fn single_order_has_empty_kernel() {
        let s = EquationSpec::new(vec![q(1, 2)], vec![1.0], Rhs::zero()).unwrap();
        let p = build_problem(&s, &PowerSum::zero(), 2.0).unwrap();
        assert!(p.kernel().is_empty());
    }

    #[test]
    fn rejects_bad_interval() {
        for b in [0.0, -1.0, f64::NAN] {
            assert!(matches!(
                build_problem(&three_term(), &PowerSum::zero(), b),
                Err(Error::NonPositiveInterval(_))
            ));
        }
    }

    #[test]
    fn unnormalized_spec_is_normalized() {
        let w = PowerSum::monomial(2.0, Order::ZERO).unwrap();
        let s =
            EquationSpec::new(vec![q(1, 2), Order::ONE], vec![4.0, 2.0], Rhs::Power(w)).unwrap();
        let p = build_problem(&s, &PowerSum::zero(), 1.0).unwrap();
        assert_eq!(p.kernel(), &[KernelTerm::new(2.0, q(1, 2))]);
        let RegularRhs::Power(r) = p.rhs_regular() else {
            panic!()
        };
        assert_eq!(r.terms(), &[Term::new(1.0, Order::ONE)]);
    }

    #[test]
    fn smoothing_continuous_source_takes_one_pass() {
        let s = five_term();
        let r = analyze(&s);
        let f = SourceCoefficients(vec![0.5, -2.0])
            .to_power_sum(&r)
            .unwrap();
        let p = build_problem(&s, &f, 1.0).unwrap();
        let sm = neumann_smooth(&p);
        assert_eq!(sm.iterations, 1);
        assert_eq!(sm.accumulated, f);
        let expected = apply_upsilon(p.kernel(), &f).scale(-1.0);
        assert_eq!(sm.residual.rhs_singular(), &expected);
        assert_eq!(sm.residual.rhs_singular().min_exponent(), Some(q(9, 4)));
        assert_eq!(sm.residual.rhs_regular(), p.rhs_regular());
    }

    #[test]
    fn smoothing_with_empty_kernel() {
        let s = EquationSpec::new(vec![q(1, 2)], vec![1.0], Rhs::zero()).unwrap();
        let f = PowerSum::monomial(1.0, q(-1, 2)).unwrap();
        let p = build_problem(&s, &f, 1.0).unwrap();
        let sm = neumann_smooth(&p);
        assert_eq!(sm.accumulated, f);
        assert!(sm.residual.rhs_singular().is_zero());
        assert_eq!(sm.residual.rhs_regular(), p.rhs_regular());
    }

    #[test]
    fn smoothing_small_gap_needs_several_passes() {
        // u + I^{1/5} u = t^{-9/10}: exponents climb by 1/5 per pass
        let kernel = vec![KernelTerm::new(1.0, q(1, 5))];
        let f = PowerSum::monomial(1.0, q(-9, 10)).unwrap();
        let p = VolterraProblem::new(kernel, RegularRhs::Power(PowerSum::zero()), f, 1.0).unwrap();
        let sm = neumann_smooth(&p);
        assert_eq!(sm.iterations, 5);
        assert_eq!(sm.accumulated.min_exponent(), Some(q(-9, 10)));
        assert_eq!(sm.accumulated.terms().last().unwrap().exponent, q(-1, 10));
        assert_eq!(sm.residual.rhs_singular().min_exponent(), Some(q(1, 10)));
    }

    fn arb_problem() -> impl Strategy<Value = VolterraProblem> {
        (
            prop::collection::vec((-3.0f64..3.0, 1i64..=60, 1i64..=12), 1..5),
            prop::collection::vec((-3.0f64..3.0, -11i64..=30, 1i64..=12), 1..5),
        )
            .prop_filter_map("valid problem", |(k, s)| {
                let kernel = k
                    .into_iter()
                    .map(|(c, n, d)| KernelTerm::new(c, Order::new(n, d).unwrap()))
                    .collect();
                let src = PowerSum::from_terms(s.into_iter().filter_map(|(c, n, d)| {
                    let e = Order::new(n, d).unwrap();
                    (e > -1).then(|| Term::new(c, e))
                }))
                .ok()?;
                VolterraProblem::new(kernel, RegularRhs::Power(PowerSum::zero()), src, 1.0).ok()
            })
    }

    proptest! {
        #[test]
        fn smoothing_terminates_within_bound(p in arb_problem()) {
            let sm = neumann_smooth(&p);
            let delta = p.min_gap().unwrap();
            let bound = (Order::ONE.to_f64() / delta.to_f64()).ceil() as usize + 1;
            prop_assert!(sm.iterations <= bound, "{} > {}", sm.iterations, bound);
            if let Some(e) = sm.residual.rhs_singular().min_exponent() {
                prop_assert!(!e.is_negative());
            }
        }

        #[test]
        fn smoothing_preserves_the_equation(p in arb_problem(), t in 0.05f64..1.0) {
            // (Upsilon + Id) S + continuous == original singular source
            let sm = neumann_smooth(&p);
            let s = &sm.accumulated;
            let lhs = s.add(&apply_upsilon(p.kernel(), s)).add(sm.residual.rhs_singular());
            let err = (lhs.eval(t) - p.rhs_singular().eval(t)).abs();
            let scale: f64 = 1.0 + s.terms().iter().map(|x| x.eval(t).abs()).sum::<f64>();
            prop_assert!(err < 1e-10 * scale, "{err}");
        }
    }
}
