//! End-to-end: text -> analysis -> initial values -> Volterra solve, checked
//! against a power-series solution built independently here.

use std::collections::BTreeMap;

use rlfrac_core::{
    analyze, build_problem, gamma, ic_to_source, parse_equation, residual, solve_volterra,
    EquationSpec, IcVector, Order, PowerSum, Rhs,
};

/// Exponent (as a reduced fraction) -> coefficient.
type Series = BTreeMap<(i64, i64), f64>;

fn key(o: Order) -> (i64, i64) {
    (o.numerator(), o.denominator())
}

fn value(k: (i64, i64)) -> f64 {
    k.0 as f64 / k.1 as f64
}

/// `I^a t^g = Gamma(g+1)/Gamma(g+a+1) t^{g+a}` applied to a series.
fn integrate(series: &Series, a: Order) -> Series {
    series
        .iter()
        .map(|(&g, &c)| {
            let e = Order::new(g.0, g.1).unwrap() + a;
            let ratio = gamma(value(g) + 1.0).unwrap() / gamma(e.to_f64() + 1.0).unwrap();
            (key(e), c * ratio)
        })
        .collect()
}

/// Solution of `(Id + sum c_j I^{g_j}) u = g` as the Neumann series
/// `sum_k (-K)^k g`, truncated once a whole sweep is negligible on [0, 1].
fn neumann_series(kernel: &[(f64, Order)], source: &Series) -> Series {
    let mut total = Series::new();
    let mut term = source.clone();
    for _ in 0..400 {
        let size: f64 = term.values().map(|c| c.abs()).sum();
        for (&e, &c) in &term {
            *total.entry(e).or_insert(0.0) += c;
        }
        if size < 1e-17 {
            break;
        }
        let mut next = Series::new();
        for &(c, g) in kernel {
            for (e, v) in integrate(&term, g) {
                *next.entry(e).or_insert(0.0) -= c * v;
            }
        }
        term = next;
    }
    total
}

fn eval(series: &Series, t: f64) -> f64 {
    series.iter().map(|(&e, &c)| c * t.powf(value(e))).sum()
}

/// Integral-form data of a normalized equation: kernel and full source.
fn integral_form(spec: &EquationSpec, f: &Series) -> (Vec<(f64, Order)>, Series) {
    let spec = spec.normalize().unwrap();
    let top = spec.top_order();
    let n = spec.orders().len();
    let kernel = spec.orders()[..n - 1]
        .iter()
        .zip(spec.coefficients())
        .filter(|(_, &c)| c != 0.0)
        .map(|(&o, &c)| (c, top - o))
        .collect();
    let Rhs::Power(w) = spec.rhs() else {
        panic!("power rhs expected")
    };
    let w: Series = w
        .terms()
        .iter()
        .map(|t| (key(t.exponent), t.coefficient))
        .collect();
    let mut g = integrate(&w, top);
    for (&e, &c) in f {
        *g.entry(e).or_insert(0.0) += c;
    }
    (kernel, g)
}

fn scaled_error(spec: &EquationSpec, ic: &[f64], n: usize) -> f64 {
    let report = analyze(spec);
    let b = ic_to_source(&IcVector(ic.to_vec()), spec, &report).unwrap();
    let f = b.to_power_sum(&report).unwrap();
    let series_f: Series = f
        .terms()
        .iter()
        .map(|t| (key(t.exponent), t.coefficient))
        .collect();
    let (kernel, g) = integral_form(spec, &series_f);
    let exact = neumann_series(&kernel, &g);
    let solution = solve_volterra(&build_problem(spec, &f, 1.0).unwrap(), n).unwrap();
    // solutions may cross zero, so errors are scaled by the max norm
    let (err, scale) = solution
        .nodes()
        .zip(solution.values())
        .filter(|(t, _)| *t >= 0.1 - 1e-12)
        .fold((0.0f64, 0.0f64), |(err, scale), (t, u)| {
            let e = eval(&exact, t);
            (err.max((u - e).abs()), scale.max(e.abs()))
        });
    err / scale
}

#[test]
fn three_term_example_against_series_solution() {
    let spec = parse_equation("D^{7/3} u + 3*D^{4/3} u + 4*D^{1/3} u = 1*t^{3}").unwrap();
    for ic in [[0.5, -1.0, 2.0], [0.0, 0.0, 0.0]] {
        let (e1, e2) = (scaled_error(&spec, &ic, 256), scaled_error(&spec, &ic, 512));
        assert!(e2 < 5e-3, "{ic:?}: {e2}");
        assert!(e1 / e2 > 1.7, "{ic:?}: {e1} {e2}");
    }
}

#[test]
fn five_term_example_against_series_solution() {
    let spec = parse_equation("D^{13/4} u + 3*D^{9/4} u + D^{2} u + D^{5/4} u + D^{1} u = 1*t^{1}")
        .unwrap();
    let ic = [1.0, 0.0];
    let (e1, e2) = (scaled_error(&spec, &ic, 256), scaled_error(&spec, &ic, 512));
    assert!(e2 < 1e-2, "{e2}");
    assert!(e1 / e2 > 1.7, "{e1} {e2}");
}

#[test]
fn non_integer_gaps_with_multi_pass_smoothing() {
    // gap 1/5 forces several smoothing passes for the t^{-4/5} source
    let spec = parse_equation("D^{6/5} u - 0.5*D^{1} u + 2*D^{1/3} u = t^{1/2}").unwrap();
    let report = analyze(&spec);
    assert_eq!(report.m, 1);
    let (e1, e2) = (
        scaled_error(&spec, &[1.5], 256),
        scaled_error(&spec, &[1.5], 512),
    );
    assert!(e2 < 2e-2, "{e2}");
    assert!(e1 / e2 > 1.4, "{e1} {e2}");
}

#[test]
fn known_polynomial_solution() {
    // u = t solves D^{1/2} u + u = t^{1/2}/Gamma(3/2) + t with zero initial value
    let spec = parse_equation(&format!(
        "D^{{1/2}} u + u = {}*t^{{1/2}} + t",
        1.0 / gamma(1.5).unwrap()
    ))
    .unwrap();
    let solution =
        solve_volterra(&build_problem(&spec, &PowerSum::zero(), 1.0).unwrap(), 1024).unwrap();
    let err = solution
        .nodes()
        .zip(solution.values())
        .map(|(t, u)| (u - t).abs())
        .fold(0.0, f64::max);
    assert!(err < 2e-3, "{err}");
    assert!(residual(&solution, &spec).unwrap() < 5e-3);
}

#[test]
fn residual_shrinks_under_refinement() {
    let spec = parse_equation("D^{7/3} u + 3*D^{4/3} u + 4*D^{1/3} u = 1*t^{3}").unwrap();
    let report = analyze(&spec);
    let f = ic_to_source(&IcVector(vec![0.0, 1.0, 0.0]), &spec, &report)
        .unwrap()
        .to_power_sum(&report)
        .unwrap();
    let problem = build_problem(&spec, &f, 1.0).unwrap();
    let r = |n| residual(&solve_volterra(&problem, n).unwrap(), &spec).unwrap();
    let (r1, r2) = (r(256), r(1024));
    assert!(r2 < r1 / 2.0, "{r1} {r2}");
}
