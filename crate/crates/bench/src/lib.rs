//! Shared fixtures for the benchmarks.

use rlfrac_core::{parse_equation, EquationSpec, PowerSum, VolterraProblem};

pub const THREE_TERM: &str = "D^{7/3} u + 3*D^{4/3} u + 4*D^{1/3} u = 1*t^{3}";
pub const FIVE_TERM: &str = "D^{13/4} u + 3*D^{9/4} u + D^{2} u + D^{5/4} u + D^{1} u = 1*t^{1}";
pub const RELAXATION: &str = "D^{1/2} u + u = 0";

pub fn spec(text: &str) -> EquationSpec {
    parse_equation(text).expect("fixture equations parse")
}

/// Relaxation with a `t^{-1/2}` source on `[0, 1]`.
pub fn relaxation_problem() -> VolterraProblem {
    let source = PowerSum::monomial(1.0, rlfrac_core::Order::new(-1, 2).unwrap()).unwrap();
    rlfrac_core::build_problem(&spec(RELAXATION), &source, 1.0).expect("valid problem")
}

/// Three-term equation with a source on its strong basis.
pub fn three_term_problem() -> VolterraProblem {
    let spec = spec(THREE_TERM);
    let report = rlfrac_core::analyze(&spec);
    let source = rlfrac_core::SourceCoefficients(vec![0.1, 0.0, 1.0])
        .to_power_sum(&report)
        .unwrap();
    rlfrac_core::build_problem(&spec, &source, 1.0).expect("valid problem")
}
