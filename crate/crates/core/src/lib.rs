//! Linear constant-coefficient Riemann-Liouville fractional differential
//! equations: which initial values determine a solution, how they map to
//! the singular source of the equivalent Volterra equation, and a
//! product-integration solver for that equation.

pub mod analysis;
pub mod dsl;
pub mod error;
pub mod gamma;
pub mod ic_map;
pub mod io;
pub mod order;
pub mod power_sum;
mod quadrature;
pub mod sampled;
pub mod volterra;

pub use analysis::{
    analyze, check_strong_membership, compute_beta_star, normalize, AnalysisReport, EquationSpec,
    IcKind, Rhs,
};
pub use dsl::{format_equation, parse_equation};
pub use error::{Error, Result};
pub use gamma::{gamma, ln_gamma, recip_gamma};
pub use ic_map::{ic_to_source, source_to_ic, IcVector, SourceCoefficients};
pub use order::Order;
pub use power_sum::{apply_upsilon, is_in_image, rl_integral_power, KernelTerm, PowerSum, Term};
pub use sampled::SampledFunction;
pub use volterra::{
    build_problem, gl_derivative, mittag_leffler, neumann_smooth, residual, solve_volterra,
    GridSolution, NeumannSmoothing, RegularRhs, VolterraProblem,
};
