//! Integral-equation form of the initial-value problem and its numerical
//! solution.

mod gl;
mod mittag_leffler;
mod problem;
mod solver;

pub use gl::{gl_derivative, gl_weights, residual};
pub use mittag_leffler::mittag_leffler;
pub use problem::{build_problem, neumann_smooth, NeumannSmoothing, RegularRhs, VolterraProblem};
pub use solver::{solve_volterra, GridSolution};
