//! Homotopy perturbation expansions for singular second-order initial-value
//! problems
//!
//! ```text
//! y'' + (k/x) y' + f(x, y) = 0,    y(0) = A,  y'(0) = B,
//! ```
//!
//! checked against two independent references: the exact Taylor
//! recurrence and an adaptive Runge–Kutta integration started from the
//! series.

pub mod audit;
pub mod expr;
pub mod hpm;
pub mod numeric;
pub mod operator;
pub mod problem;
pub mod series;
pub mod taylor;

pub use expr::{format_expr, parse_expr, Expr, ParseError};
pub use hpm::{
    hpm_expand, lk_invert_monomial, lk_invert_series, Embedding, HpmError, HpmExpansion,
    NoiseReport,
};
pub use problem::{builtin, parse_problem_file, IvpProblem, ProblemError, ProblemRegistry};
pub use series::{rat, Rational, SeriesError, TruncatedSeries};
pub use taylor::{
    detect_polynomial_closure, residual_series, taylor_solve, TaylorError, TaylorSolution,
};
