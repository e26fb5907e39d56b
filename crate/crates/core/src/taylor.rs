//! Power-series solution of the IVP by direct coefficient recurrence,
//! independent of the perturbation machinery.

use num_traits::Zero;
use thiserror::Error;

use crate::operator::apply_lk;
use crate::problem::IvpProblem;
use crate::series::{int, Rational, SeriesError, TruncatedSeries};

/// Trailing run of exact zeros [`taylor_solve`] needs before it reports a
/// polynomial closure.
pub const DEFAULT_CLOSURE_WINDOW: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaylorError {
    #[error("recurrence factor n(n+k-1) vanishes at degree {degree}")]
    SingularRecurrence { degree: usize },
    #[error("residual has a 1/x term: k and y'(0) are both nonzero")]
    SingularResidual,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorSolution {
    pub problem: IvpProblem,
    pub series: TruncatedSeries,
    /// All coefficients past `closure_degree` are exactly zero and the
    /// polynomial was certified by an exact residual.
    pub terminated: bool,
    pub closure_degree: Option<usize>,
}

impl TaylorSolution {
    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.series.coeff(n)
    }
}

/// Coefficients `a_0 … a_trunc` of the solution about `x = 0` from
///
/// `a_n · n(n+k−1) = −[x^{n−2}] f(x, a_0 + … + a_{n−2} x^{n−2})`.
///
/// `f` is re-evaluated on the partial series at each degree, truncated at
/// `n−2`, so coefficients of degree `≥ n−1` cannot enter.
pub fn taylor_solve(p: &IvpProblem, trunc: usize) -> Result<TaylorSolution, TaylorError> {
    let mut coeffs = vec![Rational::zero(); trunc + 1];
    coeffs[0] = p.initial_value().clone();
    if trunc >= 1 {
        coeffs[1] = p.initial_slope().clone();
    }
    for n in 2..=trunc {
        let factor = int(n as i64) * (int(n as i64) + p.k() - int(1));
        if factor.is_zero() {
            return Err(TaylorError::SingularRecurrence { degree: n });
        }
        let known = TruncatedSeries::from_coeffs(coeffs[..n - 1].to_vec(), n - 2);
        let f = p.f().eval_series(&known, n - 2)?;
        coeffs[n] = -&f.coeffs()[n - 2] / factor;
    }
    let mut solution = TaylorSolution {
        problem: p.clone(),
        series: TruncatedSeries::from_coeffs(coeffs, trunc),
        terminated: false,
        closure_degree: None,
    };
    solution.closure_degree = detect_polynomial_closure(&solution, DEFAULT_CLOSURE_WINDOW);
    solution.terminated = solution.closure_degree.is_some();
    Ok(solution)
}

/// Full-equation residual `y'' + (k/x) y' + f(x, y)`, truncated at
/// `y.trunc() − 2`.
pub fn residual_series(
    p: &IvpProblem,
    y: &TruncatedSeries,
) -> Result<TruncatedSeries, TaylorError> {
    let linear = apply_lk(p.k(), y).ok_or(TaylorError::SingularResidual)?;
    let f = p.f().eval_series(y, linear.trunc())?;
    Ok(linear.add(&f))
}

/// Whether `y` carries the problem's `y(0)` and `y'(0)`.
pub fn initial_conditions_match(p: &IvpProblem, y: &TruncatedSeries) -> bool {
    y.coeff(0) == Some(p.initial_value()) && y.coeff(1).is_none_or(|b| b == p.initial_slope())
}

/// Smallest `d` such that every coefficient in `d+1 ..= trunc` is exactly
/// zero, with at least `window` such trailing zeros, and the degree-`d`
/// polynomial solves the equation exactly.
///
/// The exact check needs a finite degree bound on `f(x, P)`; when `f`
/// contains `exp` of a nonconstant argument no bound exists and no closure
/// is reported.
pub fn detect_polynomial_closure(t: &TaylorSolution, window: usize) -> Option<usize> {
    let trunc = t.series.trunc();
    let d = t.series.highest_nonzero_degree().unwrap_or(0);
    if trunc - d < window {
        return None;
    }
    if !initial_conditions_match(&t.problem, &t.series) {
        return None;
    }
    let bound = t.problem.f().degree_bound(d)?.max(d);
    // residual of a polynomial is a polynomial of degree <= bound; evaluate
    // it far enough to see all of it
    let poly = TruncatedSeries::from_coeffs(t.series.coeffs()[..=d].to_vec(), bound + 2);
    let residual = residual_series(&t.problem, &poly).ok()?;
    residual.is_zero().then_some(d)
}
