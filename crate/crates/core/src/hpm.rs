//! Homotopy perturbation expansion for `L_k[y] + f(x, y) = 0`.
//!
//! The embedded problem `L_k[y] + θ·f(x, y) = 0` is expanded as
//! `y = Σ θ^j y_j`. Collecting powers of θ gives one linear equation per
//! order,
//!
//! ```text
//! L_k[y_0] = 0,    L_k[y_j] = −[θ^{j−1}] f(x, y_0 + θ y_1 + …),   j ≥ 1,
//! ```
//!
//! each solved exactly by the monomial inverse of `L_k`. Partial sums are
//! taken at θ = 1.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::expr::Expr;
use crate::operator::apply_lk;
use crate::problem::IvpProblem;
use crate::series::{format_rational, int, Rational, SeriesError, TruncatedSeries};
use crate::taylor::{residual_series, TaylorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HpmError {
    #[error("resonant exponent: forcing x^{degree} needs a log term when k = {k}")]
    ResonantExponent { degree: usize, k: String },
    #[error("{0}")]
    Series(#[from] SeriesError),
    #[error("order {order} outside the computed range 0..={max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("residual: {0}")]
    Residual(#[from] TaylorError),
}

/// Where the forcing `g` of `f = F − g` sits in the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Embedding {
    /// `L_k[y] + θ·(F − g) = 0`.
    #[default]
    ThetaTimesF,
    /// `L_k[y] + θ·F − g = 0`: `g` drives the order-0 equation, so `y_0`
    /// already contains `L_k^{-1}[g]`.
    ThetaTimesFKeepG,
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Embedding::ThetaTimesF => "theta-f",
            Embedding::ThetaTimesFKeepG => "keep-g",
        })
    }
}

/// The solution of `L_k[u] = c·x^m` with `u(0) = u'(0) = 0`:
/// `u = c·x^{m+2} / ((m+k+1)(m+2))`.
pub fn lk_invert_monomial(
    k: &Rational,
    c: &Rational,
    m: usize,
) -> Result<TruncatedSeries, HpmError> {
    let resonance = int(m as i64 + 1) + k;
    if resonance.is_zero() {
        return Err(HpmError::ResonantExponent {
            degree: m,
            k: format_rational(k),
        });
    }
    let coeff = c / (resonance * int(m as i64 + 2));
    Ok(TruncatedSeries::monomial(coeff, m + 2, m + 2))
}

/// Termwise inverse of `L_k`; truncation grows by two. Only degrees that
/// carry a nonzero coefficient can trigger [`HpmError::ResonantExponent`].
pub fn lk_invert_series(k: &Rational, r: &TruncatedSeries) -> Result<TruncatedSeries, HpmError> {
    let mut coeffs = vec![Rational::zero(); r.trunc() + 3];
    for (m, c) in r.terms() {
        let u = lk_invert_monomial(k, c, m)?;
        coeffs[m + 2] = u.coeffs()[m + 2].clone();
    }
    Ok(TruncatedSeries::from_coeffs(coeffs, r.trunc() + 2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HpmExpansion {
    pub problem: IvpProblem,
    /// `y_0, y_1, …, y_J`, all truncated at `trunc`.
    pub corrections: Vec<TruncatedSeries>,
    pub trunc: usize,
    pub embedding: Embedding,
    /// The part of `f` multiplied by θ.
    nonlinearity: Expr,
    /// `g` when it sits at order 0, otherwise zero.
    order_zero_forcing: TruncatedSeries,
}

/// Computes `y_0 … y_orders` with every series truncated at `trunc`.
pub fn hpm_expand(
    p: &IvpProblem,
    orders: usize,
    trunc: usize,
    embedding: Embedding,
) -> Result<HpmExpansion, HpmError> {
    let k = p.k();
    let (nonlinearity, order_zero_forcing) = match embedding {
        Embedding::ThetaTimesF => (p.f().clone(), TruncatedSeries::zero(trunc)),
        Embedding::ThetaTimesFKeepG => {
            let (dependent, free) = p.f().split_forcing();
            let minus_g = match free {
                Some(e) => e.eval_series(&TruncatedSeries::zero(trunc), trunc)?,
                None => TruncatedSeries::zero(trunc),
            };
            (dependent.unwrap_or(Expr::Const(int(0))), minus_g.neg())
        }
    };

    let mut y0 = TruncatedSeries::from_terms(
        [
            (0, p.initial_value().clone()),
            (1, p.initial_slope().clone()),
        ],
        trunc,
    );
    if !order_zero_forcing.is_zero() {
        y0 = y0.add(&lk_invert_series(k, &order_zero_forcing)?.truncate(trunc));
    }

    let mut corrections = vec![y0];
    for j in 1..=orders {
        let expanded = nonlinearity.eval_theta(&corrections, j - 1, trunc)?;
        let rhs = expanded[j - 1].neg();
        corrections.push(lk_invert_series(k, &rhs)?.truncate(trunc));
    }

    Ok(HpmExpansion {
        problem: p.clone(),
        corrections,
        trunc,
        embedding,
        nonlinearity,
        order_zero_forcing,
    })
}

impl HpmExpansion {
    pub fn orders(&self) -> usize {
        self.corrections.len() - 1
    }

    fn check_order(&self, j: usize) -> Result<(), HpmError> {
        if j > self.orders() {
            return Err(HpmError::OrderOutOfRange {
                order: j,
                max: self.orders(),
            });
        }
        Ok(())
    }

    /// `y_0 + … + y_j`, the θ = 1 approximation of order `j`.
    pub fn partial_sum(&self, j: usize) -> Result<TruncatedSeries, HpmError> {
        self.check_order(j)?;
        Ok(self.corrections[1..=j]
            .iter()
            .fold(self.corrections[0].clone(), |acc, y| acc.add(y)))
    }

    /// `L_k[y_j]` plus the order-`j` part of the embedded right side; zero
    /// through degree `trunc − 2` when order `j` was solved exactly.
    pub fn order_residual(&self, j: usize) -> Result<TruncatedSeries, HpmError> {
        self.check_order(j)?;
        self.order_residual_of(j, &self.corrections[j])
    }

    /// Order-`j` residual with `y_j` replaced by `candidate`; lower orders
    /// stay as computed.
    pub fn order_residual_of(
        &self,
        j: usize,
        candidate: &TruncatedSeries,
    ) -> Result<TruncatedSeries, HpmError> {
        self.check_order(j)?;
        let linear = apply_lk(self.problem.k(), candidate).ok_or(TaylorError::SingularResidual)?;
        let target = linear.trunc();
        let rest = if j == 0 {
            self.order_zero_forcing.neg()
        } else {
            let expanded =
                self.nonlinearity
                    .eval_theta(&self.corrections[..j], j - 1, self.trunc)?;
            expanded[j - 1].clone()
        };
        Ok(linear.add(&rest).truncate(target))
    }

    /// Residuals of every θ-order of the embedded equation, computed from
    /// one evaluation of the nonlinearity on the whole θ-series.
    pub fn homotopy_residuals(&self) -> Result<Vec<TruncatedSeries>, HpmError> {
        let orders = self.orders();
        let expanded = self
            .nonlinearity
            .eval_theta(&self.corrections, orders, self.trunc)?;
        let mut out = Vec::with_capacity(orders + 1);
        for (j, y) in self.corrections.iter().enumerate() {
            let linear = apply_lk(self.problem.k(), y).ok_or(TaylorError::SingularResidual)?;
            let rest = if j == 0 {
                self.order_zero_forcing.neg()
            } else {
                expanded[j - 1].clone()
            };
            out.push(linear.add(&rest));
        }
        Ok(out)
    }

    /// Per-order comparison of partial sums with the full equation and,
    /// when given, with a reference solution.
    pub fn noise_report(&self, exact: Option<&TruncatedSeries>) -> Result<NoiseReport, HpmError> {
        let mut orders = Vec::with_capacity(self.corrections.len());
        let mut trajectories: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for j in 0..=self.orders() {
            let sum = self.partial_sum(j)?;
            let residual = residual_series(&self.problem, &sum)?;
            let (first_difference, noise) = match exact {
                Some(e) => {
                    let noise = sum.sub(e);
                    (noise.lowest_nonzero_degree(), Some(noise))
                }
                None => (None, None),
            };
            for (m, _) in sum.terms() {
                trajectories.entry(m).or_default();
            }
            orders.push(OrderNoise {
                order: j,
                partial_sum: sum,
                residual,
                first_difference,
                noise,
            });
        }
        for (m, row) in trajectories.iter_mut() {
            *row = orders
                .iter()
                .map(|o| o.partial_sum.coeff(*m).cloned().unwrap_or_default())
                .collect();
        }
        Ok(NoiseReport {
            orders,
            trajectories,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderNoise {
    pub order: usize,
    pub partial_sum: TruncatedSeries,
    /// Residual of the partial sum in the original (θ = 1) equation.
    pub residual: TruncatedSeries,
    /// Lowest degree where the partial sum departs from the reference.
    pub first_difference: Option<usize>,
    /// Partial sum minus reference.
    pub noise: Option<TruncatedSeries>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoiseReport {
    pub orders: Vec<OrderNoise>,
    /// Degree → that coefficient of every partial sum, in order.
    pub trajectories: BTreeMap<usize, Vec<Rational>>,
}
