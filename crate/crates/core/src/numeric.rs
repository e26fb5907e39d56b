//! Floating-point reference solutions.
//!
//! The `k/x` coefficient is undefined at `x = 0`, so integration starts at
//! `x_start > 0` from the exact Taylor series and continues with an
//! adaptive Dormand–Prince 5(4) pair.

use serde::Serialize;
use thiserror::Error;

use crate::problem::IvpProblem;
use crate::series::rational_to_f64;
use crate::taylor::{taylor_solve, TaylorError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("startup series: {0}")]
    Startup(#[from] TaylorError),
    #[error("startup series tail {magnitude:e} at x = {x} exceeds tolerance {tolerance:e}")]
    StartupOutsideRadius {
        x: f64,
        magnitude: f64,
        tolerance: f64,
    },
    #[error("gave up after {steps} steps at x = {x}")]
    MaxStepsExceeded { x: f64, steps: usize },
    #[error("state became non-finite near x = {x}")]
    NonFiniteState { x: f64 },
    #[error("x = {x} outside [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    pub x_start: f64,
    pub x_max: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub startup_trunc: usize,
    pub max_steps: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            x_start: 0.5,
            x_max: 10.0,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            startup_trunc: 30,
            max_steps: 1_000_000,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let finite = [self.x_start, self.x_max, self.rel_tol, self.abs_tol]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(0.0 < self.x_start && self.x_start < self.x_max) {
            return Err(SolverError::InvalidConfig(format!(
                "need 0 < x_start < x_max, got {} and {}",
                self.x_start, self.x_max
            )));
        }
        if self.rel_tol <= 0.0 || self.abs_tol <= 0.0 {
            return Err(SolverError::InvalidConfig(
                "tolerances must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StartState {
    pub x: f64,
    pub y: f64,
    pub dy: f64,
    /// Size of the last kept series term at `x`; zero for exact polynomials.
    pub error_estimate: f64,
}

/// Value and slope of the Taylor series at `cfg.x_start`.
///
/// The last nonzero term of the series stands in for the truncation
/// error. A series that closed on an exact polynomial has none.
pub fn series_start_state(p: &IvpProblem, cfg: &SolverConfig) -> Result<StartState, SolverError> {
    cfg.validate()?;
    let t = taylor_solve(p, cfg.startup_trunc)?;
    let x = cfg.x_start;
    let error_estimate = if t.terminated {
        0.0
    } else {
        t.series
            .highest_nonzero_degree()
            .map(|m| (rational_to_f64(&t.series.coeffs()[m]) * x.powi(m as i32)).abs())
            .unwrap_or(0.0)
    };
    if error_estimate.is_nan() || error_estimate > cfg.rel_tol {
        return Err(SolverError::StartupOutsideRadius {
            x,
            magnitude: error_estimate,
            tolerance: cfg.rel_tol,
        });
    }
    Ok(StartState {
        x,
        y: t.series.eval(x),
        dy: t.series.derivative().eval(x),
        error_estimate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub x: f64,
    pub y: f64,
    pub dy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub problem: String,
    pub config: SolverConfig,
    /// Accepted steps, first at `x_start`, last at `x_max`.
    pub samples: Vec<Sample>,
    /// `y''` at each sample, for slope interpolation.
    curvature: Vec<f64>,
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

struct System<'a> {
    k: f64,
    p: &'a IvpProblem,
}

impl System<'_> {
    /// `(y, y')' = (y', −(k/x) y' − f(x, y))`.
    fn rhs(&self, x: f64, s: [f64; 2]) -> [f64; 2] {
        [s[1], -self.k / x * s[1] - self.p.f().eval_f64(x, s[0])]
    }
}

/// Integrates from the series start state to `cfg.x_max`, keeping every
/// accepted step. A step passes when each component's error estimate is
/// within `abs_tol + rel_tol·|value|`.
pub fn rk_integrate(p: &IvpProblem, cfg: &SolverConfig) -> Result<Trajectory, SolverError> {
    let start = series_start_state(p, cfg)?;
    let sys = System {
        k: rational_to_f64(p.k()),
        p,
    };
    let mut x = start.x;
    let mut state = [start.y, start.dy];
    let mut k1 = sys.rhs(x, state);
    let mut samples = vec![Sample {
        x,
        y: state[0],
        dy: state[1],
    }];
    let mut curvature = vec![k1[1]];
    let span = cfg.x_max - cfg.x_start;
    let mut h = (span * 1e-3).min(1e-2);
    let mut steps = 0;

    while x < cfg.x_max {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(SolverError::MaxStepsExceeded {
                x,
                steps: cfg.max_steps,
            });
        }
        let last = x + h >= cfg.x_max;
        if last {
            h = cfg.x_max - x;
        }
        let mut k = [[0.0; 2]; 7];
        k[0] = k1;
        for i in 1..7 {
            let mut s = state;
            for (j, kj) in k.iter().enumerate().take(i) {
                s[0] += h * A[i][j] * kj[0];
                s[1] += h * A[i][j] * kj[1];
            }
            k[i] = sys.rhs(x + C[i] * h, s);
        }
        let mut next = state;
        let mut err = [0.0; 2];
        for i in 0..7 {
            for c in 0..2 {
                next[c] += h * B5[i] * k[i][c];
                err[c] += h * (B5[i] - B4[i]) * k[i][c];
            }
        }
        let norm = (0..2)
            .map(|c| err[c].abs() / (cfg.abs_tol + cfg.rel_tol * state[c].abs().max(next[c].abs())))
            .fold(0.0, f64::max);

        if norm.is_finite() && next.iter().all(|v| v.is_finite()) && norm <= 1.0 {
            x = if last { cfg.x_max } else { x + h };
            state = next;
            // FSAL: stage 7 is the derivative at the new point
            k1 = k[6];
            samples.push(Sample {
                x,
                y: state[0],
                dy: state[1],
            });
            curvature.push(k1[1]);
            let factor = if norm == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * norm.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };
            h *= factor;
        } else {
            let factor = if norm.is_finite() {
                (SAFETY * norm.powf(-0.2)).clamp(MIN_FACTOR, 1.0)
            } else {
                MIN_FACTOR
            };
            h *= factor;
            if h <= f64::EPSILON * x.abs().max(1.0) {
                return Err(SolverError::NonFiniteState { x });
            }
        }
    }

    Ok(Trajectory {
        problem: p.name().to_string(),
        config: *cfg,
        samples,
        curvature,
    })
}

fn hermite(t: f64, h: f64, y0: f64, d0: f64, y1: f64, d1: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + t) * h * d0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h * d1
}

impl Trajectory {
    pub fn x_start(&self) -> f64 {
        self.samples[0].x
    }

    pub fn x_end(&self) -> f64 {
        self.samples[self.samples.len() - 1].x
    }

    pub fn last(&self) -> Sample {
        self.samples[self.samples.len() - 1]
    }

    /// Index `i` with `samples[i].x <= x <= samples[i+1].x`.
    fn interval(&self, x: f64) -> Result<usize, SolverError> {
        let (lo, hi) = (self.x_start(), self.x_end());
        if !(lo..=hi).contains(&x) {
            return Err(SolverError::OutOfRange { x, lo, hi });
        }
        let i = self.samples.partition_point(|s| s.x <= x);
        Ok(i.saturating_sub(1)
            .min(self.samples.len().saturating_sub(2)))
    }

    /// Value and slope at `x` by cubic Hermite interpolation between steps.
    pub fn sample_at(&self, x: f64) -> Result<Sample, SolverError> {
        let i = self.interval(x)?;
        if self.samples.len() == 1 {
            return Ok(self.samples[0]);
        }
        let (a, b) = (self.samples[i], self.samples[i + 1]);
        if x == a.x {
            return Ok(a);
        }
        if x == b.x {
            return Ok(b);
        }
        let h = b.x - a.x;
        let t = (x - a.x) / h;
        Ok(Sample {
            x,
            y: hermite(t, h, a.y, a.dy, b.y, b.dy),
            dy: hermite(t, h, a.dy, self.curvature[i], b.dy, self.curvature[i + 1]),
        })
    }

    /// `(x, y)` at each requested point.
    pub fn sample_dense(&self, xs: &[f64]) -> Result<Vec<(f64, f64)>, SolverError> {
        xs.iter()
            .map(|&x| self.sample_at(x).map(|s| (x, s.y)))
            .collect()
    }

    /// Full samples at each requested point.
    pub fn sample_grid(&self, xs: &[f64]) -> Result<Vec<Sample>, SolverError> {
        xs.iter().map(|&x| self.sample_at(x)).collect()
    }

    /// First step interval where the slope turns from positive to
    /// non-positive, refined by bisection on the interpolated slope.
    pub fn first_local_max(&self) -> Option<Sample> {
        let i = self
            .samples
            .windows(2)
            .position(|w| w[0].dy > 0.0 && w[1].dy <= 0.0)?;
        let (mut lo, mut hi) = (self.samples[i].x, self.samples[i + 1].x);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if self.sample_at(mid).ok()?.dy > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.sample_at(0.5 * (lo + hi)).ok()
    }
}

/// Evenly spaced points from `lo` to `hi` inclusive; a single point is `hi`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![hi],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// The large-`x` balance `sqrt(ln x / x)`.
pub fn asymptote(x: f64) -> f64 {
    (x.ln() / x).sqrt()
}

/// `y(x) − sqrt(ln x / x)` at each point; every point must exceed 1.
pub fn asymptote_residual(t: &Trajectory, xs: &[f64]) -> Result<Vec<(f64, f64)>, SolverError> {
    xs.iter()
        .map(|&x| {
            if x.is_nan() || x <= 1.0 {
                return Err(SolverError::OutOfRange {
                    x,
                    lo: 1.0,
                    hi: t.x_end(),
                });
            }
            Ok((x, t.sample_at(x)?.y - asymptote(x)))
        })
        .collect()
}

/// Strict sign changes along the sequence. A zero takes the sign of the
/// next nonzero value; trailing zeros are ignored.
pub fn crossing_count(rs: &[(f64, f64)]) -> usize {
    let mut signs = Vec::with_capacity(rs.len());
    let mut pending = 0;
    for &(_, r) in rs {
        if r == 0.0 || r.is_nan() {
            pending += 1;
            continue;
        }
        let s = r > 0.0;
        signs.extend(std::iter::repeat_n(s, pending + 1));
        pending = 0;
    }
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
