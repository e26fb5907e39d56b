//! Truncated power series in `x` with exact rational coefficients.
//!
//! A [`TruncatedSeries`] knows its coefficients for degrees `0..=trunc`;
//! anything above `trunc` is unknown, not zero. Binary operations keep the
//! smaller truncation so unknown coefficients never leak into results.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Builds `num/den` as a [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64` to `r` (infinite when out of range).
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// `exp` of a series whose constant term is not zero would need the
    /// irrational factor `e^{a0}`.
    #[error("exponential of a series with nonzero constant term {0}")]
    NonzeroConstantTerm(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series from explicit coefficients, padded with zeros or cut to
    /// `trunc + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    /// Series from sparse `(degree, coefficient)` pairs; repeated degrees add.
    pub fn from_terms<I>(terms: I, trunc: usize) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut s = Self::zero(trunc);
        for (m, c) in terms {
            if m <= trunc {
                s.coeffs[m] += c;
            }
        }
        s
    }

    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); trunc + 1],
        }
    }

    pub fn constant(c: Rational, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// `c·x^m`, which is the zero series when `m > trunc`.
    pub fn monomial(c: Rational, m: usize, trunc: usize) -> Self {
        Self::from_terms([(m, c)], trunc)
    }

    /// The series `x`.
    pub fn identity(trunc: usize) -> Self {
        Self::monomial(Rational::one(), 1, trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^m`, or `None` when `m` lies beyond the truncation.
    pub fn coeff(&self, m: usize) -> Option<&Rational> {
        self.coeffs.get(m)
    }

    /// Drops knowledge of coefficients above `trunc`. Never extends.
    pub fn truncate(&self, trunc: usize) -> Self {
        let n = trunc.min(self.trunc());
        TruncatedSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn lowest_nonzero_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn highest_nonzero_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Nonzero `(degree, coefficient)` pairs in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.trunc().min(other.trunc());
        let coeffs = (0..=n)
            .map(|m| &self.coeffs[m] + &other.coeffs[m])
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.trunc().min(other.trunc());
        let coeffs = (0..=n)
            .map(|m| &self.coeffs[m] - &other.coeffs[m])
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product truncated at the smaller truncation.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.trunc().min(other.trunc());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self^p` by binary powering; `p = 0` gives the constant 1.
    pub fn pow(&self, p: u32) -> Self {
        let mut result = Self::constant(Rational::one(), self.trunc());
        let mut base = self.clone();
        let mut p = p;
        while p > 0 {
            if p & 1 == 1 {
                result = result.mul(&base);
            }
            p >>= 1;
            if p > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `exp(self)` from `m·E_m = Σ_{i=1}^{m} i·a_i·E_{m−i}`, `E_0 = 1`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm(format_rational(
                &self.coeffs[0],
            )));
        }
        let n = self.trunc();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &e[m - i] * int(i as i64);
                }
            }
            e[m] = acc / int(m as i64);
        }
        Ok(TruncatedSeries { coeffs: e })
    }

    /// Antiderivative with zero constant; truncation grows by one.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(m, a)| a / int(m as i64 + 1)),
        );
        TruncatedSeries { coeffs }
    }

    /// Derivative; truncation shrinks by one. A series known only at
    /// degree 0 has nothing left to differentiate, so its derivative is
    /// reported as the zero series at truncation 0.
    pub fn derivative(&self) -> Self {
        if self.trunc() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(m, a)| a * int(m as i64 + 1))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Multiplication by `x^m`; truncation grows by `m`.
    pub fn shift(&self, m: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Horner evaluation with coefficients rounded to `f64`.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    /// True iff both series know, and agree on, every degree `0..=deg`.
    pub fn equal_upto(&self, other: &Self, deg: usize) -> bool {
        deg <= self.trunc() && deg <= other.trunc() && self.coeffs[..=deg] == other.coeffs[..=deg]
    }

    /// Lowest degree at which the two series differ, within the common
    /// truncation.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.trunc().min(other.trunc());
        (0..=n).find(|&m| self.coeffs[m] != other.coeffs[m])
    }
}

impl fmt::Display for TruncatedSeries {
    /// `x^2 + 1/72 x^8`, `- x^3 + x^4`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one();
            match (m, unit) {
                (0, _) => write!(f, "{}", format_rational(&mag))?,
                (_, true) => {}
                (_, false) => write!(f, "{} ", format_rational(&mag))?,
            }
            match m {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(usize, i64, i64)], trunc: usize) -> TruncatedSeries {
        TruncatedSeries::from_terms(terms.iter().map(|&(m, p, q)| (m, rat(p, q))), trunc)
    }

    #[test]
    fn add_cancels() {
        let a = poly(&[(0, 1, 1), (1, 1, 1)], 5);
        let b = poly(&[(0, 1, 1), (1, -1, 1)], 5);
        assert_eq!(a.add(&b), poly(&[(0, 2, 1)], 5));
        assert_eq!(a.add(&TruncatedSeries::zero(5)), a);
    }

    #[test]
    fn add_removes_wrong_term() {
        let wrong = poly(&[(2, 1, 1), (8, 1, 72)], 12);
        let fix = poly(&[(8, -1, 72)], 12);
        assert_eq!(wrong.add(&fix), poly(&[(2, 1, 1)], 12));
    }

    #[test]
    fn mixed_truncation_keeps_shorter() {
        let a = TruncatedSeries::identity(3);
        let b = TruncatedSeries::identity(7);
        assert_eq!(a.add(&b).trunc(), 3);
        assert_eq!(a.mul(&b).trunc(), 3);
    }

    #[test]
    fn mul_examples() {
        let a = poly(&[(0, 1, 1), (1, 1, 1)], 6);
        let b = poly(&[(0, 1, 1), (1, -1, 1)], 6);
        assert_eq!(a.mul(&b), poly(&[(0, 1, 1), (2, -1, 1)], 6));
        let x2 = poly(&[(2, 1, 1)], 10);
        assert_eq!(x2.mul(&x2).mul(&x2), poly(&[(6, 1, 1)], 10));
    }

    #[test]
    fn cube_of_wrong_partial_sum() {
        // (x²+x⁸/72)³ = x⁶ + 3x¹²/72 + 3x¹⁸/72² + x²⁴/72³
        let s = poly(&[(2, 1, 1), (8, 1, 72)], 30);
        let expected = poly(
            &[(6, 1, 1), (12, 1, 24), (18, 1, 1728), (24, 1, 373_248)],
            30,
        );
        assert_eq!(s.pow(3), expected);
    }

    #[test]
    fn scale_examples() {
        let s = poly(&[(0, 6, 1), (6, 1, 1)], 8);
        assert!(s.scale(&int(0)).is_zero());
        assert_eq!(s.scale(&int(-1)), poly(&[(0, -6, 1), (6, -1, 1)], 8));
        assert_eq!(
            TruncatedSeries::identity(3).scale(&rat(1, 12)),
            poly(&[(1, 1, 12)], 3)
        );
    }

    #[test]
    fn pow_examples() {
        let x2 = poly(&[(2, 1, 1)], 10);
        assert_eq!(x2.pow(3), poly(&[(6, 1, 1)], 10));
        assert_eq!(x2.pow(0), TruncatedSeries::constant(int(1), 10));
        let c = poly(&[(3, 1, 12)], 10);
        assert_eq!(c.pow(2), poly(&[(6, 1, 144)], 10));
    }

    #[test]
    fn exp_examples() {
        let e = TruncatedSeries::identity(4).exp().unwrap();
        assert_eq!(
            e,
            poly(&[(0, 1, 1), (1, 1, 1), (2, 1, 2), (3, 1, 6), (4, 1, 24)], 4)
        );
        assert_eq!(
            TruncatedSeries::zero(5).exp().unwrap(),
            TruncatedSeries::constant(int(1), 5)
        );
        // x·(x³/12)² = x⁷/144; exp gives 1 + x⁷/144 + x¹⁴/41472
        let arg = poly(&[(3, 1, 12)], 16).pow(2).shift(1).truncate(16);
        let e = arg.exp().unwrap();
        assert_eq!(e, poly(&[(0, 1, 1), (7, 1, 144), (14, 1, 41_472)], 16));
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = TruncatedSeries::constant(int(1), 3);
        assert!(matches!(s.exp(), Err(SeriesError::NonzeroConstantTerm(_))));
    }

    #[test]
    fn calculus_examples() {
        let one = TruncatedSeries::constant(int(1), 4);
        assert_eq!(one.antiderivative(), poly(&[(1, 1, 1)], 5));
        assert_eq!(
            poly(&[(5, 1, 1)], 6).antiderivative(),
            poly(&[(6, 1, 6)], 7)
        );
        assert!(TruncatedSeries::zero(3).antiderivative().is_zero());

        let exact = poly(&[(4, 1, 1), (3, -1, 1)], 8);
        assert_eq!(exact.derivative(), poly(&[(3, 4, 1), (2, -3, 1)], 7));
        assert!(TruncatedSeries::constant(int(7), 3).derivative().is_zero());
        assert_eq!(
            TruncatedSeries::identity(3).derivative(),
            TruncatedSeries::constant(int(1), 2)
        );
        assert_eq!(TruncatedSeries::constant(int(7), 0).derivative().trunc(), 0);
    }

    #[test]
    fn shift_examples() {
        let one = TruncatedSeries::constant(int(1), 3);
        assert_eq!(one.shift(2), poly(&[(2, 1, 1)], 5));
        let s = poly(&[(4, 1, 1), (3, -1, 1)], 6);
        assert_eq!(s.shift(0), s);
        assert_eq!(s.shift(1), poly(&[(5, 1, 1), (4, -1, 1)], 7));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(&[(2, 1, 1)], 4).eval(3.0), 9.0);
        let s = poly(&[(3, 1, 12), (9, -1, 12960)], 9);
        let expected = rational_to_f64(&(rat(1, 12) - rat(1, 12960)));
        assert!((s.eval(1.0) - expected).abs() < 1e-15);
        assert!((expected - 0.083_256_172_839_5).abs() < 1e-12);
        assert_eq!(poly(&[(0, 5, 2), (3, 1, 1)], 4).eval(0.0), 2.5);
    }

    #[test]
    fn equal_upto_examples() {
        let exact = poly(&[(2, 1, 1)], 20);
        let wrong = poly(&[(2, 1, 1), (8, 1, 72)], 20);
        assert!(exact.equal_upto(&wrong, 7));
        assert!(!exact.equal_upto(&wrong, 8));
        for d in 0..=20 {
            assert!(wrong.equal_upto(&wrong, d));
        }
        assert!(!wrong.equal_upto(&wrong, 21));
        assert_eq!(exact.first_difference(&wrong), Some(8));
    }

    #[test]
    fn display_format() {
        assert_eq!(
            poly(&[(2, 1, 1), (8, 1, 72)], 10).to_string(),
            "x^2 + 1/72 x^8"
        );
        assert_eq!(poly(&[(3, -1, 1), (4, 1, 1)], 10).to_string(), "-x^3 + x^4");
        assert_eq!(poly(&[(0, -6, 1), (1, 2, 1)], 10).to_string(), "-6 + 2 x");
        assert_eq!(TruncatedSeries::zero(3).to_string(), "0");
    }

    fn arb_series(trunc: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((-20i64..=20, 1i64..=9), trunc + 1).prop_map(move |cs| {
            TruncatedSeries::from_coeffs(cs.into_iter().map(|(p, q)| rat(p, q)).collect(), trunc)
        })
    }

    proptest! {
        #[test]
        fn ring_laws_hold_exactly(a in arb_series(8), b in arb_series(8), c in arb_series(6)) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn exp_satisfies_its_ode(mut a in arb_series(9)) {
            a = a.sub(&TruncatedSeries::constant(a.coeffs()[0].clone(), 9));
            let e = a.exp().unwrap();
            let lhs = e.derivative();
            let rhs = a.derivative().mul(&e);
            prop_assert!(lhs.equal_upto(&rhs, 8));
        }

        #[test]
        fn derivative_undoes_antiderivative(a in arb_series(10)) {
            prop_assert_eq!(a.antiderivative().derivative(), a);
        }

        #[test]
        fn horner_matches_naive_sum(
            cs in prop::collection::vec(-1_000_000i64..=1_000_000, 1..16),
            x in -1.0f64..=1.0,
        ) {
            let n = cs.len() - 1;
            let s = TruncatedSeries::from_coeffs(cs.iter().map(|&c| int(c)).collect(), n);
            let naive: f64 = cs.iter().enumerate().map(|(m, &c)| c as f64 * x.powi(m as i32)).sum();
            let scale: f64 = cs.iter().map(|&c| (c as f64).abs()).sum::<f64>().max(1.0);
            prop_assert!((s.eval(x) - naive).abs() <= 1e-12 * scale);
        }
    }
}
