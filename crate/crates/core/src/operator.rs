//! The singular linear operator `L_k[y] = y'' + (k/x) y'`.

use num_traits::Zero;

use crate::series::{int, Rational, TruncatedSeries};

/// `L_k[s]` as a power series. On monomials `L_k[x^n] = n(n+k−1) x^{n−2}`,
/// so coefficient `m` of the result is `(m+2)(m+k+1)·s_{m+2}`; the
/// truncation drops by two.
///
/// Returns `None` when `k·s_1 ≠ 0`, which would leave a `k·s_1/x` term
/// outside the power-series ring. A series truncated below degree 2 has
/// no known output coefficient and maps to the zero series at truncation 0.
pub fn apply_lk(k: &Rational, s: &TruncatedSeries) -> Option<TruncatedSeries> {
    let c = s.coeffs();
    if c.len() > 1 && !k.is_zero() && !c[1].is_zero() {
        return None;
    }
    if s.trunc() < 2 {
        return Some(TruncatedSeries::zero(0));
    }
    let coeffs = (0..=s.trunc() - 2)
        .map(|m| {
            let n = int(m as i64 + 2);
            &c[m + 2] * &n * (&n + k - int(1))
        })
        .collect();
    Some(TruncatedSeries::from_coeffs(coeffs, s.trunc() - 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_images() {
        // L_2[x^3] = 3·4·x
        let s = TruncatedSeries::monomial(int(1), 3, 10);
        assert_eq!(
            apply_lk(&int(2), &s).unwrap(),
            TruncatedSeries::monomial(int(12), 1, 8)
        );
        // L_8[x^4 - x^3] = 44x^2 - 30x
        let s = TruncatedSeries::from_terms([(4, int(1)), (3, int(-1))], 10);
        assert_eq!(
            apply_lk(&int(8), &s).unwrap(),
            TruncatedSeries::from_terms([(2, int(44)), (1, int(-30))], 8)
        );
        // constants are annihilated
        assert!(apply_lk(&int(2), &TruncatedSeries::constant(int(5), 6))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn slope_term_is_singular() {
        let s = TruncatedSeries::identity(4);
        assert!(apply_lk(&int(2), &s).is_none());
        assert!(apply_lk(&int(0), &s).unwrap().is_zero());
    }
}
