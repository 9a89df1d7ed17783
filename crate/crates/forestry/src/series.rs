//! Exact truncated power-series arithmetic over the rationals.
//!
//! Everything here is a finite coefficient vector with `BigRational`
//! entries; multiplication and powering truncate at a caller-supplied
//! degree so intermediate sizes stay linear in the output degree. The
//! heavy paths (powering a polynomial to the n-th power) clear
//! denominators once and run on integer coefficients, which avoids a gcd
//! per coefficient operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::gamma::GammaScalar;

/// Coefficients of a truncated power series, indexed by power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCoefficients {
    coeffs: Vec<BigRational>,
}

impl SeriesCoefficients {
    pub fn from_coefficients(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    /// The polynomial `gamma_delta` truncated at `max_degree`.
    pub fn gamma(delta: u32, max_degree: usize) -> Self {
        let top = usize::min(delta as usize - 1, max_degree);
        let coeffs = (0..=top)
            .map(|k| BigRational::inv_factorial(k as u32))
            .collect();
        Self { coeffs }
    }

    /// The truncation of `e^{w x}` at `max_degree`: coefficients `w^j / j!`.
    pub fn truncated_exp(w: &BigRational, max_degree: usize) -> Self {
        let mut coeffs = Vec::with_capacity(max_degree + 1);
        let mut c = BigRational::one();
        coeffs.push(c.clone());
        for j in 1..=max_degree {
            c = c * w / BigRational::from(BigInt::from(j));
            coeffs.push(c.clone());
        }
        Self { coeffs }
    }

    /// Coefficient of `x^k` (zero beyond the stored support).
    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn max_stored_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Clear denominators: returns `(p, d)` with `self = p / d` and `p`
    /// an integer-coefficient vector.
    fn scale_to_integers(&self) -> (Vec<BigInt>, BigInt) {
        let mut denom = BigInt::one();
        for c in &self.coeffs {
            denom = denom.lcm(c.denom());
        }
        let scaled = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        (scaled, denom)
    }

    /// Product truncated at `max_degree`.
    pub fn mul_truncated(&self, rhs: &Self, max_degree: usize) -> Self {
        let (a, da) = self.scale_to_integers();
        let (b, db) = rhs.scale_to_integers();
        let prod = mul_int_truncated(&a, &b, max_degree);
        let denom = da * db;
        let coeffs = prod
            .into_iter()
            .map(|p| BigRational::new(p, denom.clone()))
            .collect();
        Self { coeffs }
    }

    /// `self^exp` truncated at `max_degree`, by binary powering with
    /// per-step truncation.
    pub fn pow_truncated(&self, exp: u64, max_degree: usize) -> Self {
        if exp == 0 {
            return Self {
                coeffs: vec![BigRational::one()],
            };
        }
        let (base, base_denom) = self.scale_to_integers();
        let mut result: Vec<BigInt> = vec![BigInt::one()];
        let mut square = base;
        let mut e = exp;
        loop {
            if e & 1 == 1 {
                result = mul_int_truncated(&result, &square, max_degree);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            square = mul_int_truncated(&square, &square, max_degree);
        }
        let denom = pow_bigint(&base_denom, exp);
        let coeffs = result
            .into_iter()
            .map(|p| BigRational::new(p, denom.clone()))
            .collect();
        Self { coeffs }
    }
}

fn mul_int_truncated(a: &[BigInt], b: &[BigInt], max_degree: usize) -> Vec<BigInt> {
    let out_len = usize::min(a.len() + b.len() - 1, max_degree + 1);
    let mut out = vec![BigInt::zero(); out_len];
    for (i, ai) in a.iter().enumerate() {
        if i >= out_len || ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= out_len {
                break;
            }
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn pow_bigint(base: &BigInt, mut exp: u64) -> BigInt {
    let mut result = BigInt::one();
    let mut square = base.clone();
    loop {
        if exp & 1 == 1 {
            result *= &square;
        }
        exp >>= 1;
        if exp == 0 {
            break;
        }
        square = &square * &square;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gamma_series_coefficients() {
        let g = SeriesCoefficients::gamma(3, 10);
        assert_eq!(g.coefficient(0), rat(1, 1));
        assert_eq!(g.coefficient(1), rat(1, 1));
        assert_eq!(g.coefficient(2), rat(1, 2));
        assert_eq!(g.coefficient(3), rat(0, 1));
    }

    #[test]
    fn truncated_exp_coefficients() {
        let e = SeriesCoefficients::truncated_exp(&rat(1, 2), 3);
        assert_eq!(e.coefficient(0), rat(1, 1));
        assert_eq!(e.coefficient(1), rat(1, 2));
        assert_eq!(e.coefficient(2), rat(1, 8));
        assert_eq!(e.coefficient(3), rat(1, 48));
    }

    #[test]
    fn square_of_gamma3() {
        // (1 + x + x^2/2)^2 = 1 + 2x + 2x^2 + x^3 + x^4/4
        let g = SeriesCoefficients::gamma(3, 4);
        let sq = g.pow_truncated(2, 4);
        assert_eq!(sq.coefficient(0), rat(1, 1));
        assert_eq!(sq.coefficient(1), rat(2, 1));
        assert_eq!(sq.coefficient(2), rat(2, 1));
        assert_eq!(sq.coefficient(3), rat(1, 1));
        assert_eq!(sq.coefficient(4), rat(1, 4));
    }

    #[test]
    fn truncation_drops_high_terms() {
        let g = SeriesCoefficients::gamma(3, 2);
        let sq = g.pow_truncated(5, 2);
        assert_eq!(sq.max_stored_degree(), 2);
    }

    proptest! {
        #[test]
        fn binary_power_matches_repeated_multiplication(
            coeffs in proptest::collection::vec((-6i64..=6, 1i64..=4), 1..5),
            exp in 1u64..=6,
            max_degree in 0usize..=8,
        ) {
            let poly = SeriesCoefficients::from_coefficients(
                coeffs.iter().map(|&(n, d)| rat(n, d)).collect(),
            );
            let fast = poly.pow_truncated(exp, max_degree);
            let mut slow = SeriesCoefficients::from_coefficients(vec![rat(1, 1)]);
            for _ in 0..exp {
                slow = slow.mul_truncated(&poly, max_degree);
            }
            for k in 0..=max_degree {
                prop_assert_eq!(fast.coefficient(k), slow.coefficient(k));
            }
        }
    }
}
