//! The truncated-exponential polynomial family and its structural constants.
//!
//! For an integer degree bound `delta >= 2` the polynomial is
//!
//! ```text
//! gamma_delta(x) = sum_{k=0}^{delta-1} x^k / k!
//! ```
//!
//! Its derivative drops the bound by one (`gamma_delta' = gamma_{delta-1}`),
//! which is why a single family covers every formula in the crate. For
//! `delta >= 3` the constant `alpha_delta` is the unique `x > 1` with
//! `x * gamma_{delta-1}(x) / gamma_delta(x) = 1`, and
//! `a_delta = gamma_{delta-1}(alpha_delta)` is the growth constant of
//! degree-bounded tree counts. `a_delta` is non-decreasing in `delta` and
//! converges to `e` from below.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Evaluation scalar for the polynomial family: implemented by `f64`
/// (asymptotics path) and `BigRational` (exact counting path).
pub trait GammaScalar: Clone {
    /// `1 / k!` in this scalar type.
    fn inv_factorial(k: u32) -> Self;
    /// `self * x + 1/k!`: one Horner step.
    fn horner_step(self, x: &Self, k: u32) -> Self;
    /// Domain check: the family is defined for `x >= 0`.
    fn is_non_negative(&self) -> bool;
}

impl GammaScalar for f64 {
    fn inv_factorial(k: u32) -> Self {
        let mut f = 1.0f64;
        for i in 1..=k {
            f *= f64::from(i);
        }
        1.0 / f
    }

    fn horner_step(self, x: &Self, k: u32) -> Self {
        self * x + Self::inv_factorial(k)
    }

    fn is_non_negative(&self) -> bool {
        *self >= 0.0
    }
}

impl GammaScalar for BigRational {
    fn inv_factorial(k: u32) -> Self {
        let mut f = BigInt::one();
        for i in 1..=k {
            f *= BigInt::from(i);
        }
        BigRational::new(BigInt::one(), f)
    }

    fn horner_step(self, x: &Self, k: u32) -> Self {
        self * x + Self::inv_factorial(k)
    }

    fn is_non_negative(&self) -> bool {
        !self.is_negative()
    }
}

/// Evaluate `gamma_delta` at `x` by Horner's rule, in whichever scalar
/// kind `x` carries.
///
/// Accepts `delta >= 1` and `x >= 0` (`x = 0` is the domain boundary and
/// returns the constant term 1).
pub fn gamma_eval_in<T: GammaScalar>(delta: u32, x: &T) -> Result<T> {
    if delta < 1 {
        return Err(Error::InvalidParameter(format!(
            "gamma requires delta >= 1, got {delta}"
        )));
    }
    if !x.is_non_negative() {
        return Err(Error::InvalidParameter(
            "gamma is defined for x >= 0".to_string(),
        ));
    }
    let mut acc = T::inv_factorial(delta - 1);
    for k in (0..delta - 1).rev() {
        acc = acc.horner_step(x, k);
    }
    Ok(acc)
}

/// Float evaluation of `gamma_delta(x)`.
pub fn gamma_eval(delta: u32, x: f64) -> Result<f64> {
    gamma_eval_in(delta, &x)
}

/// Exact-rational evaluation of `gamma_delta(x)`.
pub fn gamma_eval_exact(delta: u32, x: &BigRational) -> Result<BigRational> {
    gamma_eval_in(delta, x)
}

/// The polynomial `gamma_delta` with its exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaPolynomial {
    delta: u32,
    coefficients: Vec<BigRational>,
}

impl GammaPolynomial {
    pub fn new(delta: u32) -> Result<Self> {
        if delta < 1 {
            return Err(Error::InvalidParameter(format!(
                "gamma requires delta >= 1, got {delta}"
            )));
        }
        let coefficients = (0..delta).map(BigRational::inv_factorial).collect();
        Ok(Self {
            delta,
            coefficients,
        })
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// Coefficient of `x^k`; zero for `k >= delta`.
    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// `d/dx gamma_delta = gamma_{delta-1}`, valid for `delta >= 2`.
    pub fn derivative(&self) -> Result<GammaPolynomial> {
        if self.delta < 2 {
            return Err(Error::InvalidParameter(
                "derivative of gamma_1 leaves the family".to_string(),
            ));
        }
        GammaPolynomial::new(self.delta - 1)
    }

    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        gamma_eval(self.delta, x)
    }

    pub fn eval_exact(&self, x: &BigRational) -> Result<BigRational> {
        gamma_eval_exact(self.delta, x)
    }
}

/// `alpha_delta` and `a_delta` for one degree bound, together with the
/// absolute tolerance the root was solved to.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct StructuralConstants {
    pub delta: u32,
    pub alpha: f64,
    pub a: f64,
    pub tolerance: f64,
}

/// Residual of the defining equation: `x*gamma_{delta-1}(x)/gamma_delta(x) - 1`.
fn alpha_residual(delta: u32, x: f64) -> f64 {
    let num = gamma_eval(delta - 1, x).expect("delta >= 3 checked by caller");
    let den = gamma_eval(delta, x).expect("delta >= 3 checked by caller");
    x * num / den - 1.0
}

/// Solve for `alpha_delta` by bisection on `[1, (delta-1)/(delta-2)]`.
///
/// The residual is negative at 1 and positive at the right endpoint, and
/// strictly increasing in between, so bisection always converges; the
/// bracket failing to change sign indicates a bug, never valid input.
pub fn solve_alpha(delta: u32, tol: f64) -> Result<StructuralConstants> {
    if delta < 3 {
        return Err(Error::InvalidParameter(format!(
            "alpha_delta requires delta >= 3, got {delta}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut lo = 1.0f64;
    let mut hi = f64::from(delta - 1) / f64::from(delta - 2);
    // The left residual is -1/((delta-1)! gamma_delta(1)), which underflows
    // to exactly 0 in doubles once delta is large; the root still sits
    // strictly inside the bracket.
    let res_lo = alpha_residual(delta, lo);
    let res_hi = alpha_residual(delta, hi);
    if !(res_lo <= 0.0 && res_hi > 0.0) {
        return Err(Error::Bracketing(format!(
            "alpha residual does not change sign on [1, {hi}]: f(lo)={res_lo}, f(hi)={res_hi}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval at floating-point resolution
        }
        if alpha_residual(delta, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = 0.5 * (lo + hi);
    let a = gamma_eval(delta - 1, alpha)?;
    Ok(StructuralConstants {
        delta,
        alpha,
        a,
        tolerance: tol,
    })
}

/// Default absolute tolerance for `alpha_delta`.
pub const ALPHA_TOLERANCE: f64 = 1e-12;

/// Constants for every `delta` in `3..=delta_max`.
pub fn a_delta_sequence(delta_max: u32, tol: f64) -> Result<Vec<StructuralConstants>> {
    if delta_max < 3 {
        return Err(Error::InvalidParameter(format!(
            "delta_max must be at least 3, got {delta_max}"
        )));
    }
    (3..=delta_max).map(|d| solve_alpha(d, tol)).collect()
}

/// Exact rational enclosure `lo < alpha_delta < hi` from bisection with
/// exact residual signs, after `bisections` halvings of the bracket.
///
/// Doubles cannot separate `a_delta` from `e` once `delta` passes the
/// mid-teens (the gap decays factorially); the rational enclosures can,
/// which is what the monotonicity and below-`e` checks are built on.
pub fn alpha_enclosure_exact(delta: u32, bisections: u32) -> Result<(BigRational, BigRational)> {
    if delta < 3 {
        return Err(Error::InvalidParameter(format!(
            "alpha_delta requires delta >= 3, got {delta}"
        )));
    }
    let mut lo = BigRational::one();
    let mut hi = BigRational::new(BigInt::from(delta - 1), BigInt::from(delta - 2));
    // residual(x) < 0  <=>  x * gamma_{delta-1}(x) < gamma_delta(x)
    let residual_negative = |x: &BigRational| -> Result<bool> {
        let lhs = gamma_eval_exact(delta - 1, x)? * x;
        let rhs = gamma_eval_exact(delta, x)?;
        Ok(lhs < rhs)
    };
    if !residual_negative(&lo)? || residual_negative(&hi)? {
        return Err(Error::Bracketing(format!(
            "exact alpha bracket failed for delta = {delta}"
        )));
    }
    let two = BigRational::from(BigInt::from(2));
    for _ in 0..bisections {
        let mid = (&lo + &hi) / &two;
        if residual_negative(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Exact rational enclosure of `a_delta = gamma_{delta-1}(alpha_delta)`,
/// from the alpha enclosure and monotonicity of the polynomial.
pub fn a_enclosure_exact(delta: u32, bisections: u32) -> Result<(BigRational, BigRational)> {
    let (lo, hi) = alpha_enclosure_exact(delta, bisections)?;
    Ok((
        gamma_eval_exact(delta - 1, &lo)?,
        gamma_eval_exact(delta - 1, &hi)?,
    ))
}
