//! Exact arbitrary-precision evaluation of the counting formulas.
//!
//! Everything in this module is exact: counts are big integers, weighted
//! sums and expectations are big rationals, and the two independent routes
//! to the weighted forest sum are required to agree bit-for-bit.
//!
//! Core identities (with `gamma` the truncated exponential from
//! [`crate::gamma`]):
//!
//! - `t_delta(n) = (n-2)! [x^{n-2}] gamma_delta(x)^n`: degree-bounded
//!   labelled trees, via the occurrence law of the tree code;
//! - `f_delta(n,m) = (n-1)!/(m-1)! [x^n] x^m gamma_delta(x)^n`:
//!   degree-bounded rooted forests with root degrees below the bound;
//! - `sum_m f_delta(n,m) w^m = (n-1)! w [x^n] x gamma_delta(x)^n e^{wx}`
//!   with the exponential truncated at degree `n-1`;
//! - `t(n,F)` and `f(n,h,F)` for a fixed induced subforest `F`, which
//!   depend on `F` only through its component-size shape. `f(n,h,F)`
//!   counts *rooted* forests (any root choice per component); its `h = 1`
//!   slice therefore equals `n * t(n,F)`.

use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::solve_alpha;
use crate::graph::{DegreeSequence, ForestShape};
use crate::series::SeriesCoefficients;

/// Cap on `n` for the direct exact formulas. Cost is polynomial but the
/// big-integer coefficients grow like `n log n` bits; past this point the
/// asymptotic module is the intended tool.
pub const MAX_EXACT_N: u64 = 512;

static FACTORIAL_CACHE: OnceLock<Mutex<Vec<BigUint>>> = OnceLock::new();

/// `n!`, memoized up to the largest argument requested so far.
pub fn factorial(n: u64) -> BigUint {
    let cache = FACTORIAL_CACHE.get_or_init(|| Mutex::new(vec![BigUint::one()]));
    let mut cache = cache.lock().expect("factorial cache lock");
    while cache.len() <= n as usize {
        let k = cache.len() as u64;
        let next = &cache[cache.len() - 1] * k;
        cache.push(next);
    }
    cache[n as usize].clone()
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Multinomial coefficient `top! / (parts_1! ... parts_r!)`; parts must
/// sum to `top`.
fn multinomial(top: u64, parts: &[u64]) -> BigUint {
    debug_assert_eq!(parts.iter().sum::<u64>(), top);
    let mut denom = BigUint::one();
    for &p in parts {
        denom *= factorial(p);
    }
    factorial(top) / denom
}

fn rat_pow(base: &BigRational, exp: u64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let e = u32::try_from(exp).expect("exponent fits u32");
    BigRational::new_raw(base.numer().pow(e), base.denom().pow(e))
}

fn check_exact_cap(n: u64) -> Result<()> {
    if n > MAX_EXACT_N {
        return Err(Error::CapExceeded(format!(
            "exact formulas capped at n <= {MAX_EXACT_N}, got {n}; use the asymptotic routes"
        )));
    }
    Ok(())
}

fn rational_to_uint(value: &BigRational, what: &str) -> Result<BigUint> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::IdentityMismatch(format!(
            "{what} evaluated to the non-count value {value}"
        )));
    }
    Ok(value
        .to_integer()
        .to_biguint()
        .expect("checked non-negative"))
}

/// Natural log of a positive big integer, via the top 53 bits.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 53 {
        return (x.to_u64().expect("fits") as f64).ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().expect("53 bits fit");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive big rational.
pub fn ln_bigrational(x: &BigRational) -> f64 {
    assert!(x.is_positive(), "ln of non-positive rational");
    ln_biguint(&x.numer().magnitude().clone()) - ln_biguint(&x.denom().magnitude().clone())
}

/// `gamma_delta(x)^n` truncated at `max_degree`.
fn gamma_power(n: u64, delta: u32, max_degree: usize) -> SeriesCoefficients {
    SeriesCoefficients::gamma(delta, max_degree).pow_truncated(n, max_degree)
}

/// Number of labelled trees on `[n]` with maximum degree at most `delta`.
pub fn trees_bounded_degree_exact(n: u64, delta: u32) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "tree counts need n >= 2, got {n}"
        )));
    }
    if delta < 2 {
        return Err(Error::InvalidParameter(format!(
            "tree counts need delta >= 2, got {delta}"
        )));
    }
    check_exact_cap(n)?;
    let target = n as usize - 2;
    let coeff = gamma_power(n, delta, target).coefficient(target);
    let count = coeff * BigRational::from(BigInt::from(factorial(n - 2)));
    rational_to_uint(&count, "t_delta(n)")
}

/// Number of labelled rooted forests on `[n]` with `m` components,
/// maximum degree at most `delta`, and every root of degree at most
/// `delta - 1`.
pub fn rooted_forests_bounded_degree_exact(n: u64, m: u64, delta: u32) -> Result<BigUint> {
    if n < 1 || m < 1 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= n, got m={m}, n={n}"
        )));
    }
    if delta < 2 {
        return Err(Error::InvalidParameter(format!(
            "forest counts need delta >= 2, got {delta}"
        )));
    }
    check_exact_cap(n)?;
    let target = (n - m) as usize;
    let coeff = gamma_power(n, delta, target).coefficient(target);
    let scale = BigRational::new(
        BigInt::from(factorial(n - 1)),
        BigInt::from(factorial(m - 1)),
    );
    rational_to_uint(&(coeff * scale), "f_delta(n,m)")
}

/// All of `f_delta(n, 1..=n)` from a single power computation.
pub fn rooted_forest_counts_all_m(n: u64, delta: u32) -> Result<Vec<BigUint>> {
    if n < 1 {
        return Err(Error::InvalidParameter("need n >= 1".to_string()));
    }
    if delta < 2 {
        return Err(Error::InvalidParameter(format!(
            "forest counts need delta >= 2, got {delta}"
        )));
    }
    check_exact_cap(n)?;
    let power = gamma_power(n, delta, n as usize - 1);
    let n_minus_1_fact = factorial(n - 1);
    (1..=n)
        .map(|m| {
            let coeff = power.coefficient((n - m) as usize);
            let scale = BigRational::new(
                BigInt::from(n_minus_1_fact.clone()),
                BigInt::from(factorial(m - 1)),
            );
            rational_to_uint(&(coeff * scale), "f_delta(n,m)")
        })
        .collect()
}

/// `sum_m f_delta(n,m) w^m` by direct summation.
pub fn weighted_forest_sum_direct(n: u64, w: &BigRational, delta: u32) -> Result<BigRational> {
    if !w.is_positive() {
        return Err(Error::InvalidParameter("weight w must be positive".to_string()));
    }
    let counts = rooted_forest_counts_all_m(n, delta)?;
    let mut total = BigRational::zero();
    let mut w_pow = BigRational::one();
    for f in counts {
        w_pow *= w;
        total += BigRational::from(BigInt::from(f)) * &w_pow;
    }
    Ok(total)
}

/// `sum_m f_delta(n,m) w^m` via the coefficient identity
/// `(n-1)! w [x^n] x gamma_delta(x)^n e^{wx}` (exponential truncated at
/// degree `n-1`).
pub fn weighted_forest_sum_via_coefficients(
    n: u64,
    w: &BigRational,
    delta: u32,
) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::InvalidParameter("need n >= 1".to_string()));
    }
    if !w.is_positive() {
        return Err(Error::InvalidParameter("weight w must be positive".to_string()));
    }
    if delta < 2 {
        return Err(Error::InvalidParameter(format!(
            "forest counts need delta >= 2, got {delta}"
        )));
    }
    check_exact_cap(n)?;
    let target = n as usize - 1;
    let power = gamma_power(n, delta, target);
    let exp = SeriesCoefficients::truncated_exp(w, target);
    let coeff = power.mul_truncated(&exp, target).coefficient(target);
    Ok(coeff * w * BigRational::from(BigInt::from(factorial(n - 1))))
}

/// `sum_m f_delta(n,m) w^m`, computed by both routes; they must agree
/// exactly.
pub fn weighted_forest_sum_exact(n: u64, w: &BigRational, delta: u32) -> Result<BigRational> {
    let direct = weighted_forest_sum_direct(n, w, delta)?;
    let via_coeff = weighted_forest_sum_via_coefficients(n, w, delta)?;
    if direct != via_coeff {
        return Err(Error::IdentityMismatch(format!(
            "weighted forest sum disagrees: direct {direct} vs coefficient {via_coeff}"
        )));
    }
    Ok(direct)
}

/// Number of trees on `[n]` containing a fixed induced forest of the
/// given shape: `l_1...l_m n^{n-l-1} (n-l)^{m-1}`.
///
/// Depends on the forest only through its shape. The `n = l` boundary is
/// handled through the exact rational value of the formula (`1` for a
/// single spanning component, `0` otherwise).
pub fn trees_containing_forest(n: u64, shape: &ForestShape) -> Result<BigUint> {
    let ell = shape.total();
    let m = shape.component_count();
    if ell > n {
        return Err(Error::InvalidParameter(format!(
            "shape spans {ell} vertices but n = {n}"
        )));
    }
    check_exact_cap(n)?;
    let mut value = BigRational::one();
    for &size in shape.component_sizes() {
        value *= BigRational::from(BigInt::from(size));
    }
    // n^{n - ell - 1} with the exponent possibly -1 (only when ell = n).
    if n > ell {
        value *= BigRational::from(BigInt::from(BigUint::from(n).pow((n - ell - 1) as u32)));
    } else {
        value /= BigRational::from(BigInt::from(n));
    }
    value *= rat_pow(&BigRational::from(BigInt::from(n - ell)), m - 1);
    rational_to_uint(&value, "t(n,F)")
}

/// Number of rooted forests on `[n]` with `h` components containing a
/// fixed induced forest of the given shape (roots unconstrained):
/// `l_1...l_m sum_j C(n-l, j) l^{n-l-j} C(j+m-1, h-1) (n-l)^{j+m-h}`.
///
/// Infeasible `h` yields zero, not an error.
pub fn forests_containing_forest(n: u64, h: u64, shape: &ForestShape) -> Result<BigUint> {
    let ell = shape.total();
    let m = shape.component_count();
    if ell > n {
        return Err(Error::InvalidParameter(format!(
            "shape spans {ell} vertices but n = {n}"
        )));
    }
    if h < 1 {
        return Err(Error::InvalidParameter("need h >= 1".to_string()));
    }
    check_exact_cap(n)?;
    let free = n - ell;
    let mut sum = BigUint::zero();
    for j in 0..=free {
        if h > j + m {
            continue; // C(j+m-1, h-1) vanishes
        }
        let term = binomial(free, j)
            * BigUint::from(ell).pow((free - j) as u32)
            * binomial(j + m - 1, h - 1)
            * BigUint::from(free).pow((j + m - h) as u32);
        sum += term;
    }
    let mut scale = BigUint::one();
    for &size in shape.component_sizes() {
        scale *= BigUint::from(size);
    }
    Ok(scale * sum)
}

/// Number of trees on `[n]` with `1..=m` independent and the given degree
/// sequence: the product of the two multinomials over the code positions.
/// Infeasible sequences give zero.
pub fn trees_with_independent_set_and_degrees(
    n: u64,
    m: u64,
    degrees: &DegreeSequence,
) -> Result<BigUint> {
    if degrees.len() as u64 != n {
        return Err(Error::InvalidParameter(format!(
            "degree sequence has {} entries, expected {n}",
            degrees.len()
        )));
    }
    if m < 1 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= n, got m={m}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("need n >= 2".to_string()));
    }
    if degrees.sum() != 2 * (n - 1) {
        return Err(Error::InvalidParameter(format!(
            "degrees sum to {}, expected 2(n-1) = {}",
            degrees.sum(),
            2 * (n - 1)
        )));
    }
    check_exact_cap(n)?;
    if m == n {
        return Ok(BigUint::zero()); // all of [n] independent is no tree
    }
    let d = degrees.degrees();
    let head_sum: u64 = d[..m as usize].iter().map(|&x| u64::from(x)).sum();

    // First multinomial: positions of [m]-vertices inside the b-stream.
    let Some(top1) = (n - m).checked_sub(1) else {
        return Ok(BigUint::zero());
    };
    let Some(rest1) = (n - 1).checked_sub(head_sum) else {
        return Ok(BigUint::zero());
    };
    let mut parts1: Vec<u64> = d[..m as usize].iter().map(|&x| u64::from(x) - 1).collect();
    parts1.push(rest1);
    if parts1.iter().sum::<u64>() != top1 {
        return Ok(BigUint::zero());
    }

    // Second multinomial: the remaining code positions carry the outside
    // vertices.
    let Some(top2) = (n + m).checked_sub(2 + head_sum) else {
        return Ok(BigUint::zero());
    };
    let parts2: Vec<u64> = d[m as usize..].iter().map(|&x| u64::from(x) - 1).collect();
    if parts2.iter().sum::<u64>() != top2 {
        return Ok(BigUint::zero());
    }

    Ok(multinomial(top1, &parts1) * multinomial(top2, &parts2))
}

/// True when a bounded-degree tree on `k` vertices can contain an induced
/// forest with `ell` vertices and `m` components: `m <= 1 + (k-ell)(delta-1)`.
pub fn component_count_feasible(k: u64, ell: u64, m: u64, delta: u32) -> Result<bool> {
    if ell > k {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= ell <= k, got ell={ell}, k={k}"
        )));
    }
    Ok(m <= 1 + (k - ell) * (u64::from(delta) - 1))
}

/// Exact `E Y_k`: expected number of induced degree-bounded trees on `k`
/// vertices in `G(n, p)`:
/// `C(n,k) (1-p)^{C(k,2)-(k-1)} p^{k-1} t_delta(k)`.
pub fn expected_induced_trees(
    n: u64,
    k: u64,
    p: &BigRational,
    delta: u32,
) -> Result<BigRational> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= k <= n, got k={k}, n={n}"
        )));
    }
    check_probability(p)?;
    let q = BigRational::one() - p;
    let choose = BigRational::from(BigInt::from(binomial(n, k)));
    let non_edges = k * (k - 1) / 2 - (k - 1);
    let t = BigRational::from(BigInt::from(trees_bounded_degree_exact(k, delta)?));
    Ok(choose * rat_pow(&q, non_edges) * rat_pow(p, k - 1) * t)
}

/// Exact `E Z_k`: expected number of induced degree-bounded rooted
/// forests on `k` vertices with root degrees below the bound:
/// `C(n,k) sum_m f_delta(k,m) p^{k-m} (1-p)^{C(k,2)-k+m}`.
pub fn expected_induced_rooted_forests(
    n: u64,
    k: u64,
    p: &BigRational,
    delta: u32,
) -> Result<BigRational> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    check_probability(p)?;
    let q = BigRational::one() - p;
    let pairs = k * (k - 1) / 2;
    let counts = rooted_forest_counts_all_m(k, delta)?;
    let mut sum = BigRational::zero();
    for (idx, f) in counts.into_iter().enumerate() {
        let m = idx as u64 + 1;
        sum += BigRational::from(BigInt::from(f))
            * rat_pow(p, k - m)
            * rat_pow(&q, pairs + m - k);
    }
    Ok(BigRational::from(BigInt::from(binomial(n, k))) * sum)
}

fn check_probability(p: &BigRational) -> Result<()> {
    if p.is_negative() || *p > BigRational::one() {
        return Err(Error::InvalidParameter(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// One row of the rooted-forest bounds diagnostic: the ratio
/// `f_delta(n,m) / [(a_delta/e)^n C(n-1,m-1) n^{n-m}]` and its m-th root.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundsDiagnosticRow {
    pub m: u64,
    pub log_ratio: f64,
    pub ratio: f64,
    pub mth_root: f64,
}

/// Per-`m` comparison of `f_delta(n, m)` against its predicted envelope.
/// Diagnostic only: the envelope constants are known to exist, not known
/// in closed form.
pub fn rooted_forest_bounds_diagnostic(n: u64, delta: u32) -> Result<Vec<BoundsDiagnosticRow>> {
    if n < 2 {
        return Err(Error::InvalidParameter("need n >= 2".to_string()));
    }
    let constants = solve_alpha(delta, crate::gamma::ALPHA_TOLERANCE)?;
    let counts = rooted_forest_counts_all_m(n, delta)?;
    let ln_n = (n as f64).ln();
    let rows = counts
        .into_iter()
        .enumerate()
        .map(|(idx, f)| {
            let m = idx as u64 + 1;
            let ln_envelope = n as f64 * (constants.a.ln() - 1.0)
                + ln_biguint(&binomial(n - 1, m - 1))
                + (n - m) as f64 * ln_n;
            let log_ratio = ln_biguint(&f) - ln_envelope;
            BoundsDiagnosticRow {
                m,
                log_ratio,
                ratio: log_ratio.exp(),
                mth_root: (log_ratio / m as f64).exp(),
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn tree_counts_small() {
        // Every tree on 4 vertices has max degree <= 3.
        assert_eq!(trees_bounded_degree_exact(4, 3).unwrap(), BigUint::from(16u32));
        // 5^3 codes minus the 5 stars of degree 4.
        assert_eq!(trees_bounded_degree_exact(5, 3).unwrap(), BigUint::from(120u32));
        assert_eq!(trees_bounded_degree_exact(2, 3).unwrap(), BigUint::one());
        assert!(trees_bounded_degree_exact(1, 3).is_err());
    }

    #[test]
    fn cayley_when_bound_inactive() {
        for n in 3u64..=8 {
            let count = trees_bounded_degree_exact(n, n as u32 - 1).unwrap();
            assert_eq!(count, BigUint::from(n).pow(n as u32 - 2));
        }
    }

    #[test]
    fn forest_counts_small() {
        assert_eq!(
            rooted_forests_bounded_degree_exact(2, 1, 3).unwrap(),
            BigUint::from(2u32)
        );
        // All 48 rooted 2-component forests on [4] satisfy the delta=3 bounds.
        assert_eq!(
            rooted_forests_bounded_degree_exact(4, 2, 3).unwrap(),
            BigUint::from(48u32)
        );
        // m = n: the edgeless forest.
        assert_eq!(
            rooted_forests_bounded_degree_exact(5, 5, 3).unwrap(),
            BigUint::one()
        );
        assert!(rooted_forests_bounded_degree_exact(4, 0, 3).is_err());
        assert!(rooted_forests_bounded_degree_exact(4, 5, 3).is_err());
    }

    #[test]
    fn all_m_matches_single_m() {
        let all = rooted_forest_counts_all_m(6, 3).unwrap();
        for m in 1..=6u64 {
            assert_eq!(
                all[m as usize - 1],
                rooted_forests_bounded_degree_exact(6, m, 3).unwrap()
            );
        }
    }

    #[test]
    fn weighted_sum_tiny() {
        // f_3(2,1) = 2 and f_3(2,2) = 1 (the edgeless forest), so the
        // weighted sum at w = 1 is 3; the coefficient identity forces the
        // same value.
        let w = rat(1, 1);
        assert_eq!(weighted_forest_sum_exact(2, &w, 3).unwrap(), rat(3, 1));
    }

    #[test]
    fn weighted_sum_routes_agree() {
        for n in [1u64, 2, 3, 5, 8, 13, 21] {
            for w in [rat(1, 1), rat(1, 2), rat(2, 1)] {
                for delta in [3u32, 4] {
                    let direct = weighted_forest_sum_direct(n, &w, delta).unwrap();
                    let via = weighted_forest_sum_via_coefficients(n, &w, delta).unwrap();
                    assert_eq!(direct, via, "n={n} w={w} delta={delta}");
                }
            }
        }
    }

    #[test]
    fn weighted_sum_denominator_divides_power_of_two() {
        let value = weighted_forest_sum_exact(5, &rat(1, 2), 4).unwrap();
        let denom = value.denom().clone();
        let pow32 = BigInt::from(32);
        assert!((&pow32 % &denom).is_zero(), "denominator {denom} of {value}");
    }

    #[test]
    fn containing_tree_counts() {
        // Trees on [3] whose induced subgraph on {1,2} is the single edge.
        let shape2 = ForestShape::new(&[2]).unwrap();
        assert_eq!(trees_containing_forest(3, &shape2).unwrap(), BigUint::from(2u32));
        // 2 * 4^1 * 2^0 = 8.
        assert_eq!(trees_containing_forest(4, &shape2).unwrap(), BigUint::from(8u32));
        // Spanning single component: exactly the tree itself.
        let shape5 = ForestShape::new(&[5]).unwrap();
        assert_eq!(trees_containing_forest(5, &shape5).unwrap(), BigUint::one());
        // Spanning with two components: impossible.
        let shape23 = ForestShape::new(&[2, 3]).unwrap();
        assert_eq!(trees_containing_forest(5, &shape23).unwrap(), BigUint::zero());
        assert!(trees_containing_forest(4, &shape5).is_err());
    }

    #[test]
    fn containing_forest_tiny_cases() {
        let shape2 = ForestShape::new(&[2]).unwrap();
        // Rooted: n * t(n, F) at h = 1.
        assert_eq!(
            forests_containing_forest(3, 1, &shape2).unwrap(),
            BigUint::from(6u32)
        );
        // n = 2, F the single edge, h = 1: the one tree with both rootings.
        assert_eq!(
            forests_containing_forest(2, 1, &shape2).unwrap(),
            BigUint::from(2u32)
        );
        // Spanning F with h = m: only F itself, rooted in l_1*...*l_m ways.
        let shape22 = ForestShape::new(&[2, 2]).unwrap();
        assert_eq!(
            forests_containing_forest(4, 2, &shape22).unwrap(),
            BigUint::from(4u32)
        );
        // Infeasible h: zero, not an error.
        assert_eq!(
            forests_containing_forest(3, 3, &shape2).unwrap(),
            BigUint::zero()
        );
    }

    #[test]
    fn independent_set_degree_count() {
        // Only the path 1-2-3 has degrees (1,2,1) with {1} independent.
        let d = DegreeSequence::new(&[1, 2, 1]).unwrap();
        assert_eq!(
            trees_with_independent_set_and_degrees(3, 1, &d).unwrap(),
            BigUint::one()
        );
        // Infeasible: degree sum wrong.
        let bad = DegreeSequence::new(&[1, 1, 1]).unwrap();
        assert!(trees_with_independent_set_and_degrees(3, 1, &bad).is_err());
        // Feasible sum, infeasible multinomial: star center inside [m].
        let star = DegreeSequence::new(&[3, 1, 1, 1]).unwrap();
        assert_eq!(
            trees_with_independent_set_and_degrees(4, 2, &star).unwrap(),
            BigUint::zero()
        );
    }

    #[test]
    fn expectation_y_small() {
        // Exhaustive over the 8 graphs on 3 vertices: E Y_3 = 3/8.
        let p = rat(1, 2);
        assert_eq!(expected_induced_trees(3, 3, &p, 3).unwrap(), rat(3, 8));
        // k = 2: a single edge, E Y_2 = C(n,2) p.
        assert_eq!(expected_induced_trees(5, 2, &p, 3).unwrap(), rat(5, 1));
    }

    #[test]
    fn expectation_z_small() {
        let p = rat(1, 2);
        // Each vertex alone is a rooted forest.
        assert_eq!(
            expected_induced_rooted_forests(2, 1, &p, 3).unwrap(),
            rat(2, 1)
        );
    }

    #[test]
    fn feasibility_bound() {
        assert!(component_count_feasible(10, 9, 3, 3).unwrap());
        assert!(!component_count_feasible(10, 9, 4, 3).unwrap());
        assert!(component_count_feasible(10, 10, 1, 3).unwrap());
        assert!(component_count_feasible(0, 0, 1, 3).unwrap());
        assert!(component_count_feasible(10, 11, 1, 3).is_err());
    }

    #[test]
    fn feasibility_bound_holds_in_every_bounded_tree() {
        // No degree-bounded tree contains an induced forest with more
        // components than the bound allows; exhaustive over trees on up
        // to 7 vertices and all vertex subsets.
        for n in 2u32..=7 {
            for delta in [3u32, 4] {
                for tree in crate::enumerate::enumerate_all_trees(n).unwrap() {
                    if tree.max_degree() > delta {
                        continue;
                    }
                    let adj = tree.adjacency();
                    for subset_mask in 1u32..(1 << n) {
                        let members: Vec<u32> =
                            (1..=n).filter(|&v| subset_mask >> (v - 1) & 1 == 1).collect();
                        // components of the induced forest
                        let mut comp: Vec<u32> = (0..=n).collect();
                        fn find(comp: &mut [u32], v: u32) -> u32 {
                            let mut v = v;
                            while comp[v as usize] != v {
                                v = comp[v as usize];
                            }
                            v
                        }
                        for &v in &members {
                            for &u in &adj[v as usize] {
                                if u > v && subset_mask >> (u - 1) & 1 == 1 {
                                    let (rv, ru) = (find(&mut comp, v), find(&mut comp, u));
                                    comp[rv as usize] = ru;
                                }
                            }
                        }
                        let m = members
                            .iter()
                            .filter(|&&v| find(&mut comp, v) == v)
                            .count() as u64;
                        let ell = members.len() as u64;
                        assert!(
                            component_count_feasible(u64::from(n), ell, m, delta).unwrap(),
                            "n={n} delta={delta} subset={members:?} has {m} components"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_in_delta() {
        for n in 3u64..=8 {
            let mut prev = BigUint::zero();
            for delta in 2u32..=7 {
                let t = trees_bounded_degree_exact(n, delta).unwrap();
                assert!(t >= prev, "t must be non-decreasing in delta");
                prev = t;
            }
        }
    }

    #[test]
    fn forest_counts_with_inactive_bound_match_closed_form() {
        // delta >= n disables both degree restrictions.
        for n in 2u64..=8 {
            for m in 1..=n {
                let count = rooted_forests_bounded_degree_exact(n, m, n as u32).unwrap();
                let closed = binomial(n - 1, m - 1) * BigUint::from(n).pow((n - m) as u32);
                assert_eq!(count, closed, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn diagnostic_rows_are_finite_and_positive() {
        let rows = rooted_forest_bounds_diagnostic(40, 3).unwrap();
        assert_eq!(rows.len(), 40);
        for row in rows {
            assert!(row.log_ratio.is_finite());
            assert!(row.mth_root.is_finite() && row.mth_root > 0.0);
        }
    }

    #[test]
    fn diagnostic_mth_roots_stay_in_band() {
        // The envelope constants exist without stated values; the measured
        // m-th roots sit comfortably inside a fixed band at desk scale.
        for n in [20u64, 60, 120, 200] {
            for delta in [3u32, 4, 5] {
                for row in rooted_forest_bounds_diagnostic(n, delta).unwrap() {
                    assert!(
                        row.mth_root >= 0.01 && row.mth_root <= 100.0,
                        "n={n} delta={delta} m={}: mth_root={}",
                        row.m,
                        row.mth_root
                    );
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            trees_bounded_degree_exact(MAX_EXACT_N + 1, 3),
            Err(Error::CapExceeded(_))
        ));
    }
}
