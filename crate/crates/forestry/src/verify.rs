//! The verification suites: every acceptance criterion as an executable
//! check, shared by the `verify` CLI command and the acceptance tests.
//!
//! Each criterion runs its brute-force oracles against the formula paths
//! and reports pass/fail with details; tolerances are pinned here, in
//! code. `Caps::acceptance()` is the full configuration the criteria are
//! stated for; `Caps::quick()` is a scaled-down preset for smoke runs.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::asymptotics::{
    concentration_window_dense, solve_saddle_point, tree_count_asymptotic,
    tree_count_via_probability_identity, weighted_forest_sum_asymptotic,
};
use crate::count::{
    expected_induced_rooted_forests, expected_induced_trees, forests_containing_forest,
    ln_bigrational, ln_biguint, trees_bounded_degree_exact, trees_containing_forest,
    trees_with_independent_set_and_degrees, rooted_forests_bounded_degree_exact,
    weighted_forest_sum_direct, weighted_forest_sum_via_coefficients,
};
use crate::enumerate::{enumerate_all_rooted_forests, enumerate_all_trees};
use crate::gamma::{a_enclosure_exact, gamma_eval_exact, solve_alpha, ALPHA_TOLERANCE};
use crate::graph::{DegreeSequence, ForestShape};
use crate::oracle::{
    average_counts_over_all_graphs, count_rooted_forests_bounded, count_rooted_forests_containing,
    count_trees_bounded, count_trees_containing, count_trees_with_independent_set_by_degrees,
    exhaustive_max_induced, rooted_forests_by_edge_subsets, trees_by_edge_subsets, InducedPattern,
};
use crate::prufer::{
    decode_rooted_forest, decode_tree, decode_tree_with_independent_set, encode_rooted_forest,
    encode_tree, encode_tree_with_independent_set, IndependentSetTreeCode,
};
use crate::rg::{concentration_experiment, max_induced_bounded, moment_experiment, sample_gnp, Mode};

/// Result of one criterion.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

/// Instance-size knobs for the suites.
#[derive(Debug, Clone)]
pub struct Caps {
    pub codec_n: u32,
    pub tree_count_n: u64,
    pub forest_count_n: u64,
    pub containing_n: u64,
    pub indep_degree_n: u64,
    pub prob_identity_n: u64,
    pub weighted_sum_n: u64,
    pub convergence_ns: Vec<u64>,
    pub search_instances: u64,
    pub moment_trials: u64,
    pub concentration_n: u64,
    pub concentration_trials: u64,
    pub seed: u64,
    pub jobs: Option<usize>,
}

impl Caps {
    /// The sizes the acceptance criteria are stated for.
    pub fn acceptance() -> Self {
        Caps {
            codec_n: 7,
            tree_count_n: 8,
            forest_count_n: 7,
            containing_n: 7,
            indep_degree_n: 6,
            prob_identity_n: 50,
            weighted_sum_n: 40,
            convergence_ns: vec![100, 200, 400],
            search_instances: 200,
            moment_trials: 2000,
            concentration_n: 150,
            concentration_trials: 30,
            seed: 20260810,
            jobs: None,
        }
    }

    /// Scaled-down smoke configuration.
    pub fn quick() -> Self {
        Caps {
            codec_n: 5,
            tree_count_n: 6,
            forest_count_n: 5,
            containing_n: 5,
            indep_degree_n: 5,
            prob_identity_n: 20,
            weighted_sum_n: 15,
            convergence_ns: vec![50, 100, 200],
            search_instances: 40,
            moment_trials: 200,
            concentration_n: 60,
            concentration_trials: 5,
            seed: 20260810,
            jobs: None,
        }
    }
}

struct Harness {
    failures: Vec<String>,
    checked: u64,
}

impl Harness {
    fn new() -> Self {
        Harness {
            failures: Vec::new(),
            checked: 0,
        }
    }

    fn expect(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !cond && self.failures.len() < 12 {
            self.failures.push(msg());
        }
    }

    fn finish(self, id: &'static str, name: &'static str) -> Check {
        let passed = self.failures.is_empty();
        let details = if passed {
            format!("{} checks", self.checked)
        } else {
            format!(
                "{} of {} checks failed: {}",
                self.failures.len(),
                self.checked,
                self.failures.join("; ")
            )
        };
        Check {
            id,
            name,
            passed,
            details,
        }
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Criterion 1: exhaustive round-trip, distinctness, and cardinality for
/// all three codecs, cross-checked against codec-free edge-subset
/// enumeration.
pub fn criterion_1_codec_bijections(caps: &Caps) -> Check {
    let mut h = Harness::new();
    for n in 2..=caps.codec_n {
        // Plain trees: every decoded code re-encodes, all distinct, and
        // the set equals the edge-subset enumeration.
        let mut decoded = HashSet::new();
        for tree in enumerate_all_trees(n).expect("cap checked") {
            let code = encode_tree(&tree).expect("valid tree");
            let again = decode_tree(&code, n).expect("round trip");
            h.expect(again == tree, || format!("tree round trip broke at n={n}"));
            decoded.insert(tree);
        }
        let expected = BigUint::from(n).pow(n.saturating_sub(2));
        h.expect(
            BigUint::from(decoded.len() as u64) == expected,
            || format!("n={n}: {} distinct trees, wanted {expected}", decoded.len()),
        );
        let independent: HashSet<_> = trees_by_edge_subsets(n).into_iter().collect();
        h.expect(independent == decoded, || {
            format!("n={n}: code-driven and edge-subset tree sets differ")
        });

        // Rooted forests, every m.
        for m in 1..=n {
            let mut decoded = HashSet::new();
            for forest in enumerate_all_rooted_forests(n, m).expect("cap checked") {
                let code = encode_rooted_forest(&forest).expect("valid forest");
                let again = decode_rooted_forest(&code, n).expect("round trip");
                h.expect(again == forest, || {
                    format!("forest round trip broke at n={n}, m={m}")
                });
                decoded.insert(forest);
            }
            let expected = crate::count::binomial(u64::from(n) - 1, u64::from(m) - 1)
                * BigUint::from(n).pow(n - m);
            h.expect(
                BigUint::from(decoded.len() as u64) == expected,
                || format!("n={n}, m={m}: {} forests, wanted {expected}", decoded.len()),
            );
            let independent: HashSet<_> =
                rooted_forests_by_edge_subsets(n, m).into_iter().collect();
            h.expect(independent == decoded, || {
                format!("n={n}, m={m}: forest sets differ between enumerations")
            });
        }

        // Independent-set trees, every m with n >= m + 2.
        for m in 1..=n.saturating_sub(2) {
            let mut decoded = HashSet::new();
            let a_len = (m - 1) as usize;
            let b_len = (n - m - 1) as usize;
            let a_base = u64::from(n - m); // digits m+1..=n
            let b_base = u64::from(n); // digits 1..=n
            let total = a_base.pow(a_len as u32) * b_base.pow(b_len as u32);
            for index in 0..total {
                let mut x = index;
                let mut b = vec![0u32; b_len];
                for digit in b.iter_mut().rev() {
                    *digit = (x % b_base) as u32 + 1;
                    x /= b_base;
                }
                let mut a = vec![0u32; a_len];
                for digit in a.iter_mut().rev() {
                    *digit = (x % a_base) as u32 + m + 1;
                    x /= a_base;
                }
                let code = IndependentSetTreeCode { m, a, b };
                let tree = match decode_tree_with_independent_set(&code, n) {
                    Ok(t) => t,
                    Err(e) => {
                        h.expect(false, || format!("decode failed at n={n}, m={m}: {e}"));
                        continue;
                    }
                };
                h.expect(tree.is_independent_prefix(m), || {
                    format!("decoded tree breaks independence at n={n}, m={m}")
                });
                let again = encode_tree_with_independent_set(&tree, m).expect("valid tree");
                h.expect(again == code, || {
                    format!("independent-set round trip broke at n={n}, m={m}")
                });
                decoded.insert(tree);
            }
            h.expect(decoded.len() as u64 == total, || {
                format!("n={n}, m={m}: {} distinct trees, wanted {total}", decoded.len())
            });
            // Cross-check against direct enumeration with the prefix filter.
            let direct = enumerate_all_trees(n)
                .expect("cap checked")
                .filter(|t| t.is_independent_prefix(m))
                .count() as u64;
            h.expect(direct == total, || {
                format!("n={n}, m={m}: direct count {direct} != {total}")
            });
        }
    }
    h.finish("C1", "codec bijections")
}

fn partitions_of(total: u64) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, max: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

/// Criterion 2: exact counts against brute force: degree-bounded trees
/// and rooted forests, the two fixed-subforest counting formulas (including
/// shape-only dependence), and the independent-set degree formula.
pub fn criterion_2_exact_counts(caps: &Caps) -> Check {
    let mut h = Harness::new();

    // Degree-bounded trees.
    for n in 2..=caps.tree_count_n {
        let trees: Vec<_> = enumerate_all_trees(n as u32).expect("cap checked").collect();
        for delta in [3u32, 4, 5, 6] {
            let formula = trees_bounded_degree_exact(n, delta).unwrap();
            let brute = count_trees_bounded(&trees, delta);
            h.expect(formula == BigUint::from(brute), || {
                format!("t_{delta}({n}): formula {formula} vs brute {brute}")
            });
        }
    }

    // Degree-bounded rooted forests.
    for n in 2..=caps.forest_count_n {
        for m in 1..=n {
            let forests: Vec<_> = enumerate_all_rooted_forests(n as u32, m as u32)
                .expect("cap checked")
                .collect();
            for delta in [3u32, 4] {
                let formula = rooted_forests_bounded_degree_exact(n, m, delta).unwrap();
                let brute = count_rooted_forests_bounded(&forests, delta);
                h.expect(formula == BigUint::from(brute), || {
                    format!("f_{delta}({n},{m}): formula {formula} vs brute {brute}")
                });
            }
        }
    }

    // Fixed-subforest counts, all shapes and h, paths and stars patterns.
    for n in 2..=caps.containing_n {
        let trees = trees_by_edge_subsets(n as u32);
        let forests_by_h: Vec<Vec<_>> = (0..=n)
            .map(|hh| {
                if hh == 0 {
                    Vec::new()
                } else {
                    rooted_forests_by_edge_subsets(n as u32, hh as u32)
                }
            })
            .collect();
        for ell in 1..=n {
            for sizes in partitions_of(ell) {
                let shape = ForestShape::new(&sizes).unwrap();
                let patterns = [
                    InducedPattern::paths_of_shape(&shape),
                    InducedPattern::stars_of_shape(&shape),
                ];
                let t_formula = trees_containing_forest(n, &shape).unwrap();
                for pattern in &patterns {
                    let brute = count_trees_containing(&trees, pattern);
                    h.expect(t_formula == BigUint::from(brute), || {
                        format!("t({n},{sizes:?}): formula {t_formula} vs brute {brute}")
                    });
                }
                for hh in 1..=n {
                    let f_formula = forests_containing_forest(n, hh, &shape).unwrap();
                    for pattern in &patterns {
                        let brute =
                            count_rooted_forests_containing(&forests_by_h[hh as usize], pattern);
                        h.expect(f_formula == BigUint::from(brute), || {
                            format!("f({n},{hh},{sizes:?}): formula {f_formula} vs brute {brute}")
                        });
                    }
                }
                // h = 1 slice: rooted forests with one component are
                // rooted trees, so the rooted count equals n * t(n, F).
                let f1 = forests_containing_forest(n, 1, &shape).unwrap();
                h.expect(f1 == t_formula.clone() * BigUint::from(n), || {
                    format!("f({n},1,{sizes:?}) != n * t(n,F)")
                });
            }
        }
    }

    // Independent-set degree formula, summed per degree sequence.
    for n in 3..=caps.indep_degree_n {
        let trees = trees_by_edge_subsets(n as u32);
        for m in 1..=(n - 2) {
            let buckets = count_trees_with_independent_set_by_degrees(&trees, m as u32);
            // Every bucket matches the formula.
            for (degs, brute) in &buckets {
                let d = DegreeSequence::new(degs).unwrap();
                let formula = trees_with_independent_set_and_degrees(n, m, &d).unwrap();
                h.expect(formula == BigUint::from(*brute), || {
                    format!("independent-set degrees n={n} m={m} degrees {degs:?}: {formula} vs {brute}")
                });
            }
            // Degree-bounded sums reproduce the filtered tree counts.
            for delta in [3u32, 4] {
                let mut total = BigUint::ZERO;
                degree_sequences(n, delta, &mut |d| {
                    total += trees_with_independent_set_and_degrees(
                        n,
                        m,
                        &DegreeSequence::new(d).unwrap(),
                    )
                    .unwrap();
                });
                let brute: u64 = buckets
                    .iter()
                    .filter(|(degs, _)| degs.iter().all(|&x| x <= delta))
                    .map(|(_, c)| *c)
                    .sum();
                h.expect(total == BigUint::from(brute), || {
                    format!("independent-set degree sum n={n} m={m} delta={delta}: {total} vs {brute}")
                });
            }
        }
    }

    h.finish("C2", "exact counts vs brute force")
}

/// All degree sequences with entries in 1..=delta summing to 2(n-1).
fn degree_sequences(n: u64, delta: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(
        remaining_slots: u64,
        remaining_sum: u64,
        delta: u32,
        current: &mut Vec<u32>,
        f: &mut impl FnMut(&[u32]),
    ) {
        if remaining_slots == 0 {
            if remaining_sum == 0 {
                f(current);
            }
            return;
        }
        let min_needed = remaining_slots - 1;
        for d in 1..=u64::from(delta) {
            if remaining_sum < d + min_needed || d + u64::from(delta) * min_needed < remaining_sum
            {
                continue;
            }
            current.push(d as u32);
            rec(remaining_slots - 1, remaining_sum - d, delta, current, f);
            current.pop();
        }
    }
    rec(n, 2 * (n - 1), delta, &mut Vec::new(), f);
}

/// Criterion 3: the structural constants: float values at delta = 3 and
/// 4 against closed forms, monotone below e via exact rational
/// enclosures.
pub fn criterion_3_constants(_caps: &Caps) -> Check {
    let mut h = Harness::new();
    let c3 = solve_alpha(3, ALPHA_TOLERANCE).unwrap();
    h.expect((c3.alpha - std::f64::consts::SQRT_2).abs() < 1e-10, || {
        format!("alpha_3 = {} is not sqrt(2)", c3.alpha)
    });
    h.expect((c3.a - (1.0 + std::f64::consts::SQRT_2)).abs() < 1e-10, || {
        format!("a_3 = {} is not 1 + sqrt(2)", c3.a)
    });

    // Independent cubic oracle for delta = 4: 2x^3 + 3x^2 - 6 = 0.
    let cubic = |x: f64| 2.0 * x * x * x + 3.0 * x * x - 6.0;
    let (mut lo, mut hi) = (1.0f64, 1.5f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if cubic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c4 = solve_alpha(4, ALPHA_TOLERANCE).unwrap();
    h.expect((c4.alpha - 0.5 * (lo + hi)).abs() < 1e-10, || {
        format!("alpha_4 = {} vs cubic root {}", c4.alpha, 0.5 * (lo + hi))
    });

    // a_delta strictly increasing and strictly below e for delta = 3..=30,
    // certified in exact arithmetic (the float gap underflows by delta 17).
    let e_lower = gamma_eval_exact(62, &BigRational::one()).unwrap();
    let mut prev: Option<BigRational> = None;
    for delta in 3u32..=30 {
        let (a_lo, a_hi) = a_enclosure_exact(delta, 140).unwrap();
        h.expect(a_hi < e_lower, || format!("a_{delta} not certified below e"));
        if let Some(p) = prev {
            h.expect(p < a_lo, || format!("a_{delta} not strictly above a_{}", delta - 1));
        }
        let float = solve_alpha(delta, ALPHA_TOLERANCE).unwrap().a;
        h.expect(
            (float - a_lo.to_f64().unwrap()).abs() < 1e-10
                || (float - a_hi.to_f64().unwrap()).abs() < 1e-10,
            || format!("float a_{delta} = {float} drifted from its enclosure"),
        );
        prev = Some(a_hi);
    }
    h.finish("C3", "structural constants")
}

/// Criterion 4: the probability-identity route matches exact counts to
/// relative 1e-8 and is invariant in the tilt point.
pub fn criterion_4_probability_identity(caps: &Caps) -> Check {
    let mut h = Harness::new();
    for delta in [3u32, 4, 5] {
        for n in 3..=caps.prob_identity_n {
            let exact = trees_bounded_degree_exact(n, delta).unwrap();
            let ln_exact = ln_biguint(&exact);
            let alpha = solve_alpha(delta, ALPHA_TOLERANCE).unwrap().alpha;
            let est = tree_count_via_probability_identity(n, delta, alpha).unwrap();
            let rel = ((est.log_value - ln_exact).exp() - 1.0).abs();
            h.expect(rel < 1e-8, || {
                format!("probability identity n={n} delta={delta}: relative error {rel:e}")
            });
        }
        // Tilt invariance.
        let alpha_delta = solve_alpha(delta, ALPHA_TOLERANCE).unwrap().alpha;
        for n in [10u64, 35, 60] {
            let values: Vec<f64> = [0.5, 1.0, alpha_delta, 2.0]
                .iter()
                .map(|&a| {
                    tree_count_via_probability_identity(n, delta, a)
                        .unwrap()
                        .log_value
                })
                .collect();
            let spread = values
                .iter()
                .map(|v| ((v - values[0]).exp() - 1.0).abs())
                .fold(0.0f64, f64::max);
            h.expect(spread < 1e-8, || {
                format!("tilt spread {spread:e} at n={n}, delta={delta}")
            });
        }
    }
    h.finish("C4", "probability-identity route")
}

/// Criterion 5: the two routes to the weighted forest sum agree exactly
/// in rational arithmetic.
pub fn criterion_5_weighted_sum_identity(caps: &Caps) -> Check {
    let mut h = Harness::new();
    for delta in [3u32, 4] {
        for n in 1..=caps.weighted_sum_n {
            for w in [rational(1, 1), rational(1, 2), rational(2, 1)] {
                let direct = weighted_forest_sum_direct(n, &w, delta).unwrap();
                let via = weighted_forest_sum_via_coefficients(n, &w, delta).unwrap();
                h.expect(direct == via, || {
                    format!("weighted sum n={n} w={w} delta={delta}: {direct} vs {via}")
                });
            }
        }
    }
    h.finish("C5", "weighted-sum identity")
}

/// Criterion 6: saddle-point residual, bracket, and curvature band over
/// the full grid.
pub fn criterion_6_saddle_contracts(_caps: &Caps) -> Check {
    let mut h = Harness::new();
    let grid = [
        10u64, 18, 32, 56, 100, 178, 316, 562, 1000, 1778, 3162, 5623, 10_000,
    ];
    for &n in &grid {
        for w in [1.0, (n as f64).sqrt(), n as f64 / 2.0] {
            for delta in [3u32, 4, 5] {
                // the solver itself enforces residual < 1e-12 and errors out
                match solve_saddle_point(n, w, delta) {
                    Ok(sp) => {
                        h.expect(sp.r > 0.0 && sp.r < f64::min(2.0, n as f64 / w), || {
                            format!("saddle r={} outside bracket at n={n}, w={w}", sp.r)
                        });
                        h.expect(sp.beta >= 1e-3 && sp.beta <= 10.0, || {
                            format!("beta={} outside band at n={n}, w={w}, delta={delta}", sp.beta)
                        });
                    }
                    Err(e) => h.expect(false, || format!("saddle failed: {e}")),
                }
            }
        }
    }
    h.finish("C6", "saddle-point contracts")
}

/// Criterion 7: the asymptotic main terms converge to the exact values:
/// relative error below 0.05 at the largest n and monotonically shrinking.
pub fn criterion_7_asymptotic_convergence(caps: &Caps) -> Check {
    let mut h = Harness::new();
    let one = BigRational::one();
    let mut tree_errs = Vec::new();
    let mut sum_errs = Vec::new();
    for &n in &caps.convergence_ns {
        let exact = trees_bounded_degree_exact(n, 3).unwrap();
        let est = tree_count_asymptotic(n, 3).unwrap();
        tree_errs.push(((est.log_value - ln_biguint(&exact)).exp() - 1.0).abs());

        let wexact = weighted_forest_sum_direct(n, &one, 3).unwrap();
        let west = weighted_forest_sum_asymptotic(n, 1.0, 3).unwrap();
        sum_errs.push(((west.log_value - ln_bigrational(&wexact)).exp() - 1.0).abs());
    }
    for (what, errs) in [("tree", &tree_errs), ("weighted sum", &sum_errs)] {
        h.expect(errs.windows(2).all(|w| w[1] < w[0]), || {
            format!("{what} errors not decreasing: {errs:?}")
        });
        h.expect(*errs.last().unwrap() < 0.05, || {
            format!("{what} error at n={} is {}", caps.convergence_ns.last().unwrap(), errs.last().unwrap())
        });
    }
    h.finish("C7", "asymptotic convergence")
}

/// Criterion 8: branch-and-bound equals the exhaustive subset scan on
/// seeded graphs across sizes, densities, bounds, and both modes.
pub fn criterion_8_search_exactness(caps: &Caps) -> Check {
    let mut h = Harness::new();
    for i in 0..caps.search_instances {
        let n = 8 + (i % 9) as usize; // 8..=16
        let p = [0.2, 0.5, 0.8][(i % 3) as usize];
        let g = sample_gnp(n, p, 1000 + i).unwrap();
        for delta in [3u32, 4] {
            for mode in [Mode::Tree, Mode::Forest] {
                let fast = max_induced_bounded(&g, delta, mode, None).unwrap();
                let slow = exhaustive_max_induced(&g, delta, mode).unwrap();
                h.expect(fast.size == slow, || {
                    format!(
                        "search mismatch: n={n} p={p} seed={} delta={delta} mode={mode:?}: {} vs {slow}",
                        1000 + i,
                        fast.size
                    )
                });
            }
        }
    }
    h.finish("C8", "search exactness")
}

/// Criterion 9: moment cross-validation: exact whole-graph-space
/// averages at tiny n, and z-scores of seeded Monte Carlo at desk scale.
pub fn criterion_9_moment_cross_validation(caps: &Caps) -> Check {
    let mut h = Harness::new();
    let half = rational(1, 2);
    for n in 3usize..=5 {
        for k in 1..=n {
            for delta in [3u32, 4] {
                let (avg_y, avg_z) = average_counts_over_all_graphs(n, k, delta, &half);
                if k >= 2 {
                    let exact_y = expected_induced_trees(n as u64, k as u64, &half, delta).unwrap();
                    h.expect(avg_y == exact_y, || {
                        format!("E Y mismatch n={n} k={k} delta={delta}: {avg_y} vs {exact_y}")
                    });
                } else {
                    h.expect(avg_y == BigRational::from(num_bigint::BigInt::from(n)), || {
                        format!("E Y_1 should be n, got {avg_y}")
                    });
                }
                let exact_z =
                    expected_induced_rooted_forests(n as u64, k as u64, &half, delta).unwrap();
                h.expect(avg_z == exact_z, || {
                    format!("E Z mismatch n={n} k={k} delta={delta}: {avg_z} vs {exact_z}")
                });
            }
        }
    }

    let result = moment_experiment(60, 5, &half, 3, caps.moment_trials, caps.seed, caps.jobs)
        .unwrap();
    h.expect(result.y.z_score.abs() <= 4.0, || {
        format!("|z| for Y_5 is {}", result.y.z_score)
    });
    h.expect(result.z.z_score.abs() <= 4.0, || {
        format!("|z| for Z_5 is {}", result.z.z_score)
    });
    h.finish("C9", "moment cross-validation")
}

/// Criterion 10: the concentration diagnostic at desk scale: every
/// observed maximum inside the recomputed window with slack 2, and the
/// tree <= bounded forest <= unbounded forest sandwich in every trial.
pub fn criterion_10_concentration_diagnostic(caps: &Caps) -> Check {
    let mut h = Harness::new();
    let result = concentration_experiment(
        caps.concentration_n,
        0.5,
        3,
        caps.concentration_trials,
        caps.seed,
        0.1,
        None,
        caps.jobs,
    )
    .unwrap();
    h.expect(result.fraction_t_in_window_slack2 == 1.0, || {
        format!(
            "only {:.3} of T values inside window +/- 2 (window {:?}, histogram {:?})",
            result.fraction_t_in_window_slack2, result.prediction.window_dense, result.histogram_t
        )
    });
    h.expect(result.fraction_f_in_window_slack2 == 1.0, || {
        format!(
            "only {:.3} of F values inside window +/- 2 (window {:?}, histogram {:?})",
            result.fraction_f_in_window_slack2, result.prediction.window_dense, result.histogram_f
        )
    });
    h.expect(result.sandwich_violations == 0, || {
        format!("{} sandwich violations", result.sandwich_violations)
    });
    // The window itself must be the recomputed prediction, sanity-checked
    // against the closed form at a second size.
    let w200 = concentration_window_dense(200, 0.5, 3, 0.1).unwrap();
    h.expect(w200.window_dense == (17, 18), || {
        format!("window at n=200 came out as {:?}", w200.window_dense)
    });
    h.finish("C10", "concentration diagnostic")
}

/// Which suite a criterion belongs to, for the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Codecs,
    Counts,
    Asymptotics,
    Search,
}

/// Run one suite.
pub fn run_suite(suite: Suite, caps: &Caps) -> Vec<Check> {
    match suite {
        Suite::Codecs => vec![criterion_1_codec_bijections(caps)],
        Suite::Counts => vec![
            criterion_2_exact_counts(caps),
            criterion_5_weighted_sum_identity(caps),
        ],
        Suite::Asymptotics => vec![
            criterion_3_constants(caps),
            criterion_4_probability_identity(caps),
            criterion_6_saddle_contracts(caps),
            criterion_7_asymptotic_convergence(caps),
        ],
        Suite::Search => vec![
            criterion_8_search_exactness(caps),
            criterion_9_moment_cross_validation(caps),
            criterion_10_concentration_diagnostic(caps),
        ],
    }
}
