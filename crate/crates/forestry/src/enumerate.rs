//! Exhaustive streams of labelled trees and rooted forests, driven by the
//! codecs. These are the oracle harness for the exact counting formulas;
//! they refuse sizes past the exhaustion cap (`n^{n-2}` items grow fast).

use crate::error::{Error, Result};
use crate::graph::{LabeledRootedForest, LabeledTree};
use crate::prufer::{decode_rooted_forest, decode_tree, ForestCode};

/// Largest `n` the exhaustive streams accept.
pub const MAX_ENUMERATION_N: u32 = 9;

/// Odometer over `[1..=base]^len`, starting at all-ones.
struct CodeOdometer {
    base: u32,
    digits: Vec<u32>,
    done: bool,
}

impl CodeOdometer {
    fn new(base: u32, len: usize) -> Self {
        Self {
            base,
            digits: vec![1; len],
            done: false,
        }
    }
}

impl Iterator for CodeOdometer {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let current = self.digits.clone();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.digits[i] < self.base {
                self.digits[i] += 1;
                for d in &mut self.digits[i + 1..] {
                    *d = 1;
                }
                break;
            }
        }
        Some(current)
    }
}

/// Every labelled tree on `[n]`, exactly `n^{n-2}` of them.
pub fn enumerate_all_trees(n: u32) -> Result<impl Iterator<Item = LabeledTree>> {
    if n < 1 {
        return Err(Error::InvalidParameter("need n >= 1".to_string()));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::CapExceeded(format!(
            "tree enumeration capped at n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    let codes = if n == 1 {
        // A single vertex; the odometer yields one empty code.
        CodeOdometer::new(1, 0)
    } else {
        CodeOdometer::new(n, n as usize - 2)
    };
    Ok(codes.map(move |code| {
        if n == 1 {
            LabeledTree::new(1, &[]).expect("single vertex is a tree")
        } else {
            decode_tree(&code, n).expect("every code decodes")
        }
    }))
}

/// Subsets of `1..=n` of size `m`, as sorted vectors.
fn subsets(n: u32, m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m as usize);
    fn rec(start: u32, n: u32, m: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == m as usize {
            out.push(current.clone());
            return;
        }
        let needed = m as usize - current.len();
        for v in start..=n {
            if ((n - v + 1) as usize) < needed {
                break;
            }
            current.push(v);
            rec(v + 1, n, m, current, out);
            current.pop();
        }
    }
    rec(1, n, m, &mut current, &mut out);
    out
}

/// Every labelled rooted forest on `[n]` with `m` components, exactly
/// `C(n-1, m-1) * n^{n-m}` of them.
pub fn enumerate_all_rooted_forests(
    n: u32,
    m: u32,
) -> Result<impl Iterator<Item = LabeledRootedForest>> {
    if n < 1 || m < 1 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= n, got m={m}, n={n}"
        )));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::CapExceeded(format!(
            "forest enumeration capped at n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    let root_sets = subsets(n, m);
    let body_len = (n - 1).saturating_sub(m) as usize;
    let iter = root_sets.into_iter().flat_map(move |roots| {
        let tails: Vec<u32> = if m == n {
            vec![roots[0]]
        } else {
            roots.clone()
        };
        tails.into_iter().flat_map(move |tail| {
            let roots = roots.clone();
            CodeOdometer::new(n, if m == n { 0 } else { body_len }).map(move |body| {
                let code = ForestCode {
                    roots: roots.clone(),
                    body,
                    tail,
                };
                decode_rooted_forest(&code, n).expect("every code decodes")
            })
        })
    });
    Ok(iter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn cayley_counts() {
        assert_eq!(enumerate_all_trees(3).unwrap().count(), 3);
        assert_eq!(enumerate_all_trees(4).unwrap().count(), 16);
        assert_eq!(enumerate_all_trees(5).unwrap().count(), 125);
    }

    #[test]
    fn trees_are_distinct() {
        let set: HashSet<_> = enumerate_all_trees(5).unwrap().collect();
        assert_eq!(set.len(), 125);
    }

    #[test]
    fn forest_counts_match_formula() {
        // C(n-1, m-1) * n^{n-m}
        assert_eq!(enumerate_all_rooted_forests(4, 2).unwrap().count(), 48);
        let distinct: HashSet<_> = enumerate_all_rooted_forests(4, 2).unwrap().collect();
        assert_eq!(distinct.len(), 48);
        assert_eq!(enumerate_all_rooted_forests(4, 4).unwrap().count(), 1);
        assert_eq!(enumerate_all_rooted_forests(3, 1).unwrap().count(), 9);
    }

    #[test]
    fn refuses_beyond_cap() {
        assert!(enumerate_all_trees(10).is_err());
        assert!(enumerate_all_rooted_forests(10, 2).is_err());
    }
}
