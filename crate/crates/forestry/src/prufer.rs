//! Bijective codes for labelled trees, rooted forests, and trees with a
//! designated independent set.
//!
//! Three codecs, three pruning disciplines:
//!
//! - plain trees: classic code in `[n]^{n-2}`, smallest leaf pruned first;
//! - rooted forests: non-root leaves pruned largest-label first until only
//!   roots survive, giving a body in `[n]^{n-1-m}` plus a tail root;
//! - trees with independent set `[m]`: smallest leaf pruned first until a
//!   single edge remains, entries routed into two streams `a`, `b`.
//!
//! The disciplines intentionally differ per codec and must not be unified:
//! bijectivity holds either way but the code values differ.
//!
//! Occurrence laws (used heavily by the counting layer): in the plain code
//! a vertex appears exactly `deg - 1` times; in the forest code a non-root
//! appears `deg - 1` times in the body, a root other than the tail exactly
//! `deg` times, and the tail root `deg - 1` times; in the independent-set
//! code vertex `i` appears exactly `d_i - 1` times and vertices of `[m]`
//! appear in `b` only.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledRootedForest, LabeledTree};

/// Code of a rooted forest: the root set, a body over `[n]`, and a tail
/// that is always a root.
///
/// For the degenerate all-roots forest (`m = n`) the body is empty and the
/// tail is fixed to the minimum root; that case sits outside the pruning
/// construction and is a convention of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestCode {
    pub roots: Vec<u32>,
    pub body: Vec<u32>,
    pub tail: u32,
}

/// Code of a tree in which `1..=m` is an independent set: `a` has length
/// `m - 1` over `{m+1..n}`, `b` has length `n - m - 1` over `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSetTreeCode {
    pub m: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

/// Mutable adjacency used by the pruning loops.
struct Pruner {
    adj: Vec<Vec<u32>>,
    deg: Vec<u32>,
    alive: Vec<bool>,
}

impl Pruner {
    fn new(n: u32, edges: &[(u32, u32)]) -> Self {
        let mut adj = vec![Vec::new(); n as usize + 1];
        let mut deg = vec![0u32; n as usize + 1];
        for &(a, b) in edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        Self {
            adj,
            deg,
            alive: vec![true; n as usize + 1],
        }
    }

    /// Remove leaf `v` and return its unique live neighbour.
    fn prune(&mut self, v: u32) -> u32 {
        debug_assert!(self.alive[v as usize] && self.deg[v as usize] == 1);
        self.alive[v as usize] = false;
        let u = self.adj[v as usize]
            .iter()
            .copied()
            .find(|&u| self.alive[u as usize])
            .expect("leaf has one live neighbour");
        self.deg[u as usize] -= 1;
        self.deg[v as usize] = 0;
        u
    }
}

/// Encode a labelled tree as its classic code in `[n]^{n-2}`.
pub fn encode_tree(tree: &LabeledTree) -> Result<Vec<u32>> {
    let n = tree.n();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "tree code needs n >= 2".to_string(),
        ));
    }
    let mut pruner = Pruner::new(n, tree.edges());
    let mut leaves: BinaryHeap<Reverse<u32>> = (1..=n)
        .filter(|&v| pruner.deg[v as usize] == 1)
        .map(Reverse)
        .collect();
    let mut code = Vec::with_capacity(n as usize - 2);
    while code.len() < n as usize - 2 {
        let Reverse(v) = leaves.pop().expect("a tree always has a leaf");
        if !pruner.alive[v as usize] || pruner.deg[v as usize] != 1 {
            continue;
        }
        let u = pruner.prune(v);
        code.push(u);
        if pruner.deg[u as usize] == 1 {
            leaves.push(Reverse(u));
        }
    }
    Ok(code)
}

/// Decode a classic code back into the tree it came from.
pub fn decode_tree(code: &[u32], n: u32) -> Result<LabeledTree> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "tree decode needs n >= 2".to_string(),
        ));
    }
    if code.len() != n as usize - 2 {
        return Err(Error::MalformedCode(format!(
            "code length {} != n-2 = {}",
            code.len(),
            n - 2
        )));
    }
    if let Some(&v) = code.iter().find(|&&v| v < 1 || v > n) {
        return Err(Error::MalformedCode(format!("entry {v} out of range")));
    }
    let mut remaining = vec![0u32; n as usize + 1];
    for &v in code {
        remaining[v as usize] += 1;
    }
    let mut heap: BinaryHeap<Reverse<u32>> = (1..=n)
        .filter(|&v| remaining[v as usize] == 0)
        .map(Reverse)
        .collect();
    let mut used = vec![false; n as usize + 1];
    let mut edges = Vec::with_capacity(n as usize - 1);
    for &c in code {
        let Reverse(v) = heap.pop().expect("decode always has a leaf available");
        used[v as usize] = true;
        edges.push((v, c));
        remaining[c as usize] -= 1;
        if remaining[c as usize] == 0 && !used[c as usize] {
            heap.push(Reverse(c));
        }
    }
    let last: Vec<u32> = (1..=n).filter(|&v| !used[v as usize]).collect();
    debug_assert_eq!(last.len(), 2);
    edges.push((last[0], last[1]));
    LabeledTree::new(n, &edges)
}

/// Encode a rooted forest by pruning non-root leaves with the largest
/// labels first until only roots survive.
pub fn encode_rooted_forest(forest: &LabeledRootedForest) -> Result<ForestCode> {
    let n = forest.n();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "forest code needs n >= 2".to_string(),
        ));
    }
    let m = forest.component_count();
    let roots = forest.roots().to_vec();
    if m == n {
        // Edgeless forest: empty body, tail fixed to the minimum root.
        return Ok(ForestCode {
            tail: roots[0],
            roots,
            body: Vec::new(),
        });
    }
    let is_root = |v: u32| forest.is_root(v);
    let mut pruner = Pruner::new(n, forest.edges());
    let mut leaves: BinaryHeap<u32> = (1..=n)
        .filter(|&v| pruner.deg[v as usize] == 1 && !is_root(v))
        .collect();
    let mut seq = Vec::with_capacity((n - m) as usize);
    while seq.len() < (n - m) as usize {
        let v = leaves.pop().expect("a non-root leaf exists until only roots survive");
        if !pruner.alive[v as usize] || pruner.deg[v as usize] != 1 {
            continue;
        }
        let u = pruner.prune(v);
        seq.push(u);
        if pruner.deg[u as usize] == 1 && !is_root(u) {
            leaves.push(u);
        }
    }
    let tail = seq.pop().expect("sequence has n - m >= 1 entries");
    debug_assert!(is_root(tail), "the last pruned leaf hangs off a root");
    Ok(ForestCode {
        roots,
        body: seq,
        tail,
    })
}

/// Decode a forest code, inverting [`encode_rooted_forest`].
pub fn decode_rooted_forest(code: &ForestCode, n: u32) -> Result<LabeledRootedForest> {
    if n < 1 {
        return Err(Error::InvalidParameter("decode needs n >= 1".to_string()));
    }
    let mut roots = code.roots.clone();
    roots.sort_unstable();
    let m = roots.len() as u32;
    if m == 0 || m > n {
        return Err(Error::MalformedCode(format!("{m} roots on {n} vertices")));
    }
    if roots.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedCode("duplicate root".to_string()));
    }
    if roots.iter().any(|&r| r < 1 || r > n) {
        return Err(Error::MalformedCode("root out of range".to_string()));
    }
    let is_root = |v: u32| roots.binary_search(&v).is_ok();
    if !is_root(code.tail) {
        return Err(Error::MalformedCode("tail is not a root".to_string()));
    }
    if m == n {
        if !code.body.is_empty() {
            return Err(Error::MalformedCode(
                "all-roots forest must have an empty body".to_string(),
            ));
        }
        if code.tail != roots[0] {
            return Err(Error::MalformedCode(
                "all-roots forest fixes the tail to the minimum root".to_string(),
            ));
        }
        return LabeledRootedForest::new(n, &[], &roots);
    }
    if code.body.len() != (n - 1 - m) as usize {
        return Err(Error::MalformedCode(format!(
            "body length {} != n-1-m = {}",
            code.body.len(),
            n - 1 - m
        )));
    }
    if let Some(&v) = code.body.iter().find(|&&v| v < 1 || v > n) {
        return Err(Error::MalformedCode(format!("entry {v} out of range")));
    }

    let mut full = code.body.clone();
    full.push(code.tail);
    let mut remaining = vec![0u32; n as usize + 1];
    for &v in &full {
        remaining[v as usize] += 1;
    }
    // Largest-first decode: the pruned vertex at each step is the largest
    // unused non-root with no remaining occurrences.
    let mut heap: BinaryHeap<u32> = (1..=n)
        .filter(|&v| !is_root(v) && remaining[v as usize] == 0)
        .collect();
    let mut used = vec![false; n as usize + 1];
    let mut edges = Vec::with_capacity((n - m) as usize);
    for &c in &full {
        let v = loop {
            let Some(v) = heap.pop() else {
                return Err(Error::MalformedCode(
                    "code does not decode to a rooted forest".to_string(),
                ));
            };
            if !used[v as usize] {
                break v;
            }
        };
        used[v as usize] = true;
        edges.push((v, c));
        remaining[c as usize] -= 1;
        if remaining[c as usize] == 0 && !used[c as usize] && !is_root(c) {
            heap.push(c);
        }
    }
    LabeledRootedForest::new(n, &edges, &roots)
}

/// Encode a tree with independent set `[m]` into the two-stream code.
///
/// Smallest leaves are pruned first, as in the classic procedure, until a
/// single edge remains. A pruned leaf in `[m]` routes its neighbour into
/// `a` while at least two `[m]`-vertices are still present; every other
/// entry goes to `b`.
pub fn encode_tree_with_independent_set(
    tree: &LabeledTree,
    m: u32,
) -> Result<IndependentSetTreeCode> {
    let n = tree.n();
    if m < 1 || n < m + 2 {
        return Err(Error::InvalidParameter(format!(
            "independent-set code needs 1 <= m <= n-2, got m={m}, n={n}"
        )));
    }
    if !tree.is_independent_prefix(m) {
        return Err(Error::InvalidParameter(format!(
            "vertices 1..={m} are not independent"
        )));
    }
    let mut pruner = Pruner::new(n, tree.edges());
    let mut leaves: BinaryHeap<Reverse<u32>> = (1..=n)
        .filter(|&v| pruner.deg[v as usize] == 1)
        .map(Reverse)
        .collect();
    let mut m_present = m;
    let mut a = Vec::with_capacity(m as usize - 1);
    let mut b = Vec::with_capacity((n - m - 1) as usize);
    for _ in 0..n - 2 {
        let (v, u) = loop {
            let Reverse(v) = leaves.pop().expect("tree keeps a leaf until one edge remains");
            if pruner.alive[v as usize] && pruner.deg[v as usize] == 1 {
                let u = pruner.prune(v);
                break (v, u);
            }
        };
        if v <= m {
            if m_present >= 2 {
                a.push(u);
            } else {
                b.push(u);
            }
            m_present -= 1;
        } else {
            b.push(u);
        }
        if pruner.deg[u as usize] == 1 {
            leaves.push(Reverse(u));
        }
    }
    debug_assert_eq!(a.len(), m as usize - 1);
    debug_assert_eq!(b.len(), (n - m - 1) as usize);
    debug_assert!(a.iter().all(|&x| x > m), "independence keeps [m] out of a");
    Ok(IndependentSetTreeCode { m, a, b })
}

/// Decode the two-stream code, inverting [`encode_tree_with_independent_set`].
pub fn decode_tree_with_independent_set(
    code: &IndependentSetTreeCode,
    n: u32,
) -> Result<LabeledTree> {
    let m = code.m;
    if m < 1 || n < m + 2 {
        return Err(Error::InvalidParameter(format!(
            "independent-set code needs 1 <= m <= n-2, got m={m}, n={n}"
        )));
    }
    if code.a.len() != m as usize - 1 {
        return Err(Error::MalformedCode(format!(
            "a has length {} != m-1 = {}",
            code.a.len(),
            m - 1
        )));
    }
    if code.b.len() != (n - m - 1) as usize {
        return Err(Error::MalformedCode(format!(
            "b has length {} != n-m-1 = {}",
            code.b.len(),
            n - m - 1
        )));
    }
    if let Some(&v) = code.a.iter().find(|&&v| v <= m || v > n) {
        return Err(Error::MalformedCode(format!(
            "a entry {v} outside {}..={n}",
            m + 1
        )));
    }
    if let Some(&v) = code.b.iter().find(|&&v| v < 1 || v > n) {
        return Err(Error::MalformedCode(format!("b entry {v} out of range")));
    }

    // Remaining occurrences are counted jointly across the unread suffixes
    // of both streams; a vertex is a current leaf exactly when unused with
    // no remaining occurrences.
    let mut remaining = vec![0u32; n as usize + 1];
    for &v in code.a.iter().chain(code.b.iter()) {
        remaining[v as usize] += 1;
    }
    let mut heap: BinaryHeap<Reverse<u32>> = (1..=n)
        .filter(|&v| remaining[v as usize] == 0)
        .map(Reverse)
        .collect();
    let mut used = vec![false; n as usize + 1];
    let mut m_present = m;
    let (mut ia, mut ib) = (0usize, 0usize);
    let mut edges = Vec::with_capacity(n as usize - 1);
    for _ in 0..n - 2 {
        let v = loop {
            let Some(Reverse(v)) = heap.pop() else {
                return Err(Error::MalformedCode(
                    "code does not decode to a tree".to_string(),
                ));
            };
            if !used[v as usize] {
                break v;
            }
        };
        used[v as usize] = true;
        let u = if v <= m && m_present >= 2 {
            let u = code.a[ia];
            ia += 1;
            u
        } else {
            let Some(&u) = code.b.get(ib) else {
                return Err(Error::MalformedCode(
                    "stream b exhausted during decode".to_string(),
                ));
            };
            ib += 1;
            u
        };
        if v <= m {
            m_present -= 1;
        }
        edges.push((v, u));
        remaining[u as usize] -= 1;
        if remaining[u as usize] == 0 && !used[u as usize] {
            heap.push(Reverse(u));
        }
    }
    let last: Vec<u32> = (1..=n).filter(|&v| !used[v as usize]).collect();
    debug_assert_eq!(last.len(), 2);
    edges.push((last[0], last[1]));
    let tree = LabeledTree::new(n, &edges)?;
    if !tree.is_independent_prefix(m) {
        return Err(Error::MalformedCode(
            "decoded tree breaks the independent set".to_string(),
        ));
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tree(n: u32, edges: &[(u32, u32)]) -> LabeledTree {
        LabeledTree::new(n, edges).unwrap()
    }

    #[test]
    fn path_code() {
        let t = tree(3, &[(1, 2), (2, 3)]);
        assert_eq!(encode_tree(&t).unwrap(), vec![2]);
        assert_eq!(decode_tree(&[2], 3).unwrap(), t);
    }

    #[test]
    fn star_code() {
        let t = tree(4, &[(1, 4), (2, 4), (3, 4)]);
        assert_eq!(encode_tree(&t).unwrap(), vec![4, 4]);
        assert_eq!(decode_tree(&[4, 4], 4).unwrap(), t);
    }

    #[test]
    fn all_codes_on_four_vertices_are_distinct_trees() {
        let mut seen = std::collections::HashSet::new();
        for c0 in 1..=4u32 {
            for c1 in 1..=4u32 {
                let t = decode_tree(&[c0, c1], 4).unwrap();
                assert_eq!(encode_tree(&t).unwrap(), vec![c0, c1]);
                seen.insert(t);
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn degree_law_exhaustive_n5() {
        // occurrences of v in the code = deg(v) - 1, over every code in [5]^3
        for c0 in 1..=5u32 {
            for c1 in 1..=5u32 {
                for c2 in 1..=5u32 {
                    let code = [c0, c1, c2];
                    let t = decode_tree(&code, 5).unwrap();
                    let deg = t.degrees();
                    for v in 1..=5u32 {
                        let occ = code.iter().filter(|&&x| x == v).count() as u32;
                        assert_eq!(deg[v as usize - 1], occ + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn decode_rejects_malformed() {
        assert!(decode_tree(&[5], 3).is_err());
        assert!(decode_tree(&[1, 2], 3).is_err());
    }

    #[test]
    fn single_tree_forest_specializes_to_tree_code() {
        // m = 1: body is a length-(n-2) code under root-avoiding pruning
        // order and the tail is the root.
        let f = LabeledRootedForest::new(4, &[(1, 2), (2, 3), (3, 4)], &[2]).unwrap();
        let code = encode_rooted_forest(&f).unwrap();
        assert_eq!(code.roots, vec![2]);
        assert_eq!(code.body.len(), 2);
        assert_eq!(code.tail, 2);
        assert_eq!(decode_rooted_forest(&code, 4).unwrap(), f);
    }

    #[test]
    fn two_component_forest_on_three_vertices() {
        let f = LabeledRootedForest::new(3, &[(1, 3)], &[1, 2]).unwrap();
        let code = encode_rooted_forest(&f).unwrap();
        assert!(code.body.is_empty());
        assert!(code.roots.contains(&code.tail));
        assert_eq!(decode_rooted_forest(&code, 3).unwrap(), f);
    }

    #[test]
    fn edgeless_forest_convention() {
        let f = LabeledRootedForest::new(3, &[], &[1, 2, 3]).unwrap();
        let code = encode_rooted_forest(&f).unwrap();
        assert!(code.body.is_empty());
        assert_eq!(code.tail, 1);
        assert_eq!(decode_rooted_forest(&code, 3).unwrap(), f);
    }

    #[test]
    fn forest_occurrence_laws() {
        let f = LabeledRootedForest::new(6, &[(1, 3), (3, 5), (2, 4), (4, 6)], &[1, 2]).unwrap();
        let code = encode_rooted_forest(&f).unwrap();
        let deg = f.degrees();
        let occ = |v: u32, seq: &[u32]| seq.iter().filter(|&&x| x == v).count() as u32;
        for v in 1..=6u32 {
            let body_occ = occ(v, &code.body);
            let d = deg[v as usize - 1];
            if !f.is_root(v) {
                assert_eq!(body_occ, d - 1, "non-root {v}");
            } else if v == code.tail {
                assert_eq!(body_occ, d - 1, "tail root {v}");
            } else {
                assert_eq!(body_occ, d, "non-tail root {v}");
            }
        }
    }

    #[test]
    fn independent_set_code_hand_examples() {
        // n=3, m=1, path 1-2-3: a empty, b=(2)
        let t = tree(3, &[(1, 2), (2, 3)]);
        let code = encode_tree_with_independent_set(&t, 1).unwrap();
        assert!(code.a.is_empty());
        assert_eq!(code.b, vec![2]);
        assert_eq!(decode_tree_with_independent_set(&code, 3).unwrap(), t);

        // n=4, m=2, edges {1-3, 2-3, 3-4}: a=(3), b=(3)
        let t = tree(4, &[(1, 3), (2, 3), (3, 4)]);
        let code = encode_tree_with_independent_set(&t, 2).unwrap();
        assert_eq!(code.a, vec![3]);
        assert_eq!(code.b, vec![3]);
        assert_eq!(decode_tree_with_independent_set(&code, 4).unwrap(), t);
    }

    #[test]
    fn independent_set_encoder_rejects_dependent_prefix() {
        let t = tree(4, &[(1, 2), (2, 3), (3, 4)]);
        assert!(encode_tree_with_independent_set(&t, 2).is_err());
    }

    #[test]
    fn independent_set_code_occurrence_law() {
        let t = tree(6, &[(1, 4), (2, 4), (4, 5), (5, 3), (5, 6)]);
        let code = encode_tree_with_independent_set(&t, 3).unwrap();
        let deg = t.degrees();
        for v in 1..=6u32 {
            let occ = code
                .a
                .iter()
                .chain(code.b.iter())
                .filter(|&&x| x == v)
                .count() as u32;
            assert_eq!(occ, deg[v as usize - 1] - 1, "vertex {v}");
        }
        assert!(code.a.iter().all(|&x| x > 3));
    }

    proptest! {
        #[test]
        fn random_tree_codes_round_trip(n in 2u32..=200, seed in any::<u64>()) {
            // sample a code, decode, re-encode
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let code: Vec<u32> =
                (0..n - 2).map(|_| rng.random_range(1..=n)).collect();
            let t = decode_tree(&code, n).unwrap();
            prop_assert_eq!(encode_tree(&t).unwrap(), code);
        }

        #[test]
        fn random_forest_codes_round_trip(n in 2u32..=200, seed in any::<u64>()) {
            use rand::{seq::index, Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = rng.random_range(1..=n - 1);
            let mut roots: Vec<u32> = index::sample(&mut rng, n as usize, m as usize)
                .into_iter()
                .map(|i| i as u32 + 1)
                .collect();
            roots.sort_unstable();
            let body: Vec<u32> = (0..n - 1 - m).map(|_| rng.random_range(1..=n)).collect();
            let tail = roots[rng.random_range(0..roots.len())];
            let code = ForestCode { roots, body, tail };
            let f = decode_rooted_forest(&code, n).unwrap();
            prop_assert_eq!(encode_rooted_forest(&f).unwrap(), code);
        }

        #[test]
        fn random_independent_set_codes_round_trip(
            n in 4u32..=120,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = rng.random_range(1..=n - 2);
            let a: Vec<u32> = (0..m - 1).map(|_| rng.random_range(m + 1..=n)).collect();
            let b: Vec<u32> = (0..n - m - 1).map(|_| rng.random_range(1..=n)).collect();
            let code = IndependentSetTreeCode { m, a, b };
            let t = decode_tree_with_independent_set(&code, n).unwrap();
            prop_assert!(t.is_independent_prefix(m));
            prop_assert_eq!(encode_tree_with_independent_set(&t, m).unwrap(), code);
        }
    }
}
