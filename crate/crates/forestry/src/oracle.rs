//! Brute-force reference implementations.
//!
//! Everything here is deliberately naive: edge-subset enumeration,
//! full code-space sweeps, 2^n subset scans, whole-graph-space averages --
//! and independent of the formula paths it certifies. The `verify` CLI
//! suites and the acceptance tests are built on this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::graph::{ForestShape, LabeledRootedForest, LabeledTree};
use crate::rg::{Mode, SampledGraph};

/// A fixed forest on vertices `1..=ell` used as an induced pattern.
#[derive(Debug, Clone)]
pub struct InducedPattern {
    pub ell: u32,
    pub edges: Vec<(u32, u32)>,
}

impl InducedPattern {
    pub fn new(ell: u32, edges: &[(u32, u32)]) -> Self {
        let mut edges: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        Self { ell, edges }
    }

    /// Component sizes of the pattern.
    pub fn shape(&self) -> Result<ForestShape> {
        let mut parent: Vec<u32> = (0..=self.ell).collect();
        fn find(parent: &mut [u32], v: u32) -> u32 {
            let mut v = v;
            while parent[v as usize] != v {
                let p = parent[v as usize];
                parent[v as usize] = parent[p as usize];
                v = p;
            }
            v
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra as usize] = rb;
        }
        let mut sizes = std::collections::BTreeMap::new();
        for v in 1..=self.ell {
            *sizes.entry(find(&mut parent, v)).or_insert(0u64) += 1;
        }
        let sizes: Vec<u64> = sizes.into_values().collect();
        ForestShape::new(&sizes)
    }

    /// Canonical pattern of the given shape: each component a path on
    /// consecutive labels.
    pub fn paths_of_shape(shape: &ForestShape) -> Self {
        let mut edges = Vec::new();
        let mut next = 1u32;
        for &size in shape.component_sizes() {
            for i in 0..size.saturating_sub(1) {
                edges.push((next + i as u32, next + i as u32 + 1));
            }
            next += size as u32;
        }
        Self::new(next - 1, &edges)
    }

    /// Same shape, different structure: each component a star centred on
    /// its first label.
    pub fn stars_of_shape(shape: &ForestShape) -> Self {
        let mut edges = Vec::new();
        let mut next = 1u32;
        for &size in shape.component_sizes() {
            for i in 1..size {
                edges.push((next, next + i as u32));
            }
            next += size as u32;
        }
        Self::new(next - 1, &edges)
    }
}

fn induced_prefix_matches(edges: &[(u32, u32)], pattern: &InducedPattern) -> bool {
    let ell = pattern.ell;
    let mut induced: Vec<(u32, u32)> = edges
        .iter()
        .copied()
        .filter(|&(a, b)| a <= ell && b <= ell)
        .collect();
    induced.sort_unstable();
    induced == pattern.edges
}

/// All trees on `[n]` by filtering edge subsets of size `n-1` for
/// connectivity: no codec involved.
pub fn trees_by_edge_subsets(n: u32) -> Vec<LabeledTree> {
    let pairs: Vec<(u32, u32)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(u32, u32)> = Vec::with_capacity(n as usize - 1);
    fn rec(
        pairs: &[(u32, u32)],
        start: usize,
        need: usize,
        n: u32,
        chosen: &mut Vec<(u32, u32)>,
        out: &mut Vec<LabeledTree>,
    ) {
        if need == 0 {
            if let Ok(tree) = LabeledTree::new(n, chosen) {
                out.push(tree);
            }
            return;
        }
        for i in start..pairs.len() {
            if pairs.len() - i < need {
                break;
            }
            chosen.push(pairs[i]);
            rec(pairs, i + 1, need - 1, n, chosen, out);
            chosen.pop();
        }
    }
    if n == 1 {
        return vec![LabeledTree::new(1, &[]).expect("single vertex")];
    }
    rec(&pairs, 0, n as usize - 1, n, &mut chosen, &mut out);
    out
}

/// All rooted forests on `[n]` with `m` components by filtering edge
/// subsets of size `n-m` and expanding every root choice: no codec
/// involved.
pub fn rooted_forests_by_edge_subsets(n: u32, m: u32) -> Vec<LabeledRootedForest> {
    let pairs: Vec<(u32, u32)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(u32, u32)> = Vec::with_capacity((n - m) as usize);

    fn components(n: u32, edges: &[(u32, u32)]) -> Option<Vec<Vec<u32>>> {
        let mut parent: Vec<u32> = (0..=n).collect();
        fn find(parent: &mut [u32], v: u32) -> u32 {
            let mut v = v;
            while parent[v as usize] != v {
                let p = parent[v as usize];
                parent[v as usize] = parent[p as usize];
                v = p;
            }
            v
        }
        for &(a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return None; // cycle
            }
            parent[ra as usize] = rb;
        }
        let mut comps: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for v in 1..=n {
            comps.entry(find(&mut parent, v)).or_default().push(v);
        }
        Some(comps.into_values().collect())
    }

    fn expand_roots(
        n: u32,
        edges: &[(u32, u32)],
        comps: &[Vec<u32>],
        idx: usize,
        roots: &mut Vec<u32>,
        out: &mut Vec<LabeledRootedForest>,
    ) {
        if idx == comps.len() {
            out.push(LabeledRootedForest::new(n, edges, roots).expect("valid by construction"));
            return;
        }
        for &r in &comps[idx] {
            roots.push(r);
            expand_roots(n, edges, comps, idx + 1, roots, out);
            roots.pop();
        }
    }

    fn rec(
        pairs: &[(u32, u32)],
        start: usize,
        need: usize,
        n: u32,
        m: u32,
        chosen: &mut Vec<(u32, u32)>,
        out: &mut Vec<LabeledRootedForest>,
    ) {
        if need == 0 {
            if let Some(comps) = components(n, chosen) {
                if comps.len() == m as usize {
                    expand_roots(n, chosen, &comps, 0, &mut Vec::new(), out);
                }
            }
            return;
        }
        for i in start..pairs.len() {
            if pairs.len() - i < need {
                break;
            }
            chosen.push(pairs[i]);
            rec(pairs, i + 1, need - 1, n, m, chosen, out);
            chosen.pop();
        }
    }

    rec(&pairs, 0, (n - m) as usize, n, m, &mut chosen, &mut out);
    out
}

/// Trees with maximum degree at most `delta`, by filtered enumeration.
pub fn count_trees_bounded(trees: &[LabeledTree], delta: u32) -> u64 {
    trees
        .iter()
        .filter(|t| t.max_degree() <= delta)
        .count() as u64
}

/// Rooted forests with maximum degree at most `delta` and root degrees at
/// most `delta - 1`, by filtered enumeration.
pub fn count_rooted_forests_bounded(forests: &[LabeledRootedForest], delta: u32) -> u64 {
    forests
        .iter()
        .filter(|f| {
            let (max_all, max_root) = f.max_degrees();
            max_all <= delta && max_root < delta
        })
        .count() as u64
}

/// Trees on `[n]` whose induced subgraph on `1..=ell` equals the pattern.
pub fn count_trees_containing(trees: &[LabeledTree], pattern: &InducedPattern) -> u64 {
    trees
        .iter()
        .filter(|t| induced_prefix_matches(t.edges(), pattern))
        .count() as u64
}

/// Rooted forests (roots unconstrained) with `h` components whose induced
/// subgraph on `1..=ell` equals the pattern.
pub fn count_rooted_forests_containing(
    forests_with_h_components: &[LabeledRootedForest],
    pattern: &InducedPattern,
) -> u64 {
    forests_with_h_components
        .iter()
        .filter(|f| induced_prefix_matches(f.edges(), pattern))
        .count() as u64
}

/// Trees with `1..=m` independent, bucketed exactly by degree sequence.
pub fn count_trees_with_independent_set_by_degrees(
    trees: &[LabeledTree],
    m: u32,
) -> std::collections::HashMap<Vec<u32>, u64> {
    let mut buckets: std::collections::HashMap<Vec<u32>, u64> = Default::default();
    for t in trees {
        if t.is_independent_prefix(m) {
            *buckets.entry(t.degrees()).or_insert(0) += 1;
        }
    }
    buckets
}

/// Exhaustive 2^n scan for the maximum induced bounded-degree structure.
pub fn exhaustive_max_induced(graph: &SampledGraph, delta: u32, mode: Mode) -> Result<usize> {
    let n = graph.n();
    assert!(n <= 24, "exhaustive scan is for tiny graphs");
    let mut best = 0usize;
    for mask in 0u32..(1u32 << n) {
        let subset: Vec<u32> = (0..n as u32)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| v + 1)
            .collect();
        if subset.len() <= best {
            continue;
        }
        if crate::rg::is_induced_ok(graph, &subset, delta, mode)? {
            best = subset.len();
        }
    }
    Ok(best)
}

/// Naive per-graph `(Y_k, Z_k)` by scanning all k-subsets.
pub fn count_induced_naive(graph: &SampledGraph, k: usize, delta: u32) -> (u64, u64) {
    let n = graph.n();
    let mut y = 0u64;
    let mut z = 0u64;
    let mut subset: Vec<u32> = Vec::with_capacity(k);
    fn rec(
        graph: &SampledGraph,
        k: usize,
        delta: u32,
        start: u32,
        subset: &mut Vec<u32>,
        y: &mut u64,
        z: &mut u64,
    ) {
        if subset.len() == k {
            if crate::rg::is_induced_ok(graph, subset, delta, Mode::Tree).expect("valid subset") {
                *y += 1;
            }
            if crate::rg::is_induced_ok(graph, subset, delta, Mode::Forest).expect("valid subset")
            {
                *z += rooting_weight(graph, subset, delta);
            }
            return;
        }
        let n = graph.n() as u32;
        for v in start..=n {
            if ((n - v + 1) as usize) < k - subset.len() {
                break;
            }
            subset.push(v);
            rec(graph, k, delta, v + 1, subset, y, z);
            subset.pop();
        }
    }
    if k >= 1 && k <= n {
        rec(graph, k, delta, 1, &mut subset, &mut y, &mut z);
    }
    (y, z)
}

/// Product over components of the number of valid roots (induced degree
/// at most `delta - 1`).
fn rooting_weight(graph: &SampledGraph, subset: &[u32], delta: u32) -> u64 {
    let k = subset.len();
    let mut comp: Vec<usize> = (0..k).collect();
    fn find(comp: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while comp[i] != i {
            let p = comp[i];
            comp[i] = comp[p];
            i = p;
        }
        i
    }
    let mut deg = vec![0u32; k];
    for i in 0..k {
        for j in i + 1..k {
            if graph.has_edge(subset[i], subset[j]) {
                deg[i] += 1;
                deg[j] += 1;
                let (ri, rj) = (find(&mut comp, i), find(&mut comp, j));
                comp[ri] = rj;
            }
        }
    }
    let mut weight = 1u64;
    let mut seen = std::collections::BTreeMap::new();
    for i in 0..k {
        let r = find(&mut comp, i);
        *seen.entry(r).or_insert(0u64) += u64::from(deg[i] < delta);
    }
    for (_, eligible) in seen {
        weight *= eligible;
    }
    weight
}

/// Exact `(E Y_k, E Z_k)` by averaging naive counts over all
/// `2^{C(n,2)}` graphs on `[n]` with rational edge probability `p`.
pub fn average_counts_over_all_graphs(
    n: usize,
    k: usize,
    delta: u32,
    p: &BigRational,
) -> (BigRational, BigRational) {
    assert!(n <= 5, "whole-graph-space averaging is for tiny n");
    let pairs: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|a| (a + 1..=n as u32).map(move |b| (a, b)))
        .collect();
    let total_pairs = pairs.len();
    let q = BigRational::one() - p;
    let mut e_y = BigRational::zero();
    let mut e_z = BigRational::zero();
    for mask in 0u64..(1u64 << total_pairs) {
        let edge_list: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask >> idx & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let edges = edge_list.len() as u32;
        let g = SampledGraph::from_edges(n, &edge_list).expect("valid edges");
        let (y, z) = count_induced_naive(&g, k, delta);
        let mut weight = BigRational::one();
        for _ in 0..edges {
            weight *= p;
        }
        for _ in 0..(total_pairs as u32 - edges) {
            weight *= &q;
        }
        e_y += BigRational::from(BigInt::from(y)) * &weight;
        e_z += BigRational::from(BigInt::from(z)) * weight;
    }
    (e_y, e_z)
}
