//! Labelled trees, rooted forests, and the shape/degree descriptors used
//! by the counting formulas. Vertices are `1..=n`.
//!
//! Types normalize on construction (edges stored as sorted `(u, v)` pairs
//! with `u < v`) so the serde JSON form is canonical.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn normalize_edges(n: u32, edges: &[(u32, u32)]) -> Result<Vec<(u32, u32)>> {
    let mut out = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        if a == b {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {a}")));
        }
        if a < 1 || b < 1 || a > n || b > n {
            return Err(Error::InvalidParameter(format!(
                "edge ({a},{b}) out of range 1..={n}"
            )));
        }
        out.push((a.min(b), a.max(b)));
    }
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("duplicate edge".to_string()));
    }
    Ok(out)
}

/// Union-find over vertices `1..=n`; counts components and detects cycles.
struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: u32) -> Self {
        Self {
            parent: (0..=n).collect(),
        }
    }

    fn find(&mut self, v: u32) -> u32 {
        let mut v = v;
        while self.parent[v as usize] != v {
            let p = self.parent[v as usize];
            self.parent[v as usize] = self.parent[p as usize];
            v = p;
        }
        v
    }

    /// Returns false if `a` and `b` were already connected.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }
}

/// A labelled tree on `1..=n`: connected and acyclic with `n - 1` edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTree", into = "RawTree")]
pub struct LabeledTree {
    n: u32,
    edges: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl TryFrom<RawTree> for LabeledTree {
    type Error = Error;
    fn try_from(raw: RawTree) -> Result<Self> {
        LabeledTree::new(raw.n, &raw.edges)
    }
}

impl From<LabeledTree> for RawTree {
    fn from(t: LabeledTree) -> Self {
        RawTree {
            n: t.n,
            edges: t.edges,
        }
    }
}

impl LabeledTree {
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("tree needs n >= 1".to_string()));
        }
        let edges = normalize_edges(n, edges)?;
        if edges.len() != (n - 1) as usize {
            return Err(Error::NotATree(format!(
                "{} edges on {n} vertices",
                edges.len()
            )));
        }
        let mut dsu = Dsu::new(n);
        for &(a, b) in &edges {
            if !dsu.union(a, b) {
                return Err(Error::NotATree("contains a cycle".to_string()));
            }
        }
        // n-1 successful unions on n vertices leave one component.
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n as usize + 1];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg.remove(0);
        deg
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Adjacency lists indexed by vertex (entry 0 unused).
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    /// True when `1..=m` is an independent set.
    pub fn is_independent_prefix(&self, m: u32) -> bool {
        self.edges.iter().all(|&(a, b)| a > m || b > m)
    }

    /// Edges with both endpoints in `1..=ell`, in canonical order.
    pub fn induced_prefix_edges(&self, ell: u32) -> Vec<(u32, u32)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(a, b)| a <= ell && b <= ell)
            .collect()
    }
}

/// A labelled rooted forest on `1..=n`: acyclic, with exactly one root in
/// every connected component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForest", into = "RawForest")]
pub struct LabeledRootedForest {
    n: u32,
    edges: Vec<(u32, u32)>,
    roots: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawForest {
    n: u32,
    edges: Vec<(u32, u32)>,
    roots: Vec<u32>,
}

impl TryFrom<RawForest> for LabeledRootedForest {
    type Error = Error;
    fn try_from(raw: RawForest) -> Result<Self> {
        LabeledRootedForest::new(raw.n, &raw.edges, &raw.roots)
    }
}

impl From<LabeledRootedForest> for RawForest {
    fn from(f: LabeledRootedForest) -> Self {
        RawForest {
            n: f.n,
            edges: f.edges,
            roots: f.roots,
        }
    }
}

impl LabeledRootedForest {
    pub fn new(n: u32, edges: &[(u32, u32)], roots: &[u32]) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("forest needs n >= 1".to_string()));
        }
        let edges = normalize_edges(n, edges)?;
        let mut roots: Vec<u32> = roots.to_vec();
        roots.sort_unstable();
        if roots.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotARootedForest("duplicate root".to_string()));
        }
        if roots.iter().any(|&r| r < 1 || r > n) {
            return Err(Error::NotARootedForest("root out of range".to_string()));
        }
        let mut dsu = Dsu::new(n);
        for &(a, b) in &edges {
            if !dsu.union(a, b) {
                return Err(Error::NotARootedForest("contains a cycle".to_string()));
            }
        }
        // Exactly one root per component.
        let mut root_of = vec![0u32; n as usize + 1];
        for &r in &roots {
            let rep = dsu.find(r);
            if root_of[rep as usize] != 0 {
                return Err(Error::NotARootedForest(format!(
                    "two roots in one component: {} and {r}",
                    root_of[rep as usize]
                )));
            }
            root_of[rep as usize] = r;
        }
        for v in 1..=n {
            let rep = dsu.find(v);
            if root_of[rep as usize] == 0 {
                return Err(Error::NotARootedForest(format!(
                    "component of vertex {v} has no root"
                )));
            }
        }
        Ok(Self { n, edges, roots })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn roots(&self) -> &[u32] {
        &self.roots
    }

    /// Number of components (= number of roots).
    pub fn component_count(&self) -> u32 {
        self.roots.len() as u32
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n as usize + 1];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg.remove(0);
        deg
    }

    pub fn is_root(&self, v: u32) -> bool {
        self.roots.binary_search(&v).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    /// Maximum degree over all vertices, and over roots only.
    pub fn max_degrees(&self) -> (u32, u32) {
        let deg = self.degrees();
        let max_all = deg.iter().copied().max().unwrap_or(0);
        let max_root = self
            .roots
            .iter()
            .map(|&r| deg[r as usize - 1])
            .max()
            .unwrap_or(0);
        (max_all, max_root)
    }
}

/// Multiset of component sizes of a fixed induced forest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestShape {
    component_sizes: Vec<u64>,
}

impl ForestShape {
    pub fn new(component_sizes: &[u64]) -> Result<Self> {
        if component_sizes.is_empty() {
            return Err(Error::InvalidParameter(
                "shape needs at least one component".to_string(),
            ));
        }
        if component_sizes.contains(&0) {
            return Err(Error::InvalidParameter(
                "components must be non-empty".to_string(),
            ));
        }
        let mut sizes = component_sizes.to_vec();
        sizes.sort_unstable();
        Ok(Self {
            component_sizes: sizes,
        })
    }

    pub fn component_sizes(&self) -> &[u64] {
        &self.component_sizes
    }

    /// Total vertex count `ell`.
    pub fn total(&self) -> u64 {
        self.component_sizes.iter().sum()
    }

    /// Component count `m`.
    pub fn component_count(&self) -> u64 {
        self.component_sizes.len() as u64
    }
}

/// A degree sequence `d_1..d_n`, all entries positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
}

impl DegreeSequence {
    pub fn new(degrees: &[u32]) -> Result<Self> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::InvalidParameter(
                "degrees must be positive".to_string(),
            ));
        }
        Ok(Self {
            degrees: degrees.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn sum(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_validation() {
        assert!(LabeledTree::new(3, &[(1, 2), (2, 3)]).is_ok());
        // cycle
        assert!(LabeledTree::new(3, &[(1, 2), (2, 3), (1, 3)]).is_err());
        // disconnected (wrong edge count)
        assert!(LabeledTree::new(4, &[(1, 2), (3, 4)]).is_err());
        // single vertex
        assert!(LabeledTree::new(1, &[]).is_ok());
    }

    #[test]
    fn forest_validation() {
        // two components, one root each
        assert!(LabeledRootedForest::new(3, &[(1, 3)], &[1, 2]).is_ok());
        // missing root for component {2}
        assert!(LabeledRootedForest::new(3, &[(1, 3)], &[1]).is_err());
        // two roots in one component
        assert!(LabeledRootedForest::new(3, &[(1, 3)], &[1, 2, 3]).is_err());
        // edgeless forest: every vertex is a root
        assert!(LabeledRootedForest::new(3, &[], &[1, 2, 3]).is_ok());
    }

    #[test]
    fn canonical_json_round_trip() {
        let t = LabeledTree::new(4, &[(3, 1), (4, 3), (2, 3)]).unwrap();
        let js = serde_json::to_string(&t).unwrap();
        // edges normalized to sorted (min, max) pairs
        assert_eq!(js, r#"{"n":4,"edges":[[1,3],[2,3],[3,4]]}"#);
        let back: LabeledTree = serde_json::from_str(&js).unwrap();
        assert_eq!(t, back);
        // invalid JSON content is rejected on deserialize
        let bad = r#"{"n":3,"edges":[[1,2],[2,3],[1,3]]}"#;
        assert!(serde_json::from_str::<LabeledTree>(bad).is_err());
    }

    #[test]
    fn shape_accessors() {
        let s = ForestShape::new(&[3, 2, 2]).unwrap();
        assert_eq!(s.total(), 7);
        assert_eq!(s.component_count(), 3);
        assert!(ForestShape::new(&[]).is_err());
        assert!(ForestShape::new(&[0]).is_err());
    }
}
