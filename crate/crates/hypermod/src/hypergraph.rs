//! Hypergraph data model: nodes, weighted (multiset) hyperedges, partitions,
//! incidence statistics and the two clique reductions.
//!
//! Nodes are dense integer ids `1..=n`; isolated nodes are allowed. Hyperedges
//! are stored canonically as sorted node lists (repeated ids encode node
//! multiplicity) with a positive integer weight counting edge multiplicity.
//!
//! ```
//! use hypermod::Hypergraph;
//!
//! let h = Hypergraph::new(4, vec![
//!     (vec![1, 2], 1),
//!     (vec![1, 2, 3], 1),
//!     (vec![3, 4], 1),
//! ]).unwrap();
//! assert_eq!(h.degree(1).unwrap(), 2);
//! assert_eq!(h.volume(&[1, 2, 3, 4]).unwrap(), 7);
//! assert_eq!(h.internal_edge_count(&[1, 2, 3]).unwrap(), 2);
//! ```

use std::borrow::Cow;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// 1-based node identifier.
pub type NodeId = u32;

/// A hyperedge: a sorted multiset of node ids with a positive integer weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperedge {
    nodes: Vec<NodeId>,
    weight: u64,
}

impl Hyperedge {
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Edge size |e|, counting node multiplicity.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// Multiplicity of `v` in this edge.
    pub fn multiplicity(&self, v: NodeId) -> usize {
        self.nodes.iter().filter(|&&u| u == v).count()
    }
}

/// A weighted hypergraph over nodes `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
    max_size: usize,
    degrees: Vec<u64>,
}

impl Hypergraph {
    /// Builds a canonical hypergraph. Node lists are sorted, identical edges
    /// are merged by summing weights, and edges are stored in sorted order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vec<NodeId>, u64)>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<NodeId>, u64> = BTreeMap::new();
        for (mut nodes, weight) in edges {
            if weight == 0 {
                return Err(Error::InvalidInput("edge weight must be >= 1".into()));
            }
            if nodes.is_empty() {
                return Err(Error::InvalidInput("empty hyperedge".into()));
            }
            for &v in &nodes {
                if v == 0 || v as usize > n {
                    return Err(Error::InvalidInput(format!(
                        "node id {v} out of range [1, {n}]"
                    )));
                }
            }
            nodes.sort_unstable();
            *merged.entry(nodes).or_insert(0) += weight;
        }
        let edges: Vec<Hyperedge> = merged
            .into_iter()
            .map(|(nodes, weight)| Hyperedge { nodes, weight })
            .collect();
        let max_size = edges.iter().map(|e| e.size()).max().unwrap_or(0);
        let mut degrees = vec![0u64; n];
        for e in &edges {
            for &v in &e.nodes {
                degrees[v as usize - 1] += e.weight;
            }
        }
        Ok(Self {
            n,
            edges,
            max_size,
            degrees,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, Vec::new()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// Maximum hyperedge size S (0 for an edgeless hypergraph).
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Weighted total |E|.
    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Weighted per-size counts |E_s|.
    pub fn size_counts(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            *out.entry(e.size() as u32).or_insert(0) += e.weight;
        }
        out
    }

    fn check_node(&self, v: NodeId) -> Result<()> {
        if v == 0 || v as usize > self.n {
            return Err(Error::InvalidInput(format!(
                "node id {v} out of range [1, {}]",
                self.n
            )));
        }
        Ok(())
    }

    /// Weighted degree of `v`, counting node multiplicity.
    pub fn degree(&self, v: NodeId) -> Result<u64> {
        self.check_node(v)?;
        Ok(self.degrees[v as usize - 1])
    }

    /// All node degrees, indexed by `v - 1`.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Volume of a node set: sum of member degrees.
    pub fn volume(&self, c: &[NodeId]) -> Result<u64> {
        let mut total = 0;
        for &v in c {
            total += self.degree(v)?;
        }
        Ok(total)
    }

    /// Weighted count of hyperedges entirely contained in `c`.
    pub fn internal_edge_count(&self, c: &[NodeId]) -> Result<u64> {
        let mut member = vec![false; self.n + 1];
        for &v in c {
            self.check_node(v)?;
            member[v as usize] = true;
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.nodes.iter().all(|&v| member[v as usize]))
            .map(|e| e.weight)
            .sum())
    }

    /// Node -> indices of incident edges.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            let mut last = 0;
            for &v in &e.nodes {
                if v != last {
                    inc[v as usize - 1].push(i);
                    last = v;
                }
            }
        }
        inc
    }

    /// Clique reduction: every hyperedge becomes a complete clique,
    /// edge weight (u,v) = sum over edges of w(e) m_e(u) m_e(v). Self-loops
    /// are removed.
    pub fn clique_reduction(&self) -> WeightedGraph {
        self.scaled_reduction(|_, _| 1.0)
    }

    /// Weighted clique reduction: per-edge pair weight w(e)/(|e|-1), which
    /// preserves the hypergraph node degrees. Size-1 edges are dropped.
    pub fn weighted_clique_reduction(&self) -> WeightedGraph {
        self.scaled_reduction(|_, e| 1.0 / (e.size() as f64 - 1.0))
    }

    /// Clique reduction with a per-edge scale factor applied on top of the
    /// edge weight (used by iterative reweighting).
    pub fn scaled_reduction(&self, scale: impl Fn(usize, &Hyperedge) -> f64) -> WeightedGraph {
        let mut acc: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
        for (ei, e) in self.edges.iter().enumerate() {
            if e.size() < 2 {
                continue;
            }
            let s = scale(ei, e);
            // group multiplicities per distinct node
            let mut mult: Vec<(NodeId, u64)> = Vec::new();
            for &v in &e.nodes {
                match mult.last_mut() {
                    Some((u, m)) if *u == v => *m += 1,
                    _ => mult.push((v, 1)),
                }
            }
            for i in 0..mult.len() {
                for j in (i + 1)..mult.len() {
                    let (u, mu) = mult[i];
                    let (v, mv) = mult[j];
                    *acc.entry((u, v)).or_insert(0.0) += e.weight as f64 * (mu * mv) as f64 * s;
                }
            }
        }
        WeightedGraph::from_pairs(self.n, acc)
    }

    /// Returns `self` with size-1 hyperedges removed (self-loops never
    /// contribute to a modularity). Borrows when there is nothing to strip.
    pub fn without_unit_edges(&self) -> Cow<'_, Hypergraph> {
        if self.edges.iter().all(|e| e.size() >= 2) {
            Cow::Borrowed(self)
        } else {
            let edges = self
                .edges
                .iter()
                .filter(|e| e.size() >= 2)
                .map(|e| (e.nodes.clone(), e.weight))
                .collect::<Vec<_>>();
            Cow::Owned(Hypergraph::new(self.n, edges).unwrap())
        }
    }
}

/// An undirected weighted graph with zero diagonal, stored as sorted
/// adjacency lists. Symmetry is enforced by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    adj: Vec<Vec<(NodeId, f64)>>,
}

impl WeightedGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds from unordered-pair weights keyed (u, v) with u < v.
    fn from_pairs(n: usize, pairs: BTreeMap<(NodeId, NodeId), f64>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for ((u, v), w) in pairs {
            debug_assert!(u < v);
            adj[u as usize - 1].push((v, w));
            adj[v as usize - 1].push((u, w));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        Self { n, adj }
    }

    /// Builds from an edge list of (u, v, weight); duplicate pairs are summed.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId, f64)>,
    ) -> Result<Self> {
        let mut pairs: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
        for (u, v, w) in edges {
            if u == 0 || v == 0 || u as usize > n || v as usize > n {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                continue; // zero diagonal
            }
            if w < 0.0 {
                return Err(Error::InvalidInput("negative edge weight".into()));
            }
            let key = if u < v { (u, v) } else { (v, u) };
            *pairs.entry(key).or_insert(0.0) += w;
        }
        Ok(Self::from_pairs(n, pairs))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.adj[v as usize - 1]
    }

    pub fn weighted_degree(&self, v: NodeId) -> f64 {
        self.adj[v as usize - 1].iter().map(|&(_, w)| w).sum()
    }

    /// Sum of A_uv over all ordered pairs (twice the total edge weight).
    pub fn total_weight(&self) -> f64 {
        (1..=self.n as NodeId).map(|v| self.weighted_degree(v)).sum()
    }

    /// Adjacency weight between u and v (0 if absent or u == v).
    pub fn weight(&self, u: NodeId, v: NodeId) -> f64 {
        self.adj[u as usize - 1]
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|i| self.adj[u as usize - 1][i].1)
            .unwrap_or(0.0)
    }
}

/// A partition of the nodes `1..=n` into clusters labeled `1..=k`,
/// every label non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<u32>,
    k: usize,
}

impl Partition {
    /// Validates that labels are exactly `1..=k` with every cluster non-empty.
    pub fn from_labels(labels: Vec<u32>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidInput("empty partition".into()));
        }
        let k = *labels.iter().max().unwrap() as usize;
        let mut seen = vec![false; k + 1];
        for &l in &labels {
            if l == 0 {
                return Err(Error::InvalidInput("cluster id 0".into()));
            }
            seen[l as usize] = true;
        }
        if !seen[1..].iter().all(|&s| s) {
            return Err(Error::InvalidInput(
                "cluster ids must cover 1..=K with no gaps".into(),
            ));
        }
        Ok(Self { labels, k })
    }

    /// Compacts arbitrary positive labels to `1..=k` by order of first
    /// appearance.
    pub fn normalized(raw: &[u32]) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        let mut next = 0u32;
        let mut labels = Vec::with_capacity(raw.len());
        for &l in raw {
            let id = *map.entry(l).or_insert_with(|| {
                next += 1;
                next
            });
            labels.push(id);
        }
        Self {
            labels,
            k: next as usize,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            labels: (1..=n as u32).collect(),
            k: n,
        }
    }

    pub fn single_cluster(n: usize) -> Self {
        Self {
            labels: vec![1; n],
            k: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn label(&self, v: NodeId) -> u32 {
        self.labels[v as usize - 1]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Cluster member lists, indexed by `label - 1`.
    pub fn members(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize - 1].push(i as NodeId + 1);
        }
        out
    }

    /// Per-cluster hypergraph volumes, indexed by `label - 1`.
    pub fn cluster_volumes(&self, h: &Hypergraph) -> Vec<u64> {
        let mut vols = vec![0u64; self.k];
        for (i, &l) in self.labels.iter().enumerate() {
            vols[l as usize - 1] += h.degrees()[i];
        }
        vols
    }

    /// Equality up to cluster relabeling.
    pub fn same_clustering(&self, other: &Partition) -> bool {
        if self.labels.len() != other.labels.len() || self.k != other.k {
            return false;
        }
        Partition::normalized(&self.labels).labels == Partition::normalized(&other.labels).labels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn h0() -> Hypergraph {
        Hypergraph::new(4, vec![(vec![1, 2], 1), (vec![1, 2, 3], 1), (vec![3, 4], 1)]).unwrap()
    }

    #[test]
    fn degrees_and_volumes() {
        let h = h0();
        assert_eq!(h.degree(1).unwrap(), 2);
        assert_eq!(h.degree(4).unwrap(), 1);
        assert_eq!(h.volume(&[1, 2]).unwrap(), 4);
        assert_eq!(h.volume(&[1, 2, 3, 4]).unwrap(), 7);
        assert_eq!(h.volume(&[]).unwrap(), 0);
        // Vol(V) = sum_s s |E_s|
        let total: u64 = h.size_counts().iter().map(|(&s, &c)| s as u64 * c).sum();
        assert_eq!(total, 7);
        assert!(h.degree(5).is_err());
        let empty = Hypergraph::empty(3);
        assert_eq!(empty.degree(2).unwrap(), 0);
    }

    #[test]
    fn internal_edges() {
        let h = h0();
        assert_eq!(h.internal_edge_count(&[1, 2]).unwrap(), 1);
        assert_eq!(h.internal_edge_count(&[1, 2, 3]).unwrap(), 2);
        assert_eq!(h.internal_edge_count(&[1, 2, 3, 4]).unwrap(), 3);
        assert!(h.internal_edge_count(&[9]).is_err());
    }

    #[test]
    fn duplicate_edges_merge() {
        let h = Hypergraph::new(2, vec![(vec![1, 2], 1), (vec![2, 1], 1)]).unwrap();
        assert_eq!(h.edges().len(), 1);
        assert_eq!(h.edges()[0].weight(), 2);
    }

    #[test]
    fn clique_reduction_h0() {
        let g = h0().clique_reduction();
        assert_eq!(g.weight(1, 2), 2.0);
        assert_eq!(g.weight(1, 3), 1.0);
        assert_eq!(g.weight(2, 3), 1.0);
        assert_eq!(g.weight(3, 4), 1.0);
        assert_eq!(g.weight(1, 4), 0.0);
        assert_eq!(g.weight(1, 1), 0.0);
    }

    #[test]
    fn clique_reduction_single_triangle() {
        let h = Hypergraph::new(3, vec![(vec![1, 2, 3], 1)]).unwrap();
        let g = h.clique_reduction();
        for (u, v) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(g.weight(u, v), 1.0);
        }
        let empty = Hypergraph::empty(3).clique_reduction();
        assert_eq!(empty.total_weight(), 0.0);
    }

    #[test]
    fn weighted_clique_reduction_h0() {
        let h = h0();
        let g = h.weighted_clique_reduction();
        assert_eq!(g.weight(1, 2), 1.5);
        assert_eq!(g.weight(1, 3), 0.5);
        assert_eq!(g.weight(2, 3), 0.5);
        assert_eq!(g.weight(3, 4), 1.0);
        // row sums preserve hypergraph degrees
        for v in 1..=4 {
            let row: f64 = g.weighted_degree(v);
            assert!((row - h.degree(v).unwrap() as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn two_uniform_reductions_agree() {
        let h = Hypergraph::new(3, vec![(vec![1, 2], 2), (vec![2, 3], 1)]).unwrap();
        assert_eq!(h.clique_reduction(), h.weighted_clique_reduction());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::from_labels(vec![1, 2, 1]).is_ok());
        assert!(Partition::from_labels(vec![1, 3]).is_err());
        assert!(Partition::from_labels(vec![0, 1]).is_err());
        let p = Partition::normalized(&[7, 7, 2, 7]);
        assert_eq!(p.labels(), &[1, 1, 2, 1]);
        assert_eq!(p.k(), 2);
    }

    #[test]
    fn same_clustering_up_to_relabel() {
        let a = Partition::from_labels(vec![1, 1, 2, 2]).unwrap();
        let b = Partition::from_labels(vec![2, 2, 1, 1]).unwrap();
        let c = Partition::from_labels(vec![1, 2, 1, 2]).unwrap();
        assert!(a.same_clustering(&b));
        assert!(!a.same_clustering(&c));
    }
}
