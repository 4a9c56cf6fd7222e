//! Partition vectors: how hyperedges are split by a node partition.
//!
//! A hyperedge intersected with a partition induces a non-increasing vector
//! of part sizes. This module computes split profiles, weighted split counts,
//! generalized volumes over ordered distinct cluster tuples, and per-cluster
//! majority-count tables.
//!
//! ```
//! use hypermod::{Hypergraph, Partition};
//! use hypermod::partvec::{split_profile, PartitionVector};
//!
//! let p = Partition::from_labels(vec![1, 1, 2, 2]).unwrap();
//! let pv = split_profile(&[1, 2, 3], &p).unwrap();
//! assert_eq!(pv, PartitionVector::new(vec![2, 1]).unwrap());
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId, Partition};

/// Non-increasing vector of positive part sizes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionVector(Vec<u32>);

impl PartitionVector {
    /// Sorts into canonical non-increasing order; entries must be positive.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidInput(
                "partition vector parts must be positive".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// ||p||_1: total size.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// ||p||_0: number of parts.
    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    /// Largest part p_1.
    pub fn largest(&self) -> u32 {
        self.0[0]
    }

    /// Number of s-tuples of cluster labels realizing this vector, divided by
    /// the ordered-distinct-label count: s! / (prod p_j! * prod m_r!) where
    /// m_r counts parts of equal size r.
    pub fn multiplicity(&self) -> f64 {
        let s = self.size();
        let mut m = ln_factorial(s);
        for &p in &self.0 {
            m -= ln_factorial(p);
        }
        let mut run = 1u32;
        for i in 1..=self.0.len() {
            if i < self.0.len() && self.0[i] == self.0[i - 1] {
                run += 1;
            } else {
                m -= ln_factorial(run);
                run = 1;
            }
        }
        m.exp().round()
    }
}

impl std::fmt::Display for PartitionVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n as u64).map(|i| (i as f64).ln()).sum()
}

/// All partition vectors of total size `s`, in lexicographically decreasing
/// order of parts.
pub fn partition_vectors_of(s: u32) -> Vec<PartitionVector> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<PartitionVector>) {
        if remaining == 0 {
            out.push(PartitionVector(cur.clone()));
            return;
        }
        let top = remaining.min(max);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    rec(s, s, &mut cur, &mut out);
    out
}

/// Sizes of the non-empty parts of `e` intersected with the partition,
/// sorted descending. Multiset nodes count with multiplicity.
pub fn split_profile(edge_nodes: &[NodeId], partition: &Partition) -> Result<PartitionVector> {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &v in edge_nodes {
        if v == 0 || v as usize > partition.n() {
            return Err(Error::InvalidInput(format!("node id {v} out of range")));
        }
        *counts.entry(partition.label(v)).or_insert(0) += 1;
    }
    PartitionVector::new(counts.into_values().collect())
}

/// Weighted count of hyperedges split into each partition vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplitCounts(BTreeMap<PartitionVector, u64>);

impl SplitCounts {
    pub fn get(&self, p: &PartitionVector) -> u64 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PartitionVector, u64)> {
        self.0.iter().map(|(p, &c)| (p, c))
    }
}

/// For each partition vector p: sum over edges of w(e) 1{phi(e, C) = p}.
pub fn split_counts(h: &Hypergraph, partition: &Partition) -> Result<SplitCounts> {
    let mut out = BTreeMap::new();
    for e in h.edges() {
        let p = split_profile(e.nodes(), partition)?;
        *out.entry(p).or_insert(0) += e.weight();
    }
    Ok(SplitCounts(out))
}

/// Generalized volume Vol_H(C_p): sum over ordered tuples of distinct cluster
/// labels (l_1, ..., l_J) of prod_j Vol(C_{l_j})^{p_j}. Returns 0 when the
/// vector has more parts than the partition has clusters.
pub fn partition_vector_volume(h: &Hypergraph, partition: &Partition, p: &PartitionVector) -> f64 {
    let vols = partition.cluster_volumes(h);
    partition_vector_volume_from(&vols, p)
}

/// Same, from precomputed per-cluster volumes.
pub fn partition_vector_volume_from(cluster_volumes: &[u64], p: &PartitionVector) -> f64 {
    let j = p.num_parts();
    if j > cluster_volumes.len() {
        return 0.0;
    }
    // Power sums P_a = sum_k Vol_k^a for every exponent that can arise.
    let max_exp: u32 = p.size();
    let mut power_sums = vec![0.0f64; max_exp as usize + 1];
    for a in 1..=max_exp as usize {
        power_sums[a] = cluster_volumes
            .iter()
            .map(|&v| (v as f64).powi(a as i32))
            .sum();
    }
    // Sum over ordered distinct label tuples via Moebius inversion on the
    // partition lattice: sum over set partitions sigma of the J exponents of
    // prod_{blocks B} (-1)^{|B|-1} (|B|-1)! P_{sum of exponents in B}.
    let mut total = 0.0;
    for_each_set_partition(j, &mut |blocks| {
        let mut term = 1.0;
        for block in blocks {
            let exp: u32 = block.iter().map(|&i| p.parts()[i]).sum();
            let b = block.len();
            let sign = if b % 2 == 0 { -1.0 } else { 1.0 };
            term *= sign * factorial(b - 1) * power_sums[exp as usize];
        }
        total += term;
    });
    total
}

fn factorial(n: usize) -> f64 {
    (2..=n).map(|i| i as f64).product::<f64>().max(1.0)
}

/// Enumerates set partitions of {0, ..., n-1} via restricted growth strings.
fn for_each_set_partition(n: usize, f: &mut impl FnMut(&[Vec<usize>])) {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, f: &mut impl FnMut(&[Vec<usize>])) {
        if i == n {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, blocks, f);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, f);
        blocks.pop();
    }
    rec(0, n, &mut Vec::new(), f);
}

/// Majority-count table: (cluster label, edge size s, majority count c) ->
/// weighted count, recorded only when c > s/2 so the majority cluster is
/// unique. Tied largest parts contribute to no cluster.
pub fn majority_counts(
    h: &Hypergraph,
    partition: &Partition,
) -> Result<BTreeMap<(u32, u32, u32), u64>> {
    let mut out = BTreeMap::new();
    for e in h.edges() {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &v in e.nodes() {
            if v == 0 || v as usize > partition.n() {
                return Err(Error::InvalidInput(format!("node id {v} out of range")));
            }
            *counts.entry(partition.label(v)).or_insert(0) += 1;
        }
        let s = e.size() as u32;
        let (&best_label, &best) = counts.iter().max_by_key(|&(_, &c)| c).unwrap();
        if 2 * best > s && counts.values().filter(|&&c| c == best).count() == 1 {
            *out.entry((best_label, s, best)).or_insert(0) += e.weight();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h0() -> Hypergraph {
        Hypergraph::new(4, vec![(vec![1, 2], 1), (vec![1, 2, 3], 1), (vec![3, 4], 1)]).unwrap()
    }

    fn p0() -> Partition {
        Partition::from_labels(vec![1, 1, 2, 2]).unwrap()
    }

    fn pv(parts: &[u32]) -> PartitionVector {
        PartitionVector::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn split_profiles() {
        let p = p0();
        assert_eq!(split_profile(&[1, 2, 3], &p).unwrap(), pv(&[2, 1]));
        assert_eq!(split_profile(&[1, 2], &p).unwrap(), pv(&[2]));
        assert_eq!(split_profile(&[1, 3], &p).unwrap(), pv(&[1, 1]));
        assert!(split_profile(&[9], &p).is_err());
    }

    #[test]
    fn split_counts_h0() {
        let sc = split_counts(&h0(), &p0()).unwrap();
        assert_eq!(sc.get(&pv(&[2])), 2);
        assert_eq!(sc.get(&pv(&[2, 1])), 1);
        assert_eq!(sc.get(&pv(&[3])), 0);

        let single = split_counts(&h0(), &Partition::single_cluster(4)).unwrap();
        assert_eq!(single.get(&pv(&[2])), 2);
        assert_eq!(single.get(&pv(&[3])), 1);

        let own = split_counts(&h0(), &Partition::singletons(4)).unwrap();
        assert_eq!(own.get(&pv(&[1, 1])), 2);
        assert_eq!(own.get(&pv(&[1, 1, 1])), 1);
    }

    #[test]
    fn volumes_h0() {
        let h = h0();
        let p = p0();
        assert_eq!(partition_vector_volume(&h, &p, &pv(&[2])), 25.0);
        assert_eq!(partition_vector_volume(&h, &p, &pv(&[1, 1])), 24.0);
        assert_eq!(partition_vector_volume(&h, &p, &pv(&[2, 1])), 84.0);
        // more parts than clusters -> empty sum
        assert_eq!(partition_vector_volume(&h, &p, &pv(&[1, 1, 1])), 0.0);
    }

    /// Brute force over all ordered distinct label tuples.
    fn volume_oracle(vols: &[u64], p: &PartitionVector) -> f64 {
        let k = vols.len();
        let j = p.num_parts();
        let mut total = 0.0;
        let mut tuple = Vec::new();
        fn rec(
            tuple: &mut Vec<usize>,
            j: usize,
            k: usize,
            vols: &[u64],
            p: &PartitionVector,
            total: &mut f64,
        ) {
            if tuple.len() == j {
                let mut prod = 1.0;
                for (idx, &l) in tuple.iter().enumerate() {
                    prod *= (vols[l] as f64).powi(p.parts()[idx] as i32);
                }
                *total += prod;
                return;
            }
            for l in 0..k {
                if !tuple.contains(&l) {
                    tuple.push(l);
                    rec(tuple, j, k, vols, p, total);
                    tuple.pop();
                }
            }
        }
        rec(&mut tuple, j, k, vols, p, &mut total);
        total
    }

    #[test]
    fn closed_form_matches_tuple_enumeration() {
        let vols = [4u64, 3, 9, 2, 7];
        for s in 2..=5u32 {
            for p in partition_vectors_of(s) {
                let fast = partition_vector_volume_from(&vols, &p);
                let slow = volume_oracle(&vols, &p);
                assert!(
                    (fast - slow).abs() <= 1e-9 * slow.abs().max(1.0),
                    "mismatch for {p}: {fast} vs {slow}"
                );
            }
        }
    }

    #[test]
    fn multiplicity_identity_with_label_assignments() {
        // sum over p of mult(p) * Vol(C_p) equals Vol(V)^s: every one of the
        // K^s label tuples lands in exactly one partition vector.
        let vols = [4u64, 3, 9];
        let total: f64 = vols.iter().map(|&v| v as f64).sum();
        for s in 2..=4u32 {
            let sum: f64 = partition_vectors_of(s)
                .iter()
                .map(|p| p.multiplicity() * partition_vector_volume_from(&vols, p))
                .sum();
            assert!((sum - total.powi(s as i32)).abs() < 1e-6 * total.powi(s as i32));
        }
    }

    #[test]
    fn majority_counts_h0() {
        let table = majority_counts(&h0(), &p0()).unwrap();
        assert_eq!(table.get(&(1, 2, 2)), Some(&1));
        assert_eq!(table.get(&(2, 2, 2)), Some(&1));
        assert_eq!(table.get(&(1, 3, 2)), Some(&1));
        assert_eq!(table.len(), 3);
    }

    #[test]
    fn majority_single_cluster_and_ties() {
        let h = h0();
        let table = majority_counts(&h, &Partition::single_cluster(4)).unwrap();
        assert_eq!(table.get(&(1, 2, 2)), Some(&2));
        assert_eq!(table.get(&(1, 3, 3)), Some(&1));

        // an edge split (1,1) is a tie and lands nowhere
        let h2 = Hypergraph::new(4, vec![(vec![1, 3], 1)]).unwrap();
        assert!(majority_counts(&h2, &p0()).unwrap().is_empty());
    }

    #[test]
    fn split_count_totals_match_size_counts() {
        let h = h0();
        for part in [p0(), Partition::singletons(4), Partition::single_cluster(4)] {
            let sc = split_counts(&h, &part).unwrap();
            let mut per_size: BTreeMap<u32, u64> = BTreeMap::new();
            for (p, c) in sc.iter() {
                *per_size.entry(p.size()).or_insert(0) += c;
            }
            assert_eq!(per_size, h.size_counts());
        }
    }

    #[test]
    fn majority_identity_against_split_counts() {
        // sum_k e^{s,c}(C_k) == sum over p with size s, p_1 = c of e_H(C_p),
        // for c > s/2 where the majority is unique.
        let h = Hypergraph::new(
            6,
            vec![
                (vec![1, 2, 3], 1),
                (vec![1, 4], 2),
                (vec![2, 3, 5, 6], 1),
                (vec![4, 5, 6], 1),
                (vec![1, 2, 5], 3),
            ],
        )
        .unwrap();
        let part = Partition::from_labels(vec![1, 1, 2, 3, 3, 2]).unwrap();
        let table = majority_counts(&h, &part).unwrap();
        let sc = split_counts(&h, &part).unwrap();
        for s in 2..=4u32 {
            for c in (s / 2 + 1)..=s {
                if 2 * c <= s {
                    continue;
                }
                let lhs: u64 = table
                    .iter()
                    .filter(|((_, ts, tc), _)| *ts == s && *tc == c)
                    .map(|(_, &w)| w)
                    .sum();
                let rhs: u64 = sc
                    .iter()
                    .filter(|(p, _)| p.size() == s && p.largest() == c)
                    .map(|(_, w)| w)
                    .sum();
                assert_eq!(lhs, rhs, "s={s} c={c}");
            }
        }
    }
}
