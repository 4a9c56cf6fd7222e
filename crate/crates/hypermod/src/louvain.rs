//! Louvain local-move + aggregation maximization of Newman-Girvan modularity
//! on weighted graphs. Used as the engine behind the clique-reduction
//! pipelines.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::{Partition, WeightedGraph};

const MOVE_TOLERANCE: f64 = 1e-12;
const MAX_LEVELS: usize = 64;

/// Newman-Girvan modularity of a partition on a weighted graph.
pub fn graph_modularity(g: &WeightedGraph, partition: &Partition) -> f64 {
    let m2 = g.total_weight();
    if m2 == 0.0 {
        return 0.0;
    }
    let k = partition.k();
    let mut internal = vec![0.0; k];
    let mut tot = vec![0.0; k];
    for u in 1..=g.n() as u32 {
        let lu = partition.label(u) as usize - 1;
        tot[lu] += g.weighted_degree(u);
        for &(v, w) in g.neighbors(u) {
            if partition.label(v) as usize - 1 == lu {
                internal[lu] += w;
            }
        }
    }
    (0..k)
        .map(|c| internal[c] / m2 - (tot[c] / m2).powi(2))
        .sum()
}

/// Aggregated graph: nodes carry self-loop mass (ordered-pair internal
/// weight); off-diagonal weights are stored once per unordered pair.
struct LevelGraph {
    adj: Vec<Vec<(usize, f64)>>,
    self_loop: Vec<f64>,
}

impl LevelGraph {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn degree(&self, i: usize) -> f64 {
        self.self_loop[i] + self.adj[i].iter().map(|&(_, w)| w).sum::<f64>()
    }
}

/// Two-phase Louvain: returns a partition that is a local optimum of graph
/// modularity under single-node moves at every aggregation level.
/// Deterministic for a fixed seed.
pub fn louvain(g: &WeightedGraph, seed: u64) -> Partition {
    let n = g.n();
    if n == 0 {
        return Partition::normalized(&[]);
    }
    let m2 = g.total_weight();
    if m2 == 0.0 {
        return Partition::singletons(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut level = LevelGraph {
        adj: (1..=n as u32)
            .map(|u| {
                g.neighbors(u)
                    .iter()
                    .map(|&(v, w)| (v as usize - 1, w))
                    .collect()
            })
            .collect(),
        self_loop: vec![0.0; n],
    };
    // node -> community of the original graph, composed across levels
    let mut assignment: Vec<usize> = (0..n).collect();

    for _ in 0..MAX_LEVELS {
        let (comm, moved) = local_moves(&level, m2, &mut rng);
        if !moved {
            break;
        }
        let (aggregated, relabel) = aggregate(&level, &comm);
        for a in assignment.iter_mut() {
            *a = relabel[comm[*a]];
        }
        if aggregated.n() == level.n() {
            break;
        }
        level = aggregated;
    }

    let labels: Vec<u32> = assignment.iter().map(|&c| c as u32 + 1).collect();
    Partition::normalized(&labels)
}

/// Phase one: sweep nodes in seeded random order, moving each to the
/// adjacent community with the largest strictly positive gain.
fn local_moves(g: &LevelGraph, m2: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
    let n = g.n();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot: Vec<f64> = (0..n).map(|i| g.degree(i)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut any_move = false;

    loop {
        order.shuffle(rng);
        let mut moves = 0usize;
        for &i in &order {
            let ki = g.degree(i);
            let a = comm[i];
            // links from i into each adjacent community
            let mut links: BTreeMap<usize, f64> = BTreeMap::new();
            for &(j, w) in &g.adj[i] {
                *links.entry(comm[j]).or_insert(0.0) += w;
            }
            let tot_a_without = tot[a] - ki;
            let stay = links.get(&a).copied().unwrap_or(0.0) - tot_a_without * ki / m2;
            let mut best = (a, stay);
            for (&c, &k_in) in &links {
                if c == a {
                    continue;
                }
                let gain = k_in - tot[c] * ki / m2;
                if gain > best.1 + MOVE_TOLERANCE {
                    best = (c, gain);
                }
            }
            if best.0 != a {
                comm[i] = best.0;
                tot[a] -= ki;
                tot[best.0] += ki;
                moves += 1;
                any_move = true;
            }
        }
        if moves == 0 {
            break;
        }
    }
    (comm, any_move)
}

/// Phase two: collapse communities into supernodes.
fn aggregate(g: &LevelGraph, comm: &[usize]) -> (LevelGraph, Vec<usize>) {
    let mut relabel = vec![usize::MAX; g.n()];
    let mut next = 0usize;
    for &c in comm {
        if relabel[c] == usize::MAX {
            relabel[c] = next;
            next += 1;
        }
    }
    let mut self_loop = vec![0.0; next];
    let mut cross: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for i in 0..g.n() {
        let ci = relabel[comm[i]];
        self_loop[ci] += g.self_loop[i];
        for &(j, w) in &g.adj[i] {
            let cj = relabel[comm[j]];
            if ci == cj {
                // each undirected pair appears in both adjacency lists
                self_loop[ci] += w;
            } else if ci < cj {
                *cross.entry((ci, cj)).or_insert(0.0) += w;
            }
        }
    }
    let mut adj = vec![Vec::new(); next];
    for ((a, b), w) in cross {
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    for list in &mut adj {
        list.sort_unstable_by_key(|&(j, _)| j);
    }
    (LevelGraph { adj, self_loop }, relabel)
}
