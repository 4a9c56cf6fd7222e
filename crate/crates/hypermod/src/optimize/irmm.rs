//! Iteratively reweighted modularity maximization.
//!
//! Runs Louvain on the weighted clique reduction, then reweights each
//! hyperedge by how unevenly the current partition cuts it, and repeats until
//! the partition stabilizes. The reported objective is always `q_wclique` on
//! the original, unreweighted hypergraph.

use std::time::Instant;

use crate::error::Result;
use crate::hypergraph::{Hyperedge, Hypergraph, Partition};
use crate::louvain::louvain;
use crate::modularity::q_wclique;
use crate::optimize::{Event, EventKind, OptimizerResult};

#[derive(Debug, Clone)]
pub struct IrmmOptions {
    /// Maximum Louvain/reweight rounds.
    pub max_outer: usize,
    pub seed: u64,
    /// Slack when comparing objectives of successive rounds.
    pub tolerance: f64,
}

impl Default for IrmmOptions {
    fn default() -> Self {
        IrmmOptions {
            max_outer: 20,
            seed: 0,
            tolerance: 1e-9,
        }
    }
}

/// Size of the largest part a partition cuts a hyperedge into.
fn majority_part(e: &Hyperedge, p: &Partition) -> usize {
    let mut counts: Vec<(u32, usize)> = Vec::new();
    for &v in e.nodes() {
        let l = p.label(v);
        match counts.iter_mut().find(|(c, _)| *c == l) {
            Some((_, k)) => *k += 1,
            None => counts.push((l, 1)),
        }
    }
    counts.iter().map(|&(_, k)| k).max().unwrap_or(0)
}

pub fn irmm(h: &Hypergraph, opts: &IrmmOptions) -> Result<OptimizerResult> {
    let start = Instant::now();
    let hs = h.without_unit_edges();
    let edges = hs.edges();

    let mut multipliers = vec![1.0f64; edges.len()];
    let mut events = Vec::new();
    let mut best: Option<(Partition, f64)> = None;
    let mut prev: Option<Partition> = None;
    let mut converged = false;
    let mut iterations = 0usize;

    for round in 0..opts.max_outer {
        let g = hs.scaled_reduction(|ei, e| multipliers[ei] / (e.size() as f64 - 1.0));
        let round_seed = opts.seed.wrapping_add((round as u64).wrapping_mul(0x9E3779B97F4A7C15));
        let p = louvain(&g, round_seed);
        let q = q_wclique(h, &p)?;
        iterations = round + 1;
        events.push(Event {
            step: round,
            kind: EventKind::Outer,
            objective: q,
        });
        let improved = match &best {
            Some((_, bq)) => q > *bq,
            None => true,
        };
        if improved {
            best = Some((p.clone(), q));
        }
        if let Some(pp) = &prev {
            if pp.same_clustering(&p) {
                converged = true;
                break;
            }
        }
        prev = Some(p.clone());

        // reweight: m(e) = p1(e)/|e|, normalized to weighted mean 1
        let mut total_w = 0.0;
        let mut total_mw = 0.0;
        let raw: Vec<f64> = edges
            .iter()
            .map(|e| {
                let m = majority_part(e, &p) as f64 / e.size() as f64;
                total_w += e.weight() as f64;
                total_mw += e.weight() as f64 * m;
                m
            })
            .collect();
        let mean = if total_w > 0.0 { total_mw / total_w } else { 1.0 };
        multipliers = raw.iter().map(|&m| m / mean).collect();
    }

    let (partition, objective) = best.expect("max_outer >= 1 runs at least one round");
    Ok(OptimizerResult {
        partition,
        objective,
        iterations,
        wall_time: start.elapsed().as_secs_f64(),
        seed: opts.seed,
        converged,
        events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_filled_triangles() -> Hypergraph {
        Hypergraph::new(
            6,
            vec![
                (vec![1, 2], 1),
                (vec![2, 3], 1),
                (vec![1, 3], 1),
                (vec![1, 2, 3], 1),
                (vec![4, 5], 1),
                (vec![5, 6], 1),
                (vec![4, 6], 1),
                (vec![4, 5, 6], 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn recovers_disconnected_components() {
        let h = two_filled_triangles();
        let r = irmm(&h, &IrmmOptions::default()).unwrap();
        let truth = Partition::from_labels(vec![1, 1, 1, 2, 2, 2]).unwrap();
        assert!(r.partition.same_clustering(&truth));
        assert!(r.converged);
        assert!((r.objective - q_wclique(&h, &truth).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn multiplier_monotone_in_imbalance() {
        // cut (3,1) vs (2,2) on a size-4 edge
        let h = Hypergraph::new(4, vec![(vec![1, 2, 3, 4], 1)]).unwrap();
        let e = &h.edges()[0];
        let p31 = Partition::from_labels(vec![1, 1, 1, 2]).unwrap();
        let p22 = Partition::from_labels(vec![1, 1, 2, 2]).unwrap();
        assert_eq!(majority_part(e, &p31), 3);
        assert_eq!(majority_part(e, &p22), 2);
        assert!(3.0 / 4.0 > 2.0 / 4.0);
    }

    #[test]
    fn single_round_is_plain_louvain() {
        let h = two_filled_triangles();
        let opts = IrmmOptions {
            max_outer: 1,
            seed: 5,
            ..Default::default()
        };
        let r = irmm(&h, &opts).unwrap();
        let direct = louvain(&h.weighted_clique_reduction(), 5);
        assert!(r.partition.same_clustering(&direct));
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn deterministic() {
        let h = two_filled_triangles();
        let opts = IrmmOptions {
            seed: 11,
            ..Default::default()
        };
        let a = irmm(&h, &opts).unwrap();
        let b = irmm(&h, &opts).unwrap();
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.objective, b.objective);
    }
}
