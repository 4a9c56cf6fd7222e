//! Stochastic agglomerative maximization of `q_strict`: starting from
//! singletons, repeatedly draw a random hyperedge that is still split across
//! clusters and merge everything it touches, keeping the merge only when the
//! objective strictly increases.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hypergraph::{Hypergraph, Partition};
use crate::modularity::q_strict;
use crate::optimize::{Event, EventKind, OptimizerResult};

#[derive(Debug, Clone)]
pub struct CnmOptions {
    /// Random-edge draws; `None` means twice the number of hyperedges.
    pub max_steps: Option<usize>,
    pub seed: u64,
    /// Minimal objective gain (times |E|) for a merge to be accepted.
    pub tolerance: f64,
}

impl Default for CnmOptions {
    fn default() -> Self {
        CnmOptions {
            max_steps: None,
            seed: 0,
            tolerance: 1e-9,
        }
    }
}

pub fn cnm_like(h: &Hypergraph, opts: &CnmOptions) -> Result<OptimizerResult> {
    let start = Instant::now();
    let hs = h.without_unit_edges();
    let n = hs.n();
    let edges = hs.edges();
    let m = hs.total_weight() as f64;
    let vol_total: u64 = hs.degrees().iter().sum();
    let incidence = hs.incidence();
    let size_counts: Vec<(u32, u64)> = hs.size_counts().into_iter().collect();
    let max_steps = opts.max_steps.unwrap_or(2 * edges.len());

    let mut labels: Vec<u32> = (1..=n as u32).collect();
    let mut vols: Vec<u64> = hs.degrees().to_vec();
    let mut members: Vec<Vec<u32>> = (1..=n as u32).map(|v| vec![v]).collect();
    let mut split: Vec<bool> = edges
        .iter()
        .map(|e| e.nodes().iter().any(|&v| v != e.nodes()[0]))
        .collect();

    // q_strict * |E|, kept incrementally
    let mut score = q_strict(h, &Partition::singletons(n))? * m;

    let cluster_tax = |vol: u64| -> f64 {
        size_counts
            .iter()
            .map(|&(s, count)| count as f64 * (vol as f64 / vol_total as f64).powi(s as i32))
            .sum()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut stamp = vec![0u32; edges.len()];
    let mut generation = 0u32;
    let mut events: Vec<Event> = Vec::new();
    let mut steps = 0usize;
    let mut converged = false;

    while steps < max_steps {
        let eligible: Vec<usize> = (0..edges.len()).filter(|&ei| split[ei]).collect();
        if eligible.is_empty() {
            converged = true;
            break;
        }
        steps += 1;
        let ei = eligible[rng.gen_range(0..eligible.len())];
        let group: BTreeSet<u32> = edges[ei]
            .nodes()
            .iter()
            .map(|&v| labels[v as usize - 1])
            .collect();

        // edges that could change state: those touching any merged cluster
        generation += 1;
        let mut touched: Vec<usize> = Vec::new();
        for &c in &group {
            for &v in &members[c as usize - 1] {
                for &fi in &incidence[v as usize - 1] {
                    if stamp[fi] != generation {
                        stamp[fi] = generation;
                        touched.push(fi);
                    }
                }
            }
        }
        let mut gained = 0.0;
        for &fi in &touched {
            if split[fi]
                && edges[fi]
                    .nodes()
                    .iter()
                    .all(|&v| group.contains(&labels[v as usize - 1]))
            {
                gained += edges[fi].weight() as f64;
            }
        }
        let merged_vol: u64 = group.iter().map(|&c| vols[c as usize - 1]).sum();
        let tax_change = cluster_tax(merged_vol)
            - group
                .iter()
                .map(|&c| cluster_tax(vols[c as usize - 1]))
                .sum::<f64>();
        let delta = gained - tax_change;
        if delta <= opts.tolerance {
            continue;
        }

        let target = *group.iter().next().unwrap();
        let mut moved: Vec<u32> = Vec::new();
        for &c in group.iter().skip(1) {
            moved.append(&mut members[c as usize - 1]);
            vols[target as usize - 1] += vols[c as usize - 1];
            vols[c as usize - 1] = 0;
        }
        for &v in &moved {
            labels[v as usize - 1] = target;
        }
        members[target as usize - 1].extend(moved);
        for &fi in &touched {
            let nodes = edges[fi].nodes();
            let l0 = labels[nodes[0] as usize - 1];
            split[fi] = nodes.iter().any(|&v| labels[v as usize - 1] != l0);
        }
        score += delta;
        events.push(Event {
            step: steps,
            kind: EventKind::Merge,
            objective: score / m,
        });
    }
    if steps >= max_steps && !converged {
        // budget exhausted; the state is still a valid stopping point
        converged = (0..edges.len()).all(|ei| !split[ei]);
    }

    let partition = Partition::normalized(&labels);
    let objective = q_strict(h, &partition)?;
    debug_assert!((objective - score / m).abs() < 1e-6);
    Ok(OptimizerResult {
        partition,
        objective,
        iterations: steps,
        wall_time: start.elapsed().as_secs_f64(),
        seed: opts.seed,
        converged,
        events,
    })
}
