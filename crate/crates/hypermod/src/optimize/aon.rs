//! All-or-nothing hypergraph maximum-likelihood-style local search:
//! estimate per-size affinity parameters from a starting partition, then
//! alternate node-move sweeps and cluster-merge sweeps on `q_aon` from a
//! singleton start until neither phase changes anything.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId, Partition};
use crate::louvain::louvain;
use crate::modularity::{estimate_aon_params, q_aon, AonParams};
use crate::optimize::{Event, EventKind, OptimizerResult};

/// Which partition the affinity parameters are estimated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AonStart {
    /// Louvain on the unweighted clique reduction (default).
    CliqueLouvain,
    Singletons,
}

#[derive(Debug, Clone)]
pub struct AonOptions {
    /// Maximum node-phase/merge-phase alternations.
    pub max_outer: usize,
    pub seed: u64,
    /// Minimal raw objective gain for a change to be accepted.
    pub tolerance: f64,
    pub start: AonStart,
    /// Re-estimate the parameters from the current partition at the start of
    /// every outer round instead of keeping the initial estimate.
    pub reestimate: bool,
}

impl Default for AonOptions {
    fn default() -> Self {
        AonOptions {
            max_outer: 50,
            seed: 0,
            tolerance: 1e-9,
            start: AonStart::CliqueLouvain,
            reestimate: false,
        }
    }
}

pub fn aon_hmll(h: &Hypergraph, opts: &AonOptions) -> Result<OptimizerResult> {
    let start_partition = match opts.start {
        AonStart::CliqueLouvain => louvain(&h.clique_reduction(), opts.seed),
        AonStart::Singletons => Partition::singletons(h.n()),
    };
    let params = estimate_aon_params(h, &start_partition)?;
    aon_hmll_with_params(h, &params, opts)
}

/// Same as [`aon_hmll`] but with the affinity parameters supplied directly.
pub fn aon_hmll_with_params(
    h: &Hypergraph,
    params: &AonParams,
    opts: &AonOptions,
) -> Result<OptimizerResult> {
    let start = Instant::now();
    let hs = h.without_unit_edges();
    let n = hs.n();
    let edges = hs.edges();
    let incidence = hs.incidence();

    // per-size (s, beta, beta*gamma)
    let load_sizes = |params: &AonParams| -> Result<Vec<(u32, f64, f64)>> {
        hs.size_counts()
            .keys()
            .map(|&s| {
                let sp = params
                    .get(s)
                    .ok_or_else(|| Error::InvalidInput(format!("AON params missing size {s}")))?;
                Ok((s, sp.beta, sp.beta * sp.gamma))
            })
            .collect()
    };
    let mut sizes = load_sizes(params)?;

    let mut labels: Vec<u32> = (1..=n as u32).collect();
    let mut vols: Vec<u64> = hs.degrees().to_vec();
    let mut score = q_aon(h, &Partition::singletons(n), params)?;
    let mut current_params = params.clone();

    let vol_sum = |sizes: &[(u32, f64, f64)], v_old: &[u64], changes: &[(usize, i64)]| -> f64 {
        // change in the -sum_s beta_s gamma_s sum_k vol_k^s term
        let mut delta = 0.0;
        for &(s, _, bg) in sizes {
            let mut d = 0.0;
            for &(c, dv) in changes {
                let before = v_old[c] as f64;
                let after = (v_old[c] as i64 + dv) as f64;
                d += after.powi(s as i32) - before.powi(s as i32);
            }
            delta -= bg * d;
        }
        delta
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut order: Vec<NodeId> = (1..=n as NodeId)
        .filter(|&v| hs.degrees()[v as usize - 1] > 0)
        .collect();

    let mut events = Vec::new();
    let mut step = 0usize;
    let mut outer = 0usize;
    let mut converged = opts.max_outer == 0;

    while outer < opts.max_outer {
        outer += 1;
        if opts.reestimate && outer > 1 {
            let p = Partition::normalized(&labels);
            current_params = estimate_aon_params(h, &p)?;
            sizes = load_sizes(&current_params)?;
            score = q_aon(h, &p, &current_params)?;
        }

        // phase b: single-node moves
        let mut moved_any = false;
        loop {
            order.shuffle(&mut rng);
            let mut moved = 0usize;
            for &v in &order {
                let a = labels[v as usize - 1];
                let d = hs.degrees()[v as usize - 1] as i64;
                let mut candidates: BTreeSet<u32> = BTreeSet::new();
                for &ei in &incidence[v as usize - 1] {
                    for &u in edges[ei].nodes() {
                        let l = labels[u as usize - 1];
                        if l != a {
                            candidates.insert(l);
                        }
                    }
                }
                if candidates.is_empty() {
                    continue;
                }
                // per incident edge: weight*beta, label of the other nodes if
                // uniform (None when mixed), vacuous when v fills the edge
                let locals: Vec<(f64, Option<u32>, bool)> = incidence[v as usize - 1]
                    .iter()
                    .map(|&ei| {
                        let e = &edges[ei];
                        let beta = sizes
                            .iter()
                            .find(|&&(s, _, _)| s == e.size() as u32)
                            .map(|&(_, b, _)| b)
                            .unwrap_or(0.0);
                        let mut others: Option<u32> = None;
                        let mut mixed = false;
                        let mut vacuous = true;
                        for &u in e.nodes() {
                            if u == v {
                                continue;
                            }
                            vacuous = false;
                            let l = labels[u as usize - 1];
                            match others {
                                Some(x) if x != l => mixed = true,
                                None => others = Some(l),
                                _ => {}
                            }
                        }
                        let uniform = if mixed { None } else { others };
                        (e.weight() as f64 * beta, uniform, vacuous)
                    })
                    .collect();
                let internal_mass = |target: u32| -> f64 {
                    locals
                        .iter()
                        .map(|&(wb, uniform, vacuous)| {
                            if vacuous || uniform == Some(target) {
                                wb
                            } else {
                                0.0
                            }
                        })
                        .sum()
                };
                let before = internal_mass(a);
                let mut best: Option<(u32, f64)> = None;
                for &b in &candidates {
                    let delta_edges = internal_mass(b) - before;
                    let delta_vol = vol_sum(
                        &sizes,
                        &vols,
                        &[(a as usize - 1, -d), (b as usize - 1, d)],
                    );
                    let delta = delta_edges + delta_vol;
                    if delta > opts.tolerance && best.map_or(true, |(_, bd)| delta > bd) {
                        best = Some((b, delta));
                    }
                }
                if let Some((b, delta)) = best {
                    labels[v as usize - 1] = b;
                    vols[a as usize - 1] -= d as u64;
                    vols[b as usize - 1] += d as u64;
                    score += delta;
                    moved += 1;
                    step += 1;
                    events.push(Event {
                        step,
                        kind: EventKind::Move,
                        objective: score,
                    });
                }
            }
            if moved == 0 {
                break;
            }
            moved_any = true;
        }

        // phase c: merge whole clusters into adjacent ones
        let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for v in 1..=n as u32 {
            members[labels[v as usize - 1] as usize - 1].push(v);
        }
        let mut merged_any = false;
        loop {
            let mut alive: Vec<u32> = (1..=n as u32)
                .filter(|&c| !members[c as usize - 1].is_empty())
                .collect();
            alive.shuffle(&mut rng);
            let mut merged = 0usize;
            for &a in &alive {
                if members[a as usize - 1].is_empty() {
                    continue;
                }
                // incident edges of the cluster, deduplicated
                let mut seen = BTreeSet::new();
                for &v in &members[a as usize - 1] {
                    for &ei in &incidence[v as usize - 1] {
                        seen.insert(ei);
                    }
                }
                let mut candidates: BTreeSet<u32> = BTreeSet::new();
                for &ei in &seen {
                    for &u in edges[ei].nodes() {
                        let l = labels[u as usize - 1];
                        if l != a {
                            candidates.insert(l);
                        }
                    }
                }
                let va = vols[a as usize - 1] as i64;
                let mut best: Option<(u32, f64)> = None;
                for &b in &candidates {
                    let mut gained = 0.0;
                    for &ei in &seen {
                        let e = &edges[ei];
                        let mut all_ab = true;
                        let mut any_b = false;
                        for &u in e.nodes() {
                            let l = labels[u as usize - 1];
                            if l == b {
                                any_b = true;
                            } else if l != a {
                                all_ab = false;
                                break;
                            }
                        }
                        if all_ab && any_b {
                            let beta = sizes
                                .iter()
                                .find(|&&(s, _, _)| s == e.size() as u32)
                                .map(|&(_, bb, _)| bb)
                                .unwrap_or(0.0);
                            gained += e.weight() as f64 * beta;
                        }
                    }
                    let delta = gained
                        + vol_sum(
                            &sizes,
                            &vols,
                            &[(a as usize - 1, -va), (b as usize - 1, va)],
                        );
                    if delta > opts.tolerance && best.map_or(true, |(_, bd)| delta > bd) {
                        best = Some((b, delta));
                    }
                }
                if let Some((b, delta)) = best {
                    let moved: Vec<NodeId> = std::mem::take(&mut members[a as usize - 1]);
                    for &v in &moved {
                        labels[v as usize - 1] = b;
                    }
                    members[b as usize - 1].extend(moved);
                    vols[b as usize - 1] += va as u64;
                    vols[a as usize - 1] = 0;
                    score += delta;
                    merged += 1;
                    step += 1;
                    events.push(Event {
                        step,
                        kind: EventKind::Merge,
                        objective: score,
                    });
                }
            }
            if merged == 0 {
                break;
            }
            merged_any = true;
        }

        if !moved_any && !merged_any {
            converged = true;
            break;
        }
    }

    let partition = Partition::normalized(&labels);
    let objective = q_aon(h, &partition, &current_params)?;
    debug_assert!((objective - score).abs() < 1e-6 * objective.abs().max(1.0));
    Ok(OptimizerResult {
        partition,
        objective,
        iterations: outer,
        wall_time: start.elapsed().as_secs_f64(),
        seed: opts.seed,
        converged,
        events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modularity::q_strict;

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

    fn h0() -> Hypergraph {
        Hypergraph::new(4, vec![(vec![1, 2], 1), (vec![1, 2, 3], 1), (vec![3, 4], 1)]).unwrap()
    }

    #[test]
    fn recovers_two_triangles() {
        let h = two_filled_triangles();
        let r = aon_hmll(&h, &AonOptions::default()).unwrap();
        let truth = Partition::from_labels(vec![1, 1, 1, 2, 2, 2]).unwrap();
        assert!(r.partition.same_clustering(&truth));
        assert!(r.converged);
    }

    #[test]
    fn strict_equivalence_with_injected_params() {
        // beta_s = 1, gamma_s = |E_s| / Vol^s makes q_aon = |E| * q_strict
        let h = h0();
        let params = AonParams::fixed([(2, 1.0, 2.0 / 49.0), (3, 1.0, 1.0 / 343.0)]);
        let r = aon_hmll_with_params(&h, &params, &AonOptions::default()).unwrap();
        let expected = 3.0 * q_strict(&h, &r.partition).unwrap();
        assert!((r.objective - expected).abs() < 1e-12);
    }

    #[test]
    fn zero_outer_returns_singletons() {
        let h = h0();
        let params = estimate_aon_params(&h, &Partition::from_labels(vec![1, 1, 1, 2]).unwrap())
            .unwrap();
        let opts = AonOptions {
            max_outer: 0,
            ..Default::default()
        };
        let r = aon_hmll_with_params(&h, &params, &opts).unwrap();
        assert_eq!(r.partition, Partition::singletons(4));
        assert!(
            (r.objective - q_aon(&h, &Partition::singletons(4), &params).unwrap()).abs() < 1e-12
        );
    }

    #[test]
    fn objective_sequence_increases() {
        let h = two_filled_triangles();
        let r = aon_hmll(&h, &AonOptions { seed: 4, ..Default::default() }).unwrap();
        for w in r.events.windows(2) {
            assert!(w[1].objective > w[0].objective);
        }
    }

    #[test]
    fn deterministic() {
        let h = two_filled_triangles();
        let opts = AonOptions {
            seed: 2,
            ..Default::default()
        };
        let a = aon_hmll(&h, &opts).unwrap();
        let b = aon_hmll(&h, &opts).unwrap();
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.objective, b.objective);
    }
}
