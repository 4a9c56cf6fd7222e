//! Degree-corrected-SBM-like placement model: a fixed budget of hyperedges
//! per size, each placed fully inside a uniformly chosen cluster with
//! probability `p_s`, otherwise on a uniform subset of all nodes. Duplicate
//! draws merge into one hyperedge with a larger weight.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::{apportion, balanced_labels, choose};
use crate::hypergraph::{Hypergraph, NodeId, Partition};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DchsbmParams {
    pub n: usize,
    pub k: usize,
    /// Total hyperedge budget, split evenly across sizes unless
    /// `edges_per_size` is given.
    #[serde(default)]
    pub total_edges: Option<u64>,
    /// Explicit per-size budgets for sizes `2..=S` (index 0 is s=2).
    #[serde(default)]
    pub edges_per_size: Option<Vec<u64>>,
    /// Within-cluster placement probability per size, same indexing.
    pub p: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl DchsbmParams {
    pub fn max_size(&self) -> usize {
        self.p.len() + 1
    }

    /// Resolved per-size budgets.
    pub fn budgets(&self) -> Result<Vec<u64>> {
        match (&self.edges_per_size, self.total_edges) {
            (Some(b), _) => {
                if b.len() != self.p.len() {
                    return Err(Error::InvalidInput(
                        "edges_per_size must have one entry per size".into(),
                    ));
                }
                Ok(b.clone())
            }
            (None, Some(total)) => apportion(total, &vec![1.0; self.p.len()]),
            (None, None) => Err(Error::InvalidInput(
                "either total_edges or edges_per_size is required".into(),
            )),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.k > self.n {
            return Err(Error::InvalidInput("need 0 < k <= n".into()));
        }
        if self.p.is_empty() || self.p.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidInput(
                "p must cover sizes 2..=S with values in [0,1]".into(),
            ));
        }
        if self.max_size() > self.n / self.k {
            // within-cluster placement draws distinct nodes from one cluster
            let any_within = self.p.iter().enumerate().any(|(i, &p)| {
                p > 0.0 && i + 2 > self.n / self.k
            });
            if any_within {
                return Err(Error::Generation(format!(
                    "cluster size {} too small for within-cluster edges of size {}",
                    self.n / self.k,
                    self.max_size()
                )));
            }
        }
        Ok(())
    }
}

/// `c_s = K C(floor(n/K), s) / C(n, s)`: chance that a uniform s-subset is
/// within-cluster.
fn within_chance(n: usize, k: usize, s: u32) -> f64 {
    k as f64 * choose((n / k) as u64, s as u64) / choose(n as u64, s as u64)
}

/// Expected within/cross ratio for size `s`.
pub fn dchsbm_expected_rho(params: &DchsbmParams, s: u32) -> Result<f64> {
    let idx = s
        .checked_sub(2)
        .map(|i| i as usize)
        .filter(|&i| i < params.p.len())
        .ok_or_else(|| Error::InvalidInput(format!("size {s} outside 2..=S")))?;
    let p = params.p[idx];
    if p >= 1.0 {
        return Ok(f64::INFINITY);
    }
    let c = within_chance(params.n, params.k, s);
    Ok((p + (1.0 - p) * c) / ((1.0 - p) * (1.0 - c)))
}

/// Inverse of [`dchsbm_expected_rho`]: the `p_s` hitting a target ratio.
pub fn solve_p_for_rho(n: usize, k: usize, s: u32, rho: f64) -> Result<f64> {
    let c = within_chance(n, k, s);
    if c >= 1.0 {
        return Err(Error::InvalidInput("single cluster: ratio is degenerate".into()));
    }
    let p = (rho * (1.0 - c) - c) / ((1.0 - c) * (1.0 + rho));
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "target rho {rho} not reachable (c_s = {c})"
        )));
    }
    Ok(p)
}

/// Uniform distinct `s`-subset of node indices `lo..hi`, by rejection.
fn draw_subset(rng: &mut ChaCha8Rng, lo: usize, hi: usize, s: usize, out: &mut Vec<NodeId>) {
    out.clear();
    while out.len() < s {
        let v = rng.gen_range(lo..hi) as NodeId + 1;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out.sort_unstable();
}

pub fn gen_dchsbm(params: &DchsbmParams) -> Result<(Hypergraph, Partition)> {
    params.validate()?;
    let budgets = params.budgets()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let labels = balanced_labels(params.n, params.k);
    // contiguous blocks: cluster c spans [starts[c], starts[c+1])
    let mut starts = vec![0usize; params.k + 1];
    for &l in &labels {
        starts[l as usize] += 1;
    }
    for c in 0..params.k {
        starts[c + 1] += starts[c];
    }

    let mut edges: Vec<(Vec<NodeId>, u64)> = Vec::new();
    let mut scratch = Vec::new();
    for (i, (&budget, &p)) in budgets.iter().zip(&params.p).enumerate() {
        let s = i + 2;
        if s > params.n {
            return Err(Error::Generation(format!("edge size {s} exceeds n")));
        }
        for _ in 0..budget {
            if rng.gen::<f64>() < p {
                let c = rng.gen_range(0..params.k);
                if starts[c + 1] - starts[c] < s {
                    return Err(Error::Generation(format!(
                        "cluster {} too small for a size-{s} hyperedge",
                        c + 1
                    )));
                }
                draw_subset(&mut rng, starts[c], starts[c + 1], s, &mut scratch);
            } else {
                draw_subset(&mut rng, 0, params.n, s, &mut scratch);
            }
            edges.push((scratch.clone(), 1));
        }
    }

    let h = Hypergraph::new(params.n, edges)?;
    Ok((h, Partition::from_labels(labels)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(n: usize, k: usize, p: f64) -> DchsbmParams {
        DchsbmParams {
            n,
            k,
            total_edges: Some(574),
            edges_per_size: None,
            p: vec![p, p],
            seed: 3,
        }
    }

    #[test]
    fn expected_rho_values() {
        // n=6, K=3, s=2: c_2 = 3/15 = 0.2
        let params = base(6, 3, 0.5);
        assert!((dchsbm_expected_rho(&params, 2).unwrap() - 1.5).abs() < 1e-12);
        let params0 = base(6, 3, 0.0);
        assert!((dchsbm_expected_rho(&params0, 2).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn inverse_solves_target() {
        // c_2 = 0.2, rho = 1.7 => (p + 0.2(1-p)) = 1.7 * 0.8 * (1-p)
        let p = solve_p_for_rho(6, 3, 2, 1.7).unwrap();
        assert!((p - 1.16 / 2.16).abs() < 1e-12);
        let mut params = base(6, 3, p);
        params.p = vec![p, p];
        assert!((dchsbm_expected_rho(&params, 2).unwrap() - 1.7).abs() < 1e-12);
    }

    #[test]
    fn all_within_when_p_is_one() {
        let params = base(30, 3, 1.0);
        let (h, truth) = gen_dchsbm(&params).unwrap();
        for e in h.edges() {
            let l = truth.label(e.nodes()[0]);
            assert!(e.nodes().iter().all(|&v| truth.label(v) == l));
        }
        assert_eq!(h.total_weight(), 574);
    }

    #[test]
    fn per_size_budgets() {
        let mut params = base(30, 3, 0.5);
        params.total_edges = None;
        params.edges_per_size = Some(vec![400, 174]);
        let (h, _) = gen_dchsbm(&params).unwrap();
        let counts = h.size_counts();
        // weights count duplicate draws
        let w2: u64 = h
            .edges()
            .iter()
            .filter(|e| e.size() == 2)
            .map(|e| e.weight())
            .sum();
        assert_eq!(w2, 400);
        assert_eq!(counts.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn deterministic() {
        let params = base(30, 3, 0.6);
        let a = gen_dchsbm(&params).unwrap();
        let b = gen_dchsbm(&params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn infeasible_within_placement() {
        let params = base(6, 3, 0.5); // clusters of 2 cannot host size-3 edges
        assert!(matches!(gen_dchsbm(&params), Err(Error::Generation(_))));
    }
}
