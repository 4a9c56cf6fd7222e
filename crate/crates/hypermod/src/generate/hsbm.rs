//! Hypergraph stochastic block model: cluster labels drawn i.i.d. from `pi`,
//! then every distinct s-subset becomes a hyperedge independently with
//! probability `alpha_s` when fully within a cluster and `beta_s` otherwise.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::choose;
use crate::hypergraph::{Hypergraph, NodeId, Partition};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HsbmParams {
    pub n: usize,
    pub k: usize,
    /// Cluster probabilities, length `k`, summing to 1.
    pub pi: Vec<f64>,
    /// Within-cluster edge probability for sizes `2..=S` (index 0 is s=2).
    pub alpha: Vec<f64>,
    /// Cross-cluster edge probability, same indexing.
    pub beta: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl HsbmParams {
    pub fn max_size(&self) -> usize {
        self.alpha.len() + 1
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 {
            return Err(Error::InvalidInput("n and k must be positive".into()));
        }
        if self.pi.len() != self.k {
            return Err(Error::InvalidInput("pi must have length k".into()));
        }
        if self.pi.iter().any(|&p| p <= 0.0) || (self.pi.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(
                "pi entries must be positive and sum to 1".into(),
            ));
        }
        if self.alpha.len() != self.beta.len() || self.alpha.is_empty() {
            return Err(Error::InvalidInput(
                "alpha and beta must cover sizes 2..=S".into(),
            ));
        }
        for &p in self.alpha.iter().chain(&self.beta) {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidInput(format!("probability {p} out of range")));
            }
        }
        if self.max_size() >= 3 && self.n > 600 {
            return Err(Error::Resource(format!(
                "HSBM enumerates all size-3 subsets; n={} exceeds the supported 600",
                self.n
            )));
        }
        Ok(())
    }
}

/// Per-size analytic diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeDiagnostics {
    pub s: u32,
    /// Expected within/cross hyperedge ratio; infinite when `beta_s = 0`.
    pub rho: f64,
    pub expected_edges: f64,
}

pub fn hsbm_diagnostics(params: &HsbmParams) -> Result<Vec<SizeDiagnostics>> {
    params.validate()?;
    let mut out = Vec::new();
    for (i, (&a, &b)) in params.alpha.iter().zip(&params.beta).enumerate() {
        let s = i as u32 + 2;
        let within: f64 = params.pi.iter().map(|&p| p.powi(s as i32)).sum();
        let rho = if b == 0.0 || within >= 1.0 {
            f64::INFINITY
        } else {
            a * within / (b * (1.0 - within))
        };
        out.push(SizeDiagnostics {
            s,
            rho,
            expected_edges: choose(params.n as u64, s as u64) * (a * within + b * (1.0 - within)),
        });
    }
    Ok(out)
}

pub fn gen_hsbm(params: &HsbmParams) -> Result<(Hypergraph, Partition)> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n;

    // i.i.d. cluster labels
    let cum: Vec<f64> = params
        .pi
        .iter()
        .scan(0.0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let raw: Vec<u32> = (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            cum.iter().position(|&c| u < c).unwrap_or(params.k - 1) as u32 + 1
        })
        .collect();

    let mut edges: Vec<(Vec<NodeId>, u64)> = Vec::new();
    for (i, (&a, &b)) in params.alpha.iter().zip(&params.beta).enumerate() {
        let s = i + 2;
        if s > n {
            continue;
        }
        let mut subset: Vec<usize> = (0..s).collect();
        'subsets: loop {
            let within = subset.windows(2).all(|w| raw[w[0]] == raw[w[1]]);
            let p = if within { a } else { b };
            if rng.gen::<f64>() < p {
                edges.push((subset.iter().map(|&v| v as NodeId + 1).collect(), 1));
            }
            // advance to the next lexicographic s-subset of 0..n
            let mut i = s;
            while i > 0 {
                i -= 1;
                if subset[i] != i + n - s {
                    subset[i] += 1;
                    for j in i + 1..s {
                        subset[j] = subset[j - 1] + 1;
                    }
                    continue 'subsets;
                }
            }
            break;
        }
    }

    let h = Hypergraph::new(n, edges)?;
    Ok((h, Partition::normalized(&raw)))
}
