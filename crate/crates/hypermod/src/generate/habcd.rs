//! Simplified h-ABCD-style benchmark generator.
//!
//! This is a deliberately reduced variant of the reference benchmark: node
//! degrees come from a (truncated) power law or an explicit list, cluster
//! sizes are explicit, and each hyperedge independently flips a homogeneity
//! coin with probability `1 - xi`. Homogeneous edges draw a majority cluster
//! degree-proportionally, pick the majority count `c` from the
//! `omega_{c,s}` table of the chosen setting, and fill the edge with `c`
//! in-cluster and `s - c` out-of-cluster nodes; non-homogeneous edges draw
//! all nodes degree-proportionally from the whole node set. Differences from
//! the reference implementation: no exact degree-sequence splitting between
//! homogeneous and background parts, and no power-law cluster sizes.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::apportion;
use crate::hypergraph::{Hypergraph, NodeId, Partition};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegreeSpec {
    /// Explicit per-node degrees (length n).
    Explicit { values: Vec<u64> },
    /// Discrete truncated power law P(d) proportional to d^-gamma on
    /// [d_min, d_max], gamma in (2, 3).
    PowerLaw { gamma: f64, d_min: u64, d_max: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenHomogeneity {
    Strict,
    Majority,
    Linear,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HabcdParams {
    pub n: usize,
    pub degrees: DegreeSpec,
    /// Explicit cluster sizes, summing to n.
    pub cluster_sizes: Vec<usize>,
    /// Fractions of size-s hyperedges for `2..=S` (index 0 is s=2), sum 1.
    pub q: Vec<f64>,
    pub setting: GenHomogeneity,
    /// Fraction of edges that are non-homogeneous, in (0, 1).
    pub xi: f64,
    #[serde(default)]
    pub seed: u64,
}

/// The `omega_{c,s}` table: probability that a homogeneous size-`s` edge has
/// exactly `c` majority-cluster nodes, for `c` in `(s/2, s]`.
pub fn omega_weights(setting: GenHomogeneity, s: u32) -> Vec<(u32, f64)> {
    let lo = s / 2 + 1;
    match setting {
        GenHomogeneity::Strict => vec![(s, 1.0)],
        GenHomogeneity::Majority => {
            let count = (s - lo + 1) as f64;
            (lo..=s).map(|c| (c, 1.0 / count)).collect()
        }
        GenHomogeneity::Linear => {
            let denom: f64 = (lo..=s).map(|c| c as f64).sum();
            (lo..=s).map(|c| (c, c as f64 / denom)).collect()
        }
    }
}

impl HabcdParams {
    pub fn max_size(&self) -> usize {
        self.q.len() + 1
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        if self.cluster_sizes.iter().sum::<usize>() != self.n
            || self.cluster_sizes.iter().any(|&c| c == 0)
        {
            return Err(Error::InvalidInput(
                "cluster sizes must be positive and sum to n".into(),
            ));
        }
        if self.q.is_empty()
            || self.q.iter().any(|&f| f < 0.0)
            || (self.q.iter().sum::<f64>() - 1.0).abs() > 1e-9
        {
            return Err(Error::InvalidInput(
                "size fractions must be non-negative and sum to 1".into(),
            ));
        }
        if !(0.0 < self.xi && self.xi < 1.0) {
            return Err(Error::InvalidInput("xi must lie in (0, 1)".into()));
        }
        if let DegreeSpec::PowerLaw { gamma, d_min, d_max } = self.degrees {
            if !(2.0 < gamma && gamma < 3.0) || d_min == 0 || d_min > d_max {
                return Err(Error::InvalidInput(
                    "power law needs gamma in (2,3) and 1 <= d_min <= d_max".into(),
                ));
            }
        }
        if let DegreeSpec::Explicit { values } = &self.degrees {
            if values.len() != self.n {
                return Err(Error::InvalidInput("need one degree per node".into()));
            }
        }
        Ok(())
    }
}

/// Sample from a finite distribution given cumulative weights.
fn pick(rng: &mut ChaCha8Rng, cum: &[f64]) -> usize {
    let total = *cum.last().unwrap();
    let u = rng.gen::<f64>() * total;
    cum.partition_point(|&c| c <= u).min(cum.len() - 1)
}

pub fn gen_habcd(params: &HabcdParams) -> Result<(Hypergraph, Partition)> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n;

    let degrees: Vec<u64> = match &params.degrees {
        DegreeSpec::Explicit { values } => values.clone(),
        DegreeSpec::PowerLaw { gamma, d_min, d_max } => {
            let weights: Vec<f64> = (*d_min..=*d_max)
                .map(|d| (d as f64).powf(-gamma))
                .collect();
            let cum: Vec<f64> = weights
                .iter()
                .scan(0.0, |acc, &w| {
                    *acc += w;
                    Some(*acc)
                })
                .collect();
            (0..n).map(|_| d_min + pick(&mut rng, &cum) as u64).collect()
        }
    };

    // ground-truth labels: contiguous blocks of the given sizes
    let mut labels = Vec::with_capacity(n);
    for (c, &size) in params.cluster_sizes.iter().enumerate() {
        labels.extend(std::iter::repeat(c as u32 + 1).take(size));
    }

    // degree-proportional samplers, global and per cluster
    let global_cum: Vec<f64> = degrees
        .iter()
        .scan(0.0, |acc, &d| {
            *acc += d as f64;
            Some(*acc)
        })
        .collect();
    if *global_cum.last().unwrap() <= 0.0 {
        return Err(Error::Generation("all degrees are zero".into()));
    }
    let mut cluster_nodes: Vec<Vec<usize>> = vec![Vec::new(); params.cluster_sizes.len()];
    for (v, &l) in labels.iter().enumerate() {
        cluster_nodes[l as usize - 1].push(v);
    }
    let cluster_cums: Vec<Vec<f64>> = cluster_nodes
        .iter()
        .map(|nodes| {
            nodes
                .iter()
                .scan(0.0, |acc, &v| {
                    *acc += degrees[v] as f64;
                    Some(*acc)
                })
                .collect()
        })
        .collect();
    let cluster_weight_cum: Vec<f64> = cluster_cums
        .iter()
        .scan(0.0, |acc, cum| {
            *acc += cum.last().copied().unwrap_or(0.0);
            Some(*acc)
        })
        .collect();

    // edge budget and per-size counts
    let total_degree: u64 = degrees.iter().sum();
    let mean_size: f64 = params
        .q
        .iter()
        .enumerate()
        .map(|(i, &q)| (i + 2) as f64 * q)
        .sum();
    let total_edges = (total_degree as f64 / mean_size).round() as u64;
    let per_size = apportion(total_edges, &params.q)?;

    const MAX_REJECTS: usize = 10_000;
    let draw_distinct = |rng: &mut ChaCha8Rng,
                             count: usize,
                             cum: &[f64],
                             index: &dyn Fn(usize) -> usize,
                             out: &mut Vec<NodeId>|
     -> Result<()> {
        let mut rejects = 0;
        while out.len() < count {
            let v = index(pick(rng, cum)) as NodeId + 1;
            if out.contains(&v) {
                rejects += 1;
                if rejects > MAX_REJECTS {
                    return Err(Error::Generation(
                        "could not draw distinct nodes; degree spec too concentrated".into(),
                    ));
                }
            } else {
                out.push(v);
            }
        }
        Ok(())
    };

    let mut edges: Vec<(Vec<NodeId>, u64)> = Vec::new();
    let mut nodes: Vec<NodeId> = Vec::new();
    for (i, &count) in per_size.iter().enumerate() {
        let s = i + 2;
        if s > n {
            return Err(Error::Generation(format!("edge size {s} exceeds n")));
        }
        let omega = omega_weights(params.setting, s as u32);
        let omega_cum: Vec<f64> = omega
            .iter()
            .scan(0.0, |acc, &(_, w)| {
                *acc += w;
                Some(*acc)
            })
            .collect();
        for _ in 0..count {
            nodes.clear();
            if rng.gen::<f64>() < 1.0 - params.xi {
                // homogeneous: majority cluster drawn degree-proportionally
                let mut attempts = 0;
                loop {
                    let k = pick(&mut rng, &cluster_weight_cum);
                    let c = omega[pick(&mut rng, &omega_cum)].0 as usize;
                    if cluster_nodes[k].len() >= c && n - cluster_nodes[k].len() >= s - c {
                        nodes.clear();
                        let members = &cluster_nodes[k];
                        draw_distinct(&mut rng, c, &cluster_cums[k], &|i| members[i], &mut nodes)?;
                        if s > c {
                            // remaining nodes from outside the cluster
                            let majority = k as u32 + 1;
                            let mut rejects = 0;
                            while nodes.len() < s {
                                let v = pick(&mut rng, &global_cum) as NodeId + 1;
                                if labels[v as usize - 1] == majority || nodes.contains(&v) {
                                    rejects += 1;
                                    if rejects > MAX_REJECTS {
                                        return Err(Error::Generation(
                                            "could not fill minority nodes".into(),
                                        ));
                                    }
                                } else {
                                    nodes.push(v);
                                }
                            }
                        }
                        break;
                    }
                    attempts += 1;
                    if attempts > MAX_REJECTS {
                        return Err(Error::Generation(
                            "no cluster large enough for the drawn majority count".into(),
                        ));
                    }
                }
            } else {
                draw_distinct(&mut rng, s, &global_cum, &|i| i, &mut nodes)?;
            }
            let mut sorted = nodes.clone();
            sorted.sort_unstable();
            edges.push((sorted, 1));
        }
    }

    let h = Hypergraph::new(n, edges)?;
    Ok((h, Partition::from_labels(labels)?))
}
