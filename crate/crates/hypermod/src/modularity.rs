//! The four hypergraph modularity criteria in one framework, plus estimation
//! of the all-or-nothing (AON) affinity parameters and the symmetric
//! modularity for a user-supplied affinity.
//!
//! Size-1 hyperedges never contribute to any modularity and are stripped
//! (including from degrees and volumes) before evaluation.
//!
//! ```
//! use hypermod::{Hypergraph, Partition};
//! use hypermod::modularity::{q_strict, q_wclique};
//!
//! let h = Hypergraph::new(4, vec![
//!     (vec![1, 2], 1), (vec![1, 2, 3], 1), (vec![3, 4], 1),
//! ]).unwrap();
//! let p = Partition::from_labels(vec![1, 1, 2, 2]).unwrap();
//! assert!((q_strict(&h, &p).unwrap() - 0.238095).abs() < 1e-6);
//! assert!((q_wclique(&h, &p).unwrap() - 0.238095).abs() < 1e-6);
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Partition};
use crate::partvec::{
    partition_vector_volume_from, partition_vectors_of, split_counts, PartitionVector,
};

/// Clamp applied to estimated AON rates before logs are taken.
pub const AON_EPSILON: f64 = 1e-10;

/// Hyper-parameter choice w_{s,c} weighting majority counts.
#[derive(Debug, Clone, PartialEq)]
pub enum WscSetting {
    /// w = 1{c = s}: only fully internal hyperedges count.
    Strict,
    /// w = 1{c > s/2}.
    Majority,
    /// w = (c/s) 1{c > s/2}.
    Linear,
    /// Explicit table (s, c) -> weight in [0, 1]; missing cells are 0.
    Custom(BTreeMap<(u32, u32), f64>),
}

impl WscSetting {
    /// Weight for a size-s edge with c majority nodes; only queried for
    /// c > s/2.
    pub fn weight(&self, s: u32, c: u32) -> f64 {
        debug_assert!(2 * c > s);
        match self {
            WscSetting::Strict => {
                if c == s {
                    1.0
                } else {
                    0.0
                }
            }
            WscSetting::Majority => 1.0,
            WscSetting::Linear => c as f64 / s as f64,
            WscSetting::Custom(table) => table.get(&(s, c)).copied().unwrap_or(0.0),
        }
    }
}

fn require_nonempty(h: &Hypergraph) -> Result<(u64, u64)> {
    let m = h.total_weight();
    let vol: u64 = h.degrees().iter().sum();
    if m == 0 || vol == 0 {
        return Err(Error::Undefined(
            "modularity requires at least one hyperedge of size >= 2".into(),
        ));
    }
    Ok((m, vol))
}

fn assert_range(q: f64) -> f64 {
    assert!(
        (-1.0 - 1e-9..=1.0 + 1e-9).contains(&q),
        "modularity {q} outside [-1, 1]"
    );
    q
}

/// Per-cluster, per-size weighted counts of fully internal hyperedges.
fn internal_counts(h: &Hypergraph, partition: &Partition) -> BTreeMap<(u32, u32), u64> {
    let mut out = BTreeMap::new();
    for e in h.edges() {
        let l0 = partition.label(e.nodes()[0]);
        if e.nodes().iter().all(|&v| partition.label(v) == l0) {
            *out.entry((l0, e.size() as u32)).or_insert(0) += e.weight();
        }
    }
    out
}

/// Graph modularity of the weighted clique reduction against the
/// degree-preserving null model.
pub fn q_wclique(h: &Hypergraph, partition: &Partition) -> Result<f64> {
    let h = h.without_unit_edges();
    let (m, vol) = require_nonempty(&h)?;
    let g = h.weighted_clique_reduction();
    let mut within = 0.0;
    for u in 1..=h.n() as u32 {
        let lu = partition.label(u);
        for &(v, w) in g.neighbors(u) {
            if partition.label(v) == lu {
                within += w;
            }
        }
    }
    let vols = partition.cluster_volumes(&h);
    let tax: f64 = vols
        .iter()
        .map(|&v| (v as f64) * (v as f64) / vol as f64)
        .sum();
    Ok(assert_range((within - tax) / (2.0 * m as f64)))
}

/// Strict modularity: fully internal hyperedges against the size-aware
/// degree tax.
pub fn q_strict(h: &Hypergraph, partition: &Partition) -> Result<f64> {
    let h = h.without_unit_edges();
    let (m, vol) = require_nonempty(&h)?;
    let internal: u64 = internal_counts(&h, partition).values().sum();
    let vols = partition.cluster_volumes(&h);
    let mut tax = 0.0;
    for (&s, &count) in &h.size_counts() {
        for &v in &vols {
            tax += count as f64 * (v as f64 / vol as f64).powi(s as i32);
        }
    }
    Ok(assert_range((internal as f64 - tax) / m as f64))
}

/// Homogeneity-weighted modularity: majority counts against a Binomial tax.
pub fn q_wsc(h: &Hypergraph, partition: &Partition, setting: &WscSetting) -> Result<f64> {
    let h = h.without_unit_edges();
    let (m, vol) = require_nonempty(&h)?;
    let table = crate::partvec::majority_counts(&h, partition)?;
    let vols = partition.cluster_volumes(&h);
    let size_counts = h.size_counts();

    let mut total = 0.0;
    for (&(_, s, c), &count) in &table {
        total += setting.weight(s, c) * count as f64;
    }
    for (&s, &count) in &size_counts {
        for &v in &vols {
            let p = v as f64 / vol as f64;
            for c in (s / 2 + 1)..=s {
                total -= setting.weight(s, c) * count as f64 * binomial_pmf(s, p, c);
            }
        }
    }
    Ok(assert_range(total / m as f64))
}

/// P(Bin(s, p) = c), computed in log space.
pub fn binomial_pmf(s: u32, p: f64, c: u32) -> f64 {
    debug_assert!(c <= s);
    if p <= 0.0 {
        return if c == 0 { 1.0 } else { 0.0 };
    }
    if p >= 1.0 {
        return if c == s { 1.0 } else { 0.0 };
    }
    let ln_choose = ln_factorial(s) - ln_factorial(c) - ln_factorial(s - c);
    (ln_choose + c as f64 * p.ln() + (s - c) as f64 * (1.0 - p).ln()).exp()
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n as u64).map(|i| (i as f64).ln()).sum()
}

/// Estimated AON affinity parameters, per hyperedge size.
#[derive(Debug, Clone, PartialEq)]
pub struct AonSizeParams {
    pub omega1: f64,
    pub omega0: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl AonSizeParams {
    /// Derives beta and gamma from the two rates, clamping at
    /// [`AON_EPSILON`] before logs. beta == 0 falls back to the continuity
    /// limit gamma = omega1.
    pub fn from_rates(omega1: f64, omega0: f64) -> Self {
        let omega1 = omega1.max(AON_EPSILON);
        let omega0 = omega0.max(AON_EPSILON);
        let beta = omega1.ln() - omega0.ln();
        let gamma = if beta == 0.0 {
            omega1
        } else {
            (omega1 - omega0) / beta
        };
        Self {
            omega1,
            omega0,
            beta,
            gamma,
        }
    }
}

/// AON parameters per size s in [2, S].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AonParams {
    per_size: BTreeMap<u32, AonSizeParams>,
}

impl AonParams {
    pub fn from_sizes(per_size: BTreeMap<u32, AonSizeParams>) -> Self {
        Self { per_size }
    }

    /// Fixed beta/gamma per size without estimated rates (used for the
    /// strict-equivalence choice beta = 1, gamma_s = |E_s| / Vol^s).
    pub fn fixed(entries: impl IntoIterator<Item = (u32, f64, f64)>) -> Self {
        let per_size = entries
            .into_iter()
            .map(|(s, beta, gamma)| {
                (
                    s,
                    AonSizeParams {
                        omega1: f64::NAN,
                        omega0: f64::NAN,
                        beta,
                        gamma,
                    },
                )
            })
            .collect();
        Self { per_size }
    }

    pub fn get(&self, s: u32) -> Option<&AonSizeParams> {
        self.per_size.get(&s)
    }

    pub fn sizes(&self) -> impl Iterator<Item = u32> + '_ {
        self.per_size.keys().copied()
    }

    /// The induced AON affinity: omega1_s on within vectors (s), omega0_s on
    /// split vectors of size s.
    pub fn affinity(&self) -> impl Fn(&PartitionVector) -> f64 + '_ {
        move |p: &PartitionVector| {
            let Some(sp) = self.per_size.get(&p.size()) else {
                return 0.0;
            };
            if p.num_parts() == 1 {
                sp.omega1
            } else {
                sp.omega0
            }
        }
    }
}

/// Estimates per-size AON rates from an initial partition: omega1 from the
/// within-cluster rate, omega0 from the cut rate over split-vector volumes.
/// Sizes without edges are omitted.
pub fn estimate_aon_params(h: &Hypergraph, init: &Partition) -> Result<AonParams> {
    let h = h.without_unit_edges();
    if init.n() != h.n() {
        return Err(Error::InvalidInput("partition length mismatch".into()));
    }
    let internal = internal_counts(&h, init);
    let vols = init.cluster_volumes(&h);
    let mut per_size = BTreeMap::new();
    for (&s, &count_s) in &h.size_counts() {
        let e_in: u64 = internal
            .iter()
            .filter(|(&(_, ts), _)| ts == s)
            .map(|(_, &w)| w)
            .sum();
        let cut = count_s - e_in;
        let within_vol: f64 = vols.iter().map(|&v| (v as f64).powi(s as i32)).sum();
        let split_vol: f64 = partition_vectors_of(s)
            .iter()
            .filter(|p| p.num_parts() >= 2)
            .map(|p| partition_vector_volume_from(&vols, p))
            .sum();
        let omega1 = if within_vol > 0.0 {
            e_in as f64 / within_vol
        } else {
            0.0
        };
        let omega0 = if split_vol > 0.0 {
            cut as f64 / split_vol
        } else {
            0.0
        };
        per_size.insert(s, AonSizeParams::from_rates(omega1, omega0));
    }
    Ok(AonParams { per_size })
}

/// All-or-nothing modularity for given parameters, with the
/// partition-independent constant dropped.
pub fn q_aon(h: &Hypergraph, partition: &Partition, params: &AonParams) -> Result<f64> {
    let h = h.without_unit_edges();
    let internal = internal_counts(&h, partition);
    let vols = partition.cluster_volumes(&h);
    let mut total = 0.0;
    for (&s, _) in &h.size_counts() {
        let sp = params
            .get(s)
            .ok_or_else(|| Error::InvalidInput(format!("AON params missing size {s}")))?;
        let e_in: u64 = internal
            .iter()
            .filter(|(&(_, ts), _)| ts == s)
            .map(|(_, &w)| w)
            .sum();
        let vol_term: f64 = vols.iter().map(|&v| (v as f64).powi(s as i32)).sum();
        total += sp.beta * (e_in as f64 - sp.gamma * vol_term);
    }
    Ok(total)
}

/// Symmetric modularity for an affinity Omega, summed over all partition
/// vectors with sizes in [2, S]. Errors if a non-positive affinity is
/// queried on a vector that carries edges or volume.
pub fn q_symmetric(
    h: &Hypergraph,
    partition: &Partition,
    affinity: impl Fn(&PartitionVector) -> f64,
) -> Result<f64> {
    let h = h.without_unit_edges();
    let sc = split_counts(&h, partition)?;
    let vols = partition.cluster_volumes(&h);
    let mut total = 0.0;
    for s in 2..=h.max_size() as u32 {
        for p in partition_vectors_of(s) {
            let e = sc.get(&p) as f64;
            let vol = partition_vector_volume_from(&vols, &p);
            if e == 0.0 && vol == 0.0 {
                continue;
            }
            let omega = affinity(&p);
            if omega <= 0.0 {
                return Err(Error::Undefined(format!(
                    "non-positive affinity {omega} at {p}"
                )));
            }
            total += e * omega.ln() - vol * omega;
        }
    }
    Ok(total)
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

    #[test]
    fn wclique_values() {
        let h = h0();
        assert_eq!(q_wclique(&h, &Partition::single_cluster(4)).unwrap(), 0.0);
        assert!((q_wclique(&h, &p0()).unwrap() - 10.0 / 42.0).abs() < 1e-12);
        assert!((q_wclique(&h, &Partition::singletons(4)).unwrap() + 13.0 / 42.0).abs() < 1e-12);
    }

    #[test]
    fn strict_values() {
        let h = h0();
        assert_eq!(q_strict(&h, &Partition::single_cluster(4)).unwrap(), 0.0);
        assert!((q_strict(&h, &p0()).unwrap() - 245.0 / 1029.0).abs() < 1e-12);
        assert!((q_strict(&h, &Partition::singletons(4)).unwrap() + 207.0 / 1029.0).abs() < 1e-12);
    }

    #[test]
    fn wsc_values() {
        let h = h0();
        let p = p0();
        assert!((q_wsc(&h, &p, &WscSetting::Strict).unwrap() - 245.0 / 1029.0).abs() < 1e-12);
        assert!((q_wsc(&h, &p, &WscSetting::Linear).unwrap() - 917.0 / 3087.0).abs() < 1e-12);
        assert!((q_wsc(&h, &p, &WscSetting::Majority).unwrap() - 112.0 / 343.0).abs() < 1e-12);
    }

    #[test]
    fn empty_hypergraph_is_undefined() {
        let h = Hypergraph::empty(3);
        assert!(q_strict(&h, &Partition::single_cluster(3)).is_err());
        assert!(q_wclique(&h, &Partition::single_cluster(3)).is_err());
    }

    #[test]
    fn aon_estimation_h0() {
        let h = h0();
        let init = Partition::from_labels(vec![1, 1, 1, 2]).unwrap();
        let params = estimate_aon_params(&h, &init).unwrap();
        let s2 = params.get(2).unwrap();
        assert!((s2.omega1 - 1.0 / 37.0).abs() < 1e-12);
        assert!((s2.omega0 - 1.0 / 12.0).abs() < 1e-12);
        assert!((s2.beta - (12.0f64 / 37.0).ln()).abs() < 1e-9);
        assert!((s2.gamma - 0.050006).abs() < 1e-5);
        // cut_3 = 0: omega0 clamps to epsilon, beta positive
        let s3 = params.get(3).unwrap();
        assert_eq!(s3.omega0, AON_EPSILON);
        assert!(s3.beta > 0.0);
    }

    #[test]
    fn aon_degenerate_single_cluster_init() {
        let params = estimate_aon_params(&h0(), &Partition::single_cluster(4)).unwrap();
        for s in [2, 3] {
            assert_eq!(params.get(s).unwrap().omega0, AON_EPSILON);
        }
    }

    #[test]
    fn aon_strict_equivalence() {
        let h = h0();
        let params = AonParams::fixed([(2, 1.0, 2.0 / 49.0), (3, 1.0, 1.0 / 343.0)]);
        let q = q_aon(&h, &p0(), &params).unwrap();
        assert!((q - 3.0 * q_strict(&h, &p0()).unwrap()).abs() < 1e-12);
        assert!((q - 5.0 / 7.0).abs() < 1e-12);
        let q1 = q_aon(&h, &Partition::single_cluster(4), &params).unwrap();
        assert!(q1.abs() < 1e-12);
    }

    #[test]
    fn aon_zero_beta_is_zero() {
        let params = AonParams::fixed([(2, 0.0, 0.3), (3, 0.0, 0.4)]);
        assert_eq!(q_aon(&h0(), &p0(), &params).unwrap(), 0.0);
    }

    #[test]
    fn aon_missing_size_errors() {
        let params = AonParams::fixed([(2, 1.0, 0.1)]);
        assert!(q_aon(&h0(), &p0(), &params).is_err());
    }

    #[test]
    fn symmetric_unit_affinity() {
        // Omega == 1: the log term vanishes, leaving minus the volume total.
        let h = h0();
        let p = p0();
        let vols = p.cluster_volumes(&h);
        let expected: f64 = (2..=3u32)
            .flat_map(partition_vectors_of)
            .map(|pv| partition_vector_volume_from(&vols, &pv))
            .sum();
        let q = q_symmetric(&h, &p, |_| 1.0).unwrap();
        assert!((q + expected).abs() < 1e-9);
    }

    #[test]
    fn symmetric_euler_affinity() {
        // Omega == e: log term contributes the edge total once.
        let h = h0();
        let p = p0();
        let vols = p.cluster_volumes(&h);
        let vol_total: f64 = (2..=3u32)
            .flat_map(partition_vectors_of)
            .map(|pv| partition_vector_volume_from(&vols, &pv))
            .sum();
        let q = q_symmetric(&h, &p, |_| std::f64::consts::E).unwrap();
        let expected = 3.0 - std::f64::consts::E * vol_total;
        assert!((q - expected).abs() < 1e-9);
    }

    #[test]
    fn symmetric_aon_difference_is_partition_independent() {
        // With the estimated AON affinity, q_symmetric differs from q_aon by
        // a constant (up to the clamped omega0 for sizes with no cuts).
        let h = h0();
        let init = Partition::from_labels(vec![1, 1, 1, 2]).unwrap();
        let params = estimate_aon_params(&h, &init).unwrap();
        let parts = [p0(), Partition::single_cluster(4)];
        let diffs: Vec<f64> = parts
            .iter()
            .map(|p| {
                q_symmetric(&h, p, params.affinity()).unwrap() - q_aon(&h, p, &params).unwrap()
            })
            .collect();
        assert!((diffs[0] - diffs[1]).abs() < 1e-6);
    }

    #[test]
    fn unit_edges_do_not_contribute() {
        let h = h0();
        let with_loop = Hypergraph::new(
            4,
            vec![
                (vec![1, 2], 1),
                (vec![1, 2, 3], 1),
                (vec![3, 4], 1),
                (vec![2], 5),
            ],
        )
        .unwrap();
        let p = p0();
        for (a, b) in [
            (q_strict(&h, &p).unwrap(), q_strict(&with_loop, &p).unwrap()),
            (
                q_wclique(&h, &p).unwrap(),
                q_wclique(&with_loop, &p).unwrap(),
            ),
            (
                q_wsc(&h, &p, &WscSetting::Linear).unwrap(),
                q_wsc(&with_loop, &p, &WscSetting::Linear).unwrap(),
            ),
        ] {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn binomial_pmf_sane() {
        assert!((binomial_pmf(3, 4.0 / 7.0, 2) - 144.0 / 343.0).abs() < 1e-12);
        assert_eq!(binomial_pmf(5, 0.0, 0), 1.0);
        assert_eq!(binomial_pmf(5, 0.0, 2), 0.0);
        assert_eq!(binomial_pmf(5, 1.0, 5), 1.0);
        let total: f64 = (0..=64).map(|c| binomial_pmf(64, 0.3, c)).sum();
        assert!((total - 1.0).abs() < 1e-9);
    }
}
