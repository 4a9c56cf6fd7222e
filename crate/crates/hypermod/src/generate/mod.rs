//! Synthetic modular hypergraph generators with ground-truth partitions:
//! a hypergraph stochastic block model ([`gen_hsbm`]), a degree-corrected
//! placement model ([`gen_dchsbm`]), and a simplified h-ABCD-style benchmark
//! ([`gen_habcd`]). Parameter-link utilities connect the two block models.

mod dchsbm;
mod habcd;
mod hsbm;

pub use dchsbm::{
    dchsbm_expected_rho, gen_dchsbm, solve_p_for_rho, DchsbmParams,
};
pub use habcd::{gen_habcd, omega_weights, DegreeSpec, GenHomogeneity, HabcdParams};
pub use hsbm::{gen_hsbm, hsbm_diagnostics, HsbmParams, SizeDiagnostics};

use crate::error::{Error, Result};

/// Block-model parameter links (equal cluster proportions): the DCHSBM
/// within-placement probability implied by an HSBM within-probability
/// `alpha_s` and the size-s edge count.
pub fn convert_alpha_to_p(k: usize, s: u32, alpha: f64, edges_s: f64) -> Result<f64> {
    if edges_s <= 0.0 {
        return Err(Error::InvalidInput("edge count must be positive".into()));
    }
    Ok(alpha * (k as f64).powi(s as i32 + 1) / edges_s)
}

/// Inverse link: the HSBM `alpha_s` implied by a DCHSBM `p_s` and a cross
/// probability `beta_s`.
pub fn convert_p_to_alpha(k: usize, s: u32, p: f64, beta: f64) -> Result<f64> {
    if p >= 1.0 {
        return Err(Error::InvalidInput("p must be below 1".into()));
    }
    Ok(p * beta * ((k as f64).powi(s as i32 - 1) - 1.0) / (1.0 - p))
}

/// Binomial coefficient as a float (sizes here are small, n can be large).
pub(crate) fn choose(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c *= (n - i) as f64 / (i + 1) as f64;
    }
    c
}

/// Largest-remainder apportionment of `total` into integer counts
/// proportional to `fractions` (which need not sum to 1).
pub(crate) fn apportion(total: u64, fractions: &[f64]) -> Result<Vec<u64>> {
    let sum: f64 = fractions.iter().sum();
    if fractions.iter().any(|&f| f < 0.0) || sum <= 0.0 {
        return Err(Error::InvalidInput(
            "fractions must be non-negative with positive sum".into(),
        ));
    }
    let quotas: Vec<f64> = fractions.iter().map(|&f| total as f64 * f / sum).collect();
    let mut counts: Vec<u64> = quotas.iter().map(|&q| q.floor() as u64).collect();
    let assigned: u64 = counts.iter().sum();
    let mut order: Vec<usize> = (0..quotas.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    for i in 0..(total - assigned) as usize {
        counts[order[i % order.len()]] += 1;
    }
    Ok(counts)
}

/// Contiguous balanced blocks: the first `n mod k` clusters get one extra
/// node. Returns per-node labels `1..=k`.
pub(crate) fn balanced_labels(n: usize, k: usize) -> Vec<u32> {
    let base = n / k;
    let extra = n % k;
    let mut labels = Vec::with_capacity(n);
    for c in 0..k {
        let size = base + usize::from(c < extra);
        labels.extend(std::iter::repeat(c as u32 + 1).take(size));
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_links() {
        assert!((convert_p_to_alpha(3, 2, 0.5, 0.1).unwrap() - 0.2).abs() < 1e-12);
        assert_eq!(convert_p_to_alpha(3, 2, 0.0, 0.1).unwrap(), 0.0);
        assert!(convert_p_to_alpha(3, 2, 1.0, 0.1).is_err());
        assert!((convert_alpha_to_p(3, 2, 0.2, 27.0).unwrap() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn choose_small_values() {
        assert_eq!(choose(6, 2), 15.0);
        assert_eq!(choose(4, 2), 6.0);
        assert_eq!(choose(5, 0), 1.0);
        assert_eq!(choose(3, 5), 0.0);
    }

    #[test]
    fn apportion_preserves_total() {
        let c = apportion(574, &[0.7, 0.3]).unwrap();
        assert_eq!(c.iter().sum::<u64>(), 574);
        assert_eq!(c, vec![402, 172]);
    }

    #[test]
    fn balanced_labels_split() {
        assert_eq!(balanced_labels(7, 3), vec![1, 1, 1, 2, 2, 3, 3]);
        assert_eq!(balanced_labels(6, 3), vec![1, 1, 2, 2, 3, 3]);
    }
}
