//! Benchmark harness: clustering quality measures, scenario configurations,
//! deterministic run orchestration and CSV emission.

mod csv;

pub use csv::{read_csv, write_csv};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::{gen_dchsbm, gen_habcd, gen_hsbm, DchsbmParams, HabcdParams, HsbmParams};
use crate::hypergraph::{Hypergraph, Partition};
use crate::louvain::louvain;
use crate::modularity::{estimate_aon_params, q_aon, q_strict, q_wclique, q_wsc, WscSetting};
use crate::optimize::{
    aon_hmll, cnm_like, irmm, lsr, AonOptions, CnmOptions, IrmmOptions, LsrOptions,
};

/// Hubert–Arabie adjusted Rand index between two partitions of the same
/// node set. 1 means identical up to relabeling; 0 is the chance level.
pub fn ari(a: &Partition, b: &Partition) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::InvalidInput(
            "partitions cover different node sets".into(),
        ));
    }
    let mut cells: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    let mut rows: BTreeMap<u32, u64> = BTreeMap::new();
    let mut cols: BTreeMap<u32, u64> = BTreeMap::new();
    for (&la, &lb) in a.labels().iter().zip(b.labels()) {
        *cells.entry((la, lb)).or_insert(0) += 1;
        *rows.entry(la).or_insert(0) += 1;
        *cols.entry(lb).or_insert(0) += 1;
    }
    let pairs = |x: u64| (x * x.saturating_sub(1)) as f64 / 2.0;
    let index: f64 = cells.values().map(|&c| pairs(c)).sum();
    let sum_a: f64 = rows.values().map(|&c| pairs(c)).sum();
    let sum_b: f64 = cols.values().map(|&c| pairs(c)).sum();
    let total = pairs(a.n() as u64);
    let expected = if total > 0.0 { sum_a * sum_b / total } else { 0.0 };
    let max = (sum_a + sum_b) / 2.0;
    if (max - expected).abs() < 1e-12 {
        return Ok(if a.same_clustering(b) { 1.0 } else { 0.0 });
    }
    Ok((index - expected) / (max - expected))
}

/// Signed relative error `(q_true - q_hat) / q_true`; `None` when the
/// ground-truth value is zero and the ratio is undefined.
pub fn relative_error(q_true: f64, q_hat: f64) -> Option<f64> {
    if q_true == 0.0 {
        None
    } else {
        Some((q_true - q_hat) / q_true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Irmm,
    Lsr,
    Cnm,
    Aon,
}

impl Algorithm {
    pub fn all() -> Vec<Algorithm> {
        vec![Algorithm::Irmm, Algorithm::Lsr, Algorithm::Cnm, Algorithm::Aon]
    }

    pub fn parse(s: &str) -> Result<Algorithm> {
        match s {
            "irmm" => Ok(Algorithm::Irmm),
            "lsr" => Ok(Algorithm::Lsr),
            "cnm" => Ok(Algorithm::Cnm),
            "aon" => Ok(Algorithm::Aon),
            other => Err(Error::InvalidInput(format!("unknown algorithm {other:?}"))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algorithm::Irmm => "irmm",
            Algorithm::Lsr => "lsr",
            Algorithm::Cnm => "cnm",
            Algorithm::Aon => "aon",
        };
        f.write_str(s)
    }
}

/// Generator model plus parameters, tagged by `"model"` in JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelParams {
    Hsbm(HsbmParams),
    Dchsbm(DchsbmParams),
    Habcd(HabcdParams),
}

impl ModelParams {
    pub fn n(&self) -> usize {
        match self {
            ModelParams::Hsbm(p) => p.n,
            ModelParams::Dchsbm(p) => p.n,
            ModelParams::Habcd(p) => p.n,
        }
    }

    /// Generate one replicate with the given seed (overriding any seed
    /// stored in the parameters).
    pub fn generate(&self, seed: u64) -> Result<(Hypergraph, Partition)> {
        match self {
            ModelParams::Hsbm(p) => {
                let mut p = p.clone();
                p.seed = seed;
                gen_hsbm(&p)
            }
            ModelParams::Dchsbm(p) => {
                let mut p = p.clone();
                p.seed = seed;
                gen_dchsbm(&p)
            }
            ModelParams::Habcd(p) => {
                let mut p = p.clone();
                p.seed = seed;
                gen_habcd(&p)
            }
        }
    }
}

fn default_replicates() -> usize {
    25
}

fn default_algorithms() -> Vec<Algorithm> {
    Algorithm::all()
}

/// One benchmark scenario: a generator, a replicate count, and the
/// algorithms to run on every replicate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: String,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    pub generator: ModelParams,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    /// Step budget override for the CNM-like optimizer.
    #[serde(default)]
    pub cnm_max_steps: Option<usize>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<ScenarioConfig> {
        let cfg: ScenarioConfig = serde_json::from_str(text)?;
        if cfg.replicates == 0 {
            return Err(Error::InvalidInput("replicates must be >= 1".into()));
        }
        Ok(cfg)
    }
}

/// One algorithm run on one generated replicate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub scenario: String,
    pub replicate: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub n: usize,
    pub k_true: usize,
    pub k_hat: usize,
    pub ari: f64,
    pub q_true: f64,
    pub q_hat: f64,
    pub rel_error: Option<f64>,
    pub wall_time_s: f64,
    pub status: String,
}

/// FNV-1a over a derivation string: reproducible sub-seeds from one master
/// seed.
pub fn derive_seed(master: u64, scenario: &str, replicate: usize, role: &str) -> u64 {
    let key = format!("{master}:{scenario}:{replicate}:{role}");
    let mut h: u64 = 0xcbf29ce484222325;
    for b in key.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn run_one(
    h: &Hypergraph,
    truth: &Partition,
    algo: Algorithm,
    seed: u64,
    cnm_max_steps: Option<usize>,
) -> Result<(Partition, f64, f64, f64)> {
    // returns (partition, q_true, q_hat, wall_time)
    match algo {
        Algorithm::Irmm => {
            let r = irmm(h, &IrmmOptions { seed, ..Default::default() })?;
            Ok((r.partition, q_wclique(h, truth)?, r.objective, r.wall_time))
        }
        Algorithm::Lsr => {
            // pipeline: IRMM start, then local moves on the linear criterion
            let t = std::time::Instant::now();
            let init = irmm(h, &IrmmOptions { seed, ..Default::default() })?;
            let r = lsr(
                h,
                &init.partition,
                &WscSetting::Linear,
                &LsrOptions { seed, ..Default::default() },
            )?;
            let wall = t.elapsed().as_secs_f64();
            Ok((
                r.partition,
                q_wsc(h, truth, &WscSetting::Linear)?,
                r.objective,
                wall,
            ))
        }
        Algorithm::Cnm => {
            let r = cnm_like(
                h,
                &CnmOptions {
                    max_steps: cnm_max_steps,
                    seed,
                    ..Default::default()
                },
            )?;
            Ok((r.partition, q_strict(h, truth)?, r.objective, r.wall_time))
        }
        Algorithm::Aon => {
            let r = aon_hmll(h, &AonOptions { seed, ..Default::default() })?;
            // ground truth scored with the parameters the run itself used
            let start = louvain(&h.clique_reduction(), seed);
            let params = estimate_aon_params(h, &start)?;
            Ok((r.partition, q_aon(h, truth, &params)?, r.objective, r.wall_time))
        }
    }
}

fn run_replicate(
    config: &ScenarioConfig,
    master_seed: u64,
    replicate: usize,
) -> Vec<RunRecord> {
    let gen_seed = derive_seed(master_seed, &config.scenario, replicate, "gen");
    let generated = config.generator.generate(gen_seed);
    config
        .algorithms
        .iter()
        .map(|&algo| {
            let seed = derive_seed(master_seed, &config.scenario, replicate, &algo.to_string());
            let mut rec = RunRecord {
                scenario: config.scenario.clone(),
                replicate,
                algorithm: algo,
                seed,
                n: config.generator.n(),
                k_true: 0,
                k_hat: 0,
                ari: f64::NAN,
                q_true: f64::NAN,
                q_hat: f64::NAN,
                rel_error: None,
                wall_time_s: f64::NAN,
                status: "ok".into(),
            };
            match &generated {
                Err(e) => rec.status = format!("generation error: {e}"),
                Ok((h, truth)) => {
                    rec.k_true = truth.k();
                    match run_one(h, truth, algo, seed, config.cnm_max_steps) {
                        Err(e) => rec.status = format!("error: {e}"),
                        Ok((partition, q_true, q_hat, wall)) => {
                            rec.k_hat = partition.k();
                            rec.ari = ari(&partition, truth).unwrap_or(f64::NAN);
                            rec.q_true = q_true;
                            rec.q_hat = q_hat;
                            rec.rel_error = relative_error(q_true, q_hat);
                            rec.wall_time_s = wall;
                        }
                    }
                }
            }
            rec
        })
        .collect()
}

/// Runs every (replicate, algorithm) pair of a scenario. Fully reproducible
/// from the master seed; replicates run in parallel when `jobs != 1`.
pub fn run_scenario(
    config: &ScenarioConfig,
    master_seed: u64,
    jobs: Option<usize>,
) -> Result<Vec<RunRecord>> {
    let reps: Vec<usize> = (0..config.replicates).collect();
    let nested: Vec<Vec<RunRecord>> = match jobs {
        Some(1) => reps
            .iter()
            .map(|&r| run_replicate(config, master_seed, r))
            .collect(),
        _ => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Error::Resource(e.to_string()))?;
            pool.install(|| {
                reps.par_iter()
                    .map(|&r| run_replicate(config, master_seed, r))
                    .collect()
            })
        }
    };
    Ok(nested.into_iter().flatten().collect())
}

/// Aggregate statistics for one (scenario, algorithm) group.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub failures: usize,
    pub ari: Moments,
    pub rel_error: Moments,
    /// Rows whose relative error was undefined (ground truth modularity 0).
    pub rel_error_undefined: usize,
    pub wall_time: Moments,
    pub k_hat_histogram: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub sd: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

impl Moments {
    fn of(values: &[f64]) -> Moments {
        if values.is_empty() {
            return Moments {
                mean: f64::NAN,
                sd: f64::NAN,
                median: f64::NAN,
                min: f64::NAN,
                max: f64::NAN,
            };
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let sd = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = if sorted.len() % 2 == 1 {
            sorted[sorted.len() / 2]
        } else {
            (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2]) / 2.0
        };
        Moments {
            mean,
            sd,
            median,
            min: sorted[0],
            max: *sorted.last().unwrap(),
        }
    }
}

/// Groups records by (scenario, algorithm) and reduces each group to its
/// summary statistics. Undefined relative errors are excluded from the
/// moments and counted separately.
pub fn summarize(records: &[RunRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::InvalidInput("no records to summarize".into()));
    }
    let mut groups: BTreeMap<(String, Algorithm), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.scenario.clone(), r.algorithm))
            .or_default()
            .push(r);
    }
    let mut out = Vec::new();
    for ((scenario, algorithm), rows) in groups {
        let ok: Vec<&&RunRecord> = rows.iter().filter(|r| r.status == "ok").collect();
        let mut hist = BTreeMap::new();
        for r in &ok {
            *hist.entry(r.k_hat).or_insert(0) += 1;
        }
        let rel: Vec<f64> = ok.iter().filter_map(|r| r.rel_error).collect();
        out.push(SummaryRow {
            scenario,
            algorithm,
            runs: rows.len(),
            failures: rows.len() - ok.len(),
            ari: Moments::of(&ok.iter().map(|r| r.ari).collect::<Vec<_>>()),
            rel_error_undefined: ok.iter().filter(|r| r.rel_error.is_none()).count(),
            rel_error: Moments::of(&rel),
            wall_time: Moments::of(&ok.iter().map(|r| r.wall_time_s).collect::<Vec<_>>()),
            k_hat_histogram: hist,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ari_identical_is_one() {
        let p = Partition::from_labels(vec![1, 1, 2, 2, 3]).unwrap();
        let q = Partition::from_labels(vec![3, 3, 1, 1, 2]).unwrap();
        assert_eq!(ari(&p, &p).unwrap(), 1.0);
        assert_eq!(ari(&p, &q).unwrap(), 1.0);
    }

    #[test]
    fn ari_known_negative_value() {
        let a = Partition::from_labels(vec![1, 1, 1, 2, 2, 2]).unwrap();
        let b = Partition::from_labels(vec![1, 1, 2, 1, 2, 2]).unwrap();
        assert!((ari(&a, &b).unwrap() + 1.0 / 9.0).abs() < 1e-9);
    }

    #[test]
    fn ari_singletons_is_zero() {
        let a = Partition::singletons(6);
        let b = Partition::from_labels(vec![1, 1, 1, 2, 2, 2]).unwrap();
        assert_eq!(ari(&a, &b).unwrap(), 0.0);
        assert_eq!(ari(&a, &Partition::singletons(6)).unwrap(), 1.0);
    }

    #[test]
    fn relative_error_rules() {
        assert_eq!(relative_error(0.4, 0.3), Some(0.25000000000000006));
        assert!((relative_error(0.4, 0.3).unwrap() - 0.25).abs() < 1e-12);
        assert!((relative_error(0.4, 0.5).unwrap() + 0.25).abs() < 1e-12);
        assert_eq!(relative_error(0.0, 0.7), None);
    }

    #[test]
    fn derive_seed_is_stable_and_distinct() {
        let a = derive_seed(42, "ScenA", 0, "irmm");
        let b = derive_seed(42, "ScenA", 0, "irmm");
        let c = derive_seed(42, "ScenA", 0, "lsr");
        let d = derive_seed(43, "ScenA", 0, "irmm");
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    fn tiny_config() -> ScenarioConfig {
        ScenarioConfig {
            scenario: "tiny".into(),
            replicates: 3,
            generator: ModelParams::Dchsbm(DchsbmParams {
                n: 30,
                k: 3,
                total_edges: Some(120),
                edges_per_size: None,
                p: vec![0.6, 0.6],
                seed: 0,
            }),
            algorithms: Algorithm::all(),
            cnm_max_steps: None,
        }
    }

    #[test]
    fn scenario_cardinality_and_reproducibility() {
        let cfg = tiny_config();
        let a = run_scenario(&cfg, 7, Some(1)).unwrap();
        assert_eq!(a.len(), 12);
        let b = run_scenario(&cfg, 7, Some(2)).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.seed, y.seed);
            assert_eq!(x.k_hat, y.k_hat);
            assert_eq!(x.ari.to_bits(), y.ari.to_bits());
            assert_eq!(x.q_hat.to_bits(), y.q_hat.to_bits());
        }
    }

    #[test]
    fn summarize_groups_and_flags() {
        let cfg = tiny_config();
        let records = run_scenario(&cfg, 7, Some(1)).unwrap();
        let summary = summarize(&records).unwrap();
        assert_eq!(summary.len(), 4);
        for row in &summary {
            assert_eq!(row.runs, 3);
            assert!(row.ari.mean.is_finite());
        }
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn config_parses_with_defaults() {
        let text = r#"{
            "scenario": "x",
            "generator": {"model": "dchsbm", "n": 30, "k": 3,
                          "total_edges": 100, "p": [0.5, 0.5]}
        }"#;
        let cfg = ScenarioConfig::from_json(text).unwrap();
        assert_eq!(cfg.replicates, 25);
        assert_eq!(cfg.algorithms.len(), 4);
    }
}
