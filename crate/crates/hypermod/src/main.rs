//! Command-line interface over the library: evaluate modularity criteria,
//! cluster hypergraph files, generate synthetic instances, and run
//! benchmark scenarios.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hypermod::bench::{
    ari, run_scenario, summarize, write_csv, ScenarioConfig,
};
use hypermod::error::{Error, Result};
use hypermod::generate::{gen_dchsbm, gen_habcd, gen_hsbm};
use hypermod::hypergraph::{Hypergraph, Partition};
use hypermod::io::{read_hypergraph, read_partition, write_hypergraph, write_partition};
use hypermod::modularity::{
    estimate_aon_params, q_aon, q_strict, q_symmetric, q_wclique, q_wsc, WscSetting,
};
use hypermod::optimize::{
    aon_hmll, cnm_like, irmm, lsr, AonOptions, CnmOptions, IrmmOptions, LsrOptions,
    OptimizerResult,
};
use hypermod::presets;

#[derive(Parser)]
#[command(name = "hypermod", version, about = "Hypergraph modularity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Criterion {
    Wclique,
    Strict,
    WscStrict,
    WscMajority,
    WscLinear,
    Aon,
    Sym,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Irmm,
    Lsr,
    Cnm,
    Aon,
}

#[derive(Clone, Copy, ValueEnum)]
enum Wsc {
    Strict,
    Majority,
    Linear,
}

impl Wsc {
    fn setting(self) -> WscSetting {
        match self {
            Wsc::Strict => WscSetting::Strict,
            Wsc::Majority => WscSetting::Majority,
            Wsc::Linear => WscSetting::Linear,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Hsbm,
    Dchsbm,
    Habcd,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a modularity criterion on a hypergraph and partition.
    Modularity {
        #[arg(long, value_enum)]
        criterion: Criterion,
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Partition the AON parameters are estimated from (criteria `aon`
        /// and `sym`); defaults to the evaluated partition.
        #[arg(long)]
        init_partition: Option<PathBuf>,
    },
    /// Cluster a hypergraph with one of the optimizers.
    Cluster {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Step budget (CNM draws, or outer rounds for irmm/aon).
        #[arg(long)]
        max_steps: Option<usize>,
        /// Weighting for the lsr objective.
        #[arg(long, value_enum, default_value_t = Wsc::Linear)]
        wsc: Wsc,
        #[arg(long)]
        out: PathBuf,
        /// Append one JSON event per accepted step to this file.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Generate a synthetic hypergraph with its ground-truth partition.
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        /// Flat JSON file mirroring the model's parameter struct.
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        truth: PathBuf,
    },
    /// Run a benchmark scenario and write a results CSV.
    Bench {
        /// Built-in preset name or a path to a scenario JSON file.
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write records as JSON lines.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Adjusted Rand index between two partition files.
    Ari {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Summarize a results CSV per (scenario, algorithm).
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// List built-in scenario presets.
    Presets,
}

fn load_hypergraph(path: &PathBuf) -> Result<Hypergraph> {
    read_hypergraph(BufReader::new(File::open(path)?))
}

fn load_partition(path: &PathBuf) -> Result<Partition> {
    read_partition(BufReader::new(File::open(path)?))
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Modularity {
            criterion,
            hypergraph,
            partition,
            init_partition,
        } => {
            let h = load_hypergraph(&hypergraph)?;
            let p = load_partition(&partition)?;
            let aon_params = |init: &Option<PathBuf>| -> Result<_> {
                let init = match init {
                    Some(path) => load_partition(path)?,
                    None => p.clone(),
                };
                estimate_aon_params(&h, &init)
            };
            let value = match criterion {
                Criterion::Wclique => q_wclique(&h, &p)?,
                Criterion::Strict => q_strict(&h, &p)?,
                Criterion::WscStrict => q_wsc(&h, &p, &WscSetting::Strict)?,
                Criterion::WscMajority => q_wsc(&h, &p, &WscSetting::Majority)?,
                Criterion::WscLinear => q_wsc(&h, &p, &WscSetting::Linear)?,
                Criterion::Aon => q_aon(&h, &p, &aon_params(&init_partition)?)?,
                Criterion::Sym => {
                    let params = aon_params(&init_partition)?;
                    q_symmetric(&h, &p, params.affinity())?
                }
            };
            println!("{value}");
        }
        Command::Cluster {
            algo,
            hypergraph,
            seed,
            max_steps,
            wsc,
            out,
            log,
        } => {
            let h = load_hypergraph(&hypergraph)?;
            let result: OptimizerResult = match algo {
                Algo::Irmm => irmm(
                    &h,
                    &IrmmOptions {
                        seed,
                        max_outer: max_steps.unwrap_or(IrmmOptions::default().max_outer),
                        ..Default::default()
                    },
                )?,
                Algo::Lsr => {
                    let init = irmm(&h, &IrmmOptions { seed, ..Default::default() })?;
                    lsr(
                        &h,
                        &init.partition,
                        &wsc.setting(),
                        &LsrOptions { seed, ..Default::default() },
                    )?
                }
                Algo::Cnm => cnm_like(&h, &CnmOptions { max_steps, seed, ..Default::default() })?,
                Algo::Aon => aon_hmll(
                    &h,
                    &AonOptions {
                        seed,
                        max_outer: max_steps.unwrap_or(AonOptions::default().max_outer),
                        ..Default::default()
                    },
                )?,
            };
            write_partition(&result.partition, BufWriter::new(File::create(&out)?))?;
            if let Some(log_path) = log {
                let mut w = BufWriter::new(File::create(&log_path)?);
                for event in &result.events {
                    writeln!(w, "{}", serde_json::to_string(event)?)?;
                }
            }
            eprintln!(
                "objective {:.6} clusters {} iterations {} converged {}",
                result.objective,
                result.partition.k(),
                result.iterations,
                result.converged
            );
        }
        Command::Generate {
            model,
            config,
            seed,
            out,
            truth,
        } => {
            let text = std::fs::read_to_string(&config)?;
            let (h, p) = match model {
                Model::Hsbm => {
                    let mut params: hypermod::generate::HsbmParams =
                        serde_json::from_str(&text)?;
                    params.seed = seed;
                    gen_hsbm(&params)?
                }
                Model::Dchsbm => {
                    let mut params: hypermod::generate::DchsbmParams =
                        serde_json::from_str(&text)?;
                    params.seed = seed;
                    gen_dchsbm(&params)?
                }
                Model::Habcd => {
                    let mut params: hypermod::generate::HabcdParams =
                        serde_json::from_str(&text)?;
                    params.seed = seed;
                    gen_habcd(&params)?
                }
            };
            write_hypergraph(&h, BufWriter::new(File::create(&out)?))?;
            write_partition(&p, BufWriter::new(File::create(&truth)?))?;
        }
        Command::Bench {
            scenario,
            master_seed,
            out,
            json,
            jobs,
        } => {
            let config: ScenarioConfig = if presets::preset_names().contains(&scenario.as_str()) {
                presets::preset(&scenario)?
            } else {
                ScenarioConfig::from_json(&std::fs::read_to_string(&scenario)?)?
            };
            let records = run_scenario(&config, master_seed, jobs)?;
            write_csv(&records, BufWriter::new(File::create(&out)?))?;
            if let Some(json_path) = json {
                let mut w = BufWriter::new(File::create(&json_path)?);
                for r in &records {
                    writeln!(w, "{}", serde_json::to_string(r)?)?;
                }
            }
        }
        Command::Ari { a, b } => {
            let pa = load_partition(&a)?;
            let pb = load_partition(&b)?;
            println!("{}", ari(&pa, &pb)?);
        }
        Command::Summarize { input } => {
            let records = hypermod::bench::read_csv(BufReader::new(File::open(&input)?))?;
            for row in summarize(&records)? {
                println!(
                    "{} {} runs={} failures={} ari_mean={:.4} ari_sd={:.4} \
                     rel_err_mean={:.4} rel_err_undef={} time_mean={:.4}s k_hat={:?}",
                    row.scenario,
                    row.algorithm,
                    row.runs,
                    row.failures,
                    row.ari.mean,
                    row.ari.sd,
                    row.rel_error.mean,
                    row.rel_error_undefined,
                    row.wall_time.mean,
                    row.k_hat_histogram,
                );
            }
        }
        Command::Presets => {
            for name in presets::preset_names() {
                println!("{name}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::InvalidInput(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
