//! Heuristic maximizers for the hypergraph modularity criteria.
//!
//! Four algorithms share a common result shape:
//! [`irmm`] (iteratively reweighted clique-Louvain, objective `q_wclique`),
//! [`lsr`] (single-node moves on `q_wsc`), [`cnm_like`] (random-edge cluster
//! merges on `q_strict`), and [`aon_hmll`] (node moves plus cluster merges on
//! `q_aon`). All are deterministic for a fixed seed; each accepted move
//! strictly increases its objective.

mod aon;
mod cnm;
mod irmm;
mod lsr;

pub use aon::{aon_hmll, aon_hmll_with_params, AonOptions, AonStart};
pub use cnm::{cnm_like, CnmOptions};
pub use irmm::{irmm, IrmmOptions};
pub use lsr::{lsr, LsrOptions};

pub use crate::louvain::louvain;

use serde::Serialize;

use crate::hypergraph::Partition;

/// What happened at one accepted step of an optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// A single node changed cluster.
    Move,
    /// Two or more clusters merged.
    Merge,
    /// One outer round (e.g. a full Louvain pass) completed.
    Outer,
}

/// One entry of an optimizer's event log.
#[derive(Debug, Clone, Serialize)]
pub struct Event {
    pub step: usize,
    pub kind: EventKind,
    /// Objective value after the step.
    pub objective: f64,
}

/// Outcome of an optimizer run.
#[derive(Debug, Clone)]
pub struct OptimizerResult {
    pub partition: Partition,
    /// Final criterion value, re-evaluated from scratch on `partition`.
    pub objective: f64,
    /// Outer iterations (sweeps or rounds) executed.
    pub iterations: usize,
    /// Wall-clock seconds for the run.
    pub wall_time: f64,
    /// Seed the run was started with.
    pub seed: u64,
    /// False when the iteration budget ran out before a fixed point.
    pub converged: bool,
    /// Accepted steps in order; objectives are non-decreasing per phase.
    pub events: Vec<Event>,
}
