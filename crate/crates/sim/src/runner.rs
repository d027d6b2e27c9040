//! Parallel drop execution.
//!
//! Drops are independent: each one derives its randomness from
//! `(master_seed, drop_index)`. Workers return per-drop reports that are merged
//! in drop-index order, so the result does not depend on the worker count.

use dude_core::config::NetworkConfig;
use dude_core::metrics::ScenarioReport;
use dude_core::uplink::{run_drop, Case};
use rayon::prelude::*;

use crate::error::SimError;

/// Coupled baseline plus the configured policy, both at the configured bias.
pub fn default_cases(config: &NetworkConfig) -> Vec<Case> {
    vec![
        Case::coupled(config.small_bias_db),
        Case {
            ul_policy: config.ul_policy,
            small_bias_db: config.small_bias_db,
        },
    ]
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn run_cases(config: &NetworkConfig, cases: &[Case], workers: usize) -> Result<ScenarioReport, SimError> {
    config.validate().map_err(SimError::Validation)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
    let per_drop: Vec<ScenarioReport> = pool.install(|| {
        (0..u64::from(config.num_drops))
            .into_par_iter()
            .map(|drop_index| {
                let drop = run_drop(config, drop_index, cases)?;
                let mut one = ScenarioReport::new(cases);
                one.absorb(&drop);
                Ok(one)
            })
            .collect::<Result<_, _>>()
            .map_err(SimError::Runtime)
    })?;
    let mut report = ScenarioReport::new(cases);
    for r in &per_drop {
        report.merge(r);
    }
    Ok(report)
}

pub fn run_scenario(config: &NetworkConfig, workers: usize) -> Result<ScenarioReport, SimError> {
    run_cases(config, &default_cases(config), workers)
}
