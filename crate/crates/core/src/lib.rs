//! Monte Carlo model of uplink/downlink decoupled (DUDe) cell association in
//! two-tier cellular networks.
//!
//! The crate is `no_std` and only needs an allocator. It covers everything a
//! single Monte Carlo drop needs: sampling a Poisson deployment on a toroidal
//! window, building the large-scale channel, associating UEs in the downlink and
//! uplink, running co-channel uplink slots under fractional power control, and
//! pooling the per-UE statistics into a [`metrics::ScenarioReport`].
//!
//! File formats, the parallel drop runner and the command line live in the
//! `dude-sim` crate.
//!
//! ```
//! use dude_core::{config::NetworkConfig, uplink::{run_drop, Case}};
//!
//! let mut config = NetworkConfig::default();
//! config.window_side = 500.0;
//! config.slots_per_drop = 5;
//! let cases = [Case::coupled(0.0), Case::decoupled()];
//! let drop = run_drop(&config, 0, &cases).unwrap();
//! assert_eq!(drop.cases.len(), 2);
//! ```

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod association;
pub mod channel;
pub mod config;
pub mod error;
pub mod math;
pub mod metrics;
pub mod network;
pub mod rng;
pub mod uplink;

pub use error::{CoreError, Result};
