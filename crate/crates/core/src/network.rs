//! Deployments: Poisson base-station tiers and uniform UEs on a square torus.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::config::NetworkConfig;
use crate::error::{CoreError, Result};
use crate::rng::{stream, Stream};

/// Resample budget when a drop happens to contain no base station at all.
pub const EMPTY_NETWORK_RETRIES: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Tier {
    Macro,
    Small,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseStation {
    pub position: Point,
    pub tier: Tier,
    pub tx_power_dbm: f64,
    pub bias_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub window_side: f64,
    pub bs_list: Vec<BaseStation>,
    pub ue_list: Vec<Point>,
}

impl Deployment {
    /// Build a deployment from explicit positions, copying tier powers and
    /// biases from `config`.
    pub fn from_positions(
        config: &NetworkConfig,
        bs: impl IntoIterator<Item = (Point, Tier)>,
        ue_list: Vec<Point>,
    ) -> Self {
        let bs_list = bs
            .into_iter()
            .map(|(position, tier)| tier_station(config, position, tier))
            .collect();
        Deployment {
            window_side: config.window_side,
            bs_list,
            ue_list,
        }
    }

    pub fn num_bs(&self) -> usize {
        self.bs_list.len()
    }

    pub fn num_ue(&self) -> usize {
        self.ue_list.len()
    }

    pub fn tier_count(&self, tier: Tier) -> usize {
        self.bs_list.iter().filter(|b| b.tier == tier).count()
    }

    /// Copy with the small-tier DL bias replaced. Positions and powers are kept.
    pub fn with_small_bias(&self, bias_db: f64) -> Self {
        let mut out = self.clone();
        for bs in out.bs_list.iter_mut().filter(|b| b.tier == Tier::Small) {
            bs.bias_db = bias_db;
        }
        out
    }
}

fn tier_station(config: &NetworkConfig, position: Point, tier: Tier) -> BaseStation {
    let (tx_power_dbm, bias_db) = match tier {
        Tier::Macro => (config.macro_power_dbm, 0.0),
        Tier::Small => (config.small_power_dbm, config.small_bias_db),
    };
    BaseStation {
        position,
        tier,
        tx_power_dbm,
        bias_db,
    }
}

fn poisson_count<R: Rng>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    // Poisson::new only fails for non-positive or non-finite means.
    let dist = Poisson::new(mean).expect("finite positive Poisson mean");
    dist.sample(rng) as usize
}

fn uniform_point<R: Rng>(side: f64, rng: &mut R) -> Point {
    Point::new(rng.random_range(0.0..side), rng.random_range(0.0..side))
}

/// Sample one deployment. Deterministic in `(config, drop_seed)`.
pub fn sample_deployment(config: &NetworkConfig, drop_seed: u64) -> Result<Deployment> {
    config.validate()?;
    let area = config.area_km2();
    let side = config.window_side;
    let num_ue = libm::round(config.ue_density * area) as usize;

    for attempt in 0..EMPTY_NETWORK_RETRIES {
        let mut rng = stream(drop_seed, Stream::Deployment, u64::from(attempt));
        let num_macro = poisson_count(config.macro_density * area, &mut rng);
        let num_small = poisson_count(config.small_density * area, &mut rng);
        if num_macro + num_small == 0 {
            continue;
        }
        let mut bs = Vec::with_capacity(num_macro + num_small);
        for _ in 0..num_macro {
            bs.push((uniform_point(side, &mut rng), Tier::Macro));
        }
        for _ in 0..num_small {
            bs.push((uniform_point(side, &mut rng), Tier::Small));
        }
        let ues = (0..num_ue).map(|_| uniform_point(side, &mut rng)).collect();
        return Ok(Deployment::from_positions(config, bs, ues));
    }
    Err(CoreError::EmptyNetwork {
        attempts: EMPTY_NETWORK_RETRIES,
    })
}

/// Euclidean distance with wrap-around on both axes.
pub fn toroidal_distance(p: Point, q: Point, window_side: f64) -> f64 {
    let wrap = |a: f64, b: f64| {
        let d = libm::fabs(a - b);
        d.min(window_side - d)
    };
    let dx = wrap(p.x, q.x);
    let dy = wrap(p.y, q.y);
    libm::sqrt(dx * dx + dy * dy)
}
