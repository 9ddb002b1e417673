//! The lights model: every vertex is a light, all start on. Each step an
//! on light goes off with probability 1/2, and an off light with at least
//! one lit neighbor comes back on with probability 1/2. A trial ends at the
//! first step after which every light is off.

use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, SplitMix64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpdateOrder {
    /// Every light reads the state before the step.
    Synchronous,
    /// Lights update one at a time in a fresh random order each step and
    /// see the changes already made within the step.
    #[default]
    SequentialRandom,
}

impl UpdateOrder {
    pub fn id(self) -> &'static str {
        match self {
            UpdateOrder::Synchronous => "synchronous",
            UpdateOrder::SequentialRandom => "sequential-random",
        }
    }
}

impl FromStr for UpdateOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [UpdateOrder::Synchronous, UpdateOrder::SequentialRandom]
            .into_iter()
            .find(|o| o.id() == s)
            .ok_or_else(|| Error::Unknown { kind: "update order", name: s.to_string() })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomeostasisConfig {
    pub trials: u64,
    pub seed: u64,
    pub order: UpdateOrder,
    pub workers: usize,
    /// Trials still running after this many steps stop and count as this many.
    pub max_steps: u64,
}

impl Default for HomeostasisConfig {
    fn default() -> Self {
        Self { trials: 10_000, seed: 0, order: UpdateOrder::default(), workers: 1, max_steps: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomeostasisStats {
    pub mean_steps: f64,
    pub trials: u64,
    /// Trials cut off at `max_steps`.
    pub capped: u64,
    pub seed: u64,
    pub order: UpdateOrder,
}

/// Mean settle time with the default configuration apart from `trials`
/// and `seed`.
pub fn simulate_homeostasis(g: &Graph, trials: u64, seed: u64) -> Result<HomeostasisStats> {
    simulate_homeostasis_with(g, &HomeostasisConfig { trials, seed, ..Default::default() })
}

pub fn simulate_homeostasis_with(g: &Graph, cfg: &HomeostasisConfig) -> Result<HomeostasisStats> {
    if cfg.trials == 0 || cfg.workers == 0 || cfg.max_steps == 0 {
        return Err(Error::InvalidArgument("trials, workers and max_steps must be positive".into()));
    }
    let workers = cfg.workers as u64;
    let parts: Vec<(u64, u64)> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = SplitMix64::new(derive_seed(cfg.seed, w));
            let count = cfg.trials / workers + u64::from(w < cfg.trials % workers);
            let (mut sum, mut capped) = (0, 0);
            for _ in 0..count {
                let steps = trial(g, cfg.order, cfg.max_steps, &mut rng);
                sum += steps;
                capped += u64::from(steps == cfg.max_steps);
            }
            (sum, capped)
        })
        .collect();
    let sum: u64 = parts.iter().map(|p| p.0).sum();
    Ok(HomeostasisStats {
        mean_steps: sum as f64 / cfg.trials as f64,
        trials: cfg.trials,
        capped: parts.iter().map(|p| p.1).sum(),
        seed: cfg.seed,
        order: cfg.order,
    })
}

fn trial(g: &Graph, order: UpdateOrder, max_steps: u64, rng: &mut SplitMix64) -> u64 {
    let m = g.vertex_count();
    if m == 0 {
        return 0;
    }
    let mut on = vec![true; m];
    let mut lit = m;
    let mut next = vec![false; m];
    let mut perm: Vec<usize> = (0..m).collect();
    for step in 1..=max_steps {
        match order {
            UpdateOrder::Synchronous => {
                for v in 0..m {
                    next[v] = if on[v] { !rng.coin() } else { g.neighbors(v).iter().any(|&u| on[u]) && rng.coin() };
                }
                std::mem::swap(&mut on, &mut next);
                lit = on.iter().filter(|&&x| x).count();
            }
            UpdateOrder::SequentialRandom => {
                rng.shuffle(&mut perm);
                for &v in &perm {
                    if on[v] {
                        if rng.coin() {
                            on[v] = false;
                            lit -= 1;
                        }
                    } else if g.neighbors(v).iter().any(|&u| on[u]) && rng.coin() {
                        on[v] = true;
                        lit += 1;
                    }
                }
            }
        }
        if lit == 0 {
            return step;
        }
    }
    max_steps
}
