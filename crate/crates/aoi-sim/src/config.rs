use aoi_models::Scheme;
use serde::{Deserialize, Serialize};

use crate::error::SimError;

/// Run configuration: discipline, RNG seed, and horizon/estimation knobs.
///
/// The horizon is counted in events, not simulated time, so the run length
/// is known up front regardless of the rates. The first
/// `warmup_fraction · max_events` events are discarded as transient; the
/// remainder is split into `batches` contiguous batches for the batch-means
/// confidence interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub scheme: Scheme,
    pub seed: u64,
    pub max_events: u64,
    pub warmup_fraction: f64,
    pub batches: usize,
}

impl SimConfig {
    pub const DEFAULT_WARMUP_FRACTION: f64 = 0.05;
    pub const DEFAULT_BATCHES: usize = 20;

    /// A config with the default warmup fraction (0.05) and batch count (20).
    pub fn new(scheme: Scheme, seed: u64, max_events: u64) -> Self {
        Self {
            scheme,
            seed,
            max_events,
            warmup_fraction: Self::DEFAULT_WARMUP_FRACTION,
            batches: Self::DEFAULT_BATCHES,
        }
    }

    pub fn with_warmup_fraction(mut self, warmup_fraction: f64) -> Self {
        self.warmup_fraction = warmup_fraction;
        self
    }

    pub fn with_batches(mut self, batches: usize) -> Self {
        self.batches = batches;
        self
    }

    /// Checks the estimation invariants: at least two batches (a one-batch
    /// run has no variance estimate), at least ten events per batch, and a
    /// warmup fraction strictly below one.
    pub fn validate(&self) -> Result<(), SimError> {
        if self.batches < 2 {
            return Err(SimError::InvalidConfig(format!(
                "batches must be at least 2, got {}",
                self.batches
            )));
        }
        let min_events = 10 * self.batches as u64;
        if self.max_events < min_events {
            return Err(SimError::InvalidConfig(format!(
                "max_events must be at least 10*batches = {min_events}, got {}",
                self.max_events
            )));
        }
        if !(0.0..1.0).contains(&self.warmup_fraction) {
            return Err(SimError::InvalidConfig(format!(
                "warmup_fraction must lie in [0, 1), got {}",
                self.warmup_fraction
            )));
        }
        let recorded = self.max_events - self.warmup_events();
        if recorded < self.batches as u64 {
            return Err(SimError::InvalidConfig(format!(
                "only {recorded} events remain after warmup, fewer than the {} batches",
                self.batches
            )));
        }
        Ok(())
    }

    /// Number of leading events discarded as warmup.
    pub fn warmup_events(&self) -> u64 {
        (self.warmup_fraction * self.max_events as f64).floor() as u64
    }
}
