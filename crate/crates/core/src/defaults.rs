//! Every numeric default used by the engine and the scenario runner.
//!
//! Scenario files can override the fields of [`Defaults`] through their
//! `[defaults]` table; the constants below are the baseline values.

use serde::{Deserialize, Serialize};

/// Probability mass allowed in the top five Fock levels of a constructed state.
pub const TRUNCATION_BUDGET: f64 = 1e-12;
/// Largest coherent amplitude accepted by the automatic truncation policy.
pub const MAX_ABS_ALPHA: f64 = 12.0;
/// Upper limit on the automatically grown truncation dimension.
pub const MAX_DIM: usize = 512;
/// Number of top Fock levels counted as the truncation tail.
pub const TAIL_LEVELS: usize = 5;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-12;
/// Normalization slack accepted for sampled wavefunctions handed to moment routines.
pub const GRID_NORM_TOL: f64 = 1e-10;

/// Spatial grid for free-particle packets.
pub const GRID_LENGTH: f64 = 256.0;
pub const GRID_POINTS: usize = 4096;
/// Packets must stay this many standard deviations away from the grid edge.
pub const GRID_MARGIN_SIGMAS: f64 = 6.0;
/// Minimum number of grid spacings per packet standard deviation.
pub const GRID_RESOLUTION_SPACINGS: f64 = 4.0;

pub const PULSE_POINTS: usize = 4096;
/// Pulse sample spacing is `width / PULSE_SAMPLES_PER_WIDTH` when the runner picks the grid.
pub const PULSE_SAMPLES_PER_WIDTH: f64 = 32.0;
/// Edge amplitude allowed relative to the peak for compactly supported pulses.
pub const PULSE_EDGE_RATIO: f64 = 1e-8;
/// RMS bandwidth growth (when the band is doubled) that marks divergence.
pub const PULSE_DIVERGENCE_GROWTH: f64 = 0.10;

pub const WEIGH_STEPS: usize = 10_000;
pub const SEED: u64 = 0x5EED_1930;

/// Overridable defaults carried by a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Defaults {
    pub truncation_budget: f64,
    pub max_abs_alpha: f64,
    pub max_dim: usize,
    pub grid_length: f64,
    pub grid_points: usize,
    pub pulse_points: usize,
    pub pulse_samples_per_width: f64,
    pub weigh_steps: usize,
    pub seed: u64,
    /// Relative tolerance for closed-form agreement checks.
    pub closed_form_rel_tol: f64,
    /// Absolute slack on indeterminacy lower bounds.
    pub robertson_tol: f64,
    /// Relative tolerance for the free-propagation oracle comparison.
    pub oracle_rel_tol: f64,
    /// Tolerance on time-bandwidth products.
    pub duality_tol: f64,
}

impl Default for Defaults {
    fn default() -> Self {
        Self {
            truncation_budget: TRUNCATION_BUDGET,
            max_abs_alpha: MAX_ABS_ALPHA,
            max_dim: MAX_DIM,
            grid_length: GRID_LENGTH,
            grid_points: GRID_POINTS,
            pulse_points: PULSE_POINTS,
            pulse_samples_per_width: PULSE_SAMPLES_PER_WIDTH,
            weigh_steps: WEIGH_STEPS,
            seed: SEED,
            closed_form_rel_tol: 1e-8,
            robertson_tol: 1e-9,
            oracle_rel_tol: 1e-6,
            duality_tol: 1e-6,
        }
    }
}

impl Defaults {
    pub fn truncation_policy(&self) -> crate::states::TruncationPolicy {
        crate::states::TruncationPolicy {
            budget: self.truncation_budget,
            max_abs_alpha: self.max_abs_alpha,
            max_dim: self.max_dim,
        }
    }
}
