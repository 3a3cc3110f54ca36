//! State constructors: Fock states, coherent states, generic superpositions
//! and position-space Gaussian packets.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::defaults::{
    GRID_MARGIN_SIGMAS, GRID_RESOLUTION_SPACINGS, MAX_ABS_ALPHA, MAX_DIM, TAIL_LEVELS, TRUNCATION_BUDGET,
};
use crate::error::{Error, Result};
use crate::grid::{Grid, WaveFunction};
use crate::hilbert::{FockSpace, StateVector};

/// How coherent states are truncated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Largest probability allowed in the top [`TAIL_LEVELS`] levels and beyond.
    pub budget: f64,
    pub max_abs_alpha: f64,
    pub max_dim: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { budget: TRUNCATION_BUDGET, max_abs_alpha: MAX_ABS_ALPHA, max_dim: MAX_DIM }
    }
}

impl TruncationPolicy {
    /// Starting guess `ceil(|α|² + 10|α| + 20)`.
    pub fn initial_dim(abs_alpha: f64) -> usize {
        (abs_alpha * abs_alpha + 10.0 * abs_alpha + 20.0).ceil() as usize
    }

    /// Smallest dimension at or above the starting guess whose coherent tail
    /// fits the budget, ignoring `max_dim` and `max_abs_alpha`.
    pub fn required_dim(&self, abs_alpha: f64) -> usize {
        let lambda = abs_alpha * abs_alpha;
        let mut dim = Self::initial_dim(abs_alpha).max(TAIL_LEVELS + 1);
        while poisson_tail(lambda, dim - TAIL_LEVELS) >= self.budget {
            dim += 1;
        }
        dim
    }

    /// Dimension chosen for `alpha` under this policy.
    pub fn dimension_for(&self, alpha: Complex64) -> Result<usize> {
        let abs_alpha = alpha.norm();
        if !abs_alpha.is_finite() {
            return Err(Error::InvalidState(format!("non-finite alpha {alpha}")));
        }
        let dim = self.required_dim(abs_alpha);
        if abs_alpha > self.max_abs_alpha || dim > self.max_dim {
            return Err(Error::Truncation { abs_alpha, budget: self.budget, required_dim: dim });
        }
        Ok(dim)
    }
}

/// `Σ_{n ≥ from} e^{-λ} λⁿ/n!`, summed directly in log space.
pub fn poisson_tail(lambda: f64, from: usize) -> f64 {
    if lambda == 0.0 {
        return if from == 0 { 1.0 } else { 0.0 };
    }
    let ln_lambda = lambda.ln();
    let mut ln_fact = 0.0;
    for k in 1..=from {
        ln_fact += (k as f64).ln();
    }
    let mut sum = 0.0;
    let mut n = from;
    loop {
        let term = (-lambda + n as f64 * ln_lambda - ln_fact).exp();
        sum += term;
        if n as f64 > lambda && term <= sum * 1e-18 {
            break;
        }
        if n as f64 > lambda + 50.0 * lambda.sqrt() + 100.0 {
            break;
        }
        n += 1;
        ln_fact += (n as f64).ln();
    }
    sum
}

/// Coherent amplitude α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentParams {
    pub alpha: Complex64,
}

impl CoherentParams {
    pub fn new(alpha: Complex64) -> Self {
        Self { alpha }
    }

    pub fn from_polar(abs: f64, phase: f64) -> Self {
        Self { alpha: Complex64::from_polar(abs, phase) }
    }
}

/// Energy eigenstate `φ_n`.
pub fn fock(space: &FockSpace, n: usize) -> Result<StateVector> {
    if n >= space.dim() {
        return Err(Error::InvalidState(format!("Fock level {n} outside truncated space of dim {}", space.dim())));
    }
    let mut amps = DVector::from_element(space.dim(), Complex64::new(0.0, 0.0));
    amps[n] = Complex64::new(1.0, 0.0);
    StateVector::normalized(*space, amps, 0.0)
}

/// Unnormalized coherent-state series `e^{-|α|²/2} αⁿ/√n!` for `n < dim`,
/// built by the recurrence `c_{n+1} = c_n α/√(n+1)`.
pub fn coherent_series(alpha: Complex64, dim: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(dim);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..dim {
        out.push(c);
        c = c * alpha / ((n + 1) as f64).sqrt();
    }
    out
}

/// Coherent state on a given space, checked against the default budget.
pub fn coherent(space: &FockSpace, params: CoherentParams) -> Result<StateVector> {
    coherent_with_policy(space, params, &TruncationPolicy::default())
}

pub fn coherent_with_policy(
    space: &FockSpace,
    params: CoherentParams,
    policy: &TruncationPolicy,
) -> Result<StateVector> {
    let alpha = params.alpha;
    let abs_alpha = alpha.norm();
    if !abs_alpha.is_finite() {
        return Err(Error::InvalidState(format!("non-finite alpha {alpha}")));
    }
    let lambda = abs_alpha * abs_alpha;
    let dim = space.dim();
    let tail = poisson_tail(lambda, dim.saturating_sub(TAIL_LEVELS));
    if abs_alpha > policy.max_abs_alpha || tail >= policy.budget {
        return Err(Error::Truncation {
            abs_alpha,
            budget: policy.budget,
            required_dim: policy.required_dim(abs_alpha),
        });
    }
    let loss = poisson_tail(lambda, dim);
    StateVector::normalized(*space, DVector::from_vec(coherent_series(alpha, dim)), loss)
}

/// Coherent state on a space sized by the truncation policy.
pub fn coherent_auto(
    params: CoherentParams,
    mass: f64,
    omega: f64,
    hbar: f64,
    policy: &TruncationPolicy,
) -> Result<StateVector> {
    let dim = policy.dimension_for(params.alpha)?;
    let space = FockSpace::new(dim, mass, omega, hbar)?;
    coherent_with_policy(&space, params, policy)
}

/// Normalized superposition of Fock states.
pub fn superposition(space: &FockSpace, amps: &[Complex64]) -> Result<StateVector> {
    if amps.len() > space.dim() {
        return Err(Error::InvalidState(format!("{} amplitudes exceed truncated dim {}", amps.len(), space.dim())));
    }
    let mut full = vec![Complex64::new(0.0, 0.0); space.dim()];
    full[..amps.len()].copy_from_slice(amps);
    StateVector::from_amplitudes(*space, full)
}

/// Random normalized state supported on the lowest `levels` Fock levels,
/// with real and imaginary parts drawn uniformly from [-1, 1].
pub fn random_superposition<R: rand::Rng + ?Sized>(
    space: &FockSpace,
    levels: usize,
    rng: &mut R,
) -> Result<StateVector> {
    let levels = levels.min(space.dim());
    let amps: Vec<Complex64> =
        (0..levels).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    superposition(space, &amps)
}

/// Gaussian wave packet for free-particle evolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPacket {
    /// Initial position spread Δx(0).
    pub sigma: f64,
    pub x0: f64,
    pub p0: f64,
    pub mass: f64,
    pub hbar: f64,
    pub grid: Grid,
}

impl GaussianPacket {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("sigma", self.sigma), ("mass", self.mass), ("hbar", self.hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidState(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        if !(self.x0.is_finite() && self.p0.is_finite()) {
            return Err(Error::InvalidState("x0 and p0 must be finite".into()));
        }
        let dx = self.grid.dx();
        if self.sigma < GRID_RESOLUTION_SPACINGS * dx {
            return Err(Error::Grid(format!(
                "sigma {} under-resolved: needs >= {} grid spacings of {dx}",
                self.sigma, GRID_RESOLUTION_SPACINGS
            )));
        }
        let half = 0.5 * self.grid.length();
        let margin = GRID_MARGIN_SIGMAS * self.sigma;
        if self.x0 < -half + margin || self.x0 > half - margin {
            return Err(Error::Grid(format!(
                "packet at x0 = {} with sigma {} violates the {GRID_MARGIN_SIGMAS}σ boundary margin",
                self.x0, self.sigma
            )));
        }
        let k_extent = self.p0.abs() / self.hbar + GRID_MARGIN_SIGMAS / (2.0 * self.sigma);
        if k_extent > self.grid.k_max() {
            return Err(Error::Grid(format!(
                "momentum content up to k = {k_extent} exceeds grid k_max = {}",
                self.grid.k_max()
            )));
        }
        Ok(())
    }
}

/// Samples `exp(-(x-x0)²/4σ² + i p0 x/ħ)` and normalizes it on the grid.
pub fn gaussian_packet_state(packet: &GaussianPacket) -> Result<WaveFunction> {
    packet.validate()?;
    let g = packet.grid;
    let mut samples: Vec<Complex64> = g
        .xs()
        .map(|x| {
            let d = x - packet.x0;
            Complex64::from_polar((-d * d / (4.0 * packet.sigma * packet.sigma)).exp(), packet.p0 * x / packet.hbar)
        })
        .collect();
    let norm = (samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * g.dx()).sqrt();
    for z in samples.iter_mut() {
        *z /= norm;
    }
    WaveFunction::new(g, packet.hbar, samples)
}
