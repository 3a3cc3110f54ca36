//! The photon-box weighing argument as executable arithmetic.
//!
//! Quantum indeterminacies (`Δ`, standard deviations of observables in a
//! state) and classical measurement uncertainties (`δ`, apparatus limits)
//! are kept in separate types throughout. The impulse relation `Δp < T g Δm`
//! is never assumed; it is evaluated as a claim and can be falsified.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{observables, variance, FockSpace, StateVector};
use crate::states::{coherent_auto, CoherentParams, TruncationPolicy};

/// Classical uncertainties of the weighing procedure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalUncertainties {
    /// δm, the weighing precision.
    pub delta_m: f64,
    /// δp, the residual momentum of the balance.
    pub delta_p: f64,
    /// δq, the imperceptible pointer displacement.
    pub delta_q: f64,
}

/// Constants, balancing interval and box oscillator for one debate run.
///
/// `balancing_time` is the interval of the weighing procedure. It is not the
/// emission-time spread of the escaping pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DebateScenario {
    pub hbar: f64,
    pub c: f64,
    pub g: f64,
    pub balancing_time: f64,
    pub mass: f64,
    pub omega: f64,
    pub classical: ClassicalUncertainties,
}

impl DebateScenario {
    /// All constants 1, classical uncertainties 1.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            g: 1.0,
            balancing_time: 1.0,
            mass: 1.0,
            omega: 1.0,
            classical: ClassicalUncertainties { delta_m: 1.0, delta_p: 1.0, delta_q: 1.0 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("hbar", self.hbar),
            ("c", self.c),
            ("g", self.g),
            ("balancing_time", self.balancing_time),
            ("mass", self.mass),
            ("omega", self.omega),
            ("delta_m", self.classical.delta_m),
            ("delta_p", self.classical.delta_p),
            ("delta_q", self.classical.delta_q),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Debate(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        Ok(())
    }

    /// `ω T`; the impulse law `δp = g δm T` needs this small.
    pub fn regime_indicator(&self) -> f64 {
        self.omega * self.balancing_time
    }

    pub fn box_space(&self, dim: usize) -> Result<FockSpace> {
        FockSpace::new(dim, self.mass, self.omega, self.hbar)
    }
}

/// `ΔE = Δm c²`.
pub fn mass_energy(delta_m: f64, c: f64) -> Result<f64> {
    if !(delta_m.is_finite() && c.is_finite()) || delta_m < 0.0 || c < 0.0 {
        return Err(Error::Debate(format!("mass_energy needs finite non-negative inputs, got ({delta_m}, {c})")));
    }
    Ok(delta_m * c * c)
}

/// Where the chain's Δm came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MassSource {
    /// The impulse relation taken at equality, `Δm = Δp/(T g)`.
    ImpulseEquality,
    /// The actual indeterminacy of a quantum state.
    Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainStep {
    pub relation: String,
    pub inputs: Vec<(String, f64)>,
    pub output: f64,
}

/// Every intermediate value of the chain from Δp Δq to ΔE ΔT.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainAudit {
    pub delta_p: f64,
    pub delta_q: f64,
    pub delta_m: f64,
    pub delta_e: f64,
    pub delta_t: f64,
    /// `ΔE ΔT`.
    pub product: f64,
    pub hbar: f64,
    /// `product ≥ ħ`.
    pub satisfied: bool,
    /// The strict form `Δp < T g Δm`.
    pub impulse_strict: bool,
    pub mass_source: MassSource,
    pub steps: Vec<ChainStep>,
}

fn check_chain_inputs(values: &[(&str, f64)]) -> Result<()> {
    for (name, v) in values {
        if !v.is_finite() || *v < 0.0 {
            return Err(Error::Debate(format!("{name} must be finite and >= 0, got {v}")));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn finish_chain(
    delta_p: f64,
    delta_q: f64,
    delta_m: f64,
    balancing_time: f64,
    g: f64,
    c: f64,
    hbar: f64,
    mass_source: MassSource,
    mut steps: Vec<ChainStep>,
) -> Result<ChainAudit> {
    let delta_e = mass_energy(delta_m, c)?;
    steps.push(ChainStep {
        relation: "mass_energy".into(),
        inputs: vec![("delta_m".into(), delta_m), ("c".into(), c)],
        output: delta_e,
    });
    let delta_t = g * balancing_time * delta_q / (c * c);
    steps.push(ChainStep {
        relation: "redshift".into(),
        inputs: vec![("g".into(), g), ("T".into(), balancing_time), ("delta_q".into(), delta_q), ("c".into(), c)],
        output: delta_t,
    });
    let product = delta_e * delta_t;
    steps.push(ChainStep {
        relation: "energy_time".into(),
        inputs: vec![("delta_E".into(), delta_e), ("delta_T".into(), delta_t)],
        output: product,
    });
    Ok(ChainAudit {
        delta_p,
        delta_q,
        delta_m,
        delta_e,
        delta_t,
        product,
        hbar,
        satisfied: product >= hbar,
        impulse_strict: delta_p < balancing_time * g * delta_m,
        mass_source,
        steps,
    })
}

/// Runs the chain with the impulse relation at equality. The product then reduces
/// algebraically to `Δp Δq`.
pub fn bohr_chain(delta_p: f64, delta_q: f64, balancing_time: f64, g: f64, c: f64, hbar: f64) -> Result<ChainAudit> {
    check_chain_inputs(&[("delta_p", delta_p), ("delta_q", delta_q), ("c", c), ("hbar", hbar)])?;
    if !(balancing_time.is_finite() && balancing_time > 0.0 && g.is_finite() && g > 0.0) {
        return Err(Error::Debate(format!("T and g must be > 0, got T = {balancing_time}, g = {g}")));
    }
    let mut steps = vec![ChainStep {
        relation: "position_momentum".into(),
        inputs: vec![("delta_p".into(), delta_p), ("delta_q".into(), delta_q)],
        output: delta_p * delta_q,
    }];
    let delta_m = delta_p / (balancing_time * g);
    steps.push(ChainStep {
        relation: "impulse".into(),
        inputs: vec![("delta_p".into(), delta_p), ("T".into(), balancing_time), ("g".into(), g)],
        output: delta_m,
    });
    finish_chain(delta_p, delta_q, delta_m, balancing_time, g, c, hbar, MassSource::ImpulseEquality, steps)
}

/// Runs the chain on a measured Δm instead of the impulse bound.
pub fn bohr_chain_measured(
    delta_p: f64,
    delta_q: f64,
    delta_m: f64,
    balancing_time: f64,
    g: f64,
    c: f64,
    hbar: f64,
) -> Result<ChainAudit> {
    check_chain_inputs(&[
        ("delta_p", delta_p),
        ("delta_q", delta_q),
        ("delta_m", delta_m),
        ("T", balancing_time),
        ("g", g),
        ("c", c),
        ("hbar", hbar),
    ])?;
    let steps = vec![ChainStep {
        relation: "position_momentum".into(),
        inputs: vec![("delta_p".into(), delta_p), ("delta_q".into(), delta_q)],
        output: delta_p * delta_q,
    }];
    finish_chain(delta_p, delta_q, delta_m, balancing_time, g, c, hbar, MassSource::Measured, steps)
}

/// `|α|* = (c²/Tg) sqrt(m/2ħω)`; coherent states below it violate the impulse relation.
pub fn counterexample_threshold(scenario: &DebateScenario) -> f64 {
    let s = scenario;
    s.c * s.c / (s.balancing_time * s.g) * (s.mass / (2.0 * s.hbar * s.omega)).sqrt()
}

/// One coherent amplitude tested against the impulse relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub abs_alpha: f64,
    pub dim: usize,
    pub tail_mass: f64,
    pub delta_p: f64,
    pub delta_q: f64,
    pub delta_e: f64,
    pub delta_m: f64,
    /// `T g Δm`.
    pub tg_delta_m: f64,
    /// `Δp > T g Δm`.
    pub violates_impulse: bool,
    /// Both indeterminacies agree with the closed forms within `closed_form_tol`.
    pub closed_form_agrees: bool,
    pub delta_p_closed: f64,
    pub delta_e_closed: f64,
    /// Chain run on this state's own Δp, Δq, Δm.
    pub chain: ChainAudit,
}

fn rel_close(value: f64, target: f64, tol: f64) -> bool {
    if target == 0.0 {
        value.abs() <= tol
    } else {
        ((value - target) / target).abs() <= tol
    }
}

/// Scans coherent amplitudes, computing Δp and ΔE numerically on a truncated space.
/// Records come back in input order.
pub fn counterexample_scan(
    scenario: &DebateScenario,
    alphas: &[Complex64],
    policy: &TruncationPolicy,
    closed_form_tol: f64,
) -> Result<Vec<ScanRecord>> {
    scenario.validate()?;
    alphas.iter().map(|&alpha| scan_one(scenario, alpha, policy, closed_form_tol)).collect()
}

fn scan_one(
    s: &DebateScenario,
    alpha: Complex64,
    policy: &TruncationPolicy,
    closed_form_tol: f64,
) -> Result<ScanRecord> {
    let state = coherent_auto(CoherentParams::new(alpha), s.mass, s.omega, s.hbar, policy)?;
    let obs = observables(state.space());
    let delta_p = variance(&state, &obs.p)?.sigma;
    let delta_q = variance(&state, &obs.x)?.sigma;
    let delta_e = variance(&state, &obs.hamiltonian)?.sigma;
    let delta_m = delta_e / (s.c * s.c);
    let tg_delta_m = s.balancing_time * s.g * delta_m;

    let delta_p_closed = state.space().momentum_scale();
    let delta_e_closed = s.hbar * s.omega * alpha.norm();
    let closed_form_agrees =
        rel_close(delta_p, delta_p_closed, closed_form_tol) && rel_close(delta_e, delta_e_closed, closed_form_tol);

    let chain = bohr_chain_measured(delta_p, delta_q, delta_m, s.balancing_time, s.g, s.c, s.hbar)?;
    Ok(ScanRecord {
        alpha_re: alpha.re,
        alpha_im: alpha.im,
        abs_alpha: alpha.norm(),
        dim: state.space().dim(),
        tail_mass: state.tail_mass(),
        delta_p,
        delta_q,
        delta_e,
        delta_m,
        tg_delta_m,
        violates_impulse: delta_p > tg_delta_m,
        closed_form_agrees,
        delta_p_closed,
        delta_e_closed,
        chain,
    })
}

/// Result of simulating the balance under a small extra weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeighResult {
    /// Momentum after `duration` from the symplectic integration.
    pub delta_p_sim: f64,
    /// `(g δm/ω) sin(ω duration)`.
    pub delta_p_exact: f64,
    /// `g δm duration`.
    pub delta_p_formula: f64,
    /// `|sim - formula| / formula`, zero when δm = 0.
    pub regime_error: f64,
    pub omega_duration: f64,
    /// `(ω duration)²/6`.
    pub regime_bound: f64,
    /// Largest relative drift of the undamped energy over the run.
    pub energy_drift: f64,
}

/// Integrates the undamped balance (mass m, frequency ω) started at rest in
/// equilibrium with an extra constant force `g δm`, using velocity Verlet.
pub fn weigh_impulse(scenario: &DebateScenario, duration: f64, steps: usize) -> Result<WeighResult> {
    if !(duration.is_finite() && duration > 0.0) {
        return Err(Error::Debate(format!("duration must be > 0, got {duration}")));
    }
    if steps < 1000 {
        return Err(Error::Debate(format!("steps must be >= 1000, got {steps}")));
    }
    let s = scenario;
    let delta_m = s.classical.delta_m;
    if !(delta_m.is_finite() && delta_m >= 0.0) {
        return Err(Error::Debate(format!("delta_m must be >= 0, got {delta_m}")));
    }
    let force = s.g * delta_m;
    let k = s.mass * s.omega * s.omega;
    let h = duration / steps as f64;
    let accel = |q: f64| (force - k * q) / s.mass;
    // energy relative to the new equilibrium q* = F/k, conserved by the exact flow
    let q_star = force / k;
    let energy = |q: f64, p: f64| p * p / (2.0 * s.mass) + 0.5 * k * (q - q_star) * (q - q_star);
    let e0 = energy(0.0, 0.0);

    let (mut q, mut p) = (0.0_f64, 0.0_f64);
    let mut a = accel(q);
    let mut drift = 0.0_f64;
    for _ in 0..steps {
        p += 0.5 * h * s.mass * a;
        q += h * p / s.mass;
        a = accel(q);
        p += 0.5 * h * s.mass * a;
        if e0 > 0.0 {
            drift = drift.max((energy(q, p) - e0).abs() / e0);
        }
    }

    let wt = s.omega * duration;
    let delta_p_formula = force * duration;
    let delta_p_exact = force / s.omega * wt.sin();
    let regime_error = if delta_p_formula == 0.0 { 0.0 } else { (p - delta_p_formula).abs() / delta_p_formula };
    Ok(WeighResult {
        delta_p_sim: p,
        delta_p_exact,
        delta_p_formula,
        regime_error,
        omega_duration: wt,
        regime_bound: wt * wt / 6.0,
        energy_drift: drift,
    })
}

/// Whether the box state's indeterminacies sit below the classical uncertainties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub quantum_delta_p: f64,
    pub quantum_delta_m: f64,
    pub classical_delta_p: f64,
    pub classical_delta_m: f64,
    /// `Δp < δp`.
    pub separated_p: bool,
    /// `Δm < δm`.
    pub separated_m: bool,
}

pub fn separation_check(scenario: &DebateScenario, state: &StateVector) -> Result<SeparationReport> {
    let space = state.space();
    if space.mass() != scenario.mass || space.omega() != scenario.omega || space.hbar() != scenario.hbar {
        return Err(Error::Debate("state is not on the scenario's box oscillator".into()));
    }
    let obs = observables(space);
    let quantum_delta_p = variance(state, &obs.p)?.sigma;
    let quantum_delta_m = variance(state, &obs.hamiltonian)?.sigma / (scenario.c * scenario.c);
    Ok(SeparationReport {
        quantum_delta_p,
        quantum_delta_m,
        classical_delta_p: scenario.classical.delta_p,
        classical_delta_m: scenario.classical.delta_m,
        separated_p: quantum_delta_p < scenario.classical.delta_p,
        separated_m: quantum_delta_m < scenario.classical.delta_m,
    })
}
