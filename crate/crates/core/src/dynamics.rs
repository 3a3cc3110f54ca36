//! Time evolution: oscillator rotation of coherent amplitudes and exact
//! free-particle propagation of sampled packets, plus the analytic law for
//! the growth of the position spread.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::defaults::GRID_MARGIN_SIGMAS;
use crate::error::{Error, Result};
use crate::grid::{fft_forward, fft_inverse, WaveFunction};

/// `α e^{-iωt}`.
pub fn evolve_coherent(alpha: Complex64, omega: f64, t: f64) -> Complex64 {
    alpha * Complex64::from_polar(1.0, -omega * t)
}

/// Initial-time moments entering the spreading law
/// `Δ²x(t) = Δ²x(0) + (<xv+vx> - 2<x><v>) t + c₂ t²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpreadCoefficients {
    pub mean_x: f64,
    pub mean_v: f64,
    pub var_x0: f64,
    /// `<xv+vx> - 2<x><v>`.
    pub cross: f64,
    pub var_v: f64,
    /// `<v²>`.
    pub raw_second_v: f64,
}

/// Which t² coefficient the spreading law uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpreadMode {
    /// `Δ²v`; exact for free evolution.
    #[default]
    Variance,
    /// `<v²>`, the coefficient as literally written. Exceeds the true spread
    /// by `<v>²t²` under the radical.
    Raw,
}

pub fn spread_coefficients(state: &WaveFunction, mass: f64) -> Result<SpreadCoefficients> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::Dynamics(format!("mass must be > 0, got {mass}")));
    }
    state.require_normalized()?;
    let (mean_x, second_x) = state.position_moments();
    let (mean_p, second_p) = state.momentum_moments();
    let mean_v = mean_p / mass;
    let raw_second_v = second_p / (mass * mass);

    // <xv + vx> = 2 Re <xψ|vψ>
    let p_psi = state.apply_momentum();
    let dx = state.grid().dx();
    let overlap: f64 = state
        .grid()
        .xs()
        .zip(state.samples())
        .zip(&p_psi)
        .map(|((x, psi), ppsi)| (psi.conj() * x * ppsi).re)
        .sum::<f64>()
        * dx;
    let symmetrized = 2.0 * overlap / mass;

    Ok(SpreadCoefficients {
        mean_x,
        mean_v,
        var_x0: (second_x - mean_x * mean_x).max(0.0),
        cross: symmetrized - 2.0 * mean_x * mean_v,
        var_v: (raw_second_v - mean_v * mean_v).max(0.0),
        raw_second_v,
    })
}

/// Radicand of the spreading law, `Δ²x(t)`.
pub fn spread_radicand(coeffs: &SpreadCoefficients, t: f64, mode: SpreadMode) -> f64 {
    let c2 = match mode {
        SpreadMode::Variance => coeffs.var_v,
        SpreadMode::Raw => coeffs.raw_second_v,
    };
    coeffs.var_x0 + coeffs.cross * t + c2 * t * t
}

/// `Δx(t)` from the spreading law.
pub fn spread_analytic(coeffs: &SpreadCoefficients, t: f64, mode: SpreadMode) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Dynamics(format!("t must be finite and >= 0, got {t}")));
    }
    let r = spread_radicand(coeffs, t, mode);
    if r < 0.0 {
        return Err(Error::Dynamics(format!("negative radicand {r:e} at t = {t}: inconsistent spread coefficients")));
    }
    Ok(r.sqrt())
}

/// Exact free evolution: multiplies momentum amplitudes by `e^{-iħk²t/2m}`.
pub fn free_propagate(state: &WaveFunction, mass: f64, t: f64) -> Result<WaveFunction> {
    if !t.is_finite() {
        return Err(Error::Dynamics(format!("non-finite time {t}")));
    }
    let coeffs = spread_coefficients(state, mass)?;
    let centre = coeffs.mean_x + coeffs.mean_v * t;
    let width = spread_radicand(&coeffs, t, SpreadMode::Variance).max(0.0).sqrt();
    let half = 0.5 * state.grid().length();
    let reach = GRID_MARGIN_SIGMAS * width;
    if centre - reach < -half || centre + reach > half {
        return Err(Error::Dynamics(format!(
            "packet reaches the grid boundary by t = {t} (centre {centre}, spread {width}, half-length {half})"
        )));
    }
    if t == 0.0 {
        return Ok(state.clone());
    }

    let hbar = state.hbar();
    let mut buf = state.samples().to_vec();
    fft_forward(&mut buf);
    for (z, k) in buf.iter_mut().zip(state.grid().wavenumbers()) {
        *z *= Complex64::from_polar(1.0, -hbar * k * k * t / (2.0 * mass));
    }
    fft_inverse(&mut buf);
    Ok(state.with_samples(buf))
}

/// Position spread measured directly on the sampled density.
pub fn grid_spread(state: &WaveFunction) -> f64 {
    let (m1, m2) = state.position_moments();
    (m2 - m1 * m1).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::states::{gaussian_packet_state, GaussianPacket};
    use std::f64::consts::PI;

    fn packet(sigma: f64, x0: f64, p0: f64) -> WaveFunction {
        gaussian_packet_state(&GaussianPacket {
            sigma,
            x0,
            p0,
            mass: 1.0,
            hbar: 1.0,
            grid: Grid::new(256.0, 4096).unwrap(),
        })
        .unwrap()
    }

    #[test]
    fn coherent_rotation() {
        let a = Complex64::new(0.3, -1.1);
        assert_eq!(evolve_coherent(a, 2.0, 0.0), a);
        assert!((evolve_coherent(Complex64::new(1.0, 0.0), 1.0, PI) + 1.0).norm() < 1e-12);
        assert!((evolve_coherent(a, 0.7, 13.0).norm() - a.norm()).abs() < 1e-15);
    }

    #[test]
    fn minimal_packet_coefficients() {
        let c = spread_coefficients(&packet(1.0, 0.0, 0.0), 1.0).unwrap();
        assert!(c.cross.abs() < 1e-10);
        assert!((c.var_v - 0.25).abs() < 1e-10);
        assert!((c.var_x0 - 1.0).abs() < 1e-10);

        let b = spread_coefficients(&packet(1.0, 0.0, 3.0), 1.0).unwrap();
        assert!((b.var_v - 0.25).abs() < 1e-9);
        assert!((b.raw_second_v - 9.25).abs() < 1e-9);
        assert!((b.var_v - (b.raw_second_v - b.mean_v * b.mean_v)).abs() < 1e-10);

        let wide = spread_coefficients(&packet(2.0, 0.0, 0.0), 1.0).unwrap();
        assert!((wide.var_x0 - 4.0).abs() < 1e-6);
    }

    #[test]
    fn analytic_modes() {
        let c = spread_coefficients(&packet(1.0, 0.0, 0.0), 1.0).unwrap();
        for mode in [SpreadMode::Variance, SpreadMode::Raw] {
            assert!((spread_analytic(&c, 0.0, mode).unwrap() - 1.0).abs() < 1e-10);
            let t = 3.0;
            let closed = (1.0 + t * t / 4.0_f64).sqrt();
            assert!((spread_analytic(&c, t, mode).unwrap() - closed).abs() < 1e-9);
        }
        assert!(spread_analytic(&c, -1.0, SpreadMode::Variance).is_err());
        let bad = SpreadCoefficients { cross: -10.0, ..c };
        assert!(matches!(spread_analytic(&bad, 1.0, SpreadMode::Variance), Err(Error::Dynamics(_))));
    }

    #[test]
    fn propagation_matches_closed_form() {
        let wf = packet(1.0, 0.0, 0.0);
        assert_eq!(free_propagate(&wf, 1.0, 0.0).unwrap(), wf);
        let later = free_propagate(&wf, 1.0, 2.0).unwrap();
        assert!((grid_spread(&later) - 2.0_f64.sqrt()).abs() < 1e-6);
        assert!((later.norm_sqr() - 1.0).abs() < 1e-12);

        let moving = packet(1.0, 0.0, 3.0);
        let drifted = free_propagate(&moving, 1.0, 0.5).unwrap();
        assert!((drifted.position_moments().0 - 1.5).abs() < 1e-6);
        let before = moving.momentum_distribution();
        let after = drifted.momentum_distribution();
        let worst = before.iter().zip(&after).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-10);
    }

    #[test]
    fn boosted_packet_raw_mode_overshoots() {
        let wf = packet(1.0, -20.0, 3.0);
        let c = spread_coefficients(&wf, 1.0).unwrap();
        let truth = grid_spread(&free_propagate(&wf, 1.0, 1.0).unwrap());
        let var_mode = spread_analytic(&c, 1.0, SpreadMode::Variance).unwrap();
        let raw_mode = spread_analytic(&c, 1.0, SpreadMode::Raw).unwrap();
        assert!((var_mode - truth).abs() / truth < 1e-6);
        assert!(raw_mode > truth + 1.0);
    }

    #[test]
    fn boundary_guard() {
        let wf = packet(1.0, 100.0, 3.0);
        assert!(matches!(free_propagate(&wf, 1.0, 10.0), Err(Error::Dynamics(_))));
    }

    #[test]
    fn rejects_unnormalized() {
        let wf = packet(1.0, 0.0, 0.0);
        let doubled: Vec<Complex64> = wf.samples().iter().map(|z| z * 2.0).collect();
        let bad = WaveFunction::new(*wf.grid(), 1.0, doubled).unwrap();
        assert!(spread_coefficients(&bad, 1.0).is_err());
    }
}
