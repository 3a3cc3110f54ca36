//! Classical pulse envelopes and their time/frequency widths.
//!
//! A shutter held open for a time ΔT produces an envelope whose spectrum has
//! RMS width Δω ≥ 1/(2ΔT). Hard-edged (rectangular) gates have no finite RMS
//! bandwidth at all; that case is detected and flagged instead of reported
//! as a number.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::defaults::{PULSE_DIVERGENCE_GROWTH, PULSE_EDGE_RATIO};
use crate::error::{Error, Result};
use crate::grid::fft_forward;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseShape {
    /// `width` is the RMS duration of the intensity.
    Gaussian,
    /// `width` is the gate duration.
    Rectangular,
    /// Hann envelope `½(1 + cos(2πt/width))`; `width` is the full support.
    RaisedCosine,
}

impl PulseShape {
    fn min_width_samples(self) -> f64 {
        match self {
            PulseShape::Rectangular => 2.0,
            _ => 4.0,
        }
    }
}

/// Time grid: `points` samples spaced `dt`, starting at `t0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseGrid {
    pub points: usize,
    pub dt: f64,
    pub t0: f64,
}

impl PulseGrid {
    /// Grid centred on zero with `points` samples and spacing `dt`.
    pub fn centred(points: usize, dt: f64) -> Self {
        Self { points, dt, t0: -0.5 * points as f64 * dt }
    }
}

/// Unit-energy complex envelope on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSignal {
    shape: PulseShape,
    width: f64,
    samples: Vec<Complex64>,
    dt: f64,
    t0: f64,
}

impl PulseSignal {
    pub fn shape(&self) -> PulseShape {
        self.shape
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn time(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.dt
    }

    /// `Σ|f|² dt`.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.dt
    }

    /// Hard edges: the envelope does not vanish at its support boundary.
    pub fn has_hard_edges(&self) -> bool {
        self.shape == PulseShape::Rectangular
    }

    /// Circularly delays the envelope by `shift` samples.
    pub fn delayed(&self, shift: isize) -> Self {
        let mut samples = self.samples.clone();
        let n = samples.len() as isize;
        samples.rotate_right(shift.rem_euclid(n) as usize);
        Self { samples, ..self.clone() }
    }

    /// Multiplies the envelope by a global phase.
    pub fn with_phase(&self, phase: f64) -> Self {
        let rot = Complex64::from_polar(1.0, phase);
        Self { samples: self.samples.iter().map(|z| z * rot).collect(), ..self.clone() }
    }
}

pub fn make_pulse(shape: PulseShape, width: f64, grid: PulseGrid) -> Result<PulseSignal> {
    let PulseGrid { points, dt, t0 } = grid;
    if points < 8 || !points.is_power_of_two() {
        return Err(Error::Pulse(format!("grid points must be a power of two >= 8, got {points}")));
    }
    if !(dt.is_finite() && dt > 0.0) || !t0.is_finite() {
        return Err(Error::Pulse(format!("invalid grid spacing dt = {dt}, t0 = {t0}")));
    }
    if !(width.is_finite() && width >= shape.min_width_samples() * dt) {
        return Err(Error::Pulse(format!(
            "width {width} under-resolved: {shape:?} needs >= {} samples of dt = {dt}",
            shape.min_width_samples()
        )));
    }
    let span = points as f64 * dt;
    if shape != PulseShape::Gaussian && width >= span {
        return Err(Error::Pulse(format!("width {width} does not fit in grid span {span}")));
    }

    let mid = points / 2;
    let tc = t0 + mid as f64 * dt;
    let mut samples: Vec<f64> = match shape {
        PulseShape::Gaussian => (0..points)
            .map(|j| {
                let s = t0 + j as f64 * dt - tc;
                (-s * s / (4.0 * width * width)).exp()
            })
            .collect(),
        PulseShape::RaisedCosine => (0..points)
            .map(|j| {
                let s = t0 + j as f64 * dt - tc;
                if s.abs() < 0.5 * width {
                    0.5 * (1.0 + (2.0 * PI * s / width).cos())
                } else {
                    0.0
                }
            })
            .collect(),
        PulseShape::Rectangular => {
            let n = (width / dt).round() as usize;
            let start = mid - n / 2;
            (0..points).map(|j| if j >= start && j < start + n { 1.0 } else { 0.0 }).collect()
        }
    };

    let peak = samples.iter().cloned().fold(0.0, f64::max);
    if shape != PulseShape::Rectangular {
        let edge = samples[0].abs().max(samples[points - 1].abs());
        if edge >= PULSE_EDGE_RATIO * peak {
            return Err(Error::Pulse(format!("envelope not contained in grid: edge/peak = {:e}", edge / peak)));
        }
    }
    let norm = (samples.iter().map(|v| v * v).sum::<f64>() * dt).sqrt();
    for v in samples.iter_mut() {
        *v /= norm;
    }
    Ok(PulseSignal { shape, width, samples: samples.into_iter().map(|v| Complex64::new(v, 0.0)).collect(), dt, t0 })
}

/// Unitary continuous-normalization spectrum on an ascending angular-frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub omega: Vec<f64>,
    pub amplitude: Vec<Complex64>,
    pub d_omega: f64,
}

impl Spectrum {
    /// `Σ|F|² dω`.
    pub fn energy(&self) -> f64 {
        self.amplitude.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.d_omega
    }
}

/// `F(ω) = (dt/√2π) Σ f(t_j) e^{-iωt_j}` sampled at the DFT frequencies.
pub fn spectrum(pulse: &PulseSignal) -> Spectrum {
    let m = pulse.samples.len();
    let mut buf = pulse.samples.clone();
    fft_forward(&mut buf);
    let d_omega = 2.0 * PI / (m as f64 * pulse.dt);
    let scale = pulse.dt / (2.0 * PI).sqrt();
    let half = m / 2;
    let mut omega = Vec::with_capacity(m);
    let mut amplitude = Vec::with_capacity(m);
    for idx in (half..m).chain(0..half) {
        let k = if idx >= half { idx as f64 - m as f64 } else { idx as f64 };
        let w = k * d_omega;
        omega.push(w);
        amplitude.push(buf[idx] * scale * Complex64::from_polar(1.0, -w * pulse.t0));
    }
    Spectrum { omega, amplitude, d_omega }
}

/// RMS widths of a pulse in time and angular frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub delta_t: f64,
    pub delta_omega: f64,
    pub product: f64,
    /// `ħ Δω`.
    pub delta_e: f64,
    /// Set when Δω keeps growing as the band is widened.
    pub diverged: bool,
    /// Relative growth of Δω between the half band and the full band.
    pub bandwidth_growth: f64,
    /// `Σ|F|² dω`.
    pub spectral_energy: f64,
}

fn centred_rms(pairs: impl Iterator<Item = (f64, f64)> + Clone) -> f64 {
    let total: f64 = pairs.clone().map(|(_, w)| w).sum();
    let mean = pairs.clone().map(|(x, w)| x * w).sum::<f64>() / total;
    let var = pairs.map(|(x, w)| (x - mean) * (x - mean) * w).sum::<f64>() / total;
    var.max(0.0).sqrt()
}

pub fn rms_widths(pulse: &PulseSignal, hbar: f64) -> SpectralReport {
    let times = (0..pulse.samples.len()).map(|j| (pulse.time(j), pulse.samples[j].norm_sqr()));
    let delta_t = centred_rms(times);

    let spec = spectrum(pulse);
    let intensity: Vec<f64> = spec.amplitude.iter().map(|z| z.norm_sqr()).collect();
    let full = spec.omega.iter().cloned().zip(intensity.iter().cloned());
    let delta_omega = centred_rms(full.clone());
    let nyquist_half = 0.5 * spec.omega.iter().cloned().fold(0.0, |a: f64, w| a.max(w.abs()));
    let half_band = full.filter(move |(w, _)| w.abs() <= nyquist_half);
    let half_width = centred_rms(half_band);
    let bandwidth_growth = if half_width > 0.0 { delta_omega / half_width - 1.0 } else { 0.0 };

    SpectralReport {
        delta_t,
        delta_omega,
        product: delta_t * delta_omega,
        delta_e: hbar * delta_omega,
        diverged: bandwidth_growth > PULSE_DIVERGENCE_GROWTH,
        bandwidth_growth,
        spectral_energy: spec.energy(),
    }
}

/// Energy spread of the quanta making up a pulse, `ΔE = ħΔω`.
pub fn photon_energy_spread(report: &SpectralReport, hbar: f64) -> f64 {
    hbar * report.delta_omega
}

/// Time-energy product of a pulse against both customary thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyTimeCheck {
    pub delta_e: f64,
    pub delta_t: f64,
    pub product: f64,
    /// `ħ/2`, the RMS bound.
    pub rms_bound: f64,
    /// `ħ`, the order-of-magnitude form.
    pub order_bound: f64,
    /// `product ≥ ħ/2 - tol`; `None` when the bandwidth diverged.
    pub satisfies_rms_bound: Option<bool>,
}

pub fn energy_time_check(report: &SpectralReport, hbar: f64, tol: f64) -> EnergyTimeCheck {
    let delta_e = photon_energy_spread(report, hbar);
    let product = delta_e * report.delta_t;
    EnergyTimeCheck {
        delta_e,
        delta_t: report.delta_t,
        product,
        rms_bound: 0.5 * hbar,
        order_bound: hbar,
        satisfies_rms_bound: (!report.diverged).then_some(product >= 0.5 * hbar - tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_for(width: f64) -> PulseGrid {
        PulseGrid::centred(4096, width / 32.0)
    }

    #[test]
    fn gaussian_rms_duration() {
        let p = make_pulse(PulseShape::Gaussian, 1.0, PulseGrid::centred(4096, 1.0 / 64.0)).unwrap();
        assert!((p.energy() - 1.0).abs() < 1e-12);
        let r = rms_widths(&p, 1.0);
        assert!((r.delta_t - 1.0).abs() < 1e-6);
        assert!((r.delta_omega - 0.5).abs() < 1e-6);
        assert!((r.product - 0.5).abs() < 1e-6);
        assert!(!r.diverged);
    }

    #[test]
    fn rectangular_level_and_flag() {
        let p = make_pulse(PulseShape::Rectangular, 0.5, PulseGrid::centred(4096, 1.0 / 64.0)).unwrap();
        let level = 1.0 / 0.5_f64.sqrt();
        let on: Vec<_> = p.samples().iter().filter(|z| z.re > 0.0).collect();
        assert_eq!(on.len(), 32);
        assert!(on.iter().all(|z| (z.re - level).abs() < 1e-12));
        assert!(rms_widths(&p, 1.0).diverged);
    }

    #[test]
    fn raised_cosine_compact() {
        let p = make_pulse(PulseShape::RaisedCosine, 1.0, grid_for(1.0)).unwrap();
        let peak = p.samples().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let n = p.samples().len();
        assert!(p.samples()[0].norm() < 1e-8 * peak);
        assert!(p.samples()[n - 1].norm() < 1e-8 * peak);
        let r = rms_widths(&p, 1.0);
        assert!(!r.diverged);
        assert!(r.product >= 0.5);
        // Hann envelope, support w: Δω² = ∫|f'|²/∫|f|² = 4π²/(3w²)
        assert!((r.delta_omega - 2.0 * PI / 3.0_f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn parseval_all_shapes() {
        for shape in [PulseShape::Gaussian, PulseShape::Rectangular, PulseShape::RaisedCosine] {
            let p = make_pulse(shape, 0.7, grid_for(0.7)).unwrap();
            assert!((spectrum(&p).energy() - 1.0).abs() < 1e-10, "{shape:?}");
        }
    }

    #[test]
    fn sinc_first_zero() {
        let width = 0.5;
        let p = make_pulse(PulseShape::Rectangular, width, PulseGrid::centred(8192, width / 64.0)).unwrap();
        let s = spectrum(&p);
        let mags: Vec<(f64, f64)> = s.omega.iter().cloned().zip(s.amplitude.iter().map(|z| z.norm())).collect();
        let start = mags.iter().position(|(w, _)| *w > 0.0).unwrap();
        let first_min =
            (start + 1..mags.len() - 1).find(|&i| mags[i].1 <= mags[i - 1].1 && mags[i].1 <= mags[i + 1].1).unwrap();
        let expect = 2.0 * PI / width;
        assert!((mags[first_min].0 - expect).abs() <= s.d_omega, "{} vs {expect}", mags[first_min].0);
    }

    #[test]
    fn shift_and_phase_invariance() {
        for shape in [PulseShape::Gaussian, PulseShape::RaisedCosine] {
            let p = make_pulse(shape, 1.0, grid_for(1.0)).unwrap();
            let base = rms_widths(&p, 1.0);
            let a = spectrum(&p);
            let moved = p.delayed(100).with_phase(0.9);
            let b = spectrum(&moved);
            for (x, y) in a.amplitude.iter().zip(&b.amplitude) {
                assert!((x.norm() - y.norm()).abs() < 1e-12);
            }
            let r = rms_widths(&moved, 1.0);
            assert!((r.delta_t - base.delta_t).abs() < 1e-10);
            assert!((r.delta_omega - base.delta_omega).abs() < 1e-10);
        }
    }

    #[test]
    fn reciprocal_energy_spread() {
        let mut products = Vec::new();
        for width in [1.0, 0.1, 0.01] {
            let p = make_pulse(PulseShape::Gaussian, width, grid_for(width)).unwrap();
            let r = rms_widths(&p, 1.0);
            let de = photon_energy_spread(&r, 1.0);
            assert!((de - 0.5 / width).abs() < 1e-6 / width);
            products.push(de * r.delta_t);
        }
        for w in products.windows(2) {
            assert!((w[0] - w[1]).abs() < 1e-6);
        }
        let check = energy_time_check(
            &rms_widths(&make_pulse(PulseShape::Gaussian, 1.0, grid_for(1.0)).unwrap(), 1.0),
            1.0,
            1e-6,
        );
        assert_eq!(check.satisfies_rms_bound, Some(true));
        assert_eq!(check.order_bound, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(make_pulse(PulseShape::Gaussian, 0.03, PulseGrid::centred(4096, 0.01)).is_err());
        assert!(make_pulse(PulseShape::Rectangular, 0.015, PulseGrid::centred(4096, 0.01)).is_err());
        assert!(make_pulse(PulseShape::Rectangular, 0.02, PulseGrid::centred(4096, 0.01)).is_ok());
        // Gaussian too wide for the grid span
        assert!(make_pulse(PulseShape::Gaussian, 5.0, PulseGrid::centred(64, 0.5)).is_err());
        assert!(make_pulse(PulseShape::Gaussian, 1.0, PulseGrid::centred(1000, 0.01)).is_err());
    }
}
