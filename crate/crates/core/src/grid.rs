//! Periodic position grid and sampled wavefunctions.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::defaults::GRID_NORM_TOL;
use crate::error::{Error, Result};

/// Uniform periodic grid on `[-L/2, L/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    length: f64,
    points: usize,
}

impl Grid {
    pub fn new(length: f64, points: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Grid(format!("length must be finite and > 0, got {length}")));
        }
        if points < 2 || !points.is_power_of_two() {
            return Err(Error::Grid(format!("points must be a power of two >= 2, got {points}")));
        }
        Ok(Self { length, points })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dx(&self) -> f64 {
        self.length / self.points as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        -0.5 * self.length + j as f64 * self.dx()
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|j| self.x(j))
    }

    /// Wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.points as isize;
        let dk = 2.0 * std::f64::consts::PI / self.length;
        (0..n).map(|j| if j < n / 2 { j } else { j - n } as f64 * dk).collect()
    }

    /// Largest representable |k|.
    pub fn k_max(&self) -> f64 {
        std::f64::consts::PI / self.dx()
    }
}

/// In-place unnormalized forward DFT.
pub(crate) fn fft_forward(buf: &mut [Complex64]) {
    FftPlanner::new().plan_fft_forward(buf.len()).process(buf);
}

/// In-place inverse DFT including the `1/N` factor.
pub(crate) fn fft_inverse(buf: &mut [Complex64]) {
    let n = buf.len() as f64;
    FftPlanner::new().plan_fft_inverse(buf.len()).process(buf);
    for z in buf.iter_mut() {
        *z /= n;
    }
}

/// Wavefunction sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: Grid,
    hbar: f64,
    samples: Vec<Complex64>,
}

impl WaveFunction {
    pub fn new(grid: Grid, hbar: f64, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.points {
            return Err(Error::Grid(format!("expected {} samples, got {}", grid.points, samples.len())));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::Grid(format!("hbar must be > 0, got {hbar}")));
        }
        Ok(Self { grid, hbar, samples })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// `Σ|ψ|² dx`.
    pub fn norm_sqr(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > GRID_NORM_TOL {
            return Err(Error::Grid(format!("wavefunction not normalized (norm² = {n})")));
        }
        Ok(())
    }

    /// `(<x>, <x²>)` from the sampled density.
    pub fn position_moments(&self) -> (f64, f64) {
        let dx = self.grid.dx();
        let (mut m1, mut m2) = (0.0, 0.0);
        for (x, z) in self.grid.xs().zip(&self.samples) {
            let w = z.norm_sqr() * dx;
            m1 += w * x;
            m2 += w * x * x;
        }
        (m1, m2)
    }

    /// Discrete momentum amplitudes in FFT order (unnormalized DFT).
    pub fn momentum_amplitudes(&self) -> Vec<Complex64> {
        let mut buf = self.samples.clone();
        fft_forward(&mut buf);
        buf
    }

    /// Momentum probabilities in FFT order, summing to one.
    pub fn momentum_distribution(&self) -> Vec<f64> {
        let amps = self.momentum_amplitudes();
        let total: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        amps.iter().map(|z| z.norm_sqr() / total).collect()
    }

    /// `(<p>, <p²>)` from the momentum distribution.
    pub fn momentum_moments(&self) -> (f64, f64) {
        let (mut m1, mut m2) = (0.0, 0.0);
        for (k, w) in self.grid.wavenumbers().iter().zip(self.momentum_distribution()) {
            let p = self.hbar * k;
            m1 += w * p;
            m2 += w * p * p;
        }
        (m1, m2)
    }

    /// `-iħ ∂ψ/∂x` by spectral differentiation.
    pub fn apply_momentum(&self) -> Vec<Complex64> {
        let mut buf = self.momentum_amplitudes();
        for (z, k) in buf.iter_mut().zip(self.grid.wavenumbers()) {
            *z *= self.hbar * k;
        }
        fft_inverse(&mut buf);
        buf
    }

    pub(crate) fn with_samples(&self, samples: Vec<Complex64>) -> Self {
        Self { grid: self.grid, hbar: self.hbar, samples }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(Grid::new(10.0, 1000).is_err());
        assert!(Grid::new(-1.0, 1024).is_err());
        let g = Grid::new(8.0, 16).unwrap();
        assert_eq!(g.dx(), 0.5);
        assert_eq!(g.x(0), -4.0);
        let k = g.wavenumbers();
        assert_eq!(k[1], 2.0 * std::f64::consts::PI / 8.0);
        assert!(k[15] < 0.0);
    }

    #[test]
    fn fft_roundtrip() {
        let orig: Vec<Complex64> = (0..64).map(|j| Complex64::new(j as f64, -(j as f64).sin())).collect();
        let mut buf = orig.clone();
        fft_forward(&mut buf);
        fft_inverse(&mut buf);
        for (a, b) in orig.iter().zip(&buf) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn plane_wave_momentum() {
        let g = Grid::new(2.0 * std::f64::consts::PI, 64).unwrap();
        let amp = (1.0 / g.length()).sqrt();
        let s: Vec<Complex64> = g.xs().map(|x| Complex64::from_polar(amp, 3.0 * x)).collect();
        let wf = WaveFunction::new(g, 1.0, s).unwrap();
        let (p1, p2) = wf.momentum_moments();
        assert!((p1 - 3.0).abs() < 1e-12);
        assert!((p2 - 9.0).abs() < 1e-11);
        let pp = wf.apply_momentum();
        for (a, b) in pp.iter().zip(wf.samples()) {
            assert!((a - b * 3.0).norm() < 1e-12);
        }
    }
}
