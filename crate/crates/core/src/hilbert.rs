//! Truncated Fock-space linear algebra for a single oscillator mode.
//!
//! All matrices are dense and indexed by Fock level. Indeterminacies are
//! standard deviations, `ΔA = sqrt(<A²> - <A>²)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::defaults::{HERMITIAN_TOL, NORM_TOL, TAIL_LEVELS};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Truncation dimension plus the oscillator parameters of the box model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockSpace {
    dim: usize,
    mass: f64,
    omega: f64,
    hbar: f64,
}

impl FockSpace {
    pub fn new(dim: usize, mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidSpace(format!("dim must be >= 2, got {dim}")));
        }
        for (name, v) in [("mass", mass), ("omega", omega), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidSpace(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        Ok(Self { dim, mass, omega, hbar })
    }

    /// Natural units: m = ω = ħ = 1.
    pub fn natural(dim: usize) -> Result<Self> {
        Self::new(dim, 1.0, 1.0, 1.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Same oscillator with a different truncation.
    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(dim, self.mass, self.omega, self.hbar)
    }

    /// Ground-state position spread `sqrt(ħ/2mω)`.
    pub fn position_scale(&self) -> f64 {
        (self.hbar / (2.0 * self.mass * self.omega)).sqrt()
    }

    /// Ground-state momentum spread `sqrt(ħmω/2)`.
    pub fn momentum_scale(&self) -> f64 {
        (self.hbar * self.mass * self.omega / 2.0).sqrt()
    }

    fn check_same(&self, other: &FockSpace) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self != other {
            return Err(Error::InvalidSpace("operands built on different oscillator parameters".into()));
        }
        Ok(())
    }
}

/// Complex amplitudes over the Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: FockSpace,
    amps: DVector<Complex64>,
    truncation_loss: f64,
}

impl StateVector {
    /// Normalizes `amps` onto `space`. Fails on a length mismatch or a zero vector.
    pub fn from_amplitudes(space: FockSpace, amps: Vec<Complex64>) -> Result<Self> {
        Self::normalized(space, DVector::from_vec(amps), 0.0)
    }

    pub(crate) fn normalized(space: FockSpace, mut amps: DVector<Complex64>, truncation_loss: f64) -> Result<Self> {
        if amps.len() != space.dim {
            return Err(Error::DimensionMismatch { expected: space.dim, found: amps.len() });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let norm = amps.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector cannot be normalized".into()));
        }
        amps.unscale_mut(norm);
        Ok(Self { space, amps, truncation_loss })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOL
    }

    /// Probability in the top [`TAIL_LEVELS`] Fock levels.
    pub fn tail_mass(&self) -> f64 {
        let start = self.space.dim.saturating_sub(TAIL_LEVELS);
        self.amps.iter().skip(start).map(|a| a.norm_sqr()).sum()
    }

    /// Probability removed by truncation before renormalization (zero for
    /// states that are exact in the truncated basis).
    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.space.check_same(&other.space)?;
        Ok(self.amps.dotc(&other.amps))
    }
}

/// Dense operator on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    space: FockSpace,
    entries: DMatrix<Complex64>,
    hermitian: bool,
}

impl OperatorMatrix {
    /// Wraps `entries`; the Hermitian flag is derived from the entries.
    pub fn new(space: FockSpace, entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != space.dim || entries.ncols() != space.dim {
            return Err(Error::DimensionMismatch { expected: space.dim, found: entries.nrows().max(entries.ncols()) });
        }
        let hermitian = hermitian_deviation(&entries) < HERMITIAN_TOL;
        Ok(Self { space, entries, hermitian })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// `max |A - A†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        hermitian_deviation(&self.entries)
    }

    pub fn adjoint(&self) -> Self {
        Self { space: self.space, entries: self.entries.adjoint(), hermitian: self.hermitian }
    }

    pub fn product(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.space.check_same(&rhs.space)?;
        Self::new(self.space, &self.entries * &rhs.entries)
    }

    pub fn commutator(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.space.check_same(&rhs.space)?;
        let ab = &self.entries * &rhs.entries;
        let ba = &rhs.entries * &self.entries;
        Self::new(self.space, ab - ba)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { space: self.space, entries: self.entries.map(|z| z * factor), hermitian: self.hermitian }
    }

    /// `(A + A†)/2`, exactly Hermitian.
    pub fn symmetrized(&self) -> Self {
        let entries = (&self.entries + self.entries.adjoint()).map(|z| z * 0.5);
        Self { space: self.space, entries, hermitian: true }
    }

    /// `A|ψ>`.
    pub fn apply(&self, state: &StateVector) -> Result<DVector<Complex64>> {
        self.space.check_same(&state.space)?;
        Ok(&self.entries * &state.amps)
    }
}

fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Mean, raw second moment and variance of an observable in a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndeterminacyReport {
    pub mean: f64,
    pub second_moment: f64,
    /// `second_moment - mean²`, unclamped.
    pub variance: f64,
    /// `sqrt(max(variance, 0))`.
    pub sigma: f64,
}

impl IndeterminacyReport {
    pub fn from_moments(mean: f64, second_moment: f64) -> Self {
        let variance = second_moment - mean * mean;
        Self { mean, second_moment, variance, sigma: variance.max(0.0).sqrt() }
    }
}

/// Annihilation and creation operators.
#[derive(Debug, Clone)]
pub struct Ladder {
    pub lower: OperatorMatrix,
    pub raise: OperatorMatrix,
}

pub fn build_ladder(space: &FockSpace) -> Ladder {
    let n = space.dim;
    let mut lower = DMatrix::from_element(n, n, ZERO);
    for k in 1..n {
        lower[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    let raise = lower.adjoint();
    Ladder {
        lower: OperatorMatrix { space: *space, entries: lower, hermitian: false },
        raise: OperatorMatrix { space: *space, entries: raise, hermitian: false },
    }
}

/// Position, momentum, number and Hamiltonian of the oscillator.
#[derive(Debug, Clone)]
pub struct Observables {
    pub x: OperatorMatrix,
    pub p: OperatorMatrix,
    pub number: OperatorMatrix,
    pub hamiltonian: OperatorMatrix,
}

pub fn observables(space: &FockSpace) -> Observables {
    let Ladder { lower, raise } = build_ladder(space);
    let a = &lower.entries;
    let ad = &raise.entries;

    let x_scale = space.position_scale();
    let p_scale = space.momentum_scale();
    let x = (a + ad).map(|z| z * x_scale);
    let p = (ad - a).map(|z| z * Complex64::new(0.0, p_scale));

    let n = space.dim;
    let number = DMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(i as f64, 0.0) } else { ZERO });
    let hw = space.hbar * space.omega;
    let hamiltonian =
        DMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(hw * (i as f64 + 0.5), 0.0) } else { ZERO });

    let wrap = |entries| OperatorMatrix { space: *space, entries, hermitian: true };
    Observables { x: wrap(x), p: wrap(p), number: wrap(number), hamiltonian: wrap(hamiltonian) }
}

/// `<ψ|A|ψ>`.
pub fn expectation(state: &StateVector, op: &OperatorMatrix) -> Result<Complex64> {
    let applied = op.apply(state)?;
    Ok(state.amps.dotc(&applied))
}

/// Indeterminacy of a Hermitian observable; `<A²>` is taken as `‖Aψ‖²`.
pub fn variance(state: &StateVector, op: &OperatorMatrix) -> Result<IndeterminacyReport> {
    if !op.hermitian {
        return Err(Error::NotHermitian(op.hermitian_deviation()));
    }
    let applied = op.apply(state)?;
    let mean = state.amps.dotc(&applied).re;
    let second = applied.norm_squared();
    Ok(IndeterminacyReport::from_moments(mean, second))
}

/// `ΔA·ΔB - ½|<[A,B]>|`. Non-negative for any state, up to roundoff.
pub fn robertson_gap(state: &StateVector, a: &OperatorMatrix, b: &OperatorMatrix) -> Result<f64> {
    a.space.check_same(&b.space)?;
    let va = variance(state, a)?;
    let vb = variance(state, b)?;
    let a_psi = a.apply(state)?;
    let b_psi = b.apply(state)?;
    // <[A,B]> = <Aψ|Bψ> - <Bψ|Aψ> = 2i Im<Aψ|Bψ>
    let half_commutator = a_psi.dotc(&b_psi).im.abs();
    Ok(va.sigma * vb.sigma - half_commutator)
}

/// Free-particle energy spread against the squared momentum spread.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionVarianceReport {
    /// `Δ(p²/2m)`.
    pub lhs: f64,
    /// `(Δp)²/2m`.
    pub rhs: f64,
}

/// Compares the indeterminacy of `E = p²/2m` with the same function applied
/// to `Δp`. The two are reported side by side; they are not equal in general.
pub fn variance_of_function_counterexample(space: &FockSpace, state: &StateVector) -> Result<FunctionVarianceReport> {
    space.check_same(&state.space)?;
    let p = observables(space).p;
    let two_m = 2.0 * space.mass;
    let kinetic = p.product(&p)?.scaled(1.0 / two_m).symmetrized();
    let lhs = variance(state, &kinetic)?.sigma;
    let rhs = variance(state, &p)?.variance.max(0.0) / two_m;
    Ok(FunctionVarianceReport { lhs, rhs })
}
