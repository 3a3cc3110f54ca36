//! C ABI over the `photonbox` engine.
//!
//! Every fallible function returns a [`PbStatus`] and writes its result
//! through an out-pointer. On failure a message for the calling thread is
//! available from [`pb_last_error_message`] until the next failing call.
//! Handles returned by `*_new` and state constructors are owned by the caller
//! and released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use photonbox::debate::{bohr_chain, counterexample_threshold, weigh_impulse, ClassicalUncertainties, DebateScenario};
use photonbox::hilbert::{observables, robertson_gap, variance, FockSpace, StateVector};
use photonbox::pulse::{make_pulse, rms_widths, PulseGrid, PulseShape};
use photonbox::runner::{run_scenario, RunOptions};
use photonbox::scenario::{ScenarioError, ScenarioFile};
use photonbox::states::{coherent, coherent_auto, fock, CoherentParams, TruncationPolicy};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Numeric = 3,
    Parse = 4,
    Io = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbObservable {
    Position = 0,
    Momentum = 1,
    Number = 2,
    Energy = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbPulseShape {
    Gaussian = 0,
    Rectangular = 1,
    RaisedCosine = 2,
}

/// Opaque truncated oscillator space.
pub struct PbFockSpace(FockSpace);

/// Opaque normalized state vector.
pub struct PbState(StateVector);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PbIndeterminacy {
    pub mean: f64,
    pub second_moment: f64,
    /// Unclamped; may be slightly negative from rounding.
    pub variance: f64,
    pub sigma: f64,
}

/// Constants, balancing interval and box oscillator.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PbDebateParams {
    pub hbar: f64,
    pub c: f64,
    pub g: f64,
    pub balancing_time: f64,
    pub mass: f64,
    pub omega: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PbChainResult {
    pub delta_p: f64,
    pub delta_q: f64,
    pub delta_m: f64,
    pub delta_e: f64,
    pub delta_t: f64,
    pub product: f64,
    pub satisfied: bool,
    pub impulse_strict: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PbSpectralReport {
    pub delta_t: f64,
    pub delta_omega: f64,
    pub product: f64,
    pub delta_e: f64,
    pub diverged: bool,
    pub bandwidth_growth: f64,
    pub spectral_energy: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PbWeighResult {
    pub delta_p_sim: f64,
    pub delta_p_exact: f64,
    pub delta_p_formula: f64,
    pub regime_error: f64,
    pub omega_duration: f64,
    pub regime_bound: f64,
    pub energy_drift: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PbStatus, String);

impl From<photonbox::Error> for Failure {
    fn from(e: photonbox::Error) -> Self {
        use photonbox::Error::*;
        let status = match e {
            InvalidSpace(_) | DimensionMismatch { .. } | InvalidState(_) => PbStatus::InvalidArgument,
            _ => PbStatus::Numeric,
        };
        Failure(status, e.to_string())
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Numeric(inner) => inner.into(),
            ScenarioError::Parse(_) => Failure(PbStatus::Parse, e.to_string()),
            ScenarioError::Invalid(_) => Failure(PbStatus::InvalidArgument, e.to_string()),
            ScenarioError::Io { .. } => Failure(PbStatus::Io, e.to_string()),
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PbStatus::NullPointer, format!("ffi: {what} is null"))
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PbStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("ffi: internal panic".into());
            PbStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(ptr: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or_else(|| null(what))
}

unsafe fn in_ref<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or_else(|| null(what))
}

fn debate(p: &PbDebateParams) -> Result<DebateScenario, Failure> {
    let s = DebateScenario {
        hbar: p.hbar,
        c: p.c,
        g: p.g,
        balancing_time: p.balancing_time,
        mass: p.mass,
        omega: p.omega,
        classical: ClassicalUncertainties { delta_m: 1.0, delta_p: 1.0, delta_q: 1.0 },
    };
    s.validate()?;
    Ok(s)
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn pb_fock_space_new(
    dim: usize,
    mass: f64,
    omega: f64,
    hbar: f64,
    out: *mut *mut PbFockSpace,
) -> PbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let space = FockSpace::new(dim, mass, omega, hbar)?;
        *out = Box::into_raw(Box::new(PbFockSpace(space)));
        Ok(())
    })
}

/// # Safety
/// `space` must be null or a handle from `pb_fock_space_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pb_fock_space_free(space: *mut PbFockSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Dimension of the space, or 0 for a null handle.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pb_fock_space_dim(space: *const PbFockSpace) -> usize {
    space.as_ref().map_or(0, |s| s.0.dim())
}

unsafe fn make_state(
    out: *mut *mut PbState,
    build: impl FnOnce() -> Result<StateVector, Failure>,
) -> Result<(), Failure> {
    let out = out_ref(out, "out")?;
    *out = Box::into_raw(Box::new(PbState(build()?)));
    Ok(())
}

/// Fock state |n⟩.
///
/// # Safety
/// `space` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_state_fock(space: *const PbFockSpace, n: usize, out: *mut *mut PbState) -> PbStatus {
    guard(|| {
        let space = in_ref(space, "space")?;
        make_state(out, || Ok(fock(&space.0, n)?))
    })
}

/// Coherent state on a given space; fails when the space is too small for
/// the default truncation budget.
///
/// # Safety
/// `space` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_state_coherent(
    space: *const PbFockSpace,
    alpha_re: f64,
    alpha_im: f64,
    out: *mut *mut PbState,
) -> PbStatus {
    guard(|| {
        let space = in_ref(space, "space")?;
        make_state(out, || Ok(coherent(&space.0, CoherentParams::new(Complex64::new(alpha_re, alpha_im)))?))
    })
}

/// Coherent state on a space sized automatically for the default budget.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_state_coherent_auto(
    alpha_re: f64,
    alpha_im: f64,
    mass: f64,
    omega: f64,
    hbar: f64,
    out: *mut *mut PbState,
) -> PbStatus {
    guard(|| {
        let params = CoherentParams::new(Complex64::new(alpha_re, alpha_im));
        make_state(out, || Ok(coherent_auto(params, mass, omega, hbar, &TruncationPolicy::default())?))
    })
}

/// # Safety
/// `state` must be null or a state handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pb_state_free(state: *mut PbState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Dimension of the state's space, or 0 for a null handle.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pb_state_dim(state: *const PbState) -> usize {
    state.as_ref().map_or(0, |s| s.0.space().dim())
}

/// Probability in the top truncation levels.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_state_tail_mass(state: *const PbState, out: *mut f64) -> PbStatus {
    guard(|| {
        let state = in_ref(state, "state")?;
        *out_ref(out, "out")? = state.0.tail_mass();
        Ok(())
    })
}

/// Mean, second moment and spread of one observable.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_indeterminacy(
    state: *const PbState,
    observable: PbObservable,
    out: *mut PbIndeterminacy,
) -> PbStatus {
    guard(|| {
        let state = in_ref(state, "state")?;
        let out = out_ref(out, "out")?;
        let obs = observables(state.0.space());
        let op = match observable {
            PbObservable::Position => &obs.x,
            PbObservable::Momentum => &obs.p,
            PbObservable::Number => &obs.number,
            PbObservable::Energy => &obs.hamiltonian,
        };
        let r = variance(&state.0, op)?;
        *out = PbIndeterminacy { mean: r.mean, second_moment: r.second_moment, variance: r.variance, sigma: r.sigma };
        Ok(())
    })
}

/// `Δx Δp − |Im⟨xψ|pψ⟩|`.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_robertson_gap_xp(state: *const PbState, out: *mut f64) -> PbStatus {
    guard(|| {
        let state = in_ref(state, "state")?;
        let out = out_ref(out, "out")?;
        let obs = observables(state.0.space());
        *out = robertson_gap(&state.0, &obs.x, &obs.p)?;
        Ok(())
    })
}

/// Coherent amplitude below which the impulse relation fails.
///
/// # Safety
/// `params` must be readable and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_counterexample_threshold(params: *const PbDebateParams, out: *mut f64) -> PbStatus {
    guard(|| {
        let s = debate(in_ref(params, "params")?)?;
        *out_ref(out, "out")? = counterexample_threshold(&s);
        Ok(())
    })
}

/// Relation chain with the impulse relation taken at equality.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_bohr_chain(
    delta_p: f64,
    delta_q: f64,
    balancing_time: f64,
    g: f64,
    c: f64,
    hbar: f64,
    out: *mut PbChainResult,
) -> PbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let a = bohr_chain(delta_p, delta_q, balancing_time, g, c, hbar)?;
        *out = PbChainResult {
            delta_p: a.delta_p,
            delta_q: a.delta_q,
            delta_m: a.delta_m,
            delta_e: a.delta_e,
            delta_t: a.delta_t,
            product: a.product,
            satisfied: a.satisfied,
            impulse_strict: a.impulse_strict,
        };
        Ok(())
    })
}

/// RMS widths of a centred pulse sampled at `points` samples spaced `dt`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_pulse_widths(
    shape: PbPulseShape,
    width: f64,
    dt: f64,
    points: usize,
    hbar: f64,
    out: *mut PbSpectralReport,
) -> PbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let shape = match shape {
            PbPulseShape::Gaussian => PulseShape::Gaussian,
            PbPulseShape::Rectangular => PulseShape::Rectangular,
            PbPulseShape::RaisedCosine => PulseShape::RaisedCosine,
        };
        let pulse = make_pulse(shape, width, PulseGrid::centred(points, dt))?;
        let r = rms_widths(&pulse, hbar);
        *out = PbSpectralReport {
            delta_t: r.delta_t,
            delta_omega: r.delta_omega,
            product: r.product,
            delta_e: r.delta_e,
            diverged: r.diverged,
            bandwidth_growth: r.bandwidth_growth,
            spectral_energy: r.spectral_energy,
        };
        Ok(())
    })
}

/// Integrated impulse on the balance after a mass change `delta_m`.
///
/// # Safety
/// `params` must be readable and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pb_weigh(
    params: *const PbDebateParams,
    delta_m: f64,
    duration: f64,
    steps: usize,
    out: *mut PbWeighResult,
) -> PbStatus {
    guard(|| {
        let mut s = debate(in_ref(params, "params")?)?;
        let out = out_ref(out, "out")?;
        s.classical.delta_m = delta_m;
        let r = weigh_impulse(&s, duration, steps)?;
        *out = PbWeighResult {
            delta_p_sim: r.delta_p_sim,
            delta_p_exact: r.delta_p_exact,
            delta_p_formula: r.delta_p_formula,
            regime_error: r.regime_error,
            omega_duration: r.omega_duration,
            regime_bound: r.regime_bound,
            energy_drift: r.energy_drift,
        };
        Ok(())
    })
}

/// Runs a scenario given as TOML text. On success `*out_json` receives the
/// report (free with `pb_string_free`) and `*out_exit_status` is 0 when all
/// checks passed, 2 otherwise.
///
/// # Safety
/// `source` must be a NUL-terminated string; both out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn pb_run_scenario(
    source: *const c_char,
    out_json: *mut *mut c_char,
    out_exit_status: *mut i32,
) -> PbStatus {
    guard(|| {
        let source = in_ref(source, "source")?;
        let out_json = out_ref(out_json, "out_json")?;
        let out_status = out_ref(out_exit_status, "out_exit_status")?;
        let text = CStr::from_ptr(source)
            .to_str()
            .map_err(|e| Failure(PbStatus::InvalidArgument, format!("ffi: source is not UTF-8: {e}")))?;
        let report = run_scenario(&ScenarioFile::parse(text)?, &RunOptions::default())?;
        let json = CString::new(report.to_json()?)
            .map_err(|e| Failure(PbStatus::Numeric, format!("ffi: report contains NUL: {e}")))?;
        *out_json = json.into_raw();
        *out_status = report.exit_status();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
