use std::ffi::{CStr, CString};
use std::ptr;

use photonbox_ffi::*;

fn last_error() -> String {
    let p = pb_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn natural() -> PbDebateParams {
    PbDebateParams { hbar: 1.0, c: 1.0, g: 1.0, balancing_time: 1.0, mass: 1.0, omega: 1.0 }
}

#[test]
fn space_and_fock_state() {
    unsafe {
        let mut space = ptr::null_mut();
        assert_eq!(pb_fock_space_new(8, 1.0, 1.0, 1.0, &mut space), PbStatus::Ok);
        assert_eq!(pb_fock_space_dim(space), 8);

        let mut state = ptr::null_mut();
        assert_eq!(pb_state_fock(space, 3, &mut state), PbStatus::Ok);
        let mut n = PbIndeterminacy::default();
        assert_eq!(pb_indeterminacy(state, PbObservable::Number, &mut n), PbStatus::Ok);
        assert!((n.mean - 3.0).abs() < 1e-14 && n.sigma < 1e-7);
        let mut e = PbIndeterminacy::default();
        pb_indeterminacy(state, PbObservable::Energy, &mut e);
        assert!((e.mean - 3.5).abs() < 1e-14);

        // |n⟩ has Δx Δp = (n + 1/2) ħ, gap = n ħ
        let mut gap = 0.0;
        assert_eq!(pb_robertson_gap_xp(state, &mut gap), PbStatus::Ok);
        assert!((gap - 3.0).abs() < 1e-12, "{gap}");

        pb_state_free(state);
        pb_fock_space_free(space);
    }
}

#[test]
fn coherent_state_minimum_product() {
    unsafe {
        let mut state = ptr::null_mut();
        assert_eq!(pb_state_coherent_auto(1.0, 1.0, 1.0, 1.0, 1.0, &mut state), PbStatus::Ok);
        let mut p = PbIndeterminacy::default();
        pb_indeterminacy(state, PbObservable::Momentum, &mut p);
        assert!((p.variance - 0.5).abs() < 1e-10);
        let mut gap = 1.0;
        pb_robertson_gap_xp(state, &mut gap);
        assert!(gap.abs() < 1e-9);
        let mut tail = 1.0;
        pb_state_tail_mass(state, &mut tail);
        assert!(tail < 1e-12);
        pb_state_free(state);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut space = ptr::null_mut();
        assert_eq!(pb_fock_space_new(1, 1.0, 1.0, 1.0, &mut space), PbStatus::InvalidArgument);
        assert!(space.is_null());
        assert!(last_error().starts_with("hilbert:"));

        assert_eq!(pb_fock_space_new(4, 1.0, 1.0, 1.0, ptr::null_mut()), PbStatus::NullPointer);
        assert!(last_error().contains("out"));

        pb_fock_space_new(8, 1.0, 1.0, 1.0, &mut space);
        let mut state = ptr::null_mut();
        // |alpha| = 3 needs far more than 8 levels
        assert_eq!(pb_state_coherent(space, 3.0, 0.0, &mut state), PbStatus::Numeric);
        assert!(last_error().contains("truncation"));
        assert!(state.is_null());
        assert_eq!(pb_state_fock(space, 8, &mut state), PbStatus::InvalidArgument);
        pb_fock_space_free(space);

        let mut gap = 0.0;
        assert_eq!(pb_robertson_gap_xp(ptr::null(), &mut gap), PbStatus::NullPointer);
        assert_eq!(pb_state_dim(ptr::null()), 0);
        pb_state_free(ptr::null_mut());
    }
}

#[test]
fn threshold_and_chain() {
    unsafe {
        let mut t = 0.0;
        assert_eq!(pb_counterexample_threshold(&natural(), &mut t), PbStatus::Ok);
        assert!((t - 0.5_f64.sqrt()).abs() < 1e-15);

        let bad = PbDebateParams { g: 0.0, ..natural() };
        assert_eq!(pb_counterexample_threshold(&bad, &mut t), PbStatus::Numeric);
        assert!(last_error().starts_with("debate:"));

        let mut r = PbChainResult::default();
        assert_eq!(pb_bohr_chain(2.0, 0.25, 1.0, 1.0, 1.0, 1.0, &mut r), PbStatus::Ok);
        assert!((r.product - 0.5).abs() < 1e-15);
        assert!(!r.satisfied);
        assert_eq!(pb_bohr_chain(2.0, 0.25, -1.0, 1.0, 1.0, 1.0, &mut r), PbStatus::Numeric);
    }
}

#[test]
fn pulse_and_weigh() {
    unsafe {
        let mut r = PbSpectralReport::default();
        assert_eq!(pb_pulse_widths(PbPulseShape::Gaussian, 1.0, 1.0 / 32.0, 4096, 1.0, &mut r), PbStatus::Ok);
        assert!((r.product - 0.5).abs() < 1e-6 && !r.diverged);
        pb_pulse_widths(PbPulseShape::Rectangular, 1.0, 1.0 / 32.0, 4096, 1.0, &mut r);
        assert!(r.diverged);
        assert_eq!(pb_pulse_widths(PbPulseShape::Gaussian, 1.0, 1.0, 4096, 1.0, &mut r), PbStatus::Numeric);
        assert!(last_error().starts_with("pulse:"));

        let mut w = PbWeighResult::default();
        assert_eq!(pb_weigh(&natural(), 1.0, 0.5, 10_000, &mut w), PbStatus::Ok);
        let law = 1.0 - 0.5_f64.sin() / 0.5;
        assert!((w.regime_error - law).abs() < 1e-6 * law);
    }
}

#[test]
fn run_scenario_returns_json() {
    let src = CString::new("name = \"c\"\nkind = \"counterexample\"\n[params]\nalphas = [0.0, 0.1, 0.5]\n").unwrap();
    unsafe {
        let mut json = ptr::null_mut();
        let mut status = -1;
        assert_eq!(pb_run_scenario(src.as_ptr(), &mut json, &mut status), PbStatus::Ok);
        assert_eq!(status, 0);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        pb_string_free(json);
        let report = photonbox::report::Report::from_json(&text).unwrap();
        assert_eq!(report.results.len(), 3);

        let bad = CString::new("name = \"c\"\nkind = \"counterexample\"\n[params]\nalpah = [0.0]\n").unwrap();
        let mut json = ptr::null_mut();
        assert_eq!(pb_run_scenario(bad.as_ptr(), &mut json, &mut status), PbStatus::Parse);
        assert!(json.is_null());
        assert!(last_error().contains("alpah"));
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut space = ptr::null_mut();
        pb_fock_space_new(0, 1.0, 1.0, 1.0, &mut space);
    }
    let other = std::thread::spawn(|| pb_last_error_message().is_null()).join().unwrap();
    assert!(other);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(pb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/photonbox.h")).unwrap();
    let source = std::fs::read_to_string(format!("{dir}/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15, "{exports:?}");
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

#[test]
fn c_example_compiles_against_header() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(format!("{dir}/include"))
        .arg(format!("{dir}/examples/smoke.c"))
        .status()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(status.success());
}
