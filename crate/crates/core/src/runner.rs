//! Dispatches scenarios to the numerical modules and assembles reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::debate::{
    bohr_chain, counterexample_scan, counterexample_threshold, separation_check, weigh_impulse, ClassicalUncertainties,
    DebateScenario,
};
use crate::defaults::{Defaults, TAIL_LEVELS};
use crate::dynamics::{free_propagate, grid_spread, spread_analytic, spread_coefficients, spread_radicand, SpreadMode};
use crate::grid::Grid;
use crate::hilbert::{observables, robertson_gap, variance, FockSpace, StateVector};
use crate::pulse::{energy_time_check, make_pulse, rms_widths, spectrum, PulseGrid, PulseShape};
use crate::report::{record, records_to_csv, Check, Record, Report};
use crate::scenario::{
    ChainParams, CoherentParams, CounterexampleParams, Params, PulseParams, ScenarioError, ScenarioFile,
    SeparationParams, SpreadParams, StateSpec, SweepSpec, Units, WeighParams, SCHEMA_VERSION,
};
use crate::states::{
    coherent_auto, coherent_with_policy, fock, gaussian_packet_state, random_superposition, superposition,
    CoherentParams as Coherent, GaussianPacket,
};
use crate::Complex64;

/// Command-line overrides applied on top of the scenario file.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub units: Option<Units>,
    pub seed: Option<u64>,
}

impl RunOptions {
    fn apply(&self, file: &ScenarioFile) -> ScenarioFile {
        let mut out = file.clone();
        if let Some(u) = self.units {
            out.units = u;
        }
        if let Some(s) = self.seed {
            out.defaults.seed = s;
        }
        out
    }
}

type Outcome = (Vec<Record>, Vec<Check>);

pub fn run_scenario(file: &ScenarioFile, opts: &RunOptions) -> Result<Report, ScenarioError> {
    let file = opts.apply(file);
    let (results, checks) = execute(&file)?;
    Ok(Report { schema_version: SCHEMA_VERSION.into(), scenario: file, results, checks })
}

fn execute(file: &ScenarioFile) -> Result<Outcome, ScenarioError> {
    let units = file.units;
    let d = &file.defaults;
    match file.typed_params()? {
        Params::Coherent(p) => run_coherent(&p, units, d),
        Params::Counterexample(p) => run_counterexample(&p, units, d),
        Params::Chain(p) => run_chain(&p, units, d),
        Params::Spread(p) => run_spread(&p, units, d),
        Params::Pulse(p) => run_pulse(&p, units, d),
        Params::Weigh(p) => run_weigh(&p, units, d),
        Params::Separation(p) => run_separation(&p, units, d),
    }
}

fn rel_err(value: f64, target: f64, scale: f64) -> f64 {
    let denom = if target != 0.0 { target.abs() } else { scale };
    (value - target).abs() / denom
}

fn run_coherent(p: &CoherentParams, units: Units, d: &Defaults) -> Result<Outcome, ScenarioError> {
    let hbar = p.hbar.unwrap_or(units.hbar());
    let policy = d.truncation_policy();
    let alphas: Vec<Complex64> = match &p.phases {
        Some(phases) => p
            .alphas
            .iter()
            .flat_map(|a| phases.iter().map(move |&ph| Complex64::from_polar(a.value().norm(), ph)))
            .collect(),
        None => p.alphas.iter().map(|a| a.value()).collect(),
    };
    if alphas.is_empty() {
        return Err(ScenarioError::Invalid("coherent: alphas is empty".into()));
    }

    #[derive(serde::Serialize)]
    struct Row {
        alpha_re: f64,
        alpha_im: f64,
        abs_alpha: f64,
        dim: usize,
        tail_mass: f64,
        truncation_loss: f64,
        var_p: f64,
        var_p_closed: f64,
        var_e: f64,
        var_e_closed: f64,
        delta_x: f64,
        delta_p: f64,
        robertson_gap: f64,
        /// Relative change of Δ²E when the space grows by ten levels.
        var_e_dim_shift: f64,
    }

    let hw = hbar * p.omega;
    let mut records = Vec::new();
    let mut checks = Vec::new();
    for (i, &alpha) in alphas.iter().enumerate() {
        let state = coherent_auto(Coherent::new(alpha), p.mass, p.omega, hbar, &policy)?;
        let space = *state.space();
        let obs = observables(&space);
        let vp = variance(&state, &obs.p)?;
        let ve = variance(&state, &obs.hamiltonian)?;
        let vx = variance(&state, &obs.x)?;
        let gap = robertson_gap(&state, &obs.x, &obs.p)?;

        let bigger = coherent_with_policy(&space.with_dim(space.dim() + 10)?, Coherent::new(alpha), &policy)?;
        let ve_big = variance(&bigger, &observables(bigger.space()).hamiltonian)?;
        let shift = rel_err(ve_big.variance, ve.variance, hw * hw);

        let row = Row {
            alpha_re: alpha.re,
            alpha_im: alpha.im,
            abs_alpha: alpha.norm(),
            dim: space.dim(),
            tail_mass: state.tail_mass(),
            truncation_loss: state.truncation_loss(),
            var_p: vp.variance,
            var_p_closed: hbar * p.mass * p.omega / 2.0,
            var_e: ve.variance,
            var_e_closed: hw * hw * alpha.norm_sqr(),
            delta_x: vx.sigma,
            delta_p: vp.sigma,
            robertson_gap: gap,
            var_e_dim_shift: shift,
        };
        let tol = d.closed_form_rel_tol;
        checks.push(Check::at_most(format!("closed_form_var_p[{i}]"), rel_err(row.var_p, row.var_p_closed, hw), tol));
        checks.push(Check::at_most(
            format!("closed_form_var_e[{i}]"),
            rel_err(row.var_e, row.var_e_closed, hw * hw),
            tol,
        ));
        checks.push(Check::below(format!("tail[{i}]"), row.tail_mass, d.truncation_budget));
        checks.push(Check::at_most(format!("min_uncertainty[{i}]"), gap.abs(), d.robertson_tol));
        checks.push(Check::at_most(format!("truncation_convergence[{i}]"), shift, 1e-10));
        records.push(record(&row, units));
    }

    if p.random_states > 0 {
        let levels = p.random_levels.max(1);
        let space = FockSpace::new(levels + TAIL_LEVELS + 1, p.mass, p.omega, hbar)?;
        let obs = observables(&space);
        let mut rng = ChaCha8Rng::seed_from_u64(d.seed);
        let mut worst = f64::INFINITY;
        for _ in 0..p.random_states {
            let s = random_superposition(&space, levels, &mut rng)?;
            let dx = variance(&s, &obs.x)?.sigma;
            let dp = variance(&s, &obs.p)?.sigma;
            worst = worst.min(dx * dp - hbar / 2.0);
        }
        checks.push(Check::at_least("robertson_random_min_excess", worst, -d.robertson_tol));
    }
    Ok((records, checks))
}

#[allow(clippy::too_many_arguments)]
fn debate_scenario(
    units: Units,
    hbar: Option<f64>,
    c: Option<f64>,
    g: Option<f64>,
    balancing_time: f64,
    mass: f64,
    omega: f64,
    classical: ClassicalUncertainties,
) -> Result<DebateScenario, ScenarioError> {
    let s = DebateScenario {
        hbar: hbar.unwrap_or(units.hbar()),
        c: c.unwrap_or(units.c()),
        g: g.unwrap_or(units.g()),
        balancing_time,
        mass,
        omega,
        classical,
    };
    s.validate()?;
    Ok(s)
}

fn unit_classical() -> ClassicalUncertainties {
    ClassicalUncertainties { delta_m: 1.0, delta_p: 1.0, delta_q: 1.0 }
}

fn run_counterexample(p: &CounterexampleParams, units: Units, d: &Defaults) -> Result<Outcome, ScenarioError> {
    let s = debate_scenario(units, p.hbar, p.c, p.g, p.balancing_time, p.mass, p.omega, unit_classical())?;
    let alphas: Vec<Complex64> = p.alphas.iter().map(|a| a.value()).collect();
    if alphas.is_empty() {
        return Err(ScenarioError::Invalid("counterexample: alphas is empty".into()));
    }
    let threshold = counterexample_threshold(&s);
    let scan = counterexample_scan(&s, &alphas, &d.truncation_policy(), d.closed_form_rel_tol)?;

    let mut records = Vec::new();
    let mut checks = Vec::new();
    for (i, r) in scan.iter().enumerate() {
        let mut rec = record(r, units);
        rec.remove("chain");
        rec.insert("threshold".into(), Value::from(threshold));
        rec.insert("omega_t".into(), Value::from(s.regime_indicator()));
        rec.insert("chain_product".into(), Value::from(r.chain.product));
        rec.insert("chain_satisfied".into(), Value::from(r.chain.satisfied));
        rec.insert("chain_impulse_strict".into(), Value::from(r.chain.impulse_strict));
        records.push(rec);

        if (r.abs_alpha - threshold).abs() > 1e-9 {
            checks.push(Check::flag(
                format!("threshold_consistency[{i}]"),
                r.violates_impulse == (r.abs_alpha < threshold),
            ));
        }
        let cf = rel_err(r.delta_p, r.delta_p_closed, 1.0).max(rel_err(r.delta_e, r.delta_e_closed, s.hbar * s.omega));
        checks.push(Check::at_most(format!("closed_form[{i}]"), cf, d.closed_form_rel_tol));
        if r.violates_impulse {
            checks.push(Check::below(format!("boomerang[{i}]"), r.chain.product, s.hbar));
        }
    }
    Ok((records, checks))
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

fn run_chain(p: &ChainParams, units: Units, d: &Defaults) -> Result<Outcome, ScenarioError> {
    let hbar = p.hbar.unwrap_or(units.hbar());
    let c = p.c.unwrap_or(units.c());
    let g = p.g.unwrap_or(units.g());
    let mut audits = Vec::new();
    match (p.delta_p, p.delta_q) {
        (Some(dp), Some(dq)) => audits.push(bohr_chain(dp, dq, p.balancing_time, g, c, hbar)?),
        (None, None) => {}
        _ => return Err(ScenarioError::Invalid("chain: give both delta_p and delta_q or neither".into())),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(d.seed);
    for _ in 0..p.random_points {
        let dp = log_uniform(&mut rng, 0.1, 10.0) * hbar.sqrt();
        let dq = log_uniform(&mut rng, 0.1, 10.0) * hbar.sqrt();
        let t = log_uniform(&mut rng, 0.1, 10.0) * p.balancing_time;
        let gg = log_uniform(&mut rng, 0.1, 10.0) * g;
        let cc = log_uniform(&mut rng, 0.1, 10.0) * c;
        audits.push(bohr_chain(dp, dq, t, gg, cc, hbar)?);
    }
    if audits.is_empty() {
        return Err(ScenarioError::Invalid("chain: no parameter points (set delta_p/delta_q or random_points)".into()));
    }

    let mut worst = 0.0_f64;
    let mut mismatches = 0usize;
    let mut records = Vec::new();
    for a in &audits {
        let skeleton = a.delta_p * a.delta_q;
        worst = worst.max(rel_err(a.product, skeleton, hbar));
        if a.satisfied != (skeleton >= hbar) {
            mismatches += 1;
        }
        let mut rec = record(a, units);
        rec.insert("delta_p_delta_q".into(), Value::from(skeleton));
        records.push(rec);
    }
    let checks = vec![
        Check::at_most("chain_identity", worst, 1e-12),
        Check::at_most("satisfied_iff_product_bound", mismatches as f64, 0.0),
    ];
    Ok((records, checks))
}

fn run_spread(p: &SpreadParams, units: Units, d: &Defaults) -> Result<Outcome, ScenarioError> {
    let hbar = p.hbar.unwrap_or(units.hbar());
    let grid = Grid::new(d.grid_length, d.grid_points)?;
    if p.times.is_empty() {
        return Err(ScenarioError::Invalid("spread: times is empty".into()));
    }
    let mut packets = vec![GaussianPacket { sigma: p.sigma, x0: p.x0, p0: p.p0, mass: p.mass, hbar, grid }];
    let mut rng = ChaCha8Rng::seed_from_u64(d.seed);
    for _ in 0..p.random_packets {
        packets.push(GaussianPacket {
            sigma: rng.random_range(0.5..4.0),
            x0: 0.0,
            p0: rng.random_range(-3.0..3.0),
            mass: p.mass,
            hbar,
            grid,
        });
    }

    #[derive(serde::Serialize)]
    struct Row {
        packet: usize,
        sigma: f64,
        x0: f64,
        p0: f64,
        t: f64,
        delta_x_grid: f64,
        delta_x_variance_mode: f64,
        delta_x_raw_mode: f64,
        oracle_rel_error: f64,
        raw_excess: f64,
        mean_v_sq_t2: f64,
        norm_drift: f64,
        momentum_drift: f64,
    }

    let mut records = Vec::new();
    let mut checks = Vec::new();
    for (i, packet) in packets.iter().enumerate() {
        let wf = gaussian_packet_state(packet)?;
        let coeffs = spread_coefficients(&wf, packet.mass)?;
        let before = wf.momentum_distribution();
        for &t in &p.times {
            let later = free_propagate(&wf, packet.mass, t)?;
            let truth = grid_spread(&later);
            let var_mode = spread_analytic(&coeffs, t, SpreadMode::Variance)?;
            let raw_mode = spread_analytic(&coeffs, t, SpreadMode::Raw)?;
            let after = later.momentum_distribution();
            let row = Row {
                packet: i,
                sigma: packet.sigma,
                x0: packet.x0,
                p0: packet.p0,
                t,
                delta_x_grid: truth,
                delta_x_variance_mode: var_mode,
                delta_x_raw_mode: raw_mode,
                oracle_rel_error: (var_mode - truth).abs() / truth,
                raw_excess: spread_radicand(&coeffs, t, SpreadMode::Raw)
                    - spread_radicand(&coeffs, t, SpreadMode::Variance),
                mean_v_sq_t2: coeffs.mean_v * coeffs.mean_v * t * t,
                norm_drift: (later.norm_sqr() - 1.0).abs(),
                momentum_drift: before.iter().zip(&after).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max),
            };
            let tag = format!("[{i}, t={t}]");
            checks.push(Check::at_most(format!("oracle{tag}"), row.oracle_rel_error, d.oracle_rel_tol));
            checks.push(Check::at_most(
                format!("raw_discrepancy{tag}"),
                (row.raw_excess - row.mean_v_sq_t2).abs(),
                1e-9,
            ));
            checks.push(Check::at_most(format!("norm{tag}"), row.norm_drift, 1e-12));
            checks.push(Check::at_most(format!("momentum_spectrum{tag}"), row.momentum_drift, 1e-10));
            records.push(record(&row, units));
        }
    }
    Ok((records, checks))
}

/// Pulse grid used by the runner: `pulse_points` samples at `dt`.
pub fn pulse_grid(width: f64, dt: Option<f64>, d: &Defaults) -> PulseGrid {
    PulseGrid::centred(d.pulse_points, dt.unwrap_or(width / d.pulse_samples_per_width))
}

fn run_pulse(p: &PulseParams, units: Units, d: &Defaults) -> Result<Outcome, ScenarioError> {
    let hbar = p.hbar.unwrap_or(units.hbar());
    let pulse = make_pulse(p.shape, p.width, pulse_grid(p.width, p.dt, d))?;
    let report = rms_widths(&pulse, hbar);
    let et = energy_time_check(&report, hbar, d.duality_tol);
    let parseval = (spectrum(&pulse).energy() - 1.0).abs();

    let mut rec = record(&report, units);
    rec.insert("shape".into(), serde_json::to_value(p.shape).unwrap_or(Value::Null));
    rec.insert("width".into(), Value::from(p.width));
    rec.insert("dt".into(), Value::from(pulse.dt()));
    rec.insert("energy_time_product".into(), Value::from(et.product));
    rec.insert("rms_bound".into(), Value::from(et.rms_bound));
    rec.insert("order_bound".into(), Value::from(et.order_bound));

    let mut checks = vec![Check::at_most("parseval", parseval, 1e-10)];
    match p.shape {
        PulseShape::Gaussian => {
            checks.push(Check::at_most("duality_product", (report.product - 0.5).abs(), d.duality_tol));
        }
        PulseShape::RaisedCosine => {
            checks.push(Check::at_least("duality_lower_bound", report.product, 0.5 - d.duality_tol));
        }
        PulseShape::Rectangular => checks.push(Check::flag("rectangular_flagged_diverged", report.diverged)),
    }
    if !report.diverged {
        checks.push(Check::at_least("energy_time_rms_bound", et.product, et.rms_bound - d.duality_tol));
    }
    Ok((vec![rec], checks))
}

fn run_weigh(p: &WeighParams, units: Units, d: &Defaults) -> Result<Outcome, ScenarioError> {
    let classical = ClassicalUncertainties { delta_m: p.delta_m, ..unit_classical() };
    let s = DebateScenario {
        hbar: units.hbar(),
        c: units.c(),
        g: p.g.unwrap_or(units.g()),
        balancing_time: p.duration,
        mass: p.mass,
        omega: p.omega,
        classical,
    };
    let r = weigh_impulse(&s, p.duration, p.steps.unwrap_or(d.weigh_steps))?;
    let scale = r.delta_p_formula.abs().max(f64::MIN_POSITIVE);
    let x = r.omega_duration;
    let law = 1.0 - x.sin() / x;
    let mut rec = record(&r, units);
    rec.insert("regime_law".into(), Value::from(law));
    let mut checks = vec![
        Check::at_most("regime_bound", r.regime_error, r.regime_bound + 1e-8),
        Check::at_most("integrator_vs_exact", (r.delta_p_sim - r.delta_p_exact).abs() / scale, 1e-6),
    ];
    if p.delta_m > 0.0 {
        checks.push(Check::at_most("regime_law", (r.regime_error - law).abs() / law, 0.05));
    }
    Ok((vec![rec], checks))
}

fn run_separation(p: &SeparationParams, units: Units, d: &Defaults) -> Result<Outcome, ScenarioError> {
    let classical = ClassicalUncertainties { delta_m: p.delta_m, delta_p: p.delta_p, delta_q: p.delta_q };
    let s = debate_scenario(units, p.hbar, p.c, p.g, p.balancing_time, p.mass, p.omega, classical)?;
    let policy = d.truncation_policy();
    let state: StateVector = match &p.state {
        StateSpec::Coherent(a) => match p.dim {
            Some(dim) => coherent_with_policy(&s.box_space(dim)?, Coherent::new(a.value()), &policy)?,
            None => coherent_auto(Coherent::new(a.value()), s.mass, s.omega, s.hbar, &policy)?,
        },
        StateSpec::Fock(n) => fock(&s.box_space(p.dim.unwrap_or(n + 1 + TAIL_LEVELS))?, *n)?,
        StateSpec::Amplitudes(a) => {
            let amps: Vec<Complex64> = a.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
            superposition(&s.box_space(p.dim.unwrap_or(amps.len() + TAIL_LEVELS))?, &amps)?
        }
    };
    let r = separation_check(&s, &state)?;
    let mut rec = record(&r, units);
    rec.insert("dim".into(), Value::from(state.space().dim()));
    let checks = vec![
        Check::at_most("state_normalized", (state.norm() - 1.0).abs(), 1e-12),
        Check::below("state_tail", state.tail_mass(), d.truncation_budget),
    ];
    Ok((vec![rec], checks))
}

/// Output of a parameter sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub csv: String,
    pub rows: usize,
    pub failed_checks: Vec<String>,
}

impl SweepOutcome {
    pub fn exit_status(&self) -> i32 {
        if self.failed_checks.is_empty() {
            0
        } else {
            2
        }
    }
}

/// Runs `file` once per grid value of its single ranged parameter.
/// `cli` is a ranged parameter given on the command line; combined with the
/// file's `[sweep]` table there must be exactly one.
pub fn sweep(file: &ScenarioFile, cli: Option<&SweepSpec>, opts: &RunOptions) -> Result<SweepOutcome, ScenarioError> {
    let spec = match (&file.sweep, cli) {
        (Some(a), Some(b)) if a.param != b.param => {
            return Err(ScenarioError::Invalid(format!(
                "two ranged parameters (`{}` and `{}`); a sweep takes exactly one",
                a.param, b.param
            )))
        }
        (_, Some(b)) => b.clone(),
        (Some(a), None) => a.clone(),
        (None, None) => return Err(ScenarioError::Invalid("no ranged parameter to sweep".into())),
    };
    let grid = spec.grid()?;
    let base = opts.apply(file);

    let mut rows: Vec<(Vec<String>, Record)> = Vec::with_capacity(grid.len());
    let mut failed = Vec::new();
    for value in grid {
        let point = base.with_param(&spec.param, value)?;
        let (mut records, checks) = execute(&point)?;
        if records.len() != 1 {
            return Err(ScenarioError::Invalid(format!(
                "sweep point {}={value} produced {} records; sweeps need one record per point",
                spec.param,
                records.len()
            )));
        }
        failed.extend(checks.iter().filter(|c| !c.passed).map(|c| format!("{}={value}: {}", spec.param, c.name)));
        rows.push((vec![Value::from(value).to_string()], records.remove(0)));
    }
    let view: Vec<(Vec<String>, &Record)> = rows.iter().map(|(l, r)| (l.clone(), r)).collect();
    let csv = records_to_csv(std::slice::from_ref(&spec.param), &view)?;
    Ok(SweepOutcome { csv, rows: rows.len(), failed_checks: failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> ScenarioFile {
        ScenarioFile::parse(src).unwrap()
    }

    #[test]
    fn counterexample_report() {
        let f = parse("name = \"c\"\nkind = \"counterexample\"\n[params]\nalphas = [0.0, 0.1, 0.5]\n");
        let r = run_scenario(&f, &RunOptions::default()).unwrap();
        assert_eq!(r.results.len(), 3);
        assert!(r.results.iter().all(|rec| rec["violates_impulse"] == true));
        assert!(r.results.iter().all(|rec| rec["units"] == "natural"));
        assert_eq!(r.exit_status(), 0, "{:?}", r.failed_checks().collect::<Vec<_>>());
    }

    #[test]
    fn si_units_change_constants() {
        let f = parse("name = \"c\"\nkind = \"counterexample\"\n[params]\nalphas = [1.0]\n");
        let r = run_scenario(&f, &RunOptions { units: Some(Units::Si), seed: None }).unwrap();
        assert_eq!(r.results[0]["units"], "si");
        assert!(r.results[0]["threshold"].as_f64().unwrap() > 1e20);
        assert_eq!(r.exit_status(), 0);
    }

    #[test]
    fn chain_random_grid_uses_seed() {
        let f = parse("name = \"c\"\nkind = \"chain\"\n[params]\nrandom_points = 5\n");
        let a = run_scenario(&f, &RunOptions { units: None, seed: Some(1) }).unwrap();
        let b = run_scenario(&f, &RunOptions { units: None, seed: Some(2) }).unwrap();
        assert_ne!(a.results, b.results);
        assert_eq!(a.scenario.defaults.seed, 1);
        assert_eq!(a.exit_status(), 0);
    }

    #[test]
    fn chain_requires_points() {
        let f = parse("name = \"c\"\nkind = \"chain\"\n[params]\ndelta_p = 1.0\n");
        assert!(run_scenario(&f, &RunOptions::default()).is_err());
    }

    #[test]
    fn pulse_gaussian_checks() {
        let f = parse("name = \"p\"\nkind = \"pulse\"\n[params]\nshape = \"gaussian\"\nwidth = 1.0\n");
        let r = run_scenario(&f, &RunOptions::default()).unwrap();
        let c = r.checks.iter().find(|c| c.name == "duality_product").unwrap();
        assert!(c.passed && c.threshold == 1e-6);
        assert!((r.results[0]["product"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn failing_check_gives_status_two() {
        let src = "name = \"p\"\nkind = \"pulse\"\n[defaults]\nduality_tol = -1.0\n[params]\nshape = \"gaussian\"\nwidth = 1.0\n";
        let r = run_scenario(&parse(src), &RunOptions::default()).unwrap();
        assert_eq!(r.exit_status(), 2);
    }

    #[test]
    fn sweep_rules() {
        let f = parse("name = \"c\"\nkind = \"counterexample\"\n[params]\nalphas = [0.0]\n");
        let spec = SweepSpec { param: "alpha".into(), range: Some("0:1.4:0.1".into()), values: None };
        let out = sweep(&f, Some(&spec), &RunOptions::default()).unwrap();
        assert_eq!(out.rows, 15);
        assert!(sweep(&f, None, &RunOptions::default()).is_err());

        let empty = SweepSpec { range: Some("1:0:0.1".into()), ..spec.clone() };
        assert!(sweep(&f, Some(&empty), &RunOptions::default()).is_err());

        let mut two = f.clone();
        two.sweep = Some(SweepSpec { param: "mass".into(), range: Some("1:2:1".into()), values: None });
        assert!(sweep(&two, Some(&spec), &RunOptions::default()).is_err());
    }
}
