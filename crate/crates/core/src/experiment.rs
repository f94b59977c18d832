//! Running configured experiments and writing their tables.
//!
//! Each run produces one or more CSV files plus `manifest.cfg`, the resolved
//! configuration in the input grammar. Feeding the manifest back in repeats
//! the run byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::config::{Experiment, ExperimentConfig, SweepAxis};
use crate::entanglement::{
    conditional_state, detector_coefficients, ghz_compose, purification, success_probability,
    target_state, Detector, DetectorCoefficients, GhzPhases,
};
use crate::error::{Error, Result};
use crate::params::{AtomBasis, NetworkConfig};
use crate::pulse_dynamics::{gaussian_pulse, scatter_router_with, ScatterOptions};
use crate::router_network::{all_combo_outputs_with, path_mismatch, ComboKey, RouterModel};
use crate::signal::{ComplexSignal, TimeGrid};
use crate::state::StateVector;
use crate::steady_state::{linspace, spectrum};

/// Name of the manifest written next to the tables.
pub const MANIFEST: &str = "manifest.cfg";

/// One output table; every cell is already formatted.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(file: &str, columns: &[&str]) -> Self {
        Self {
            file: file.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push_nums(&mut self, values: &[f64]) {
        self.rows.push(values.iter().map(|v| fmt_num(*v)).collect());
    }

    /// Column `name` parsed back to numbers.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        self.rows.iter().map(|r| r[i].parse().ok()).collect()
    }

    /// CSV text: `#` preamble, header row, data rows.
    pub fn to_csv(&self, preamble: &str) -> String {
        let mut out = String::new();
        for line in preamble.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros
/// dropped, exponent form outside `[1e-4, 1e12)`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Which stage of a run failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Config,
    Solver,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunError {
    pub kind: FailureKind,
    pub error: Error,
}

impl RunError {
    pub fn config(error: Error) -> Self {
        Self {
            kind: FailureKind::Config,
            error,
        }
    }

    pub fn solver(error: Error) -> Self {
        Self {
            kind: FailureKind::Solver,
            error,
        }
    }

    /// Process exit status: 2 for configuration problems, 3 for solver failures.
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            FailureKind::Config => 2,
            FailureKind::Solver => 3,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.error.code(), self.error)
    }
}

impl std::error::Error for RunError {}

fn input_pulse(cfg: &ExperimentConfig, pulse_length: f64) -> Result<ComplexSignal> {
    let grid = TimeGrid::new(pulse_length, cfg.dt, cfg.tail)?;
    gaussian_pulse(&grid, &cfg.pulse.spec(pulse_length))
}

fn coefficient_table(coeffs: &DetectorCoefficients) -> Table {
    let mut t = Table::new(
        "coefficients.csv",
        &["combo", "prior_re", "prior_im", "d1_abs", "d1_arg", "d2_abs", "d2_arg"],
    );
    let n = coeffs.n_qubits();
    for i in 0..1 << n {
        let key = ComboKey::from_index(n, i);
        let p = coeffs.prior()[i];
        let c1 = coeffs.coefficients(Detector::D1)[i];
        let c2 = coeffs.coefficients(Detector::D2)[i];
        let mut row = vec![key.to_string()];
        row.extend([p.re, p.im, c1.norm(), c1.arg(), c2.norm(), c2.arg()].map(fmt_num));
        t.rows.push(row);
    }
    t
}

fn state_rows(t: &mut Table, label: &str, state: &StateVector) {
    for (i, a) in state.amplitudes().iter().enumerate() {
        let key = ComboKey::from_index(state.n_qubits(), i);
        t.rows.push(vec![label.to_string(), key.to_string(), fmt_num(a.re), fmt_num(a.im)]);
    }
}

fn run_spectrum(cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    let (a, b, n) = cfg.spectrum;
    let rows = spectrum(&cfg.network.routers[0], &linspace(a, b, n))?;
    let mut t = Table::new("spectrum.csv", &["delta", "r2_empty", "t2_empty", "r2_coupled", "t2_coupled"]);
    for r in rows {
        t.push_nums(&[r.delta, r.r2_empty, r.t2_empty, r.r2_coupled, r.t2_coupled]);
    }
    Ok(vec![t])
}

fn run_scatter(cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    let input = input_pulse(cfg, cfg.pulse.length)?;
    let vacuum = ComplexSignal::zeros(*input.grid());
    let opts = match cfg.router_model() {
        RouterModel::Pulsed(o) => o,
        RouterModel::SteadyState => ScatterOptions::default(),
    };
    let p = cfg.network.routers[0];
    let results = AtomBasis::ALL
        .into_par_iter()
        .map(|atom| scatter_router_with(&p, atom, &input, &vacuum, &opts))
        .collect::<Result<Vec<_>>>()?;
    let (alpha, beta) = (&results[0], &results[1]);
    let mut t = Table::new(
        "scatter.csv",
        &[
            "t", "in_re", "in_im", "out1_alpha_re", "out1_alpha_im", "out2_alpha_re", "out2_alpha_im",
            "out1_beta_re", "out1_beta_im", "out2_beta_re", "out2_beta_im", "cavity_beta_re",
            "cavity_beta_im", "atom_beta_re", "atom_beta_im",
        ],
    );
    let grid = input.grid();
    for k in (0..grid.len()).step_by(cfg.scatter_stride) {
        let z = [
            input.samples()[k],
            alpha.out1.samples()[k],
            alpha.out2.samples()[k],
            beta.out1.samples()[k],
            beta.out2.samples()[k],
            beta.trace.c_cavity.samples()[k],
            beta.trace.c_atom.samples()[k],
        ];
        let mut row = vec![grid.time(k)];
        row.extend(z.iter().flat_map(|c| [c.re, c.im]));
        t.push_nums(&row);
    }
    let mut loss = Table::new(
        "scatter_loss.csv",
        &["atom", "input_norm", "output_norm", "cavity_loss", "atomic_loss", "residual", "imbalance"],
    );
    for (atom, res) in AtomBasis::ALL.iter().zip(&results) {
        let l = &res.loss;
        let mut row = vec![if atom.is_coupled() { "beta" } else { "alpha" }.to_string()];
        row.extend(
            [l.input_norm, l.output_norm, l.cavity_loss, l.atomic_loss, l.residual, l.imbalance()]
                .map(fmt_num),
        );
        loss.rows.push(row);
    }
    Ok(vec![t, loss])
}

/// Network with the sweep value applied.
fn network_at(cfg: &ExperimentConfig, axis: SweepAxis, x: f64) -> NetworkConfig {
    let mut net = cfg.network.clone();
    match axis {
        SweepAxis::G => net.routers.iter_mut().for_each(|p| p.g = x),
        SweepAxis::KappaLoss => net.routers.iter_mut().for_each(|p| p.kappa_loss = x),
        SweepAxis::Gamma => net.routers.iter_mut().for_each(|p| p.gamma = x),
        SweepAxis::ArmPhase => net.arm_phases.iter_mut().for_each(|a| *a = x),
        SweepAxis::T => {}
    }
    net
}

fn run_overlap_sweep(cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    let sweep = cfg.sweep.as_ref().expect("validated sweep");
    let model = cfg.router_model();
    let values = sweep
        .values
        .par_iter()
        .map(|&len| {
            let input = input_pulse(cfg, len)?;
            path_mismatch(&all_combo_outputs_with(&cfg.network, &input, &model)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new("overlap.csv", &["T", "overlap"]);
    for (len, ov) in sweep.values.iter().zip(values) {
        t.push_nums(&[*len, ov]);
    }
    Ok(vec![t])
}

fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    let sweep = cfg.sweep.as_ref().expect("validated sweep");
    let model = cfg.router_model();
    let rows = sweep
        .values
        .par_iter()
        .map(|&x| {
            let len = if sweep.axis == SweepAxis::T { x } else { cfg.pulse.length };
            let input = input_pulse(cfg, len)?;
            let net = network_at(cfg, sweep.axis, x);
            let table = all_combo_outputs_with(&net, &input, &model)?;
            let coeffs = detector_coefficients(&table)?;
            let [a1, b1, _, _] = coeffs.named(Detector::D1)?;
            let report = purification(&coeffs, 1, cfg.phase_mode)?;
            let r = report.rows[0];
            Ok(vec![
                x,
                a1,
                b1,
                a1 - b1,
                r.fidelity_d1,
                r.fidelity_d2,
                r.prob_d1,
                r.prob_d2,
                path_mismatch(&table)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(
        "sweep.csv",
        &[sweep.axis.name(), "A1", "B1", "A1_minus_B1", "F1_d1", "F1_d2", "P1_d1", "P1_d2", "overlap"],
    );
    for r in rows {
        t.push_nums(&r);
    }
    Ok(vec![t])
}

fn run_entangle(cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    let input = input_pulse(cfg, cfg.pulse.length)?;
    let table = all_combo_outputs_with(&cfg.network, &input, &cfg.router_model())?;
    let coeffs = DetectorCoefficients::from_table(&table)?;
    let mut states = Table::new("states.csv", &["detector", "combo", "amp_re", "amp_im"]);
    for det in Detector::BOTH {
        let s = conditional_state(&coeffs, det, 1, cfg.phase_mode)?;
        state_rows(&mut states, detector_label(det), &s);
    }
    let mut out = vec![coefficient_table(&coeffs), states];
    if coeffs.n_qubits() == 2 {
        let overlap = path_mismatch(&table)?;
        let report = purification(&coeffs, 1, cfg.phase_mode)?;
        let r = report.rows[0];
        let mut t = Table::new(
            "entangle.csv",
            &["detector", "A", "B", "C", "D", "fidelity", "probability", "overlap"],
        );
        for (det, f, p) in [
            (Detector::D1, r.fidelity_d1, r.prob_d1),
            (Detector::D2, r.fidelity_d2, r.prob_d2),
        ] {
            let m = coeffs.named(det)?;
            let mut row = vec![detector_label(det).to_string()];
            row.extend([m[0], m[1], m[2], m[3], f, p, overlap].map(fmt_num));
            t.rows.push(row);
        }
        out.push(t);
    }
    Ok(out)
}

fn detector_label(det: Detector) -> &'static str {
    match det {
        Detector::D1 => "D1",
        Detector::D2 => "D2",
    }
}

fn run_purify(cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    let input = input_pulse(cfg, cfg.pulse.length)?;
    let table = all_combo_outputs_with(&cfg.network, &input, &cfg.router_model())?;
    let coeffs = detector_coefficients(&table)?;
    let report = purification(&coeffs, cfg.n_max, cfg.phase_mode)?;
    let mut t = Table::new("purify.csv", &["n", "F_d1", "F_d2", "P_d1", "P_d2"]);
    for r in &report.rows {
        t.push_nums(&[r.n as f64, r.fidelity_d1, r.fidelity_d2, r.prob_d1, r.prob_d2]);
    }
    Ok(vec![t, coefficient_table(&coeffs)])
}

/// Largest GHZ fidelity reachable with a local phase on one qubit.
fn best_phase_ghz_fidelity(state: &StateVector) -> f64 {
    let a = state.amplitudes();
    ((a[0b000].norm() + a[0b111].norm()) / std::f64::consts::SQRT_2).min(1.0)
}

fn run_ghz(cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    let input = input_pulse(cfg, cfg.pulse.length)?;
    let model = cfg.router_model();
    let link = |other: usize| -> Result<(StateVector, f64)> {
        let net = NetworkConfig {
            routers: vec![cfg.network.routers[0], cfg.network.routers[other]],
            qubit_inits: vec![cfg.network.qubit_inits[0], cfg.network.qubit_inits[other]],
            arm_phases: vec![cfg.network.arm_phases[other - 1]],
        };
        let table = all_combo_outputs_with(&net, &input, &model)?;
        let coeffs = detector_coefficients(&table)?;
        let s = conditional_state(&coeffs, Detector::D1, cfg.ghz_photons, cfg.phase_mode)?;
        Ok((s, success_probability(&coeffs, Detector::D1, cfg.ghz_photons)))
    };
    let (l12, p12) = link(1)?;
    let (l13, p13) = link(2)?;
    let report = ghz_compose(&l12, &l13, GhzPhases::default())?;
    let mut states = Table::new("ghz_state.csv", &["state", "combo", "amp_re", "amp_im"]);
    state_rows(&mut states, "link12", &l12);
    state_rows(&mut states, "link13", &l13);
    state_rows(&mut states, "ghz", &report.state);
    let target = target_state(Detector::D1);
    let mut t = Table::new("ghz.csv", &["quantity", "value"]);
    for (name, v) in [
        ("link12_fidelity", target.fidelity(&l12)?),
        ("link13_fidelity", target.fidelity(&l13)?),
        ("link12_probability", p12),
        ("link13_probability", p13),
        ("ghz_fidelity", report.fidelity),
        ("ghz_fidelity_best_phase", best_phase_ghz_fidelity(&report.state)),
        ("below_threshold", if report.below_threshold { 1.0 } else { 0.0 }),
    ] {
        t.rows.push(vec![name.to_string(), fmt_num(v)]);
    }
    Ok(vec![t, states])
}

/// Compute every table of `cfg` without touching the filesystem.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    match cfg.experiment {
        Experiment::Spectrum => run_spectrum(cfg),
        Experiment::Scatter => run_scatter(cfg),
        Experiment::OverlapSweep => run_overlap_sweep(cfg),
        Experiment::Entangle => run_entangle(cfg),
        Experiment::Purify => run_purify(cfg),
        Experiment::Ghz => run_ghz(cfg),
        Experiment::Sweep => run_sweep(cfg),
    }
}

/// Run `cfg` and write its tables and manifest into `out_dir`.
pub fn run_to_dir(cfg: &ExperimentConfig, out_dir: &Path) -> std::result::Result<Vec<PathBuf>, RunError> {
    fs::create_dir_all(out_dir).map_err(|e| RunError::config(e.into()))?;
    let tables = run(cfg).map_err(RunError::solver)?;
    let resolved = cfg.to_text();
    let mut written = Vec::with_capacity(tables.len() + 1);
    for t in &tables {
        let path = out_dir.join(&t.file);
        fs::write(&path, t.to_csv(&resolved)).map_err(|e| RunError::config(e.into()))?;
        written.push(path);
    }
    let manifest = out_dir.join(MANIFEST);
    let text = format!("# resolved configuration; run it again with `simulate {MANIFEST}`\n{resolved}");
    fs::write(&manifest, text).map_err(|e| RunError::config(e.into()))?;
    written.push(manifest);
    Ok(written)
}
