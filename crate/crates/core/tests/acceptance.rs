//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;

use cqed_router::config::{preset, ExperimentConfig, RawConfig, PRESETS};
use cqed_router::entanglement::{
    conditional_state, detector_coefficients, ghz_compose, purification, three_qubit_state, Detector,
    DetectorCoefficients, GhzPhases, PhaseMode,
};
use cqed_router::experiment::{run, run_to_dir, Table};
use cqed_router::params::{AtomBasis, CqedParams, NetworkConfig, Port};
use cqed_router::pulse_dynamics::{gaussian_pulse, scatter_router, LossBudget, PulseSpec, ScatterOptions};
use cqed_router::router_network::{all_combo_outputs_with, RouterModel};
use cqed_router::signal::{make_time_grid, ComplexSignal};
use cqed_router::state::phi2;
use cqed_router::steady_state::cw_response;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Outcome = (bool, String);

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn config(name: &str, overrides: &[(&str, &str)]) -> ExperimentConfig {
    let mut raw = RawConfig::parse(preset(name).unwrap()).unwrap();
    for (k, v) in overrides {
        raw.set(k, *v);
    }
    ExperimentConfig::from_raw(&raw).unwrap()
}

fn table(cfg: &ExperimentConfig, file: &str) -> Table {
    run(cfg).unwrap().into_iter().find(|t| t.file == file).unwrap()
}

fn spectra() -> Outcome {
    let t = table(&config("fig1", &[]), "spectrum.csv");
    let delta = t.column("delta").unwrap();
    let empty = t.column("t2_empty").unwrap();
    let coupled = t.column("t2_coupled").unwrap();
    let centre = delta.iter().position(|&d| d == 0.0).unwrap();
    let peaks: Vec<f64> = (1..delta.len() - 1)
        .filter(|&k| coupled[k] > coupled[k - 1] && coupled[k] > coupled[k + 1])
        .map(|k| delta[k])
        .collect();
    let ok = within(empty[centre], 1.0, 1e-9)
        && coupled[centre] <= 1e-4
        && peaks.len() == 2
        && within(peaks[0], -10.0, 0.1)
        && within(peaks[1], 10.0, 0.1);
    (ok, format!("empty |t|²={:.12} coupled |t|²={:.3e} peaks={peaks:?}", empty[centre], coupled[centre]))
}

/// Scatters off 20 random routers; returns the worst plateau error and the loss budgets.
fn random_scatters() -> (f64, Vec<LossBudget>) {
    let input = common::centred_pulse();
    let vacuum = ComplexSignal::zeros(*input.grid());
    let centre = (200.0 / input.grid().dt()).round() as usize;
    let f = input.samples()[centre];
    let ranges = (0.5..8.0f64, 0.2..1.0f64, 0.2..1.0f64, 0.0..0.3f64, 0.5..2.0f64);
    let mut runner = TestRunner::deterministic();
    let mut worst: f64 = 0.0;
    let mut budgets = Vec::new();
    for _ in 0..20 {
        let (g, k1, k2, kl, gamma) = ranges.new_tree(&mut runner).unwrap().current();
        let p = CqedParams::new(g, k1, k2, kl, gamma);
        for atom in AtomBasis::ALL {
            let res = scatter_router(&p, atom, &input, &vacuum).unwrap();
            let cw = cw_response(&p, atom.is_coupled(), Port::One).unwrap();
            worst = worst
                .max(((res.out1.samples()[centre] / f).norm() - cw.r.norm()).abs())
                .max(((res.out2.samples()[centre] / f).norm() - cw.t.norm()).abs());
            budgets.push(res.loss);
        }
    }
    (worst, budgets)
}

fn steady_state_oracle(worst: f64) -> Outcome {
    (worst < 1e-3, format!("20 random routers, worst plateau deviation {worst:.3e} (tol 1e-3)"))
}

fn flux_conservation(mut budgets: Vec<LossBudget>) -> Outcome {
    // figure routers, both atom states, each input port and both together
    for (t, g) in [(400.0, 3.0), (400.0, 2.0), (40.0, 3.0), (40.0, 10.0)] {
        let f = common::pulse(t, 0.01);
        let vacuum = ComplexSignal::zeros(*f.grid());
        let p = CqedParams::new(g, 0.45, 0.45, 0.1, 0.5);
        for atom in AtomBasis::ALL {
            for (a, b) in [(&f, &vacuum), (&vacuum, &f), (&f, &f)] {
                budgets.push(scatter_router(&p, atom, a, b).unwrap().loss);
            }
        }
    }
    let scatter = table(&config("fig3", &[]), "scatter_loss.csv");
    let imb = scatter.column("imbalance").unwrap();
    let res = scatter.column("residual").unwrap();
    let worst_imb = budgets.iter().map(|l| l.imbalance().abs()).chain(imb.iter().map(|x| x.abs())).fold(0.0, f64::max);
    let worst_res = budgets.iter().map(|l| l.residual.abs()).chain(res.iter().map(|x| x.abs())).fold(0.0, f64::max);
    (
        worst_imb < 1e-6 && worst_res < 1e-8,
        format!("{} scatters, worst imbalance {worst_imb:.3e}, worst residual {worst_res:.3e}", budgets.len() + imb.len()),
    )
}

fn overlap() -> Outcome {
    let at_gamma = |gamma: &str| {
        table(&config("fig4", &[("router.gamma", gamma)]), "overlap.csv").column("overlap").unwrap()
    };
    let target = at_gamma("1");
    let preset = at_gamma("0.5");
    let ok = target[3] > 0.999 && target.windows(2).all(|w| w[1] >= w[0]);
    (ok, format!("γ=1: {target:.6?} (preset γ=0.5: {preset:.6?})"))
}

fn purify(name: &str, mode: &str) -> Table {
    table(&config(name, &[("purify.n_max", "8"), ("phase_mode", mode)]), "purify.csv")
}

struct Row {
    f1: f64,
    f2: f64,
    p1: f64,
    p2: f64,
}

fn row(t: &Table, n: usize) -> Row {
    let col = |c: &str| t.column(c).unwrap()[n - 1];
    Row { f1: col("F_d1"), f2: col("F_d2"), p1: col("P_d1"), p2: col("P_d2") }
}

fn one_photon(magnitude: &Table, aware: &Table) -> Outcome {
    let r = row(magnitude, 1);
    let a = row(aware, 1);
    let mean = (r.f1 + r.f2) / 2.0;
    let ok = within(mean, 0.986, 0.010)
        && within(r.p1, 0.38, 0.03)
        && within(r.p2, 0.38, 0.03)
        && within(r.p1 + r.p2, 0.76, 0.05);
    (
        ok,
        format!(
            "mean F={mean:.5} (phase-aware {:.5}), P={:.4}/{:.4}, total {:.4}",
            (a.f1 + a.f2) / 2.0,
            r.p1,
            r.p2,
            r.p1 + r.p2
        ),
    )
}

fn two_photon(magnitude: &Table) -> Outcome {
    let r = row(magnitude, 2);
    let mean = (r.f1 + r.f2) / 2.0;
    let ok = within(mean, 0.997, 0.005)
        && within(r.p1, 0.28, 0.04)
        && within(r.p2, 0.28, 0.04)
        && within(r.p1 + r.p2, 0.56, 0.06);
    (ok, format!("mean F={mean:.5}, P={:.4}/{:.4}, total {:.4}", r.p1, r.p2, r.p1 + r.p2))
}

fn three_photon(g2: &Table) -> Outcome {
    let r = row(g2, 3);
    let ok = r.f1 > 0.998 && r.f2 > 0.998 && within(r.p1 + r.p2, 0.30, 0.05);
    (ok, format!("F={:.6}/{:.6}, total P {:.4}", r.f1, r.f2, r.p1 + r.p2))
}

fn monotonicity(magnitude: &Table) -> Outcome {
    let f1: Vec<f64> = (1..=8).map(|n| row(magnitude, n).f1).collect();
    let f2: Vec<f64> = (1..=8).map(|n| row(magnitude, n).f2).collect();
    let ok = f2.windows(2).all(|w| w[1] >= w[0]) && f1[1..].windows(2).all(|w| w[1] < w[0]);
    (ok, format!("F21 n=2..8 {:.5?}, F22 n=1..8 {:.5?}", &f1[1..], f2))
}

fn ideal_limit() -> Outcome {
    let net = NetworkConfig::uniform(CqedParams::new(1000.0, 0.5, 0.5, 0.0, 0.01), 2);
    // g = 1000 aliases its ringing on the dt = 0.01 grid at the 1e-7 level
    let model = RouterModel::Pulsed(ScatterOptions { step_doubling_tol: Some(1e-6) });
    let run = |t: f64, spec: PulseSpec| {
        let grid = make_time_grid(t, 0.01, 20.0).unwrap();
        let f = gaussian_pulse(&grid, &spec).unwrap();
        let c = detector_coefficients(&all_combo_outputs_with(&net, &f, &model).unwrap()).unwrap();
        purification(&c, 1, PhaseMode::MagnitudeOnly).unwrap().rows[0]
    };
    // the empty cavities only act as ideal mirrors for pulses narrow against κ
    let narrow = run(2000.0, PulseSpec::new(1000.0, 400.0));
    let figure = run(400.0, PulseSpec::default_for(400.0));
    let total = narrow.prob_d1 + narrow.prob_d2;
    let ok = narrow.fidelity_d1 > 0.99999 && narrow.fidelity_d2 > 0.99999 && total > 0.9999;
    (
        ok,
        format!(
            "T=2000 w=400: F={:.8}/{:.8}, P total {total:.8} (T=400 w=T/5: F={:.6}/{:.6})",
            narrow.fidelity_d1, narrow.fidelity_d2, figure.fidelity_d1, figure.fidelity_d2
        ),
    )
}

fn construction() -> Outcome {
    let input = common::pulse(40.0, 0.01);
    let model = RouterModel::SteadyState;
    let c3 = DetectorCoefficients::from_table(&all_combo_outputs_with(&common::ideal(3), &input, &model).unwrap()).unwrap();
    let c2 = detector_coefficients(&all_combo_outputs_with(&common::ideal(2), &input, &model).unwrap()).unwrap();
    let mut worst: f64 = 0.0;
    // the last router's transmission sign stands in for e^{iφ3}
    for (mode, phi3) in [(PhaseMode::MagnitudeOnly, 0.0), (PhaseMode::PhaseAware, std::f64::consts::PI)] {
        for det in Detector::BOTH {
            let direct = conditional_state(&c3, det, 1, mode).unwrap();
            let composed = three_qubit_state(&c2, phi3, det, mode).unwrap();
            worst = worst.max(direct.distance_up_to_phase(&composed).unwrap());
        }
    }
    let link = conditional_state(&c2, Detector::D1, 1, PhaseMode::MagnitudeOnly).unwrap();
    let simulated = ghz_compose(&link, &link, GhzPhases::default()).unwrap().fidelity;
    let exact = ghz_compose(&phi2(0.0, 0.0, 0.0), &phi2(0.0, 0.0, 0.0), GhzPhases::default()).unwrap().fidelity;
    let ok = worst < 1e-9 && within(simulated, 1.0, 1e-12) && within(exact, 1.0, 1e-12);
    (ok, format!("N=3 distance {worst:.3e}, GHZ fidelity {simulated:.15}/{exact:.15}"))
}

fn determinism() -> Outcome {
    let mut differing = Vec::new();
    for (name, _) in PRESETS {
        let cfg = config(name, &[]);
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        let paths: Vec<_> = dirs.iter().map(|d| run_to_dir(&cfg, d.path()).unwrap()).collect();
        for (a, b) in paths[0].iter().zip(&paths[1]) {
            if std::fs::read(a).unwrap() != std::fs::read(b).unwrap() {
                differing.push(format!("{name}/{}", a.file_name().unwrap().to_string_lossy()));
            }
        }
        if paths[0].len() != paths[1].len() {
            differing.push(name.to_string());
        }
    }
    (differing.is_empty(), format!("{} presets run twice, differing files: {differing:?}", PRESETS.len()))
}

fn main() -> ExitCode {
    // the harness passes its own flags through; a filter argument skips the suite
    if std::env::args().skip(1).any(|a| !a.starts_with('-')) {
        return ExitCode::SUCCESS;
    }
    let (worst, budgets) = random_scatters();
    let g3 = purify("fig5-g3", "magnitude");
    let g3_aware = purify("fig5-g3", "phase_aware");
    let g2 = purify("fig5-g2", "magnitude");
    let results: Vec<(&str, Outcome)> = vec![
        ("spectra", spectra()),
        ("steady-state oracle", steady_state_oracle(worst)),
        ("flux conservation", flux_conservation(budgets)),
        ("overlap", overlap()),
        ("one-photon entanglement", one_photon(&g3, &g3_aware)),
        ("two-photon purification", two_photon(&g3)),
        ("three-photon purification", three_photon(&g2)),
        ("monotonicity", monotonicity(&g3)),
        ("ideal limit", ideal_limit()),
        ("construction equivalence", construction()),
        ("determinism", determinism()),
    ];
    let mut failed = 0;
    for (k, (name, (ok, detail))) in results.iter().enumerate() {
        println!("[{}] {:>2} {name}: {detail}", if *ok { "PASS" } else { "FAIL" }, k + 1);
        failed += usize::from(!ok);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
