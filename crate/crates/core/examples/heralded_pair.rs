//! Heralded entanglement of two routers and its purification by repeated
//! same-detector clicks.
//!
//! ```bash
//! cargo run --release --example heralded_pair
//! cargo run --release --example heralded_pair -- 2.0
//! ```

use cqed_router::entanglement::{
    conditional_state, detector_coefficients, purification, Detector, PhaseMode,
};
use cqed_router::params::{CqedParams, NetworkConfig};
use cqed_router::pulse_dynamics::{gaussian_pulse, PulseSpec};
use cqed_router::router_network::all_combo_outputs;
use cqed_router::signal::make_time_grid;

fn main() -> cqed_router::error::Result<()> {
    let g: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3.0);
    let net = NetworkConfig::uniform(CqedParams::new(g, 0.45, 0.45, 0.1, 0.5), 2);
    let grid = make_time_grid(400.0, 0.01, 20.0)?;
    let input = gaussian_pulse(&grid, &PulseSpec::default_for(400.0))?;

    let table = all_combo_outputs(&net, &input)?;
    let coeffs = detector_coefficients(&table)?;
    for det in Detector::BOTH {
        let [a, b, c, d] = coeffs.named(det)?;
        println!("{det:?}: A = {a:.4}  B = {b:.4}  C = {c:.4}  D = {d:.4}");
    }

    let state = conditional_state(&coeffs, Detector::D2, 1, PhaseMode::MagnitudeOnly)?;
    println!("\none click on D2 leaves");
    for (i, amp) in state.amplitudes().iter().enumerate() {
        println!("  |{i:02b}⟩ {:+.4}", amp.re);
    }

    let report = purification(&coeffs, 6, PhaseMode::MagnitudeOnly)?;
    println!("\n{:>2} {:>8} {:>8} {:>8} {:>8} {:>8}", "n", "F_D1", "F_D2", "P_D1", "P_D2", "F mean");
    for r in &report.rows {
        println!(
            "{:>2} {:>8.5} {:>8.5} {:>8.4} {:>8.4} {:>8.5}",
            r.n,
            r.fidelity_d1,
            r.fidelity_d2,
            r.prob_d1,
            r.prob_d2,
            r.mean_fidelity()
        );
    }
    Ok(())
}
