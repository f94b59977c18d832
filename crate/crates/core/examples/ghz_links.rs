//! Three-router states: the cascade construction and GHZ composition from
//! two heralded links sharing router 1.
//!
//! ```bash
//! cargo run --release --example ghz_links
//! ```

use cqed_router::entanglement::{
    conditional_state, detector_coefficients, ghz_compose, three_qubit_from_pair, Detector,
    GhzPhases, PhaseMode,
};
use cqed_router::params::{CqedParams, NetworkConfig};
use cqed_router::pulse_dynamics::{gaussian_pulse, PulseSpec};
use cqed_router::router_network::all_combo_outputs;
use cqed_router::signal::make_time_grid;
use cqed_router::state::{phi2, psi2, StateVector};

fn show(label: &str, s: &StateVector) {
    print!("{label}:");
    for (i, a) in s.amplitudes().iter().enumerate() {
        if a.norm() > 1e-6 {
            print!("  {:+.3}|{i:03b}⟩", a.re);
        }
    }
    println!();
}

fn main() -> cqed_router::error::Result<()> {
    let (phi, psi) = (phi2(0.0, 0.0, 0.0), psi2(0.0, 0.0, 0.0));
    for det in Detector::BOTH {
        show(&format!("ideal cascade, {det:?}"), &three_qubit_from_pair(&phi, &psi, 0.0, det)?);
    }

    let ideal = ghz_compose(&phi, &phi, GhzPhases::default())?;
    show("ideal GHZ", &ideal.state);
    println!("  fidelity {:.12}", ideal.fidelity);

    // links from simulated g = 3 routers, one click each
    let net = NetworkConfig::uniform(CqedParams::new(3.0, 0.45, 0.45, 0.1, 0.5), 2);
    let grid = make_time_grid(400.0, 0.01, 20.0)?;
    let input = gaussian_pulse(&grid, &PulseSpec::default_for(400.0))?;
    let coeffs = detector_coefficients(&all_combo_outputs(&net, &input)?)?;
    for n in [1, 2, 3] {
        let link = conditional_state(&coeffs, Detector::D1, n, PhaseMode::MagnitudeOnly)?;
        let ghz = ghz_compose(&link, &link, GhzPhases::default())?;
        println!("{n} click(s) per link: GHZ fidelity {:.5}", ghz.fidelity);
    }
    Ok(())
}
