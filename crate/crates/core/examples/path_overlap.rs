//! Shape mismatch between the double-transmission and double-reflection
//! paths of a two-router interferometer, versus pulse length.
//!
//! ```bash
//! cargo run --release --example path_overlap
//! ```

use cqed_router::params::{CqedParams, NetworkConfig};
use cqed_router::pulse_dynamics::{gaussian_pulse, PulseSpec};
use cqed_router::router_network::{all_combo_outputs, path_mismatch};
use cqed_router::signal::make_time_grid;

fn main() -> cqed_router::error::Result<()> {
    let net = NetworkConfig::uniform(CqedParams::new(3.0, 0.45, 0.45, 0.1, 0.5), 2);
    println!("{:>6} {:>10}", "T", "overlap");
    for t in [20.0, 40.0, 100.0, 200.0, 400.0] {
        let grid = make_time_grid(t, 0.01, 20.0)?;
        let input = gaussian_pulse(&grid, &PulseSpec::default_for(t))?;
        let table = all_combo_outputs(&net, &input)?;
        println!("{t:>6} {:>10.6}", path_mismatch(&table)?);
    }
    Ok(())
}
