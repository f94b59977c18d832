//! Sweep the common coupling g and locate the value that balances the two
//! D1 paths (A1 = B1).
//!
//! ```bash
//! cargo run --release --example tune_coupling
//! ```

use cqed_router::entanglement::{balanced_coupling, double_path_imbalance};
use cqed_router::params::{CqedParams, NetworkConfig};
use cqed_router::pulse_dynamics::{gaussian_pulse, PulseSpec};
use cqed_router::router_network::RouterModel;
use cqed_router::signal::make_time_grid;

fn main() -> cqed_router::error::Result<()> {
    let net = NetworkConfig::uniform(CqedParams::new(3.0, 0.45, 0.45, 0.1, 0.5), 2);
    let grid = make_time_grid(400.0, 0.01, 20.0)?;
    let input = gaussian_pulse(&grid, &PulseSpec::default_for(400.0))?;

    for model in [RouterModel::SteadyState, RouterModel::default()] {
        println!("{model:?}");
        for g in [1.5, 2.0, 2.5, 3.0] {
            println!("  g = {g:.1}: A1 - B1 = {:+.5}", double_path_imbalance(&net, g, &input, &model)?);
        }
        let g = balanced_coupling(&net, &input, &model, 1.0, 10.0, 1e-4)?;
        println!("  balanced at g = {g:.4}");
    }
    Ok(())
}
