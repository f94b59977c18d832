//! One Gaussian photon on a single router, for both atomic states.
//!
//! Compares the output plateau with the CW coefficients and prints where
//! the photon went.
//!
//! ```bash
//! cargo run --release --example pulse_scatter
//! ```

use cqed_router::params::{AtomBasis, CqedParams, Port};
use cqed_router::pulse_dynamics::{gaussian_pulse, scatter_router, PulseSpec};
use cqed_router::signal::{make_time_grid, ComplexSignal};
use cqed_router::steady_state::cw_response;

fn main() -> cqed_router::error::Result<()> {
    let p = CqedParams::new(3.0, 0.45, 0.45, 0.1, 1.0);
    let grid = make_time_grid(400.0, 0.01, 20.0)?;
    // centred so that the pulse is smooth at both ends of [0, T]
    let spec = PulseSpec::new(200.0, 80.0);
    let input = gaussian_pulse(&grid, &spec)?;
    let vacuum = ComplexSignal::zeros(grid);
    let centre = (spec.center / grid.dt()).round() as usize;

    for atom in AtomBasis::ALL {
        let res = scatter_router(&p, atom, &input, &vacuum)?;
        let cw = cw_response(&p, atom.is_coupled(), Port::One)?;
        let f = input.samples()[centre];
        println!("atom {atom}:");
        println!(
            "  plateau |out1/in| = {:.5} (cw {:.5}), |out2/in| = {:.5} (cw {:.5})",
            (res.out1.samples()[centre] / f).norm(),
            cw.r.norm(),
            (res.out2.samples()[centre] / f).norm(),
            cw.t.norm(),
        );
        let l = &res.loss;
        println!(
            "  out {:.6}, cavity loss {:.6}, atom loss {:.6}, left inside {:.1e}, imbalance {:.1e}",
            l.output_norm,
            l.cavity_loss,
            l.atomic_loss,
            l.residual,
            l.imbalance()
        );
    }
    Ok(())
}
