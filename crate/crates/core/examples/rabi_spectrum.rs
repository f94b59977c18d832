//! Power spectra of an empty and an atom-loaded cavity.
//!
//! ```bash
//! cargo run --release --example rabi_spectrum
//! ```

use cqed_router::params::{CqedParams, Port};
use cqed_router::steady_state::{cw_response, default_detunings, local_maxima, spectrum};

fn main() -> cqed_router::error::Result<()> {
    let p = CqedParams::new(10.0, 0.5, 0.5, 0.0, 1.0);
    let rows = spectrum(&p, &default_detunings())?;

    let peaks = local_maxima(&rows, |r| r.t2_coupled);
    println!("coupled transmission peaks at Δ = {peaks:?} (g = {})", p.g);

    let on_res = cw_response(&p, true, Port::One)?;
    println!("resonant coupled: |r|² = {:.6}, |t|² = {:.3e}", on_res.r.norm_sqr(), on_res.t.norm_sqr());

    println!("\n{:>8} {:>10} {:>10}", "Δ", "|t|² empty", "|t|² atom");
    for r in rows.iter().step_by(100) {
        println!("{:>8.2} {:>10.5} {:>10.5}", r.delta, r.t2_empty, r.t2_coupled);
    }
    Ok(())
}
