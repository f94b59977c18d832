//! Continuous-wave reflection and transmission of a single router.
//!
//! Amplitudes follow the same sign convention as the pulsed amplitude
//! equations: the reflected field is `f_in + √(2κ_in) C`, so transmission
//! through a resonant cavity carries a π phase.

use num_complex::Complex64;

use crate::error::Result;
use crate::params::{CqedParams, Port};

/// CW reflection `r` and transmission `t` for light entering `input_port`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CwResponse {
    pub r: Complex64,
    pub t: Complex64,
    pub input_port: Port,
}

/// Steady-state response of the router. With `coupled == false` the atom is
/// ignored (g = 0), which is the α (transmitting) configuration.
pub fn cw_response(p: &CqedParams, coupled: bool, input_port: Port) -> Result<CwResponse> {
    let p = p.validate()?;
    let g = if coupled { p.g } else { 0.0 };
    let atom = Complex64::new(p.gamma, p.delta_a);
    let cavity = Complex64::new(p.kappa(), p.delta_c);
    // (iΔa + γ) / [(iΔc + κ)(iΔa + γ) + g²], with its removable 0/0 at γ = Δa = 0
    let response = if g == 0.0 {
        cavity.inv()
    } else if atom.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        atom / (cavity * atom + g * g)
    };
    let k_in = p.port_rate(input_port);
    let r = Complex64::new(1.0, 0.0) - response * (2.0 * k_in);
    let t = -response * (2.0 * (p.kappa1 * p.kappa2).sqrt());
    Ok(CwResponse { r, t, input_port })
}

/// One row of a power spectrum scan with Δ = Δa = Δc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub delta: f64,
    pub r2_empty: f64,
    pub t2_empty: f64,
    pub r2_coupled: f64,
    pub t2_coupled: f64,
}

/// Default scan: 1201 points on [-15, 15].
pub fn default_detunings() -> Vec<f64> {
    linspace(-15.0, 15.0, 1201)
}

pub(crate) fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count).map(|k| start + step * k as f64).collect()
        }
    }
}

/// Power reflection/transmission for the empty and the coupled cavity over a
/// common detuning axis. Detunings already set on `p` are overridden.
pub fn spectrum(p: &CqedParams, detunings: &[f64]) -> Result<Vec<SpectrumRow>> {
    let base = p.validate()?;
    detunings
        .iter()
        .map(|&delta| {
            let q = base.with_detuning(delta, delta);
            let empty = cw_response(&q, false, Port::One)?;
            let coupled = cw_response(&q, true, Port::One)?;
            Ok(SpectrumRow {
                delta,
                r2_empty: empty.r.norm_sqr(),
                t2_empty: empty.t.norm_sqr(),
                r2_coupled: coupled.r.norm_sqr(),
                t2_coupled: coupled.t.norm_sqr(),
            })
        })
        .collect()
}

/// Detunings of the strict local maxima of a sampled curve.
pub fn local_maxima(rows: &[SpectrumRow], value: impl Fn(&SpectrumRow) -> f64) -> Vec<f64> {
    rows.windows(3)
        .filter(|w| value(&w[1]) > value(&w[0]) && value(&w[1]) > value(&w[2]))
        .map(|w| w[1].delta)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn atom_without_decay() {
        let p = CqedParams::new(3.0, 0.5, 0.5, 0.0, 0.0);
        let empty = cw_response(&p, false, Port::One).unwrap();
        assert!(empty.r.norm() < 1e-15 && (empty.t + 1.0).norm() < 1e-15);
        let coupled = cw_response(&p, true, Port::One).unwrap();
        assert_eq!(coupled.r, Complex64::new(1.0, 0.0));
        assert_eq!(coupled.t, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn empty_lossless_cavity_transmits() {
        let p = CqedParams::new(0.0, 0.5, 0.5, 0.0, 1.0);
        let cw = cw_response(&p, true, Port::One).unwrap();
        assert!(cw.r.norm() < 1e-15);
        assert!(close(cw.t.norm(), 1.0, 1e-15));
        // π phase on transmission
        assert!(close(cw.t.re, -1.0, 1e-15));
    }

    #[test]
    fn fig3_router_coefficients() {
        let p = CqedParams::new(3.0, 0.45, 0.45, 0.1, 1.0);
        let cw = cw_response(&p, true, Port::One).unwrap();
        // 1 - 2(0.45)(1)/(1 + 9), 2(0.45)(1)/(1 + 9)
        assert!(close(cw.r.re, 0.91, 1e-15) && cw.r.im.abs() < 1e-15);
        assert!(close(cw.t.re, -0.09, 1e-15) && cw.t.im.abs() < 1e-15);
        let empty = cw_response(&p, false, Port::One).unwrap();
        assert!(close(empty.r.re, 0.1, 1e-15));
        assert!(close(empty.t.re, -0.9, 1e-15));
    }

    #[test]
    fn fig1_router_coefficients() {
        let p = CqedParams::new(10.0, 0.5, 0.5, 0.0, 1.0);
        let cw = cw_response(&p, true, Port::One).unwrap();
        assert!(close(cw.r.norm(), 100.0 / 101.0, 1e-14));
        assert!(close(cw.t.norm(), 1.0 / 101.0, 1e-14));
    }

    #[test]
    fn fig1_spectrum_features() {
        let p = CqedParams::new(10.0, 0.5, 0.5, 0.0, 1.0);
        let rows = spectrum(&p, &default_detunings()).unwrap();
        let centre = rows[600];
        assert_eq!(centre.delta, 0.0);
        assert!(close(centre.t2_empty, 1.0, 1e-12));
        assert!(close(centre.t2_coupled, 1.0 / 101.0_f64.powi(2), 1e-15));
        let peaks = local_maxima(&rows, |r| r.t2_coupled);
        assert_eq!(peaks.len(), 2, "{peaks:?}");
        assert!(close(peaks[0], -10.0, 0.1) && close(peaks[1], 10.0, 0.1));
    }

    #[test]
    fn large_coupling_limit() {
        let mut last = (0.0, 1.0);
        for g in [10.0, 100.0, 1000.0] {
            let cw = cw_response(&CqedParams::new(g, 0.45, 0.45, 0.1, 1.0), true, Port::One).unwrap();
            let (r, t) = (cw.r.norm(), cw.t.norm());
            assert!(r > last.0 && t < last.1);
            last = (r, t);
        }
        assert!(last.0 > 0.999_99 && last.1 < 1e-5);
    }

    #[test]
    fn spectrum_stays_physical() {
        let p = CqedParams::new(3.0, 0.3, 0.5, 0.2, 0.7);
        for row in spectrum(&p, &default_detunings()).unwrap() {
            for v in [row.r2_empty, row.t2_empty, row.r2_coupled, row.t2_coupled] {
                assert!((0.0..=1.0 + 1e-12).contains(&v));
            }
        }
    }

    proptest! {
        #[test]
        fn transmission_is_port_symmetric(
            g in 0.0..20.0f64, k1 in 0.01..1.0f64, k2 in 0.01..1.0f64, kl in 0.0..0.5f64,
            gamma in 0.0..2.0f64, da in -10.0..10.0f64, dc in -10.0..10.0f64,
        ) {
            let p = CqedParams::new(g, k1, k2, kl, gamma).with_detuning(da, dc);
            let a = cw_response(&p, true, Port::One).unwrap();
            let b = cw_response(&p, true, Port::Two).unwrap();
            prop_assert!((a.t - b.t).norm() < 1e-14);
        }

        #[test]
        fn lossless_response_is_unitary(
            g in 0.0..20.0f64, k1 in 0.01..1.0f64, k2 in 0.01..1.0f64,
            da in -10.0..10.0f64, dc in -10.0..10.0f64, which in 0usize..3,
        ) {
            // lossless whenever κ_loss = 0 and either γ = 0 or the atom is out
            let (gamma, coupled) = match which {
                0 => (0.0, true),
                1 => (1.0, false),
                _ => (0.0, false),
            };
            let p = CqedParams::new(g, k1, k2, 0.0, gamma).with_detuning(da, dc);
            for port in [Port::One, Port::Two] {
                let cw = cw_response(&p, coupled, port).unwrap();
                prop_assert!((cw.r.norm_sqr() + cw.t.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }
}
