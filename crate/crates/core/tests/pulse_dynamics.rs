mod common;

use cqed_router::error::Error;
use cqed_router::params::{AtomBasis, CqedParams};
use cqed_router::pulse_dynamics::{
    gaussian_pulse, scatter_router, scatter_router_with, signal_overlap, PulseSpec, ScatterOptions,
};
use cqed_router::signal::{make_time_grid, ComplexSignal};
use num_complex::Complex64;

fn settings() -> Vec<CqedParams> {
    vec![
        CqedParams::new(3.0, 0.45, 0.45, 0.1, 1.0),
        CqedParams::new(3.0, 0.45, 0.45, 0.1, 0.5),
        CqedParams::new(10.0, 0.5, 0.5, 0.0, 1.0),
        CqedParams::new(0.7, 0.2, 0.6, 0.3, 2.0),
        CqedParams::new(1000.0, 0.5, 0.5, 0.0, 0.0),
    ]
}

#[test]
fn flux_is_conserved() {
    for t in [40.0, 400.0] {
        let f = common::pulse(t, 0.01);
        let vacuum = ComplexSignal::zeros(*f.grid());
        for p in settings() {
            for atom in AtomBasis::ALL {
                for (a, b) in [(&f, &vacuum), (&vacuum, &f), (&f, &f)] {
                    let l = scatter_router(&p, atom, a, b).unwrap().loss;
                    assert!(l.imbalance().abs() < 1e-6, "{p:?} {atom}: {l:?}");
                    assert!(l.residual < 1e-8);
                    for v in [l.cavity_loss, l.atomic_loss, l.output_norm, l.residual] {
                        assert!(v >= -1e-9);
                    }
                }
            }
        }
    }
}

#[test]
fn populations_stay_below_one() {
    let f = common::pulse(40.0, 0.01);
    let vacuum = ComplexSignal::zeros(*f.grid());
    let res = scatter_router(&CqedParams::new(3.0, 0.45, 0.45, 0.1, 1.0), AtomBasis::Beta, &f, &vacuum).unwrap();
    for (c, e) in res.trace.c_cavity.samples().iter().zip(res.trace.c_atom.samples()) {
        assert!(c.norm_sqr() + e.norm_sqr() <= 1.0 + 1e-9);
    }
}

#[test]
fn scattering_is_linear() {
    let grid = make_time_grid(100.0, 0.01, 20.0).unwrap();
    let f = gaussian_pulse(&grid, &PulseSpec::new(20.0, 20.0)).unwrap();
    let h = gaussian_pulse(&grid, &PulseSpec::new(60.0, 10.0)).unwrap();
    let (a, b) = (Complex64::new(0.3, -0.7), Complex64::new(-1.1, 0.2));
    let mix = f.combine(a, &h, b).unwrap();
    let vacuum = ComplexSignal::zeros(grid);
    let p = CqedParams::new(3.0, 0.45, 0.45, 0.1, 1.0);
    for atom in AtomBasis::ALL {
        let rf = scatter_router(&p, atom, &f, &vacuum).unwrap();
        let rh = scatter_router(&p, atom, &vacuum, &h).unwrap();
        let rm = scatter_router(&p, atom, &f.scaled(a), &h.scaled(b)).unwrap();
        let rmix = scatter_router(&p, atom, &mix, &vacuum).unwrap();
        for k in 0..grid.len() {
            let expect = rf.out1.samples()[k] * a + rh.out1.samples()[k] * b;
            assert!((rm.out1.samples()[k] - expect).norm() < 1e-9);
            let e2 = rf.out2.samples()[k] * a + rh.out2.samples()[k] * b;
            assert!((rm.out2.samples()[k] - e2).norm() < 1e-9);
        }
        let ratio = rmix.loss.output_norm / mix.norm_sqr();
        assert!(ratio <= 1.0 + 1e-9);
    }
}

#[test]
fn global_phase_passes_through() {
    let f = common::pulse(40.0, 0.01);
    let vacuum = ComplexSignal::zeros(*f.grid());
    let phase = Complex64::from_polar(1.0, 1.234);
    let p = CqedParams::new(3.0, 0.45, 0.45, 0.1, 1.0);
    let r0 = scatter_router(&p, AtomBasis::Beta, &f, &vacuum).unwrap();
    let r1 = scatter_router(&p, AtomBasis::Beta, &f.scaled(phase), &vacuum).unwrap();
    for (x, y) in r0.out1.samples().iter().zip(r1.out1.samples()) {
        assert!((x * phase - y).norm() < 1e-12);
    }
    assert!((signal_overlap(&r0.out1, &r1.out1).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn halving_dt_changes_norms_below_1e8() {
    let p = CqedParams::new(3.0, 0.45, 0.45, 0.1, 1.0);
    for t in [40.0, 400.0] {
        let coarse = common::pulse(t, 0.01);
        let fine = common::pulse(t, 0.005);
        for atom in AtomBasis::ALL {
            let a = scatter_router(&p, atom, &coarse, &ComplexSignal::zeros(*coarse.grid())).unwrap();
            let b = scatter_router(&p, atom, &fine, &ComplexSignal::zeros(*fine.grid())).unwrap();
            for (x, y) in [(&a.out1, &b.out1), (&a.out2, &b.out2)] {
                let d = (x.norm_sqr() - y.norm_sqr()).abs();
                assert!(d < 1e-8, "T = {t}, {atom}: {d:e}");
            }
        }
    }
}

#[test]
fn alpha_ignores_coupling_and_dipole() {
    let f = common::pulse(40.0, 0.01);
    let vacuum = ComplexSignal::zeros(*f.grid());
    let a = scatter_router(&CqedParams::new(0.0, 0.45, 0.45, 0.1, 0.0), AtomBasis::Alpha, &f, &vacuum).unwrap();
    let b = scatter_router(&CqedParams::new(7.0, 0.45, 0.45, 0.1, 2.0), AtomBasis::Alpha, &f, &vacuum).unwrap();
    assert_eq!(a.out1, b.out1);
    assert_eq!(a.out2, b.out2);
    assert!(b.trace.c_atom.samples().iter().all(|z| z.norm() == 0.0));
}

#[test]
fn cut_off_pulse_fails_step_doubling() {
    // a width of T leaves a jump at t = T that the check must notice
    let grid = make_time_grid(400.0, 0.01, 20.0).unwrap();
    let f = gaussian_pulse(&grid, &PulseSpec::wide_for(400.0)).unwrap();
    let vacuum = ComplexSignal::zeros(grid);
    let p = CqedParams::new(3.0, 0.45, 0.45, 0.1, 1.0);
    let err = scatter_router(&p, AtomBasis::Alpha, &f, &vacuum).unwrap_err();
    assert!(matches!(err, Error::NonConverged { .. }), "{err:?}");
    let res = scatter_router_with(&p, AtomBasis::Beta, &f, &vacuum, &ScatterOptions::unchecked()).unwrap();
    assert!(res.loss.imbalance().abs() < 1e-6);
}

#[test]
fn zero_signal_overlap() {
    let f = common::pulse(40.0, 0.01);
    let z = ComplexSignal::zeros(*f.grid());
    assert_eq!(signal_overlap(&f, &z), Err(Error::ZeroSignal));
}
