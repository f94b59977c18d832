//! Time-domain scattering of one-photon pulses off a single router.
//!
//! In the one-excitation subspace the router state is
//! `C(t)|β,1⟩ + C_e(t)|e,0⟩` plus the propagating photon, and the
//! amplitudes obey (resonant case)
//!
//! ```text
//! dC/dt   = -i g C_e - κ C - Σ_j √(2κ_j) f_in,j(t)
//! dC_e/dt = -i g C   - γ C_e
//! f_out,j = f_in,j + √(2κ_j) C
//! ```
//!
//! With the atom in |α⟩ the same system holds with `g = 0`, so `C_e`
//! stays identically zero. Integration is classic RK4 on the signal grid;
//! strongly coupled routers (large `g · dt`) are integrated with several RK4
//! substeps per grid step so the scheme stays stable.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{AtomBasis, CqedParams};
use crate::signal::{ComplexSignal, TimeGrid};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Gaussian envelope `exp[-(t - t0)² / w²]` on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub center: f64,
    pub width: f64,
}

impl PulseSpec {
    pub fn new(center: f64, width: f64) -> Self {
        Self { center, width }
    }

    /// Centre and width both `T/5`.
    pub fn default_for(pulse_length: f64) -> Self {
        Self::new(pulse_length / 5.0, pulse_length / 5.0)
    }

    /// Centre `T/5`, width `T`.
    pub fn wide_for(pulse_length: f64) -> Self {
        Self::new(pulse_length / 5.0, pulse_length)
    }

    pub fn validate(&self, grid: &TimeGrid) -> Result<()> {
        let t = grid.pulse_length();
        if !(self.center >= 0.0 && self.center <= t) {
            return Err(Error::InvalidPulse(format!(
                "centre {} outside [0, {t}]",
                self.center
            )));
        }
        if !(self.width > 0.0) || !self.width.is_finite() {
            return Err(Error::InvalidPulse(format!("width {} must be > 0", self.width)));
        }
        if self.width < 4.0 * grid.dt() {
            return Err(Error::DegeneratePulse(format!(
                "width {} is below 4 dt = {}",
                self.width,
                4.0 * grid.dt()
            )));
        }
        Ok(())
    }

    #[inline]
    fn shape(&self, t: f64) -> f64 {
        let x = (t - self.center) / self.width;
        (-x * x).exp()
    }

    /// Normalization constant `C_N` making the grid norm one.
    pub fn normalization(&self, grid: &TimeGrid) -> Result<f64> {
        self.validate(grid)?;
        let last = pulse_last_index(grid);
        let norm = grid.integrate((0..grid.len()).map(|k| {
            if k <= last {
                self.shape(grid.time(k)).powi(2)
            } else {
                0.0
            }
        }));
        Ok(1.0 / norm.sqrt())
    }
}

fn pulse_last_index(grid: &TimeGrid) -> usize {
    ((grid.pulse_length() / grid.dt()).round() as usize).min(grid.len() - 1)
}

/// Unit-norm truncated Gaussian on `[0, T]`, zero over the tail. The
/// normalization is computed on the grid itself, so truncation at `t = 0`
/// is accounted for. Exact midpoint samples are attached.
pub fn gaussian_pulse(grid: &TimeGrid, spec: &PulseSpec) -> Result<ComplexSignal> {
    let cn = spec.normalization(grid)?;
    let last = pulse_last_index(grid);
    let samples = (0..grid.len())
        .map(|k| {
            if k <= last {
                Complex64::new(cn * spec.shape(grid.time(k)), 0.0)
            } else {
                ZERO
            }
        })
        .collect();
    let midpoints = (0..grid.len() - 1)
        .map(|k| {
            if k < last {
                Complex64::new(cn * spec.shape(grid.time(k) + 0.5 * grid.dt()), 0.0)
            } else {
                ZERO
            }
        })
        .collect();
    ComplexSignal::from_samples(*grid, samples)?.with_midpoints(midpoints)
}

/// Intracavity amplitude `C` and atomic amplitude `C_e` over time.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterTrace {
    pub c_cavity: ComplexSignal,
    pub c_atom: ComplexSignal,
}

/// Where the incoming photon probability went.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossBudget {
    pub input_norm: f64,
    pub output_norm: f64,
    /// `2 κ_loss ∫|C|² dt`
    pub cavity_loss: f64,
    /// `2 γ ∫|C_e|² dt`
    pub atomic_loss: f64,
    /// `|C|² + |C_e|²` at the end of the record.
    pub residual: f64,
}

impl LossBudget {
    /// `input - (output + losses + residual)`; zero up to quadrature error.
    pub fn imbalance(&self) -> f64 {
        self.input_norm - (self.output_norm + self.cavity_loss + self.atomic_loss + self.residual)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterResult {
    pub out1: ComplexSignal,
    pub out2: ComplexSignal,
    pub trace: ScatterTrace,
    pub loss: LossBudget,
}

/// Solver knobs for [`scatter_router_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterOptions {
    /// Re-integrate with twice the step and require every output norm to
    /// agree within this tolerance. `None` skips the check.
    pub step_doubling_tol: Option<f64>,
}

impl Default for ScatterOptions {
    fn default() -> Self {
        Self {
            step_doubling_tol: Some(1e-7),
        }
    }
}

impl ScatterOptions {
    pub fn unchecked() -> Self {
        Self {
            step_doubling_tol: None,
        }
    }
}

/// Scatter pulses `in1`, `in2` (incident on mirrors 1 and 2) off a resonant
/// router whose atom is in `atom`, with the default solver options.
pub fn scatter_router(
    p: &CqedParams,
    atom: AtomBasis,
    in1: &ComplexSignal,
    in2: &ComplexSignal,
) -> Result<ScatterResult> {
    scatter_router_with(p, atom, in1, in2, &ScatterOptions::default())
}

pub fn scatter_router_with(
    p: &CqedParams,
    atom: AtomBasis,
    in1: &ComplexSignal,
    in2: &ComplexSignal,
    opts: &ScatterOptions,
) -> Result<ScatterResult> {
    let p = p.validate()?;
    if !p.is_resonant() {
        return Err(Error::Detuned {
            delta_a: p.delta_a,
            delta_c: p.delta_c,
        });
    }
    in1.check_grid(in2)?;
    let result = integrate(&p, atom, in1, in2)?;

    if let Some(tol) = opts.step_doubling_tol {
        if let (Some(c1), Some(c2)) = (in1.coarsened(), in2.coarsened()) {
            let coarse = integrate(&p, atom, &c1, &c2)?;
            let mut deviation = 0.0f64;
            for (fine, coarse) in [(&result.out1, &coarse.out1), (&result.out2, &coarse.out2)] {
                let fine_on_coarse = fine.coarsened().expect("odd sample count");
                deviation = deviation.max((fine_on_coarse.norm_sqr() - coarse.norm_sqr()).abs());
            }
            if !(deviation <= tol) {
                return Err(Error::NonConverged {
                    deviation,
                    tolerance: tol,
                });
            }
        }
    }
    Ok(result)
}

fn integrate(
    p: &CqedParams,
    atom: AtomBasis,
    in1: &ComplexSignal,
    in2: &ComplexSignal,
) -> Result<ScatterResult> {
    let grid = *in1.grid();
    let n = grid.len();
    let h = grid.dt();
    let g = if atom.is_coupled() { p.g } else { 0.0 };
    let kappa = p.kappa();
    let gamma = p.gamma;
    let a1 = (2.0 * p.kappa1).sqrt();
    let a2 = (2.0 * p.kappa2).sqrt();

    let f1 = in1.samples();
    let f2 = in2.samples();
    // drive on the half-step lattice: even entries at samples, odd at midpoints
    let drive: Vec<Complex64> = (0..2 * n - 1)
        .map(|j| {
            if j % 2 == 0 {
                a1 * f1[j / 2] + a2 * f2[j / 2]
            } else {
                a1 * in1.midpoint(j / 2) + a2 * in2.midpoint(j / 2)
            }
        })
        .collect();

    let rhs = |c: Complex64, ce: Complex64, s: Complex64| -> (Complex64, Complex64) {
        (-I * g * ce - kappa * c - s, -I * g * c - gamma * ce)
    };
    let substeps = substeps_for(g + kappa + gamma, h);
    let hs = h / substeps as f64;

    let mut cav = Vec::with_capacity(n);
    let mut at = Vec::with_capacity(n);
    let (mut c, mut ce) = (ZERO, ZERO);
    cav.push(c);
    at.push(ce);
    for k in 0..n - 1 {
        for j in 0..substeps {
            let (s0, sm, s1) = if substeps == 1 {
                (drive[2 * k], drive[2 * k + 1], drive[2 * k + 2])
            } else {
                let m = substeps as f64;
                let x = |frac: f64| lattice_interp(&drive, 2.0 * k as f64 + 2.0 * frac / m);
                (x(j as f64), x(j as f64 + 0.5), x(j as f64 + 1.0))
            };
            let (k1c, k1e) = rhs(c, ce, s0);
            let (k2c, k2e) = rhs(c + 0.5 * hs * k1c, ce + 0.5 * hs * k1e, sm);
            let (k3c, k3e) = rhs(c + 0.5 * hs * k2c, ce + 0.5 * hs * k2e, sm);
            let (k4c, k4e) = rhs(c + hs * k3c, ce + hs * k3e, s1);
            c += hs / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
            ce += hs / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
        }
        cav.push(c);
        at.push(ce);
    }

    let out1: Vec<Complex64> = f1.iter().zip(&cav).map(|(f, c)| f + a1 * c).collect();
    let out2: Vec<Complex64> = f2.iter().zip(&cav).map(|(f, c)| f + a2 * c).collect();

    let sum_sq = |v: &[Complex64]| grid.integrate(v.iter().map(|z| z.norm_sqr()));
    let loss = LossBudget {
        input_norm: sum_sq(f1) + sum_sq(f2),
        output_norm: sum_sq(&out1) + sum_sq(&out2),
        cavity_loss: 2.0 * p.kappa_loss * sum_sq(&cav),
        atomic_loss: 2.0 * gamma * sum_sq(&at),
        residual: c.norm_sqr() + ce.norm_sqr(),
    };

    Ok(ScatterResult {
        out1: ComplexSignal::from_samples(grid, out1)?,
        out2: ComplexSignal::from_samples(grid, out2)?,
        trace: ScatterTrace {
            c_cavity: ComplexSignal::from_samples(grid, cav)?,
            c_atom: ComplexSignal::from_samples(grid, at)?,
        },
        loss,
    })
}

/// RK4 substeps per grid step so that `rate · dt / substeps ≤ MAX_RATE_STEP`.
fn substeps_for(rate: f64, dt: f64) -> usize {
    ((rate * dt / MAX_RATE_STEP).ceil() as usize).max(1)
}

const MAX_RATE_STEP: f64 = 0.1;

/// Four-point Lagrange interpolation at fractional index `x` of `d`.
fn lattice_interp(d: &[Complex64], x: f64) -> Complex64 {
    let i = x.floor() as usize;
    let u = x - i as f64;
    if u == 0.0 {
        return d[i.min(d.len() - 1)];
    }
    if d.len() < 4 {
        return d[i] * (1.0 - u) + d[i + 1] * u;
    }
    // stencil base, shifted inward at the ends
    let b = i.saturating_sub(1).min(d.len() - 4);
    let t = x - b as f64;
    let l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    let l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    let l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    let l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    d[b] * l0 + d[b + 1] * l1 + d[b + 2] * l2 + d[b + 3] * l3
}

/// Phase-insensitive overlap `|⟨ŝ1, ŝ2⟩|` of the two unit-normalized signals.
pub fn signal_overlap(s1: &ComplexSignal, s2: &ComplexSignal) -> Result<f64> {
    s1.check_grid(s2)?;
    let n1 = s1.norm_sqr();
    let n2 = s2.norm_sqr();
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let overlap = s1.inner(s2)?.norm() / (n1 * n2).sqrt();
    Ok(overlap.min(1.0))
}
