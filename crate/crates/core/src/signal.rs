//! Uniform time grids and complex pulse envelopes sampled on them.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniform sampling of `[0, pulse_length + tail]`.
///
/// The pulse itself lives on `[0, pulse_length]`; the tail is zero-input
/// ring-down time so that the cavity empties before the record ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pulse_length: f64,
    tail: f64,
    dt: f64,
    n_samples: usize,
}

impl TimeGrid {
    pub fn new(pulse_length: f64, dt: f64, tail: f64) -> Result<Self> {
        if !(pulse_length > 0.0) || !pulse_length.is_finite() {
            return Err(Error::BadStep(format!(
                "pulse length must be positive, got {pulse_length}"
            )));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::BadStep(format!("dt must be positive, got {dt}")));
        }
        if !(tail >= 0.0) || !tail.is_finite() {
            return Err(Error::BadStep(format!("tail must be >= 0, got {tail}")));
        }
        if dt >= pulse_length {
            return Err(Error::BadStep(format!(
                "dt = {dt} does not resolve pulse length {pulse_length}"
            )));
        }
        let n_samples = ((pulse_length + tail) / dt).round() as usize + 1;
        Ok(Self {
            pulse_length,
            tail,
            dt,
            n_samples,
        })
    }

    #[inline]
    pub fn dt(&self) -> f64 {
        self.dt
    }

    #[inline]
    pub fn pulse_length(&self) -> f64 {
        self.pulse_length
    }

    #[inline]
    pub fn tail(&self) -> f64 {
        self.tail
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n_samples
    }

    pub fn is_empty(&self) -> bool {
        self.n_samples == 0
    }

    /// Time of sample `k`.
    #[inline]
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    /// End of the record, `(len - 1) * dt`.
    pub fn end(&self) -> f64 {
        self.time(self.n_samples - 1)
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_samples).map(move |k| self.time(k))
    }

    /// Quadrature weight of sample `k`.
    ///
    /// Fourth-order end-corrected weights `3/8, 7/6, 23/24, 1, ..., 1, 23/24,
    /// 7/6, 3/8` (times dt); plain trapezoid below six samples.
    #[inline]
    pub fn weight(&self, k: usize) -> f64 {
        const ENDS: [f64; 3] = [3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0];
        let n = self.n_samples;
        if n < 6 {
            return if k == 0 || k + 1 == n { 0.5 * self.dt } else { self.dt };
        }
        let from_end = k.min(n - 1 - k);
        if from_end < 3 {
            ENDS[from_end] * self.dt
        } else {
            self.dt
        }
    }

    /// Integral of sampled real values with [`TimeGrid::weight`].
    pub fn integrate(&self, values: impl IntoIterator<Item = f64>) -> f64 {
        values
            .into_iter()
            .enumerate()
            .map(|(k, v)| self.weight(k) * v)
            .sum()
    }

    /// Same span, half the step.
    pub fn refined(&self) -> Self {
        Self {
            dt: self.dt / 2.0,
            n_samples: 2 * self.n_samples - 1,
            ..*self
        }
    }
}

/// Build the uniform grid covering `[0, T + tail]`.
pub fn make_time_grid(pulse_length: f64, dt: f64, tail: f64) -> Result<TimeGrid> {
    TimeGrid::new(pulse_length, dt, tail)
}

/// Complex envelope `f(t)` sampled on a [`TimeGrid`]; `|f|²` is a photon flux.
///
/// All integrals over a signal use the end-corrected weights of
/// [`TimeGrid::weight`], so norms converge at fourth order even when the
/// envelope is cut off at `t = 0`.
///
/// Signals built from an analytic shape may also carry exact values at the
/// step midpoints `t_k + dt/2`, which the integrator prefers over
/// interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal {
    grid: TimeGrid,
    samples: Vec<Complex64>,
    midpoints: Option<Vec<Complex64>>,
}

impl ComplexSignal {
    pub fn zeros(grid: TimeGrid) -> Self {
        Self {
            grid,
            samples: vec![Complex64::new(0.0, 0.0); grid.len()],
            midpoints: None,
        }
    }

    pub fn from_samples(grid: TimeGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self {
            grid,
            samples,
            midpoints: None,
        })
    }

    /// Attach exact midpoint values (length `len - 1`).
    pub fn with_midpoints(mut self, midpoints: Vec<Complex64>) -> Result<Self> {
        if midpoints.len() + 1 != self.samples.len() {
            return Err(Error::GridMismatch);
        }
        self.midpoints = Some(midpoints);
        Ok(self)
    }

    #[inline]
    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    #[inline]
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn has_exact_midpoints(&self) -> bool {
        self.midpoints.is_some()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `∫ |f|² dt` on the grid.
    pub fn norm_sqr(&self) -> f64 {
        self.grid.integrate(self.samples.iter().map(|z| z.norm_sqr()))
    }

    /// `∫ conj(self) other dt` on the grid.
    pub fn inner(&self, other: &ComplexSignal) -> Result<Complex64> {
        self.check_grid(other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .enumerate()
            .map(|(k, (a, b))| a.conj() * b * self.grid.weight(k))
            .sum())
    }

    pub fn check_grid(&self, other: &ComplexSignal) -> Result<()> {
        if self.grid == other.grid && self.samples.len() == other.samples.len() {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|z| z * factor).collect(),
            midpoints: self
                .midpoints
                .as_ref()
                .map(|m| m.iter().map(|z| z * factor).collect()),
        }
    }

    /// `a·self + b·other`. Exact midpoints survive only if both sides carry them.
    pub fn combine(&self, a: Complex64, other: &ComplexSignal, b: Complex64) -> Result<Self> {
        self.check_grid(other)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(x, y)| a * x + b * y)
            .collect();
        let midpoints = match (&self.midpoints, &other.midpoints) {
            (Some(m1), Some(m2)) => Some(m1.iter().zip(m2).map(|(x, y)| a * x + b * y).collect()),
            _ => None,
        };
        Ok(Self {
            grid: self.grid,
            samples,
            midpoints,
        })
    }

    /// Value at `t_k + dt/2`, exact when available, otherwise a four-point
    /// cubic (one-sided near the ends).
    pub fn midpoint(&self, k: usize) -> Complex64 {
        if let Some(m) = &self.midpoints {
            return m[k];
        }
        let f = &self.samples;
        let n = f.len();
        if n < 4 {
            return (f[k] + f[k + 1]) * 0.5;
        }
        let c = 1.0 / 16.0;
        if k == 0 {
            (f[0] * 5.0 + f[1] * 15.0 - f[2] * 5.0 + f[3]) * c
        } else if k + 2 >= n {
            (f[n - 4] - f[n - 3] * 5.0 + f[n - 2] * 15.0 + f[n - 1] * 5.0) * c
        } else {
            (-f[k - 1] + f[k] * 9.0 + f[k + 1] * 9.0 - f[k + 2]) * c
        }
    }

    /// Every other sample, with the odd samples as exact midpoints: the same
    /// signal on a grid with twice the step.
    pub fn coarsened(&self) -> Option<Self> {
        let n = self.samples.len();
        if n < 3 || n % 2 == 0 {
            return None;
        }
        let grid = TimeGrid {
            dt: self.grid.dt * 2.0,
            n_samples: (n - 1) / 2 + 1,
            ..self.grid
        };
        let samples = self.samples.iter().step_by(2).copied().collect();
        let midpoints = self.samples.iter().skip(1).step_by(2).copied().collect();
        Some(Self {
            grid,
            samples,
            midpoints: Some(midpoints),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig3_grid_sample_count() {
        // (400 + 20) / 0.01 + 1
        assert_eq!(make_time_grid(400.0, 0.01, 20.0).unwrap().len(), 42001);
    }

    #[test]
    fn tiny_grid() {
        let g = make_time_grid(1.0, 0.5, 0.0).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.times().collect::<Vec<_>>(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn step_larger_than_pulse_rejected() {
        assert!(matches!(make_time_grid(1.0, 2.0, 0.0), Err(Error::BadStep(_))));
        assert!(matches!(make_time_grid(1.0, 1.0, 0.0), Err(Error::BadStep(_))));
        assert!(make_time_grid(1.0, -0.1, 0.0).is_err());
        assert!(make_time_grid(1.0, 0.1, -1.0).is_err());
    }

    #[test]
    fn spacing_is_uniform() {
        let g = make_time_grid(3.0, 0.1, 0.7).unwrap();
        let t: Vec<f64> = g.times().collect();
        for w in t.windows(2) {
            assert!((w[1] - w[0] - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_is_fourth_order() {
        // ∫_0^1 e^{-3t} dt
        let exact = (1.0 - (-3.0f64).exp()) / 3.0;
        let err = |dt: f64| {
            let g = make_time_grid(1.0, dt, 0.0).unwrap();
            (g.integrate(g.times().map(|t| (-3.0 * t).exp())) - exact).abs()
        };
        let (e1, e2) = (err(0.01), err(0.005));
        assert!(e1 < 1e-8, "{e1}");
        assert!(e1 / e2 > 12.0, "ratio {}", e1 / e2);
        let g = make_time_grid(1.0, 0.25, 0.0).unwrap();
        assert!((g.integrate(g.times().map(|_| 1.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cubic_midpoint_is_exact_for_cubics() {
        let g = make_time_grid(1.0, 0.1, 0.0).unwrap();
        let f = |t: f64| Complex64::new(t * t * t - 2.0 * t, 0.5 * t * t);
        let s = ComplexSignal::from_samples(g, g.times().map(f).collect()).unwrap();
        for k in 0..g.len() - 1 {
            let exact = f(g.time(k) + 0.05);
            assert!((s.midpoint(k) - exact).norm() < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn coarsening_keeps_span() {
        let g = make_time_grid(1.0, 0.1, 0.0).unwrap();
        let s = ComplexSignal::from_samples(g, g.times().map(|t| Complex64::new(t, 0.0)).collect())
            .unwrap();
        let c = s.coarsened().unwrap();
        assert_eq!(c.len(), 6);
        assert!((c.grid().end() - 1.0).abs() < 1e-12);
        assert!((c.midpoint(2) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }
}
