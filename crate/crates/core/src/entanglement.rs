//! Heralded router-qubit states from detector-port signals.
//!
//! For every basis combination `x` of the router qubits the detector
//! coefficient is the root-norm of the pulse reaching that detector,
//! `A_x = √∫|f_out^x|² dt`, with the phase of the pulse relative to the
//! input retained. After `n` photons have all clicked the same detector,
//! the router qubits are left in
//!
//! ```text
//! |ψ_n⟩ ∝ Σ_x prior_x · A_x^n |x⟩,     P_n = Σ_x |prior_x|² A_x^{2n}
//! ```
//!
//! where `prior_x` is the initial qubit amplitude on `x`. For balanced
//! qubits and two routers this gives the usual `(A^{2n} + B^{2n} + C^{2n}
//! + D^{2n}) / 4` and fidelities `(A^n + B^n) / √(2 Σ A^{2n})`.
//!
//! Powers are taken relative to the largest coefficient so that long
//! purification runs do not underflow.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{AtomBasis, NetworkConfig, Port};
use crate::router_network::{
    all_combo_outputs_with, prior_amplitude, ComboKey, ComboTable, RouterModel,
};
use crate::signal::ComplexSignal;
use crate::state::{ghz3, StateVector};

/// Heralding detector behind port 1 (D1) or port 2 (D2) of the last router.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detector {
    D1,
    D2,
}

impl Detector {
    pub const BOTH: [Detector; 2] = [Detector::D1, Detector::D2];

    pub fn port(self) -> Port {
        match self {
            Detector::D1 => Port::One,
            Detector::D2 => Port::Two,
        }
    }
}

/// Whether branch phases enter the conditional state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseMode {
    /// Nonnegative coefficients, qubit phases dropped (all φ = Δφ = 0).
    #[default]
    MagnitudeOnly,
    /// Complex branch amplitudes and qubit preparation phases kept.
    PhaseAware,
}

/// Per-combination detector coefficients of an `n`-router network.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorCoefficients {
    n_qubits: usize,
    prior: Vec<Complex64>,
    d1: Vec<Complex64>,
    d2: Vec<Complex64>,
}

fn branch_coefficient(input: &ComplexSignal, out: &ComplexSignal) -> Result<Complex64> {
    let magnitude = out.norm_sqr().sqrt();
    let ov = input.inner(out)?;
    let phase = if ov.norm() > 0.0 { ov.arg() } else { 0.0 };
    Ok(Complex64::from_polar(magnitude, phase))
}

impl DetectorCoefficients {
    /// Build from explicit complex coefficients indexed by combination.
    pub fn new(
        n_qubits: usize,
        prior: Vec<Complex64>,
        d1: Vec<Complex64>,
        d2: Vec<Complex64>,
    ) -> Result<Self> {
        let size = 1 << n_qubits;
        for v in [&prior, &d1, &d2] {
            if v.len() != size {
                return Err(Error::WrongArity {
                    expected: n_qubits,
                    found: v.len().trailing_zeros() as usize,
                });
            }
        }
        Ok(Self {
            n_qubits,
            prior,
            d1,
            d2,
        })
    }

    /// Two balanced routers with real coefficients given in the order
    /// `(A, B, C, D)` = `(αα, ββ, αβ, βα)` for each detector.
    pub fn from_magnitudes(d1: [f64; 4], d2: [f64; 4]) -> Self {
        let spread = |m: [f64; 4]| {
            let mut v = vec![Complex64::new(0.0, 0.0); 4];
            v[0b00] = m[0].into();
            v[0b11] = m[1].into();
            v[0b01] = m[2].into();
            v[0b10] = m[3].into();
            v
        };
        Self {
            n_qubits: 2,
            prior: vec![Complex64::new(0.5, 0.0); 4],
            d1: spread(d1),
            d2: spread(d2),
        }
    }

    /// Coefficients for any number of routers.
    pub fn from_table(table: &ComboTable) -> Result<Self> {
        let n = table.n_qubits();
        let input = table.input();
        let mut prior = Vec::with_capacity(1 << n);
        let mut d1 = Vec::with_capacity(1 << n);
        let mut d2 = Vec::with_capacity(1 << n);
        for (key, entry) in table.iter() {
            prior.push(prior_amplitude(table.network(), &key));
            d1.push(branch_coefficient(input, &entry.d1)?);
            d2.push(branch_coefficient(input, &entry.d2)?);
        }
        Self::new(n, prior, d1, d2)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn prior(&self) -> &[Complex64] {
        &self.prior
    }

    pub fn coefficients(&self, detector: Detector) -> &[Complex64] {
        match detector {
            Detector::D1 => &self.d1,
            Detector::D2 => &self.d2,
        }
    }

    pub fn coefficient(&self, detector: Detector, combo: &ComboKey) -> Complex64 {
        self.coefficients(detector)[combo.index()]
    }

    /// `(A, B, C, D)` magnitudes, i.e. combos `(αα, ββ, αβ, βα)`.
    pub fn named(&self, detector: Detector) -> Result<[f64; 4]> {
        self.require_qubits(2)?;
        let c = self.coefficients(detector);
        Ok([c[0b00].norm(), c[0b11].norm(), c[0b01].norm(), c[0b10].norm()])
    }

    /// All coefficients multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            n_qubits: self.n_qubits,
            prior: self.prior.clone(),
            d1: self.d1.iter().map(|c| c * s).collect(),
            d2: self.d2.iter().map(|c| c * s).collect(),
        }
    }

    fn require_qubits(&self, n: usize) -> Result<()> {
        if self.n_qubits == n {
            Ok(())
        } else {
            Err(Error::WrongArity {
                expected: n,
                found: self.n_qubits,
            })
        }
    }
}

/// The eight two-router coefficients `A1..D2` from a two-router table.
pub fn detector_coefficients(table: &ComboTable) -> Result<DetectorCoefficients> {
    if table.n_qubits() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            found: table.n_qubits(),
        });
    }
    DetectorCoefficients::from_table(table)
}

/// Probability that `n` successive photons all click `detector`.
pub fn success_probability(coeffs: &DetectorCoefficients, detector: Detector, n: u32) -> f64 {
    let c = coeffs.coefficients(detector);
    let max = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    let rel: f64 = c
        .iter()
        .zip(&coeffs.prior)
        .map(|(z, p)| p.norm_sqr() * (z.norm() / max).powi(2 * n as i32))
        .sum();
    rel * max.powi(2 * n as i32)
}

/// Router state after `n` clicks on `detector`.
pub fn conditional_state(
    coeffs: &DetectorCoefficients,
    detector: Detector,
    n: u32,
    mode: PhaseMode,
) -> Result<StateVector> {
    let c = coeffs.coefficients(detector);
    let max = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::Degenerate);
    }
    let amps = c
        .iter()
        .zip(&coeffs.prior)
        .map(|(z, p)| {
            let mag = p.norm() * (z.norm() / max).powi(n as i32);
            match mode {
                PhaseMode::MagnitudeOnly => Complex64::new(mag, 0.0),
                PhaseMode::PhaseAware => {
                    Complex64::from_polar(mag, p.arg() + n as f64 * z.arg())
                }
            }
        })
        .collect();
    StateVector::new(coeffs.n_qubits, amps)
}

/// Maximally entangled two-router target heralded by `detector`:
/// `(|αα⟩ + |ββ⟩)/√2` for D1, `(|αβ⟩ + |βα⟩)/√2` for D2.
pub fn target_state(detector: Detector) -> StateVector {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let amps = match detector {
        Detector::D1 => vec![one, zero, zero, one],
        Detector::D2 => vec![zero, one, one, zero],
    };
    StateVector::new(2, amps).expect("nonzero")
}

/// Fidelity `|⟨target|ψ_n⟩|` of the two-router state after `n` clicks.
pub fn fidelity(coeffs: &DetectorCoefficients, detector: Detector, n: u32) -> Result<f64> {
    fidelity_with(coeffs, detector, n, PhaseMode::MagnitudeOnly)
}

pub fn fidelity_with(
    coeffs: &DetectorCoefficients,
    detector: Detector,
    n: u32,
    mode: PhaseMode,
) -> Result<f64> {
    coeffs.require_qubits(2)?;
    let state = conditional_state(coeffs, detector, n, mode)?;
    target_state(detector).fidelity(&state)
}

/// Single-qubit bit flip followed by a phase: `|α⟩ → |β⟩`,
/// `|β⟩ → e^{iχ}|α⟩`. With `χ = 2(φ2 + Δφ)` on router 2 it maps `|Ψ2⟩` onto
/// `|Φ2⟩`; with all phases zero it is a plain flip.
pub fn local_correction(state: &StateVector, qubit: usize, chi: f64) -> Result<StateVector> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let u = [[zero, Complex64::from_polar(1.0, chi)], [one, zero]];
    state.apply_single(qubit, u)
}

fn join_third_qubit(
    upper: &StateVector,
    lower: &StateVector,
    phi3: f64,
) -> Result<StateVector> {
    // qubit 3 is the last (least significant) qubit: |R3⟩ upper + e^{iφ3}|T3⟩ lower
    let r3 = StateVector::basis(&[AtomBasis::Beta]);
    let t3 = StateVector::basis(&[AtomBasis::Alpha]);
    let a = upper.tensor(&r3);
    let b = lower.tensor(&t3);
    let phase = Complex64::from_polar(1.0, phi3);
    let amps = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x + phase * y)
        .collect();
    StateVector::new(3, amps)
}

/// Three-router cascade state composed from a two-router link:
/// D1 gives `(|R3⟩|Φ⟩ + e^{iφ3}|T3⟩|Ψ⟩)/√2`, D2 swaps `Φ` and `Ψ`, where
/// `Φ`, `Ψ` are the one-photon D1 and D2 states of `coeffs`.
pub fn three_qubit_state(
    coeffs: &DetectorCoefficients,
    phi3: f64,
    detector: Detector,
    mode: PhaseMode,
) -> Result<StateVector> {
    coeffs.require_qubits(2)?;
    let phi = conditional_state(coeffs, Detector::D1, 1, mode)?;
    let psi = conditional_state(coeffs, Detector::D2, 1, mode)?;
    match detector {
        Detector::D1 => join_third_qubit(&phi, &psi, phi3),
        Detector::D2 => join_third_qubit(&psi, &phi, phi3),
    }
}

/// The same composition from explicit two-qubit states.
pub fn three_qubit_from_pair(
    phi: &StateVector,
    psi: &StateVector,
    phi3: f64,
    detector: Detector,
) -> Result<StateVector> {
    for s in [phi, psi] {
        if s.n_qubits() != 2 {
            return Err(Error::WrongArity {
                expected: 2,
                found: s.n_qubits(),
            });
        }
    }
    match detector {
        Detector::D1 => join_third_qubit(phi, psi, phi3),
        Detector::D2 => join_third_qubit(psi, phi, phi3),
    }
}

/// Router preparation phases of a GHZ run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GhzPhases {
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GhzReport {
    pub state: StateVector,
    /// `|⟨GHZ|ψ⟩|` against `[|RRR⟩ + e^{i(φ1+φ2+φ3)}|TTT⟩]/√2`.
    pub fidelity: f64,
    /// Fidelity at or below `1/√2`, the value reached by a product of a
    /// Bell pair with an unentangled third qubit.
    pub below_threshold: bool,
}

/// Compose two heralded links that share router 1, (1,2) then (1,3),
/// assuming perfect polarization routing.
///
/// Both links carry router 1's preparation phase on its |T⟩ component; it
/// is divided out once so the composed state counts it a single time.
pub fn ghz_compose(
    link12: &StateVector,
    link13: &StateVector,
    phases: GhzPhases,
) -> Result<GhzReport> {
    for s in [link12, link13] {
        if s.n_qubits() != 2 {
            return Err(Error::WrongArity {
                expected: 2,
                found: s.n_qubits(),
            });
        }
    }
    let a = link12.amplitudes();
    let b = link13.amplitudes();
    let undo = Complex64::from_polar(1.0, -phases.phi1);
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    for (idx, amp) in amps.iter_mut().enumerate() {
        let (x1, x2, x3) = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
        let v = a[(x1 << 1) | x2] * b[(x1 << 1) | x3];
        *amp = if x1 == 0 { v * undo } else { v };
    }
    let state = match StateVector::new(3, amps) {
        Ok(s) => s,
        Err(Error::Degenerate) => return Err(Error::SharedQubitMismatch),
        Err(e) => return Err(e),
    };
    let fidelity = ghz3(phases.phi1 + phases.phi2 + phases.phi3).fidelity(&state)?;
    Ok(GhzReport {
        state,
        fidelity,
        below_threshold: fidelity <= std::f64::consts::FRAC_1_SQRT_2 + 1e-12,
    })
}

/// Fidelity and success probability after `n` same-detector clicks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurificationRow {
    pub n: u32,
    pub fidelity_d1: f64,
    pub fidelity_d2: f64,
    pub prob_d1: f64,
    pub prob_d2: f64,
}

impl PurificationRow {
    pub fn mean_fidelity(&self) -> f64 {
        0.5 * (self.fidelity_d1 + self.fidelity_d2)
    }

    pub fn total_probability(&self) -> f64 {
        self.prob_d1 + self.prob_d2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub coeffs: DetectorCoefficients,
    pub rows: Vec<PurificationRow>,
}

impl EntanglementReport {
    pub fn row(&self, n: u32) -> Option<&PurificationRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Fidelities and probabilities for `n = 1..=n_max`.
pub fn purification(
    coeffs: &DetectorCoefficients,
    n_max: u32,
    mode: PhaseMode,
) -> Result<EntanglementReport> {
    let rows = (1..=n_max)
        .map(|n| {
            Ok(PurificationRow {
                n,
                fidelity_d1: fidelity_with(coeffs, Detector::D1, n, mode)?,
                fidelity_d2: fidelity_with(coeffs, Detector::D2, n, mode)?,
                prob_d1: success_probability(coeffs, Detector::D1, n),
                prob_d2: success_probability(coeffs, Detector::D2, n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntanglementReport {
        coeffs: coeffs.clone(),
        rows,
    })
}

/// `A1 - B1` for a two-router network whose routers all share coupling `g`.
pub fn double_path_imbalance(
    template: &NetworkConfig,
    g: f64,
    input: &ComplexSignal,
    model: &RouterModel,
) -> Result<f64> {
    let mut net = template.clone();
    for p in &mut net.routers {
        p.g = g;
    }
    let table = all_combo_outputs_with(&net, input, model)?;
    let [a1, b1, _, _] = detector_coefficients(&table)?.named(Detector::D1)?;
    Ok(a1 - b1)
}

/// Bisect on the common coupling `g ∈ [lo, hi]` for `A1 = B1`, which
/// balances the double-transmission and double-reflection paths.
pub fn balanced_coupling(
    template: &NetworkConfig,
    input: &ComplexSignal,
    model: &RouterModel,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    let f = |g| double_path_imbalance(template, g, input, model);
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
