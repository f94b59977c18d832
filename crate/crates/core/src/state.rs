//! Pure states of a few router qubits.
//!
//! Index convention: qubit 0 (router 1) is the most significant bit, and a
//! bit is 0 for |α⟩ = |T⟩ and 1 for |β⟩ = |R⟩.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::AtomBasis;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Normalize `amps` (length `2^n`). Fails with `Degenerate` on a zero vector.
    pub fn new(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n_qubits {
            return Err(Error::WrongArity {
                expected: n_qubits,
                found: amps.len().trailing_zeros() as usize,
            });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Degenerate);
        }
        Ok(Self {
            n_qubits,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Basis state `|b_1 b_2 ... b_n⟩`.
    pub fn basis(states: &[AtomBasis]) -> Self {
        let n = states.len();
        let idx = states.iter().fold(0, |acc, b| (acc << 1) | b.bit());
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[idx] = Complex64::new(1.0, 0.0);
        Self { n_qubits: n, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WrongArity {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm().min(1.0))
    }

    /// Largest amplitude difference after removing the best global phase.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        let ov = self.inner(other)?;
        let phase = if ov.norm() > 0.0 {
            ov / ov.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max))
    }

    /// `self ⊗ other`, with `self`'s qubits first.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        StateVector {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        }
    }

    /// Apply the 2×2 matrix `u` (rows/columns ordered α, β) to `qubit`.
    pub fn apply_single(&self, qubit: usize, u: [[Complex64; 2]; 2]) -> Result<StateVector> {
        if qubit >= self.n_qubits {
            return Err(Error::WrongArity {
                expected: qubit + 1,
                found: self.n_qubits,
            });
        }
        let mask = 1 << (self.n_qubits - 1 - qubit);
        let mut amps = self.amps.clone();
        for i in 0..amps.len() {
            if i & mask == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | mask]);
                amps[i] = u[0][0] * a0 + u[0][1] * a1;
                amps[i | mask] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amps,
        })
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `|Φ2⟩ = [|RR⟩ + e^{i(φ1+φ2+Δφ)} |TT⟩] / √2`.
pub fn phi2(phi1: f64, phi2: f64, dphi: f64) -> StateVector {
    let mut amps = vec![c(0.0); 4];
    amps[0b11] = c(1.0);
    amps[0b00] = Complex64::from_polar(1.0, phi1 + phi2 + dphi);
    StateVector::new(2, amps).expect("nonzero")
}

/// `|Ψ2⟩ = [e^{i(φ2+Δφ)} |R T⟩ + e^{iφ1} |T R⟩] / √2`.
pub fn psi2(phi1: f64, phi2: f64, dphi: f64) -> StateVector {
    let mut amps = vec![c(0.0); 4];
    amps[0b10] = Complex64::from_polar(1.0, phi2 + dphi);
    amps[0b01] = Complex64::from_polar(1.0, phi1);
    StateVector::new(2, amps).expect("nonzero")
}

/// `[|RRR⟩ + e^{iφ} |TTT⟩] / √2`.
pub fn ghz3(phase: f64) -> StateVector {
    let mut amps = vec![c(0.0); 8];
    amps[0b111] = c(1.0);
    amps[0b000] = Complex64::from_polar(1.0, phase);
    StateVector::new(3, amps).expect("nonzero")
}
