//! Router parameters, atomic basis labels, qubit preparations and network
//! layout.
//!
//! Rates are in units of the total cavity field decay rate κ by convention,
//! with ħ = 1. Any positive κ works; the presets simply pick κ = 1.

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Physical rates of one atom-cavity router.
///
/// `kappa1` and `kappa2` are the mirror (port) field decay rates and
/// `kappa_loss` the unwanted scattering/absorption channel. The total field
/// decay rate is always derived as their sum, see [`CqedParams::kappa`].
/// `gamma` is the decay rate of the atomic dipole amplitude, the rate that
/// multiplies `C_e` in the amplitude equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CqedParams {
    pub g: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa_loss: f64,
    pub gamma: f64,
    pub delta_a: f64,
    pub delta_c: f64,
}

impl CqedParams {
    /// Resonant router (Δa = Δc = 0).
    pub fn new(g: f64, kappa1: f64, kappa2: f64, kappa_loss: f64, gamma: f64) -> Self {
        Self {
            g,
            kappa1,
            kappa2,
            kappa_loss,
            gamma,
            delta_a: 0.0,
            delta_c: 0.0,
        }
    }

    pub fn with_detuning(mut self, delta_a: f64, delta_c: f64) -> Self {
        self.delta_a = delta_a;
        self.delta_c = delta_c;
        self
    }

    /// Total cavity field decay rate κ = κ1 + κ2 + κ_loss.
    #[inline]
    pub fn kappa(&self) -> f64 {
        self.kappa1 + self.kappa2 + self.kappa_loss
    }

    /// Same cavity with the atom decoupled (g = 0).
    pub fn uncoupled(&self) -> Self {
        Self { g: 0.0, ..*self }
    }

    /// Mirror rate for the given port.
    #[inline]
    pub fn port_rate(&self, port: Port) -> f64 {
        match port {
            Port::One => self.kappa1,
            Port::Two => self.kappa2,
        }
    }

    pub fn is_resonant(&self) -> bool {
        self.delta_a == 0.0 && self.delta_c == 0.0
    }

    pub fn validate(self) -> Result<Self> {
        let checks = [
            ("g", self.g),
            ("kappa1", self.kappa1),
            ("kappa2", self.kappa2),
            ("kappa_loss", self.kappa_loss),
            ("gamma", self.gamma),
        ];
        for (name, value) in checks {
            // NaN fails this test too
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::NegativeRate { name, value });
            }
        }
        if !self.delta_a.is_finite() || !self.delta_c.is_finite() {
            return Err(Error::InvalidNetwork("detunings must be finite".into()));
        }
        if self.kappa() <= 0.0 {
            return Err(Error::ZeroCavity);
        }
        Ok(self)
    }
}

/// Check a parameter set; the total κ is available through
/// [`CqedParams::kappa`] on the returned value.
pub fn validate_params(p: CqedParams) -> Result<CqedParams> {
    p.validate()
}

/// Cavity mirror / router port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    One,
    Two,
}

/// Ground state of the router atom.
///
/// `Alpha` is uncoupled from the cavity so the router transmits (label `T`);
/// `Beta` is strongly coupled so the router reflects (label `R`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomBasis {
    Alpha,
    Beta,
}

impl AtomBasis {
    pub const ALL: [AtomBasis; 2] = [AtomBasis::Alpha, AtomBasis::Beta];

    #[inline]
    pub fn is_coupled(self) -> bool {
        matches!(self, AtomBasis::Beta)
    }

    /// Bit used in state-vector indices: α = 0, β = 1.
    #[inline]
    pub fn bit(self) -> usize {
        match self {
            AtomBasis::Alpha => 0,
            AtomBasis::Beta => 1,
        }
    }

    pub fn from_bit(bit: usize) -> Self {
        if bit & 1 == 0 {
            AtomBasis::Alpha
        } else {
            AtomBasis::Beta
        }
    }
}

impl fmt::Display for AtomBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomBasis::Alpha => f.write_str("a"),
            AtomBasis::Beta => f.write_str("b"),
        }
    }
}

/// Initial router qubit `cos θ |α⟩ + sin θ e^{iφ} |β⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitInit {
    pub theta: f64,
    pub phi: f64,
}

impl Default for QubitInit {
    fn default() -> Self {
        Self {
            theta: FRAC_PI_4,
            phi: 0.0,
        }
    }
}

impl QubitInit {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Amplitude on the given basis state.
    pub fn amplitude(&self, basis: AtomBasis) -> Complex64 {
        match basis {
            AtomBasis::Alpha => Complex64::new(self.theta.cos(), 0.0),
            AtomBasis::Beta => Complex64::from_polar(self.theta.sin(), self.phi),
        }
    }
}

/// An ordered chain of routers with their qubit preparations.
///
/// `arm_phases[k]` is the path phase Δφ picked up on the transmission arm
/// (out2 → in2) between router `k` and router `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    pub routers: Vec<CqedParams>,
    pub qubit_inits: Vec<QubitInit>,
    pub arm_phases: Vec<f64>,
}

impl NetworkConfig {
    /// `n` identical routers, balanced qubits, zero arm phases.
    pub fn uniform(params: CqedParams, n: usize) -> Self {
        Self {
            routers: vec![params; n],
            qubit_inits: vec![QubitInit::default(); n],
            arm_phases: vec![0.0; n.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.routers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.routers.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.routers.len();
        if n == 0 {
            return Err(Error::InvalidNetwork("at least one router required".into()));
        }
        if self.qubit_inits.len() != n {
            return Err(Error::InvalidNetwork(format!(
                "{} qubit preparations for {} routers",
                self.qubit_inits.len(),
                n
            )));
        }
        if self.arm_phases.len() != n - 1 {
            return Err(Error::InvalidNetwork(format!(
                "{} arm phases for {} routers (need {})",
                self.arm_phases.len(),
                n,
                n - 1
            )));
        }
        for p in &self.routers {
            p.validate()?;
        }
        Ok(())
    }
}
