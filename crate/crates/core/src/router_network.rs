//! Chains of routers in the Mach-Zehnder geometry.
//!
//! Router `k` feeds router `k + 1` port to port: out1 → in1 (reflection
//! arm) and out2 → in2 (transmission arm, which also picks up the path
//! phase `e^{iΔφ_k}`). A photon that is reflected or transmitted an even
//! number of times leaves the last router on port 1 (detector D1), any
//! other path on port 2 (D2).
//!
//! Scattering leaves the atoms untouched, so each basis combination of the
//! router qubits is propagated on its own.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{AtomBasis, CqedParams, NetworkConfig, Port};
use crate::pulse_dynamics::{scatter_router_with, signal_overlap, ScatterOptions};
use crate::signal::ComplexSignal;
use crate::steady_state::cw_response;

/// One basis state of all router qubits, router 1 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComboKey(Vec<AtomBasis>);

impl ComboKey {
    pub fn new(basis: Vec<AtomBasis>) -> Self {
        Self(basis)
    }

    /// Combination number `index` of `n` qubits; router 1 is the most
    /// significant bit and α = 0.
    pub fn from_index(n: usize, index: usize) -> Self {
        Self(
            (0..n)
                .map(|q| AtomBasis::from_bit(index >> (n - 1 - q)))
                .collect(),
        )
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, b| (acc << 1) | b.bit())
    }

    pub fn basis(&self) -> &[AtomBasis] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of routers in the transmitting state α.
    pub fn transmissions(&self) -> usize {
        self.0.iter().filter(|b| !b.is_coupled()).count()
    }

    pub fn all(n: usize) -> impl Iterator<Item = ComboKey> {
        (0..1usize << n).map(move |i| ComboKey::from_index(n, i))
    }
}

impl fmt::Display for ComboKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// How a single router acts on the pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RouterModel {
    /// Integrate the amplitude equations.
    Pulsed(ScatterOptions),
    /// Multiply every sample by the CW coefficients (the long-pulse limit).
    SteadyState,
}

impl Default for RouterModel {
    fn default() -> Self {
        RouterModel::Pulsed(ScatterOptions::default())
    }
}

/// Fields reaching the two detectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorSignals {
    pub d1: ComplexSignal,
    pub d2: ComplexSignal,
}

impl DetectorSignals {
    pub fn port(&self, port: Port) -> &ComplexSignal {
        match port {
            Port::One => &self.d1,
            Port::Two => &self.d2,
        }
    }
}

fn scatter_stage(
    p: &CqedParams,
    atom: AtomBasis,
    in1: &ComplexSignal,
    in2: &ComplexSignal,
    model: &RouterModel,
) -> Result<(ComplexSignal, ComplexSignal)> {
    match model {
        RouterModel::Pulsed(opts) => {
            let res = scatter_router_with(p, atom, in1, in2, opts)?;
            Ok((res.out1, res.out2))
        }
        RouterModel::SteadyState => {
            let coupled = atom.is_coupled();
            let from1 = cw_response(p, coupled, Port::One)?;
            let from2 = cw_response(p, coupled, Port::Two)?;
            let out1 = in1.combine(from1.r, in2, from2.t)?;
            let out2 = in1.combine(from1.t, in2, from2.r)?;
            Ok((out1, out2))
        }
    }
}

/// Send `input` into port 1 of router 1 with the routers in `combo`.
pub fn propagate_combo(
    net: &NetworkConfig,
    combo: &ComboKey,
    input: &ComplexSignal,
) -> Result<DetectorSignals> {
    propagate_combo_with(net, combo, input, &RouterModel::default())
}

pub fn propagate_combo_with(
    net: &NetworkConfig,
    combo: &ComboKey,
    input: &ComplexSignal,
    model: &RouterModel,
) -> Result<DetectorSignals> {
    net.validate()?;
    if combo.len() != net.len() {
        return Err(Error::WrongArity {
            expected: net.len(),
            found: combo.len(),
        });
    }
    let mut arm1 = input.clone();
    let mut arm2 = ComplexSignal::zeros(*input.grid());
    for (k, (p, &atom)) in net.routers.iter().zip(combo.basis()).enumerate() {
        if k > 0 {
            let phase = net.arm_phases[k - 1];
            if phase != 0.0 {
                arm2 = arm2.scaled(Complex64::from_polar(1.0, phase));
            }
        }
        let (o1, o2) = scatter_stage(p, atom, &arm1, &arm2, model)?;
        arm1 = o1;
        arm2 = o2;
    }
    Ok(DetectorSignals { d1: arm1, d2: arm2 })
}

/// Detector signals for every basis combination of a network.
#[derive(Debug, Clone, PartialEq)]
pub struct ComboTable {
    network: NetworkConfig,
    input: ComplexSignal,
    entries: Vec<DetectorSignals>,
}

impl ComboTable {
    pub fn network(&self) -> &NetworkConfig {
        &self.network
    }

    pub fn input(&self) -> &ComplexSignal {
        &self.input
    }

    pub fn n_qubits(&self) -> usize {
        self.network.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, combo: &ComboKey) -> Option<&DetectorSignals> {
        if combo.len() != self.n_qubits() {
            return None;
        }
        self.entries.get(combo.index())
    }

    /// Entries in combination-index order.
    pub fn iter(&self) -> impl Iterator<Item = (ComboKey, &DetectorSignals)> {
        let n = self.n_qubits();
        self.entries
            .iter()
            .enumerate()
            .map(move |(i, e)| (ComboKey::from_index(n, i), e))
    }

    /// `Σ_combos |prior|² (∫|d1|² + ∫|d2|²)`, the chance that the photon
    /// reaches a detector at all.
    pub fn detection_probability(&self) -> f64 {
        self.iter()
            .map(|(key, e)| prior_weight(&self.network, &key) * (e.d1.norm_sqr() + e.d2.norm_sqr()))
            .sum()
    }
}

/// Initial amplitude of the router qubits on `combo`.
pub fn prior_amplitude(net: &NetworkConfig, combo: &ComboKey) -> Complex64 {
    net.qubit_inits
        .iter()
        .zip(combo.basis())
        .map(|(q, &b)| q.amplitude(b))
        .product()
}

fn prior_weight(net: &NetworkConfig, combo: &ComboKey) -> f64 {
    prior_amplitude(net, combo).norm_sqr()
}

pub fn all_combo_outputs(net: &NetworkConfig, input: &ComplexSignal) -> Result<ComboTable> {
    all_combo_outputs_with(net, input, &RouterModel::default())
}

/// Propagate every combination (in parallel); entries come back in index
/// order regardless of scheduling.
pub fn all_combo_outputs_with(
    net: &NetworkConfig,
    input: &ComplexSignal,
    model: &RouterModel,
) -> Result<ComboTable> {
    net.validate()?;
    let n = net.len();
    let entries = (0..1usize << n)
        .into_par_iter()
        .map(|i| propagate_combo_with(net, &ComboKey::from_index(n, i), input, model))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComboTable {
        network: net.clone(),
        input: input.clone(),
        entries,
    })
}

/// Overlap of the D1 pulses for all-α and all-β routers (the two
/// double-bounce paths that must be indistinguishable).
pub fn path_mismatch(table: &ComboTable) -> Result<f64> {
    let n = table.n_qubits();
    if n < 2 {
        return Err(Error::WrongArity {
            expected: 2,
            found: n,
        });
    }
    let all_alpha = &table.entries[0].d1;
    let all_beta = &table.entries[(1 << n) - 1].d1;
    signal_overlap(all_alpha, all_beta)
}
