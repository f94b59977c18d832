//! Experiment configuration: a flat `key = value` text format.
//!
//! ```text
//! # comment                      (also allowed after a value)
//! experiment = PURIFY
//! routers = 2
//! router.g = 3.0                 # every router
//! router2.kappa_loss = 0.05      # router 2 only, wins over router.*
//! qubit1.phi = 0.3
//! arm1.phase = 0.0               # between router 1 and router 2
//! pulse.length = 400
//! grid.dt = 0.01
//! ```
//!
//! Every key may appear at most once. Unknown keys, unparsable values and
//! out-of-range indices are rejected with [`Error::ConfigInvalid`] naming
//! the key. See `CONFIG.md` at the repository root for the full key list.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::entanglement::PhaseMode;
use crate::error::{Error, Result};
use crate::params::{CqedParams, NetworkConfig, QubitInit};
use crate::pulse_dynamics::{PulseSpec, ScatterOptions};
use crate::router_network::RouterModel;
use crate::signal::TimeGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Spectrum,
    Scatter,
    OverlapSweep,
    Entangle,
    Purify,
    Ghz,
    Sweep,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Spectrum,
        Experiment::Scatter,
        Experiment::OverlapSweep,
        Experiment::Entangle,
        Experiment::Purify,
        Experiment::Ghz,
        Experiment::Sweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Spectrum => "SPECTRUM",
            Experiment::Scatter => "SCATTER",
            Experiment::OverlapSweep => "OVERLAP_SWEEP",
            Experiment::Entangle => "ENTANGLE",
            Experiment::Purify => "PURIFY",
            Experiment::Ghz => "GHZ",
            Experiment::Sweep => "SWEEP",
        }
    }

    fn default_routers(self) -> usize {
        match self {
            Experiment::Spectrum | Experiment::Scatter => 1,
            Experiment::Ghz => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|e| e.name() == up)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|e| e.name()).collect();
                format!("unknown experiment `{s}`, expected one of {}", names.join(", "))
            })
    }
}

/// Quantity varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Coupling of every router.
    G,
    /// Pulse length.
    T,
    KappaLoss,
    Gamma,
    /// Path phase on every arm.
    ArmPhase,
}

impl SweepAxis {
    const NAMES: [(&'static str, SweepAxis); 5] = [
        ("g", SweepAxis::G),
        ("T", SweepAxis::T),
        ("kappa_loss", SweepAxis::KappaLoss),
        ("gamma", SweepAxis::Gamma),
        ("arm_phase", SweepAxis::ArmPhase),
    ];

    pub fn name(self) -> &'static str {
        Self::NAMES.iter().find(|(_, a)| *a == self).unwrap().0
    }
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::NAMES
            .iter()
            .find(|(n, _)| *n == s.trim())
            .map(|(_, a)| *a)
            .ok_or_else(|| format!("unknown axis `{s}`, expected g, T, kappa_loss, gamma or arm_phase"))
    }
}

/// Points of a sweep: an explicit list or `count` evenly spaced values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    /// `Some((start, stop, count))` when the points came from a range.
    pub range: Option<(f64, f64, usize)>,
}

/// Pulse position given either in absolute time or as a fraction of `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extent {
    Absolute(f64),
    Fraction(f64),
}

impl Extent {
    pub fn resolve(self, pulse_length: f64) -> f64 {
        match self {
            Extent::Absolute(x) => x,
            Extent::Fraction(f) => f * pulse_length,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseConfig {
    pub length: f64,
    pub center: Extent,
    pub width: Extent,
}

impl PulseConfig {
    pub fn spec(&self, pulse_length: f64) -> PulseSpec {
        PulseSpec::new(self.center.resolve(pulse_length), self.width.resolve(pulse_length))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Pulsed,
    SteadyState,
}

/// A fully resolved, validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub network: NetworkConfig,
    pub pulse: PulseConfig,
    pub dt: f64,
    pub tail: f64,
    pub model: ModelKind,
    /// Step-doubling tolerance of pulsed scatters; `0` disables the check.
    pub solver_tolerance: f64,
    pub phase_mode: PhaseMode,
    /// Detunings scanned by SPECTRUM.
    pub spectrum: (f64, f64, usize),
    /// Keep every `stride`-th sample in SCATTER output.
    pub scatter_stride: usize,
    pub n_max: u32,
    pub ghz_photons: u32,
    pub sweep: Option<SweepSpec>,
}

const ROUTER_FIELDS: [&str; 7] = ["g", "kappa1", "kappa2", "kappa_loss", "gamma", "delta_a", "delta_c"];

fn invalid(key: &str, reason: impl Into<String>) -> Error {
    Error::ConfigInvalid {
        key: key.to_string(),
        reason: reason.into(),
    }
}

/// Raw `key = value` pairs, in sorted key order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                invalid(line, format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(invalid("", format!("line {}: empty key", lineno + 1)));
            }
            if value.is_empty() {
                return Err(invalid(key, "empty value"));
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(invalid(key, "duplicate key"));
            }
        }
        Ok(Self { entries })
    }

    /// Set or replace a key (command-line overrides).
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

struct Reader<'a> {
    raw: &'a RawConfig,
}

impl Reader<'_> {
    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.raw.get(key) {
            None => Ok(None),
            Some(v) => v.parse::<T>().map(Some).map_err(|e| invalid(key, e.to_string())),
        }
    }

    fn float(&self, key: &str) -> Result<Option<f64>> {
        match self.raw.get(key) {
            None => Ok(None),
            Some(v) => parse_float(v).map(Some).map_err(|e| invalid(key, e)),
        }
    }

    fn count(&self, key: &str) -> Result<Option<usize>> {
        match self.raw.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<usize>()
                .map(Some)
                .map_err(|_| invalid(key, format!("`{v}` is not a nonnegative integer"))),
        }
    }
}

fn parse_float(v: &str) -> std::result::Result<f64, String> {
    let x: f64 = v.parse().map_err(|_| format!("`{v}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{v}` is not finite"))
    }
}

/// `router3.g` → (`router`, Some(3), `g`); `router.g` → (`router`, None, `g`).
fn split_indexed<'a>(key: &'a str, prefix: &str) -> Option<(Option<usize>, &'a str)> {
    let rest = key.strip_prefix(prefix)?;
    let (idx, field) = rest.split_once('.')?;
    if idx.is_empty() {
        return Some((None, field));
    }
    if idx.starts_with('0') || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    idx.parse().ok().map(|i| (Some(i), field))
}

const PLAIN_KEYS: [&str; 20] = [
    "experiment",
    "routers",
    "model",
    "phase_mode",
    "solver.tolerance",
    "grid.dt",
    "grid.tail",
    "pulse.length",
    "pulse.center",
    "pulse.center_frac",
    "pulse.width",
    "pulse.width_frac",
    "spectrum.start",
    "spectrum.stop",
    "spectrum.count",
    "scatter.stride",
    "purify.n_max",
    "ghz.photons",
    "sweep.axis",
    "sweep.values",
];

const SWEEP_RANGE_KEYS: [&str; 3] = ["sweep.start", "sweep.stop", "sweep.count"];

/// Reject unknown keys; with `n` routers known, also out-of-range indices.
fn check_known_keys(raw: &RawConfig, n: Option<usize>) -> Result<()> {
    for key in raw.keys() {
        if PLAIN_KEYS.contains(&key) || SWEEP_RANGE_KEYS.contains(&key) {
            continue;
        }
        let indexed = [
            ("router", &ROUTER_FIELDS[..], n),
            ("qubit", &["theta", "phi"][..], n),
            ("arm", &["phase"][..], n.map(|n| n.saturating_sub(1))),
        ];
        let mut known = false;
        for (prefix, fields, max) in indexed {
            if let Some((idx, field)) = split_indexed(key, prefix) {
                if !fields.contains(&field) {
                    return Err(invalid(key, format!("unknown field `{field}`")));
                }
                if let (Some(i), Some(max)) = (idx, max) {
                    if i == 0 || i > max {
                        return Err(invalid(key, format!("index {i} outside 1..={max}")));
                    }
                }
                known = true;
                break;
            }
        }
        if !known {
            return Err(invalid(key, "unknown key"));
        }
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_text(text: &str) -> Result<Self> {
        Self::from_raw(&RawConfig::parse(text)?)
    }

    /// Resolve defaults and validate everything, including each sweep point.
    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        check_known_keys(raw, None)?;
        let r = Reader { raw };
        let experiment: Experiment = r
            .parsed("experiment")?
            .ok_or_else(|| invalid("experiment", "missing"))?;
        let n = r.count("routers")?.unwrap_or(experiment.default_routers());
        let needed = match experiment {
            Experiment::Spectrum | Experiment::Scatter => Some(1),
            Experiment::Purify | Experiment::OverlapSweep | Experiment::Sweep => Some(2),
            Experiment::Ghz => Some(3),
            Experiment::Entangle => None,
        };
        if n == 0 || needed.is_some_and(|m| m != n) {
            let want = needed.map_or("at least 1".to_string(), |m| m.to_string());
            return Err(invalid("routers", format!("{experiment} needs {want} routers, got {n}")));
        }
        check_known_keys(raw, Some(n))?;

        let defaults = [3.0, 0.45, 0.45, 0.1, 0.5, 0.0, 0.0];
        let mut routers = Vec::with_capacity(n);
        for k in 1..=n {
            let mut v = defaults;
            for (i, field) in ROUTER_FIELDS.iter().enumerate() {
                let specific = format!("router{k}.{field}");
                if let Some(x) = r.float(&specific)? {
                    v[i] = x;
                } else if let Some(x) = r.float(&format!("router.{field}"))? {
                    v[i] = x;
                }
            }
            let p = CqedParams::new(v[0], v[1], v[2], v[3], v[4]).with_detuning(v[5], v[6]);
            if v[0] < 0.0 {
                return Err(invalid(&format!("router{k}.g"), "coupling must be >= 0"));
            }
            p.validate()
                .map_err(|e| invalid(&format!("router{k}"), e.to_string()))?;
            routers.push(p);
        }
        let mut qubit_inits = Vec::with_capacity(n);
        for k in 1..=n {
            let mut q = QubitInit::default();
            for (field, slot) in [("theta", &mut q.theta), ("phi", &mut q.phi)] {
                if let Some(x) = r.float(&format!("qubit{k}.{field}"))? {
                    *slot = x;
                } else if let Some(x) = r.float(&format!("qubit.{field}"))? {
                    *slot = x;
                }
            }
            qubit_inits.push(q);
        }
        let mut arm_phases = Vec::with_capacity(n - 1);
        for k in 1..n {
            let x = match r.float(&format!("arm{k}.phase"))? {
                Some(x) => x,
                None => r.float("arm.phase")?.unwrap_or(0.0),
            };
            arm_phases.push(x);
        }
        let network = NetworkConfig {
            routers,
            qubit_inits,
            arm_phases,
        };
        network
            .validate()
            .map_err(|e| invalid("routers", e.to_string()))?;

        let extent = |abs: &str, frac: &str| -> Result<Extent> {
            match (r.float(abs)?, r.float(frac)?) {
                (Some(_), Some(_)) => Err(invalid(abs, format!("conflicts with `{frac}`"))),
                (Some(x), None) => Ok(Extent::Absolute(x)),
                (None, Some(f)) => Ok(Extent::Fraction(f)),
                (None, None) => Ok(Extent::Fraction(0.2)),
            }
        };
        let pulse = PulseConfig {
            length: r.float("pulse.length")?.unwrap_or(400.0),
            center: extent("pulse.center", "pulse.center_frac")?,
            width: extent("pulse.width", "pulse.width_frac")?,
        };
        let dt = r.float("grid.dt")?.unwrap_or(0.01);
        let tail = r.float("grid.tail")?.unwrap_or(20.0);

        let model = match r.raw.get("model") {
            None | Some("pulsed") => ModelKind::Pulsed,
            Some("steady_state") => ModelKind::SteadyState,
            Some(v) => return Err(invalid("model", format!("`{v}` is not `pulsed` or `steady_state`"))),
        };
        let phase_mode = match r.raw.get("phase_mode") {
            None | Some("magnitude") => PhaseMode::MagnitudeOnly,
            Some("phase_aware") => PhaseMode::PhaseAware,
            Some(v) => {
                return Err(invalid("phase_mode", format!("`{v}` is not `magnitude` or `phase_aware`")))
            }
        };
        let solver_tolerance = r.float("solver.tolerance")?.unwrap_or(1e-7);
        if solver_tolerance < 0.0 {
            return Err(invalid("solver.tolerance", "must be >= 0"));
        }

        let spectrum = (
            r.float("spectrum.start")?.unwrap_or(-15.0),
            r.float("spectrum.stop")?.unwrap_or(15.0),
            r.count("spectrum.count")?.unwrap_or(1201),
        );
        if spectrum.2 < 2 {
            return Err(invalid("spectrum.count", "need at least 2 points"));
        }
        if !(spectrum.1 > spectrum.0) {
            return Err(invalid("spectrum.stop", "must exceed spectrum.start"));
        }
        let scatter_stride = r.count("scatter.stride")?.unwrap_or(1);
        if scatter_stride == 0 {
            return Err(invalid("scatter.stride", "must be >= 1"));
        }
        let n_max = r.count("purify.n_max")?.unwrap_or(5);
        if n_max == 0 || n_max > 1000 {
            return Err(invalid("purify.n_max", "must be in 1..=1000"));
        }
        let ghz_photons = r.count("ghz.photons")?.unwrap_or(1);
        if ghz_photons == 0 || ghz_photons > 1000 {
            return Err(invalid("ghz.photons", "must be in 1..=1000"));
        }
        if experiment == Experiment::Ghz && network.qubit_inits.iter().any(|q| q.phi != 0.0) {
            return Err(invalid("qubit.phi", "GHZ runs take zero preparation phases"));
        }

        let sweep = parse_sweep(&r, experiment)?;
        let cfg = Self {
            experiment,
            network,
            pulse,
            dt,
            tail,
            model,
            solver_tolerance,
            phase_mode,
            spectrum,
            scatter_stride,
            n_max: n_max as u32,
            ghz_photons: ghz_photons as u32,
            sweep,
        };
        cfg.validate_points()?;
        Ok(cfg)
    }

    fn validate_points(&self) -> Result<()> {
        let lengths: Vec<f64> = match &self.sweep {
            Some(s) if s.axis == SweepAxis::T => s.values.clone(),
            _ => vec![self.pulse.length],
        };
        let pulsed = matches!(
            self.experiment,
            Experiment::Scatter
                | Experiment::OverlapSweep
                | Experiment::Entangle
                | Experiment::Purify
                | Experiment::Ghz
                | Experiment::Sweep
        );
        if !pulsed {
            return Ok(());
        }
        for t in lengths {
            let key = if self.sweep.as_ref().is_some_and(|s| s.axis == SweepAxis::T) {
                "sweep.values"
            } else {
                "pulse.length"
            };
            let grid = TimeGrid::new(t, self.dt, self.tail).map_err(|e| invalid(key, e.to_string()))?;
            self.pulse
                .spec(t)
                .validate(&grid)
                .map_err(|e| invalid("pulse", e.to_string()))?;
        }
        if self.model == ModelKind::Pulsed {
            for (k, p) in self.network.routers.iter().enumerate() {
                if !p.is_resonant() {
                    return Err(invalid(
                        &format!("router{}.delta_a", k + 1),
                        "pulsed runs are resonant only; use model = steady_state",
                    ));
                }
            }
        }
        if let Some(s) = &self.sweep {
            for &x in &s.values {
                let bad = match s.axis {
                    SweepAxis::G | SweepAxis::KappaLoss | SweepAxis::Gamma => x < 0.0,
                    _ => false,
                };
                if bad {
                    return Err(invalid("sweep.values", format!("{} = {x} is negative", s.axis.name())));
                }
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.pulse.length, self.dt, self.tail)
    }

    pub fn router_model(&self) -> RouterModel {
        match self.model {
            ModelKind::SteadyState => RouterModel::SteadyState,
            ModelKind::Pulsed if self.solver_tolerance > 0.0 => RouterModel::Pulsed(ScatterOptions {
                step_doubling_tol: Some(self.solver_tolerance),
            }),
            ModelKind::Pulsed => RouterModel::Pulsed(ScatterOptions::unchecked()),
        }
    }

    /// Resolved configuration in the input grammar, one key per line in a
    /// fixed order. Parsing it back gives an identical configuration.
    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        let mut put = |k: String, v: String| out.push(format!("{k} = {v}"));
        put("experiment".into(), self.experiment.name().into());
        put("routers".into(), self.network.len().to_string());
        put(
            "model".into(),
            match self.model {
                ModelKind::Pulsed => "pulsed",
                ModelKind::SteadyState => "steady_state",
            }
            .into(),
        );
        put(
            "phase_mode".into(),
            match self.phase_mode {
                PhaseMode::MagnitudeOnly => "magnitude",
                PhaseMode::PhaseAware => "phase_aware",
            }
            .into(),
        );
        put("solver.tolerance".into(), fmt_exact(self.solver_tolerance));
        put("grid.dt".into(), fmt_exact(self.dt));
        put("grid.tail".into(), fmt_exact(self.tail));
        put("pulse.length".into(), fmt_exact(self.pulse.length));
        for (name, e) in [("center", self.pulse.center), ("width", self.pulse.width)] {
            match e {
                Extent::Absolute(x) => put(format!("pulse.{name}"), fmt_exact(x)),
                Extent::Fraction(f) => put(format!("pulse.{name}_frac"), fmt_exact(f)),
            }
        }
        for (k, p) in self.network.routers.iter().enumerate() {
            let vals = [p.g, p.kappa1, p.kappa2, p.kappa_loss, p.gamma, p.delta_a, p.delta_c];
            for (field, v) in ROUTER_FIELDS.iter().zip(vals) {
                put(format!("router{}.{field}", k + 1), fmt_exact(v));
            }
        }
        for (k, q) in self.network.qubit_inits.iter().enumerate() {
            put(format!("qubit{}.theta", k + 1), fmt_exact(q.theta));
            put(format!("qubit{}.phi", k + 1), fmt_exact(q.phi));
        }
        for (k, a) in self.network.arm_phases.iter().enumerate() {
            put(format!("arm{}.phase", k + 1), fmt_exact(*a));
        }
        match self.experiment {
            Experiment::Spectrum => {
                put("spectrum.start".into(), fmt_exact(self.spectrum.0));
                put("spectrum.stop".into(), fmt_exact(self.spectrum.1));
                put("spectrum.count".into(), self.spectrum.2.to_string());
            }
            Experiment::Scatter => put("scatter.stride".into(), self.scatter_stride.to_string()),
            Experiment::Purify => put("purify.n_max".into(), self.n_max.to_string()),
            Experiment::Ghz => put("ghz.photons".into(), self.ghz_photons.to_string()),
            _ => {}
        }
        if let Some(s) = &self.sweep {
            put("sweep.axis".into(), s.axis.name().into());
            match s.range {
                Some((a, b, c)) => {
                    put("sweep.start".into(), fmt_exact(a));
                    put("sweep.stop".into(), fmt_exact(b));
                    put("sweep.count".into(), c.to_string());
                }
                None => put(
                    "sweep.values".into(),
                    s.values.iter().map(|v| fmt_exact(*v)).collect::<Vec<_>>().join(", "),
                ),
            }
        }
        let mut text = out.join("\n");
        text.push('\n');
        text
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_exact(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:?}")
    }
}

fn parse_sweep(r: &Reader, experiment: Experiment) -> Result<Option<SweepSpec>> {
    let has_any = r.raw.get("sweep.axis").is_some()
        || r.raw.get("sweep.values").is_some()
        || SWEEP_RANGE_KEYS.iter().any(|k| r.raw.get(k).is_some());
    let sweeping = matches!(experiment, Experiment::Sweep | Experiment::OverlapSweep);
    if !sweeping {
        if has_any {
            let key = r.raw.keys().find(|k| k.starts_with("sweep.")).unwrap_or("sweep");
            return Err(invalid(key, format!("{experiment} does not take a sweep")));
        }
        return Ok(None);
    }
    let axis = match (experiment, r.parsed::<SweepAxis>("sweep.axis")?) {
        (Experiment::OverlapSweep, None | Some(SweepAxis::T)) => SweepAxis::T,
        (Experiment::OverlapSweep, Some(_)) => {
            return Err(invalid("sweep.axis", "OVERLAP_SWEEP sweeps the pulse length T"))
        }
        (_, Some(a)) => a,
        (_, None) => return Err(invalid("sweep.axis", "missing")),
    };
    let list = r.raw.get("sweep.values");
    let range_given = SWEEP_RANGE_KEYS.iter().any(|k| r.raw.get(k).is_some());
    let (values, range) = match (list, range_given) {
        (Some(_), true) => {
            return Err(invalid("sweep.values", "give either a value list or start/stop/count"))
        }
        (Some(text), false) => {
            let values = text
                .split(',')
                .map(|v| parse_float(v.trim()))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| invalid("sweep.values", e))?;
            (values, None)
        }
        (None, _) => {
            let get = |k: &str| r.float(k)?.ok_or_else(|| invalid(k, "missing"));
            let start = get("sweep.start")?;
            let stop = get("sweep.stop")?;
            let count = r.count("sweep.count")?.ok_or_else(|| invalid("sweep.count", "missing"))?;
            if count < 2 {
                return Err(invalid("sweep.count", "a sweep needs at least 2 points"));
            }
            (crate::steady_state::linspace(start, stop, count), Some((start, stop, count)))
        }
    };
    if values.len() < 2 {
        return Err(invalid("sweep.values", "a sweep needs at least 2 points"));
    }
    if values.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("sweep.values", "values must be strictly increasing"));
    }
    Ok(Some(SweepSpec { axis, values, range }))
}

/// Built-in parameter sets for the standard figures.
pub const PRESETS: [(&str, &str); 5] = [
    (
        "fig1",
        "experiment = SPECTRUM
router.g = 10
router.kappa1 = 0.5
router.kappa2 = 0.5
router.kappa_loss = 0
router.gamma = 1
",
    ),
    (
        "fig3",
        "experiment = SCATTER
router.g = 3
router.kappa1 = 0.45
router.kappa2 = 0.45
router.kappa_loss = 0.1
router.gamma = 0.5
pulse.length = 400
scatter.stride = 10
",
    ),
    (
        "fig4",
        "experiment = OVERLAP_SWEEP
router.g = 3
router.kappa1 = 0.45
router.kappa2 = 0.45
router.kappa_loss = 0.1
router.gamma = 0.5
sweep.values = 40, 100, 200, 400
",
    ),
    (
        "fig5-g2",
        "experiment = PURIFY
router.g = 2
router.kappa1 = 0.45
router.kappa2 = 0.45
router.kappa_loss = 0.1
router.gamma = 0.5
pulse.length = 400
purify.n_max = 5
",
    ),
    (
        "fig5-g3",
        "experiment = PURIFY
router.g = 3
router.kappa1 = 0.45
router.kappa2 = 0.45
router.kappa_loss = 0.1
router.gamma = 0.5
pulse.length = 400
purify.n_max = 5
",
    ),
];

pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
