#![allow(dead_code)]

use cqed_router::params::{CqedParams, NetworkConfig};
use cqed_router::pulse_dynamics::{gaussian_pulse, PulseSpec};
use cqed_router::signal::{make_time_grid, ComplexSignal};

pub fn pulse(t: f64, dt: f64) -> ComplexSignal {
    let grid = make_time_grid(t, dt, 20.0).unwrap();
    gaussian_pulse(&grid, &PulseSpec::default_for(t)).unwrap()
}

/// Long pulse centred in `[0, 400]`, smooth at both ends.
pub fn centred_pulse() -> ComplexSignal {
    let grid = make_time_grid(400.0, 0.01, 20.0).unwrap();
    gaussian_pulse(&grid, &PulseSpec::new(200.0, 80.0)).unwrap()
}

/// The g = 3 router pair used by the figure presets.
pub fn pair(g: f64) -> NetworkConfig {
    NetworkConfig::uniform(CqedParams::new(g, 0.45, 0.45, 0.1, 0.5), 2)
}

pub fn ideal(n: usize) -> NetworkConfig {
    NetworkConfig::uniform(CqedParams::new(3.0, 0.5, 0.5, 0.0, 0.0), n)
}
