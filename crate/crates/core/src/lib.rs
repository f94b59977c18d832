pub mod config;
pub mod entanglement;
pub mod error;
pub mod experiment;
pub mod params;
pub mod pulse_dynamics;
pub mod router_network;
pub mod signal;
pub mod state;
pub mod steady_state;
