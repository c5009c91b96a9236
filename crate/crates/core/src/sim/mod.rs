//! Lattice Schrödinger evolution `i ψ̇ = (p + eA)²/2m ψ + (eA₀ + U) ψ` and
//! the two interferometers built on it.

mod config;
mod electric;
mod evolve;
mod grid;
mod links;
mod magnetic;
mod state;
mod tridiag;

pub use config::{
    AbsorberSpec, BarrierSpec, DetectorMode, DetectorSpec, ExperimentConfig, IntegratorSpec, PacketSpec,
    DEFAULT_ABSORBER_STRENGTH, DEFAULT_ABSORBER_WIDTH, DEFAULT_BARRIER_HEIGHT, DEFAULT_SHIELD_FACTOR,
};
pub use electric::{
    electric_two_path_run, readout_curve, readout_phase, ChannelPacket, ElectricConfig, ElectricRun, TwoChannelState,
    SUPPORT_LEAK,
};
pub use evolve::{evolve, Simulation};
pub use grid::Grid2D;
pub use links::{peierls_links, transport_phases, LinkPhases};
pub use magnetic::{magnetic_double_slit_run, MagneticRun, MAX_EDGE_LEAK, MAX_SHIELD_RATIO};
pub use state::{init_gaussian, WaveState};
