//! Holonomy of U(1) connections and gauge-covariant Schrödinger
//! interferometry for the electric and magnetic Aharonov–Bohm setups.
//!
//! The crate is organised bottom-up:
//!
//! * [`gauge`]: potentials, contours, surfaces, holonomy phases, Stokes
//!   checks, gauge transformations and contraction traces.
//! * [`models`]: the finite solenoid and the pulsed tube potentials.
//! * [`sim`]: Crank–Nicolson evolution on a lattice with Peierls link
//!   phases, and the two interferometer runs built on it.
//! * [`analysis`]: fringe-shift extraction and flux-scan fits.
//! * [`cli`]: configuration files and the commands behind the `abh` binary.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod gauge;
pub mod models;
pub mod quadrature;
pub mod sim;

pub use error::{Error, Result};
