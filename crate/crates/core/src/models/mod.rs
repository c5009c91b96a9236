//! Concrete potentials of the two interference experiments: a finite-radius
//! solenoid and time-windowed tube potentials.

mod solenoid;
mod tube;

pub use solenoid::{solenoid_potential, FiniteSolenoid, SolenoidPotential};
pub use tube::{electric_phase, tube_pulse_eval, Tube, TubePotential, TubePulse};
