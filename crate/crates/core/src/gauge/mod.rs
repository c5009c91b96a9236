//! U(1) connections on the trivial bundle over space-time and the geometric
//! quantities built from them: field strength, contour holonomy, surface
//! flux, gauge transformations and holonomy under contour contraction.
//!
//! Natural units are used throughout (`ħ = c = 1`); the charge `e` is always
//! passed explicitly.

mod contour;
mod holonomy;
mod potential;
mod surface;
mod transform;

pub use contour::{ConcentricCircles, Contour, ContourFamily};
pub use holonomy::{
    contract_holonomy_trace, flux_surface, holonomy_element, holonomy_estimate, holonomy_phase,
    max_adjacent_jump, reduce_phase, stokes_residual, HolonomyElement, StokesReport, TraceSample,
};
pub use potential::{
    field_strength, FieldStrength, FnPotential, GaugePotential, UniformPotential, ZeroPotential,
    DEFAULT_DIFF_STEP,
};
pub use surface::{hausdorff_distance, Parametrization, SurfacePatch};
pub use transform::{gauge_transform, FnGauge, GaugeFunction, GaugeTransformed};

use serde::{Deserialize, Serialize};

/// Reduced Planck constant in natural units.
pub const HBAR: f64 = 1.0;
/// Speed of light in natural units.
pub const SPEED_OF_LIGHT: f64 = 1.0;

/// Charge and mass of the particle; `ħ` and `c` are fixed to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub charge: f64,
    pub mass: f64,
}

impl Default for Units {
    fn default() -> Self {
        Self { charge: 1.0, mass: 1.0 }
    }
}

/// A point `(t, x)` of space-time.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpaceTimePoint {
    pub t: f64,
    pub x: [f64; 3],
}

impl SpaceTimePoint {
    pub const fn new(t: f64, x: [f64; 3]) -> Self {
        Self { t, x }
    }

    pub const fn origin() -> Self {
        Self { t: 0.0, x: [0.0; 3] }
    }

    /// A point in the `x¹x²` plane at time `t`.
    pub const fn planar(t: f64, x: f64, y: f64) -> Self {
        Self { t, x: [x, y, 0.0] }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self { t: a[0], x: [a[1], a[2], a[3]] }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.t, self.x[0], self.x[1], self.x[2]]
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.iter().all(|v| v.is_finite())
    }

    /// Component `alpha` (0 is time).
    pub fn coord(&self, alpha: usize) -> f64 {
        if alpha == 0 {
            self.t
        } else {
            self.x[alpha - 1]
        }
    }

    pub(crate) fn shifted(&self, alpha: usize, h: f64) -> Self {
        let mut q = *self;
        if alpha == 0 {
            q.t += h;
        } else {
            q.x[alpha - 1] += h;
        }
        q
    }

    /// `self + s (other - self)`.
    pub fn lerp(&self, other: &Self, s: f64) -> Self {
        let a = self.to_array();
        let b = other.to_array();
        Self::from_array(std::array::from_fn(|k| a[k] + s * (b[k] - a[k])))
    }

    pub fn delta(&self, other: &Self) -> [f64; 4] {
        let a = self.to_array();
        let b = other.to_array();
        std::array::from_fn(|k| b[k] - a[k])
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.delta(other).iter().map(|d| d * d).sum::<f64>().sqrt()
    }
}
