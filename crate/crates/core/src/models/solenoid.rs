use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{FieldStrength, GaugePotential, SpaceTimePoint};

/// Straight solenoid of finite radius along `x³`, carrying total flux `flux`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteSolenoid {
    pub radius: f64,
    pub flux: f64,
    /// Position of the axis in the `x¹x²` plane.
    pub center: [f64; 2],
}

impl FiniteSolenoid {
    pub fn new(radius: f64, flux: f64, center: [f64; 2]) -> Result<Self> {
        let s = Self { radius, flux, center };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(Error::InvalidArgument(format!("solenoid radius must be positive, got {}", self.radius)));
        }
        if !self.flux.is_finite() || !self.center.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidArgument("solenoid flux and centre must be finite".into()));
        }
        Ok(())
    }

    /// Uniform interior field `Φ / πR²`.
    pub fn interior_field(&self) -> f64 {
        self.flux / (PI * self.radius * self.radius)
    }

    /// Flux through a centred disk of radius `r`.
    pub fn enclosed_flux(&self, r: f64) -> f64 {
        self.flux * (r * r / (self.radius * self.radius)).min(1.0)
    }

    pub fn with_flux(&self, flux: f64) -> Self {
        Self { flux, ..*self }
    }

    pub fn potential(&self) -> Result<SolenoidPotential> {
        solenoid_potential(self)
    }
}

/// Symmetric-gauge potential of a [`FiniteSolenoid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolenoidPotential {
    solenoid: FiniteSolenoid,
}

/// Azimuthal potential: `(Φ/2πR²)(−y, x)` inside, `(Φ/2πr²)(−y, x)` outside,
/// with `(x, y)` measured from the axis. Continuous at `r = R`.
pub fn solenoid_potential(s: &FiniteSolenoid) -> Result<SolenoidPotential> {
    s.validate()?;
    Ok(SolenoidPotential { solenoid: *s })
}

impl SolenoidPotential {
    pub fn solenoid(&self) -> &FiniteSolenoid {
        &self.solenoid
    }

    fn offset(&self, p: &SpaceTimePoint) -> (f64, f64) {
        (p.x[0] - self.solenoid.center[0], p.x[1] - self.solenoid.center[1])
    }
}

impl GaugePotential for SolenoidPotential {
    fn components(&self, p: &SpaceTimePoint) -> [f64; 4] {
        let FiniteSolenoid { radius, flux, .. } = self.solenoid;
        let (dx, dy) = self.offset(p);
        let r2 = dx * dx + dy * dy;
        let k = if r2 <= radius * radius {
            flux / (2.0 * PI * radius * radius)
        } else {
            flux / (2.0 * PI * r2)
        };
        [0.0, -k * dy, k * dx, 0.0]
    }

    fn analytic_field_strength(&self, p: &SpaceTimePoint) -> Option<FieldStrength> {
        let (dx, dy) = self.offset(p);
        let r = self.solenoid.radius;
        Some(if dx * dx + dy * dy <= r * r {
            FieldStrength::magnetic_12(self.solenoid.interior_field())
        } else {
            FieldStrength::zero()
        })
    }

    /// Crossings of the wall `r = R` by the segment's projection.
    fn seams(&self, a: &SpaceTimePoint, b: &SpaceTimePoint) -> Vec<f64> {
        let (ax, ay) = self.offset(a);
        let (bx, by) = (b.x[0] - a.x[0], b.x[1] - a.x[1]);
        let qa = bx * bx + by * by;
        if qa == 0.0 {
            return Vec::new();
        }
        let qb = 2.0 * (ax * bx + ay * by);
        let qc = ax * ax + ay * ay - self.solenoid.radius * self.solenoid.radius;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc <= 0.0 {
            return Vec::new();
        }
        let sq = disc.sqrt();
        [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)]
            .into_iter()
            .filter(|s| *s > 0.0 && *s < 1.0)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::field_strength;

    #[test]
    fn exterior_value_matches_closed_form() {
        let pot = FiniteSolenoid::new(1.0, 2.0 * PI, [0.0, 0.0]).unwrap().potential().unwrap();
        let a = pot.components(&SpaceTimePoint::planar(0.0, 2.0, 0.0));
        assert_eq!(a[0], 0.0);
        assert!(a[1].abs() < 1e-16);
        assert!((a[2] - 0.5).abs() < 1e-15);
        assert_eq!(a[3], 0.0);
    }

    #[test]
    fn zero_flux_gives_zero_potential() {
        let pot = FiniteSolenoid::new(1.0, 0.0, [0.3, 0.1]).unwrap().potential().unwrap();
        for p in [SpaceTimePoint::planar(0.0, 0.2, 0.1), SpaceTimePoint::planar(1.0, -4.0, 3.0)] {
            assert!(pot.components(&p).iter().all(|c| *c == 0.0));
        }
    }

    #[test]
    fn non_positive_radius_is_rejected() {
        assert!(FiniteSolenoid::new(0.0, 1.0, [0.0, 0.0]).is_err());
        assert!(FiniteSolenoid::new(-1.0, 1.0, [0.0, 0.0]).is_err());
    }

    #[test]
    fn numeric_field_matches_override_away_from_wall() {
        let pot = FiniteSolenoid::new(1.0, 2.0 * PI, [0.0, 0.0]).unwrap().potential().unwrap();
        struct Plain<'a>(&'a SolenoidPotential);
        impl GaugePotential for Plain<'_> {
            fn components(&self, p: &SpaceTimePoint) -> [f64; 4] {
                self.0.components(p)
            }
        }
        let outside = field_strength(&Plain(&pot), &SpaceTimePoint::planar(0.0, 2.0, 0.0), 1e-4).unwrap();
        assert!(outside.norm() < 1e-8, "{outside:?}");
        let inside = field_strength(&Plain(&pot), &SpaceTimePoint::planar(0.0, 0.3, 0.4), 1e-4).unwrap();
        assert!((inside.get(1, 2) - 2.0).abs() < 1e-6, "{inside:?}");
    }

    #[test]
    fn wall_crossings_of_a_chord() {
        let pot = FiniteSolenoid::new(1.0, 1.0, [0.0, 0.0]).unwrap().potential().unwrap();
        let a = SpaceTimePoint::planar(0.0, -2.0, 0.0);
        let b = SpaceTimePoint::planar(0.0, 2.0, 0.0);
        let s = pot.seams(&a, &b);
        assert_eq!(s.len(), 2);
        assert!((s[0] - 0.25).abs() < 1e-15 && (s[1] - 0.75).abs() < 1e-15);
        let miss = pot.seams(&SpaceTimePoint::planar(0.0, -2.0, 3.0), &SpaceTimePoint::planar(0.0, 2.0, 3.0));
        assert!(miss.is_empty());
    }
}
