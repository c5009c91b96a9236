use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{FieldStrength, GaugePotential, SpaceTimePoint};
use crate::quadrature::GaussLegendre;

/// Time profile of the scalar potential applied to one tube: zero, a cubic
/// smoothstep rise of duration `ramp`, a plateau `peak` on `[t_on, t_off]`,
/// and a symmetric fall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubePulse {
    pub peak: f64,
    pub t_on: f64,
    pub t_off: f64,
    pub ramp: f64,
}

fn smoothstep(u: f64) -> f64 {
    u * u * (3.0 - 2.0 * u)
}

impl TubePulse {
    pub fn new(peak: f64, t_on: f64, t_off: f64, ramp: f64) -> Result<Self> {
        let p = Self { peak, t_on, t_off, ramp };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ramp > 0.0) {
            return Err(Error::InvalidArgument(format!("pulse ramp must be positive, got {}", self.ramp)));
        }
        if !(self.t_on < self.t_off) {
            return Err(Error::InvalidArgument(format!(
                "pulse window must satisfy t_on < t_off, got [{}, {}]",
                self.t_on, self.t_off
            )));
        }
        if !self.peak.is_finite() {
            return Err(Error::InvalidArgument("pulse peak must be finite".into()));
        }
        Ok(())
    }

    /// Interval outside of which the pulse is exactly zero.
    pub fn support(&self) -> (f64, f64) {
        (self.t_on - self.ramp, self.t_off + self.ramp)
    }

    pub fn eval(&self, t: f64) -> f64 {
        tube_pulse_eval(self, t)
    }
}

/// Value of `A₀` at time `t`.
pub fn tube_pulse_eval(p: &TubePulse, t: f64) -> f64 {
    let (start, end) = p.support();
    if t <= start || t >= end {
        0.0
    } else if t < p.t_on {
        p.peak * smoothstep((t - start) / p.ramp)
    } else if t <= p.t_off {
        p.peak
    } else {
        p.peak * smoothstep((end - t) / p.ramp)
    }
}

/// Phase `e ∫_{t0}^{t1} A₀(s) ds` accumulated under the pulse.
///
/// The plateau is integrated in closed form; each cubic ramp with a
/// four-point Gauss–Legendre rule, which is exact for it.
pub fn electric_phase(p: &TubePulse, t0: f64, t1: f64, charge: f64) -> Result<f64> {
    if !(t0 <= t1) {
        return Err(Error::InvalidArgument(format!("electric phase needs t0 <= t1, got [{t0}, {t1}]")));
    }
    p.validate()?;
    let (start, end) = p.support();
    let rule = GaussLegendre::new(4);
    let clip = |a: f64, b: f64| (a.max(t0), b.min(t1));
    let mut total = 0.0;
    let (a, b) = clip(start, p.t_on);
    if b > a {
        total += rule.integrate(a, b, |t| tube_pulse_eval(p, t));
    }
    let (a, b) = clip(p.t_on, p.t_off);
    if b > a {
        total += p.peak * (b - a);
    }
    let (a, b) = clip(p.t_off, end);
    if b > a {
        total += rule.integrate(a, b, |t| tube_pulse_eval(p, t));
    }
    Ok(charge * total)
}

/// A tube along `x¹` occupying `|x² − y_center| ≤ half_width`, inside which
/// `A₀` is homogeneous and follows `pulse`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tube {
    pub y_center: f64,
    pub half_width: f64,
    pub pulse: TubePulse,
}

impl Tube {
    fn contains(&self, y: f64) -> bool {
        (y - self.y_center).abs() <= self.half_width
    }
}

/// Scalar potential of a set of tubes; zero outside them, no vector part.
#[derive(Debug, Clone, PartialEq)]
pub struct TubePotential {
    tubes: Vec<Tube>,
}

impl TubePotential {
    pub fn new(tubes: Vec<Tube>) -> Result<Self> {
        for t in &tubes {
            t.pulse.validate()?;
            if !(t.half_width > 0.0) {
                return Err(Error::InvalidArgument("tube half-width must be positive".into()));
            }
        }
        Ok(Self { tubes })
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }
}

impl GaugePotential for TubePotential {
    fn components(&self, p: &SpaceTimePoint) -> [f64; 4] {
        let a0 = self
            .tubes
            .iter()
            .filter(|t| t.contains(p.x[1]))
            .map(|t| t.pulse.eval(p.t))
            .sum();
        [a0, 0.0, 0.0, 0.0]
    }

    /// Field-free strictly inside or outside every tube.
    fn analytic_field_strength(&self, p: &SpaceTimePoint) -> Option<FieldStrength> {
        let on_wall = self.tubes.iter().any(|t| {
            let d = ((p.x[1] - t.y_center).abs() - t.half_width).abs();
            d < 1e-9 * t.half_width.max(1.0)
        });
        // ∂_μ A₀ vanishes off the walls; ∂_t A_μ vanishes since A_μ = 0.
        (!on_wall).then(FieldStrength::zero)
    }

    fn seams(&self, a: &SpaceTimePoint, b: &SpaceTimePoint) -> Vec<f64> {
        let mut out = Vec::new();
        let dy = b.x[1] - a.x[1];
        let dt = b.t - a.t;
        for t in &self.tubes {
            if dy != 0.0 {
                for wall in [t.y_center - t.half_width, t.y_center + t.half_width] {
                    out.push((wall - a.x[1]) / dy);
                }
            }
            if dt != 0.0 {
                let (s0, s1) = t.pulse.support();
                for tt in [s0, t.pulse.t_on, t.pulse.t_off, s1] {
                    out.push((tt - a.t) / dt);
                }
            }
        }
        out.retain(|s| *s > 0.0 && *s < 1.0);
        out
    }
}
