use serde::{Deserialize, Serialize};

use super::Grid2D;
use crate::error::{Error, Result};
use crate::gauge::Units;
use crate::models::FiniteSolenoid;

pub const DEFAULT_BARRIER_HEIGHT: f64 = 1e4;
pub const DEFAULT_ABSORBER_WIDTH: f64 = 0.1;
pub const DEFAULT_ABSORBER_STRENGTH: f64 = 0.05;
pub const DEFAULT_SHIELD_FACTOR: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSpec {
    pub center: [f64; 2],
    /// Mean momentum `k`.
    pub momentum: [f64; 2],
    pub sigma: f64,
}

/// Wall perpendicular to `x¹` at `wall_x`, pierced by slits centred on
/// `slit_centers` (in `x²`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierSpec {
    pub wall_x: f64,
    pub thickness: f64,
    pub slit_centers: Vec<f64>,
    pub slit_width: f64,
    #[serde(default = "default_barrier")]
    pub height: f64,
}

fn default_barrier() -> f64 {
    DEFAULT_BARRIER_HEIGHT
}

impl BarrierSpec {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        (x - self.wall_x).abs() <= 0.5 * self.thickness
            && !self.slit_centers.iter().any(|c| (y - c).abs() < 0.5 * self.slit_width)
    }

    pub fn downstream_face(&self) -> f64 {
        self.wall_x + 0.5 * self.thickness
    }
}

/// Cosine-ramp multiplicative mask over a boundary layer on every side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbsorberSpec {
    #[serde(default = "yes")]
    pub enabled: bool,
    /// Layer width as a fraction of the extent along each axis.
    #[serde(default = "default_width")]
    pub width: f64,
    /// Per-step attenuation at the outermost node.
    #[serde(default = "default_strength")]
    pub strength: f64,
}

fn yes() -> bool {
    true
}
fn default_width() -> f64 {
    DEFAULT_ABSORBER_WIDTH
}
fn default_strength() -> f64 {
    DEFAULT_ABSORBER_STRENGTH
}

impl Default for AbsorberSpec {
    fn default() -> Self {
        Self {
            enabled: true,
            width: DEFAULT_ABSORBER_WIDTH,
            strength: DEFAULT_ABSORBER_STRENGTH,
        }
    }
}

impl AbsorberSpec {
    pub fn disabled() -> Self {
        Self {
            enabled: false,
            ..Self::default()
        }
    }

    /// Per-node mask `m = m_x m_y`, or `None` when disabled.
    pub fn mask(&self, grid: &Grid2D) -> Option<Vec<f64>> {
        if !self.enabled {
            return None;
        }
        let ramp = |n: usize, k: usize, extent: f64, step: f64| {
            let w = self.width * extent;
            let edge = (k.min(n - 1 - k)) as f64 * step;
            let d = (w - edge).max(0.0);
            1.0 - self.strength * 0.5 * (1.0 - (std::f64::consts::PI * d / w).cos())
        };
        let mx: Vec<f64> = (0..grid.nx).map(|i| ramp(grid.nx, i, grid.lx, grid.dx())).collect();
        let my: Vec<f64> = (0..grid.ny).map(|j| ramp(grid.ny, j, grid.ly, grid.dy())).collect();
        Some(mx.iter().flat_map(|a| my.iter().map(move |b| a * b)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectorMode {
    /// `∑_n |ψ(x_s, y)|² dt` over the whole run.
    #[default]
    TimeIntegrated,
    /// `|ψ(x_s, y)|²` at the final step.
    Snapshot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorSpec {
    pub screen_x: f64,
    #[serde(default)]
    pub mode: DetectorMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSpec {
    pub dt: f64,
    pub n_steps: usize,
}

/// Everything a 2D run needs besides the potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub grid: Grid2D,
    pub packet: PacketSpec,
    #[serde(default)]
    pub barrier: Option<BarrierSpec>,
    #[serde(default)]
    pub absorber: AbsorberSpec,
    pub integrator: IntegratorSpec,
    #[serde(default)]
    pub detector: Option<DetectorSpec>,
    pub particle: Units,
    #[serde(default)]
    pub solenoid: Option<FiniteSolenoid>,
    /// Radius of the hard shield around the solenoid, in units of its radius.
    #[serde(default = "default_shield")]
    pub shield_factor: f64,
    /// Initial phase `Θ₀` of the packet.
    #[serde(default)]
    pub phase_offset: f64,
}

fn default_shield() -> f64 {
    DEFAULT_SHIELD_FACTOR
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        let (dx, dy) = (self.grid.dx(), self.grid.dy());
        let Units { charge, mass } = self.particle;
        if !(mass > 0.0) || !charge.is_finite() {
            return Err(Error::Config(format!("particle needs m > 0 and finite e, got m = {mass}, e = {charge}")));
        }
        let IntegratorSpec { dt, n_steps } = self.integrator;
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Config(format!("time step must be positive, got {dt}")));
        }
        if n_steps == 0 {
            return Err(Error::Config("n_steps must be at least 1".into()));
        }
        let sigma = self.packet.sigma;
        if !(sigma > 2.0 * dx.max(dy)) {
            return Err(Error::Config(format!(
                "packet width {sigma} is not resolved; need more than {}",
                2.0 * dx.max(dy)
            )));
        }
        let k = self.packet.momentum[0].hypot(self.packet.momentum[1]);
        if !(k * dt / mass < dx.min(dy)) {
            return Err(Error::Config(format!(
                "transport per step |k| dt / m = {} must stay below the spacing {}",
                k * dt / mass,
                dx.min(dy)
            )));
        }
        if let Some(b) = &self.barrier {
            if !(b.thickness > 0.0 && b.slit_width > 0.0 && b.height > 0.0) {
                return Err(Error::Config("barrier thickness, slit width and height must be positive".into()));
            }
        }
        let a = &self.absorber;
        if a.enabled && !(a.width > 0.0 && a.width < 0.5 && (0.0..1.0).contains(&a.strength)) {
            return Err(Error::Config(format!(
                "absorber needs width in (0, 0.5) and strength in [0, 1), got {} and {}",
                a.width, a.strength
            )));
        }
        if let Some(s) = &self.solenoid {
            s.validate().map_err(|e| Error::Config(e.to_string()))?;
            if !(self.shield_factor >= 1.0) {
                return Err(Error::Config(format!("shield factor must be at least 1, got {}", self.shield_factor)));
            }
        }
        if let Some(d) = &self.detector {
            if self.grid.column_of(d.screen_x).is_none() {
                return Err(Error::Config(format!("screen x = {} is off the grid", d.screen_x)));
            }
        }
        Ok(())
    }

    /// Static on-site potential: barrier and solenoid shield.
    pub fn barrier_potential(&self) -> Vec<f64> {
        let g = &self.grid;
        let mut v = vec![0.0; g.len()];
        for i in 0..g.nx {
            for j in 0..g.ny {
                let (x, y) = (g.x(i), g.y(j));
                let mut u = 0.0;
                if let Some(b) = &self.barrier {
                    if b.contains(x, y) {
                        u += b.height;
                    }
                }
                if let Some(s) = &self.solenoid {
                    let r = self.shield_factor * s.radius;
                    let (dx, dy) = (x - s.center[0], y - s.center[1]);
                    if dx * dx + dy * dy < r * r {
                        u += self.barrier.as_ref().map_or(DEFAULT_BARRIER_HEIGHT, |b| b.height);
                    }
                }
                v[g.index(i, j)] = u;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ExperimentConfig {
        ExperimentConfig {
            grid: Grid2D::new(20.0, 20.0, 101, 101).unwrap(),
            packet: PacketSpec {
                center: [-5.0, 0.0],
                momentum: [2.0, 0.0],
                sigma: 1.5,
            },
            barrier: None,
            absorber: AbsorberSpec::disabled(),
            integrator: IntegratorSpec { dt: 0.01, n_steps: 10 },
            detector: None,
            particle: Units { charge: 1.0, mass: 1.0 },
            solenoid: None,
            shield_factor: 1.2,
            phase_offset: 0.0,
        }
    }

    #[test]
    fn valid_config_passes() {
        cfg().validate().unwrap();
    }

    #[test]
    fn invariant_violations_are_config_errors() {
        let mut c = cfg();
        c.integrator.dt = 0.0;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let mut c = cfg();
        c.packet.sigma = 0.3;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let mut c = cfg();
        c.integrator.dt = 0.2;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn mask_is_one_inside_and_ramps_at_edges() {
        let c = AbsorberSpec::default();
        let g = Grid2D::new(10.0, 10.0, 101, 101).unwrap();
        let m = c.mask(&g).unwrap();
        assert_eq!(m[g.index(50, 50)], 1.0);
        assert_eq!(m[g.index(10, 50)], 1.0);
        assert!((m[g.index(0, 50)] - 0.95).abs() < 1e-15);
        assert!(m[g.index(5, 50)] > 0.95 && m[g.index(5, 50)] < 1.0);
        assert!(AbsorberSpec::disabled().mask(&g).is_none());
    }

    #[test]
    fn slits_open_the_wall() {
        let b = BarrierSpec {
            wall_x: 0.0,
            thickness: 0.5,
            slit_centers: vec![-2.0, 2.0],
            slit_width: 1.0,
            height: 1e4,
        };
        assert!(b.contains(0.1, 0.0));
        assert!(!b.contains(0.1, 2.3));
        assert!(!b.contains(0.4, 0.0));
    }
}
