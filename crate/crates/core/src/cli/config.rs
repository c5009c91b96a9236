use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{Contour, GaugeFunction, GaugePotential, SpaceTimePoint, SurfacePatch, Units, UniformPotential, ZeroPotential};
use crate::models::{FiniteSolenoid, Tube, TubePotential};
use crate::quadrature::Quadrature;
use crate::sim::{ElectricConfig, ExperimentConfig};

/// One run file. Each command reads the sections it needs and rejects the
/// file when one is missing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub particle: Option<Units>,
    #[serde(default)]
    pub potential: Option<PotentialSpec>,
    #[serde(default)]
    pub contour: Option<ContourSpec>,
    /// Second contour for the contour-independence report of `stokes`.
    #[serde(default)]
    pub compare_contour: Option<ContourSpec>,
    #[serde(default)]
    pub surface: Option<SurfaceSpec>,
    #[serde(default)]
    pub gauge: Option<GaugeSpec>,
    #[serde(default)]
    pub quadrature: Option<Quadrature>,
    /// Acceptance threshold of the command; see [`super::Command`].
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub magnetic: Option<ExperimentConfig>,
    #[serde(default)]
    pub electric: Option<ElectricConfig>,
    #[serde(default)]
    pub scan: Option<ScanSpec>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub(crate) fn require<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T> {
        field.as_ref().ok_or_else(|| Error::Config(format!("missing [{name}] section")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Zero,
    Uniform { components: [f64; 4] },
    Solenoid { radius: f64, flux: f64, center: [f64; 2] },
    Tubes { tubes: Vec<Tube> },
}

impl PotentialSpec {
    pub fn build(&self) -> Result<Box<dyn GaugePotential>> {
        Ok(match self {
            PotentialSpec::Zero => Box::new(ZeroPotential),
            PotentialSpec::Uniform { components } => Box::new(UniformPotential(*components)),
            PotentialSpec::Solenoid { radius, flux, center } => Box::new(FiniteSolenoid::new(*radius, *flux, *center)?.potential()?),
            PotentialSpec::Tubes { tubes } => Box::new(TubePotential::new(tubes.clone())?),
        })
    }
}

fn default_vertices() -> usize {
    256
}

/// Closed contour: an explicit `(t, x, y, z)` vertex list or one of the
/// planar shorthands at fixed time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum ContourSpec {
    Polygon {
        vertices: Vec<[f64; 4]>,
        #[serde(default)]
        reversed: bool,
    },
    Circle {
        center: [f64; 2],
        radius: f64,
        #[serde(default = "default_vertices")]
        vertices: usize,
        #[serde(default)]
        t: f64,
        #[serde(default)]
        reversed: bool,
    },
    Ellipse {
        center: [f64; 2],
        axes: [f64; 2],
        #[serde(default)]
        rotation: f64,
        #[serde(default = "default_vertices")]
        vertices: usize,
        #[serde(default)]
        t: f64,
        #[serde(default)]
        reversed: bool,
    },
    Rectangle {
        center: [f64; 2],
        half_widths: [f64; 2],
        #[serde(default)]
        t: f64,
        #[serde(default)]
        reversed: bool,
    },
    /// Spatial corners `lower` and `upper`, held over `[t0, t1]`.
    TimeLoop {
        t0: f64,
        t1: f64,
        lower: [f64; 3],
        upper: [f64; 3],
        #[serde(default)]
        reversed: bool,
    },
}

impl ContourSpec {
    pub fn build(&self) -> Result<Contour> {
        let (c, reversed) = match self {
            ContourSpec::Polygon { vertices, reversed } => {
                (Contour::closed(vertices.iter().map(|v| SpaceTimePoint::from_array(*v)).collect())?, *reversed)
            }
            ContourSpec::Circle { center, radius, vertices, t, reversed } => {
                (Contour::circle(*center, *radius, *t, *vertices)?, *reversed)
            }
            ContourSpec::Ellipse { center, axes, rotation, vertices, t, reversed } => {
                (Contour::ellipse(*center, *axes, *rotation, *t, *vertices)?, *reversed)
            }
            ContourSpec::Rectangle { center, half_widths, t, reversed } => {
                (Contour::rectangle(*center, *half_widths, *t)?, *reversed)
            }
            ContourSpec::TimeLoop { t0, t1, lower, upper, reversed } => (Contour::time_loop(*t0, *t1, *lower, *upper)?, *reversed),
        };
        Ok(if reversed { c.reversed() } else { c })
    }
}

fn default_boundary_tolerance() -> f64 {
    1e-9
}

/// Surface bounded by the `[contour]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    /// Cone from `apex` over the contour, meshed with `rings` radial cells.
    Cone {
        apex: [f64; 4],
        rings: usize,
        #[serde(default = "default_boundary_tolerance")]
        boundary_tolerance: f64,
    },
    /// Flat disk; its boundary polygon has `boundary_vertices` vertices,
    /// by default as many as a circle contour.
    Disk {
        center: [f64; 2],
        radius: f64,
        #[serde(default)]
        t: f64,
        mesh: [usize; 2],
        #[serde(default)]
        boundary_vertices: Option<usize>,
        #[serde(default = "default_boundary_tolerance")]
        boundary_tolerance: f64,
    },
    /// Bilinear sheet through four corners given counter-clockwise.
    Bilinear {
        corners: [[f64; 4]; 4],
        mesh: [usize; 2],
        #[serde(default = "default_boundary_tolerance")]
        boundary_tolerance: f64,
    },
}

impl SurfaceSpec {
    pub fn build(&self, contour: &Contour, contour_spec: &ContourSpec) -> Result<SurfacePatch> {
        match self {
            SurfaceSpec::Cone { apex, rings, .. } => SurfacePatch::cone(SpaceTimePoint::from_array(*apex), contour, *rings),
            SurfaceSpec::Disk { center, radius, t, mesh, boundary_vertices, .. } => {
                let n = boundary_vertices.unwrap_or(match contour_spec {
                    ContourSpec::Circle { vertices, .. } => *vertices,
                    _ => default_vertices(),
                });
                SurfacePatch::disk(*center, *radius, *t, n, (mesh[0], mesh[1]))
            }
            SurfaceSpec::Bilinear { corners, mesh, .. } => {
                SurfacePatch::bilinear(corners.map(SpaceTimePoint::from_array), (mesh[0], mesh[1]))
            }
        }
    }

    pub fn boundary_tolerance(&self) -> f64 {
        match self {
            SurfaceSpec::Cone { boundary_tolerance, .. }
            | SurfaceSpec::Disk { boundary_tolerance, .. }
            | SurfaceSpec::Bilinear { boundary_tolerance, .. } => *boundary_tolerance,
        }
    }
}

/// `amplitude · sin(k·(t, x, y, z) + phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierTerm {
    pub amplitude: f64,
    pub wavevector: [f64; 4],
    #[serde(default)]
    pub phase: f64,
}

/// Single-valued gauge functions with closed-form gradients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GaugeSpec {
    Constant {
        value: f64,
    },
    /// `offset + c·(t, x, y, z)`.
    Linear {
        coefficients: [f64; 4],
        #[serde(default)]
        offset: f64,
    },
    Fourier {
        terms: Vec<FourierTerm>,
    },
}

impl GaugeSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = match self {
            GaugeSpec::Constant { value } => value.is_finite(),
            GaugeSpec::Linear { coefficients, offset } => offset.is_finite() && coefficients.iter().all(|c| c.is_finite()),
            GaugeSpec::Fourier { terms } => terms.iter().all(|t| {
                t.amplitude.is_finite() && t.phase.is_finite() && t.wavevector.iter().all(|k| k.is_finite())
            }),
        };
        if finite {
            Ok(())
        } else {
            Err(Error::Config("gauge function parameters must be finite".into()))
        }
    }
}

fn dot(k: &[f64; 4], p: &SpaceTimePoint) -> f64 {
    let x = p.to_array();
    (0..4).map(|a| k[a] * x[a]).sum()
}

impl GaugeFunction for GaugeSpec {
    fn value(&self, p: &SpaceTimePoint) -> f64 {
        match self {
            GaugeSpec::Constant { value } => *value,
            GaugeSpec::Linear { coefficients, offset } => offset + dot(coefficients, p),
            GaugeSpec::Fourier { terms } => terms.iter().map(|t| t.amplitude * (dot(&t.wavevector, p) + t.phase).sin()).sum(),
        }
    }

    fn gradient(&self, p: &SpaceTimePoint) -> Option<[f64; 4]> {
        Some(match self {
            GaugeSpec::Constant { .. } => [0.0; 4],
            GaugeSpec::Linear { coefficients, .. } => *coefficients,
            GaugeSpec::Fourier { terms } => {
                let mut g = [0.0; 4];
                for t in terms {
                    let c = t.amplitude * (dot(&t.wavevector, p) + t.phase).cos();
                    for (g, k) in g.iter_mut().zip(&t.wavevector) {
                        *g += c * k;
                    }
                }
                g
            }
        })
    }
}

/// Flux values of a scan; one of them must be zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub fluxes: Vec<f64>,
}
