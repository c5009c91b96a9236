use std::f64::consts::TAU;
use std::sync::Arc;

use rayon::prelude::*;

use super::{Contour, SpaceTimePoint};
use crate::error::{Error, Result};

/// A map from the unit square into space-time.
pub trait Parametrization: Send + Sync {
    fn point(&self, u: f64, v: f64) -> SpaceTimePoint;

    /// `(∂σ/∂u, ∂σ/∂v)`. The default uses central differences, one-sided at
    /// the edges of the square.
    fn tangents(&self, u: f64, v: f64) -> ([f64; 4], [f64; 4]) {
        const H: f64 = 1e-6;
        let du = |a: f64, b: f64| self.point(a, v).delta(&self.point(b, v)).map(|d| d / (b - a));
        let dv = |a: f64, b: f64| self.point(u, a).delta(&self.point(u, b)).map(|d| d / (b - a));
        let (u0, u1) = ((u - H).max(0.0), (u + H).min(1.0));
        let (v0, v1) = ((v - H).max(0.0), (v + H).min(1.0));
        (du(u0, u1), dv(v0, v1))
    }

    /// Values of `v` across which the map is only piecewise smooth.
    fn v_breaks(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// A parametrised surface together with the closed contour it spans and the
/// base integration mesh `(n_u, n_v)`.
#[derive(Clone)]
pub struct SurfacePatch {
    map: Arc<dyn Parametrization>,
    boundary: Contour,
    mesh: (usize, usize),
}

impl std::fmt::Debug for SurfacePatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SurfacePatch")
            .field("boundary_vertices", &self.boundary.vertices().len())
            .field("mesh", &self.mesh)
            .finish()
    }
}

impl SurfacePatch {
    /// The caller guarantees that `boundary` is the oriented image of the
    /// square's boundary (up to collapsed or cancelling edges).
    pub fn new(map: Arc<dyn Parametrization>, boundary: Contour, n_u: usize, n_v: usize) -> Result<Self> {
        if !boundary.is_closed() {
            return Err(Error::OpenContour);
        }
        if n_u == 0 || n_v == 0 {
            return Err(Error::InvalidArgument("surface mesh must be non-empty".into()));
        }
        Ok(Self {
            map,
            boundary,
            mesh: (n_u, n_v),
        })
    }

    /// Flat disk in the `x¹x²` plane in polar parametrisation; its boundary is
    /// the counter-clockwise circle sampled with `boundary_vertices` points.
    /// The flux is taken over the round disk, so where the field does not
    /// vanish on the rim the chord sag of that polygon enters the residual at
    /// order `1/boundary_vertices²`.
    pub fn disk(center: [f64; 2], radius: f64, t: f64, boundary_vertices: usize, mesh: (usize, usize)) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidArgument("disk radius must be positive".into()));
        }
        let boundary = Contour::circle(center, radius, t, boundary_vertices)?;
        Self::new(Arc::new(Disk { center, radius, t }), boundary, mesh.0, mesh.1)
    }

    /// Straight-line cone from `apex` to every point of a closed polygon. Its
    /// boundary is the polygon itself; the seam from the apex to the first
    /// vertex is traversed twice in opposite directions.
    pub fn cone(apex: SpaceTimePoint, contour: &Contour, n_u: usize) -> Result<Self> {
        if !contour.is_closed() {
            return Err(Error::OpenContour);
        }
        let segments = contour.segment_count();
        let per_segment = 8usize.div_ceil(segments).max(1);
        let n_v = segments * per_segment;
        Self::new(
            Arc::new(Cone {
                apex,
                contour: contour.clone(),
            }),
            contour.clone(),
            n_u,
            n_v,
        )
    }

    /// Bilinear patch through four corners; boundary `c00 → c10 → c11 → c01`.
    pub fn bilinear(corners: [SpaceTimePoint; 4], mesh: (usize, usize)) -> Result<Self> {
        let boundary = Contour::closed(corners.to_vec())?;
        Self::new(Arc::new(Bilinear { corners }), boundary, mesh.0, mesh.1)
    }

    pub fn boundary(&self) -> &Contour {
        &self.boundary
    }

    pub fn mesh(&self) -> (usize, usize) {
        self.mesh
    }

    pub fn map(&self) -> &dyn Parametrization {
        self.map.as_ref()
    }

    /// Cell edges in `u`.
    pub(crate) fn u_edges(&self) -> Vec<f64> {
        uniform_edges(self.mesh.0)
    }

    /// Cell edges in `v`: the uniform mesh merged with the map's breaks.
    pub(crate) fn v_edges(&self) -> Vec<f64> {
        let mut edges = uniform_edges(self.mesh.1);
        edges.extend(self.map.v_breaks().into_iter().filter(|b| *b > 0.0 && *b < 1.0));
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        edges
    }
}

fn uniform_edges(n: usize) -> Vec<f64> {
    (0..=n).map(|k| k as f64 / n as f64).collect()
}

struct Disk {
    center: [f64; 2],
    radius: f64,
    t: f64,
}

impl Parametrization for Disk {
    fn point(&self, u: f64, v: f64) -> SpaceTimePoint {
        let (s, c) = (TAU * v).sin_cos();
        let r = self.radius * u;
        SpaceTimePoint::planar(self.t, self.center[0] + r * c, self.center[1] + r * s)
    }

    fn tangents(&self, u: f64, v: f64) -> ([f64; 4], [f64; 4]) {
        let (s, c) = (TAU * v).sin_cos();
        let r = self.radius * u;
        (
            [0.0, self.radius * c, self.radius * s, 0.0],
            [0.0, -TAU * r * s, TAU * r * c, 0.0],
        )
    }
}

struct Cone {
    apex: SpaceTimePoint,
    contour: Contour,
}

impl Parametrization for Cone {
    fn point(&self, u: f64, v: f64) -> SpaceTimePoint {
        self.apex.lerp(&self.contour.point_at(v), u)
    }

    fn tangents(&self, u: f64, v: f64) -> ([f64; 4], [f64; 4]) {
        let rim = self.contour.point_at(v);
        let tu = self.apex.delta(&rim);
        let tv = self.contour.tangent_at(v).map(|d| d * u);
        (tu, tv)
    }

    fn v_breaks(&self) -> Vec<f64> {
        let m = self.contour.segment_count();
        (1..m).map(|k| k as f64 / m as f64).collect()
    }
}

struct Bilinear {
    corners: [SpaceTimePoint; 4],
}

impl Parametrization for Bilinear {
    fn point(&self, u: f64, v: f64) -> SpaceTimePoint {
        let [c00, c10, c11, c01] = self.corners.map(|c| c.to_array());
        SpaceTimePoint::from_array(std::array::from_fn(|k| {
            (1.0 - u) * (1.0 - v) * c00[k] + u * (1.0 - v) * c10[k] + u * v * c11[k] + (1.0 - u) * v * c01[k]
        }))
    }

    fn tangents(&self, u: f64, v: f64) -> ([f64; 4], [f64; 4]) {
        let [c00, c10, c11, c01] = self.corners.map(|c| c.to_array());
        let tu = std::array::from_fn(|k| (1.0 - v) * (c10[k] - c00[k]) + v * (c11[k] - c01[k]));
        let tv = std::array::from_fn(|k| (1.0 - u) * (c01[k] - c00[k]) + u * (c11[k] - c10[k]));
        (tu, tv)
    }
}

fn point_segment_distance(p: &SpaceTimePoint, a: &SpaceTimePoint, b: &SpaceTimePoint) -> f64 {
    let d = a.delta(b);
    let w = a.delta(p);
    let len2: f64 = d.iter().map(|x| x * x).sum();
    let s = if len2 > 0.0 {
        (d.iter().zip(&w).map(|(x, y)| x * y).sum::<f64>() / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    a.lerp(b, s).distance(p)
}

fn one_sided(from: &Contour, to: &Contour) -> f64 {
    from.vertices()
        .par_iter()
        .map(|p| {
            to.segments()
                .map(|(a, b)| point_segment_distance(p, &a, &b))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}

/// Symmetric Hausdorff distance between two polylines, measured from each
/// polyline's vertices to the other polyline.
pub fn hausdorff_distance(a: &Contour, b: &Contour) -> f64 {
    one_sided(a, b).max(one_sided(b, a))
}
