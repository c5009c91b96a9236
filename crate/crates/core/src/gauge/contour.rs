use std::f64::consts::TAU;

use super::SpaceTimePoint;
use crate::error::{Error, Result};

/// Piecewise-linear path in space-time. Orientation is the vertex order; a
/// closed contour includes the segment from the last vertex back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    vertices: Vec<SpaceTimePoint>,
    closed: bool,
}

impl Contour {
    pub fn new(mut vertices: Vec<SpaceTimePoint>, closed: bool) -> Result<Self> {
        if closed && vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "contour needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite contour vertex {p:?}")));
        }
        let n = vertices.len();
        let pairs = if closed { n } else { n - 1 };
        for k in 0..pairs {
            if vertices[k] == vertices[(k + 1) % n] {
                return Err(Error::InvalidArgument(format!("repeated consecutive vertex at index {k}")));
            }
        }
        Ok(Self { vertices, closed })
    }

    pub fn closed(vertices: Vec<SpaceTimePoint>) -> Result<Self> {
        Self::new(vertices, true)
    }

    /// Counter-clockwise circle in the `x¹x²` plane at time `t`, sampled with
    /// `n` vertices lying on the circle.
    pub fn circle(center: [f64; 2], radius: f64, t: f64, n: usize) -> Result<Self> {
        Self::ellipse(center, [radius, radius], 0.0, t, n)
    }

    /// Counter-clockwise ellipse with semi-axes `axes`, rotated by `rotation`.
    pub fn ellipse(center: [f64; 2], axes: [f64; 2], rotation: f64, t: f64, n: usize) -> Result<Self> {
        if !(axes[0] > 0.0 && axes[1] > 0.0) {
            return Err(Error::InvalidArgument("ellipse axes must be positive".into()));
        }
        let (sr, cr) = rotation.sin_cos();
        let vertices = (0..n)
            .map(|k| {
                let phi = TAU * k as f64 / n as f64;
                let (s, c) = phi.sin_cos();
                let (u, v) = (axes[0] * c, axes[1] * s);
                SpaceTimePoint::planar(t, center[0] + cr * u - sr * v, center[1] + sr * u + cr * v)
            })
            .collect();
        Self::closed(vertices)
    }

    /// Counter-clockwise axis-aligned rectangle in the `x¹x²` plane.
    pub fn rectangle(center: [f64; 2], half_widths: [f64; 2], t: f64) -> Result<Self> {
        let [cx, cy] = center;
        let [hx, hy] = half_widths;
        Self::closed(vec![
            SpaceTimePoint::planar(t, cx - hx, cy - hy),
            SpaceTimePoint::planar(t, cx + hx, cy - hy),
            SpaceTimePoint::planar(t, cx + hx, cy + hy),
            SpaceTimePoint::planar(t, cx - hx, cy + hy),
        ])
    }

    /// Space-time loop of a two-beam experiment: the `lower` position is held
    /// from `t0` to `t1`, then the `upper` position is traversed backwards in
    /// time, with instantaneous spatial legs joining them.
    pub fn time_loop(t0: f64, t1: f64, lower: [f64; 3], upper: [f64; 3]) -> Result<Self> {
        Self::closed(vec![
            SpaceTimePoint::new(t0, lower),
            SpaceTimePoint::new(t1, lower),
            SpaceTimePoint::new(t1, upper),
            SpaceTimePoint::new(t0, upper),
        ])
    }

    pub fn vertices(&self) -> &[SpaceTimePoint] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Same point set, opposite orientation.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self {
            vertices,
            closed: self.closed,
        }
    }

    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    /// Segment `k` as its start and end points.
    pub fn segment(&self, k: usize) -> (SpaceTimePoint, SpaceTimePoint) {
        let n = self.vertices.len();
        (self.vertices[k], self.vertices[(k + 1) % n])
    }

    pub fn segments(&self) -> impl Iterator<Item = (SpaceTimePoint, SpaceTimePoint)> + '_ {
        (0..self.segment_count()).map(move |k| self.segment(k))
    }

    /// Euclidean length in the four coordinates.
    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| a.distance(&b)).sum()
    }

    /// Point at parameter `v ∈ [0, 1]`, each segment occupying an equal share.
    pub fn point_at(&self, v: f64) -> SpaceTimePoint {
        let (k, s) = self.locate(v);
        let (a, b) = self.segment(k);
        a.lerp(&b, s)
    }

    /// Derivative of [`Contour::point_at`] with respect to `v`.
    pub fn tangent_at(&self, v: f64) -> [f64; 4] {
        let (k, _) = self.locate(v);
        let (a, b) = self.segment(k);
        let m = self.segment_count() as f64;
        a.delta(&b).map(|d| d * m)
    }

    fn locate(&self, v: f64) -> (usize, f64) {
        let m = self.segment_count();
        let x = v.clamp(0.0, 1.0) * m as f64;
        let k = (x.floor() as usize).min(m - 1);
        (k, x - k as f64)
    }
}

/// A one-parameter family of closed contours, `λ = 0` the full contour and
/// `λ = 1` a point.
pub trait ContourFamily: Sync {
    /// Vertices of the contour at `lambda`; may all coincide at `lambda = 1`.
    fn vertices(&self, lambda: f64) -> Vec<SpaceTimePoint>;
}

impl<F> ContourFamily for F
where
    F: Fn(f64) -> Vec<SpaceTimePoint> + Sync,
{
    fn vertices(&self, lambda: f64) -> Vec<SpaceTimePoint> {
        self(lambda)
    }
}

/// Circles of radius `r(λ) = r₀ (1 − λ)` about a fixed centre.
#[derive(Debug, Clone, Copy)]
pub struct ConcentricCircles {
    pub center: [f64; 2],
    pub start_radius: f64,
    pub t: f64,
    pub vertices: usize,
}

impl ConcentricCircles {
    pub fn radius(&self, lambda: f64) -> f64 {
        self.start_radius * (1.0 - lambda)
    }
}

impl ContourFamily for ConcentricCircles {
    fn vertices(&self, lambda: f64) -> Vec<SpaceTimePoint> {
        let r = self.radius(lambda);
        (0..self.vertices)
            .map(|k| {
                let (s, c) = (TAU * k as f64 / self.vertices as f64).sin_cos();
                SpaceTimePoint::planar(self.t, self.center[0] + r * c, self.center[1] + r * s)
            })
            .collect()
    }
}
