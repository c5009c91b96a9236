use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{field_strength, hausdorff_distance, Contour, ContourFamily, GaugePotential, SpaceTimePoint, SurfacePatch};
use crate::error::{Error, Result};
use crate::quadrature::{bisect, integrate_unit, Estimate, GaussLegendre, Quadrature};

/// Raw line integral `e ∮ A_α dx^α` together with the summed quadrature
/// residual of all segments.
pub fn holonomy_estimate<P: GaugePotential + ?Sized>(
    pot: &P,
    contour: &Contour,
    quad: &Quadrature,
    charge: f64,
) -> Result<Estimate> {
    if !contour.is_closed() {
        return Err(Error::OpenContour);
    }
    quad.validate()?;
    let rule = GaussLegendre::new(quad.base_nodes());
    let per_segment: Vec<Result<Estimate>> = (0..contour.segment_count())
        .into_par_iter()
        .map(|k| {
            let (a, b) = contour.segment(k);
            segment_integral(pot, &a, &b, &rule, quad)
        })
        .collect();
    let mut value = 0.0;
    let mut residual = 0.0;
    for est in per_segment {
        let est = est?;
        value += est.value;
        residual += est.residual;
    }
    Ok(Estimate {
        value: charge * value,
        residual: charge.abs() * residual,
    })
}

/// `∫ A_α dx^α` along the straight segment `a → b`, split at the potential's
/// seams.
pub(crate) fn segment_integral<P: GaugePotential + ?Sized>(
    pot: &P,
    a: &SpaceTimePoint,
    b: &SpaceTimePoint,
    rule: &GaussLegendre,
    quad: &Quadrature,
) -> Result<Estimate> {
    let d = a.delta(b);
    let mut cuts = vec![0.0];
    let mut seams: Vec<f64> = pot.seams(a, b).into_iter().filter(|s| *s > 0.0 && *s < 1.0).collect();
    seams.sort_by(f64::total_cmp);
    cuts.extend(seams);
    cuts.push(1.0);
    let mut total = Estimate { value: 0.0, residual: 0.0 };
    for w in cuts.windows(2) {
        let (s0, s1) = (w[0], w[1]);
        if s1 <= s0 {
            continue;
        }
        let width = s1 - s0;
        let est = integrate_unit(rule, quad, |s| {
            let p = a.lerp(b, s0 + width * s);
            let comp = pot.components(&p);
            comp.iter().zip(&d).map(|(c, dx)| c * dx).sum::<f64>()
        })?;
        total.value += width * est.value;
        total.residual += width * est.residual;
    }
    if !total.value.is_finite() {
        return Err(Error::EvaluationDomain { t: a.t, x: a.x });
    }
    Ok(total)
}

/// Holonomy phase `Θ = e ∮_γ A_α dx^α`, not reduced modulo 2π.
pub fn holonomy_phase<P: GaugePotential + ?Sized>(pot: &P, contour: &Contour, quad: &Quadrature, charge: f64) -> Result<f64> {
    holonomy_estimate(pot, contour, quad, charge).map(|e| e.value)
}

/// Reduces a phase to `(−π, π]`, mapping the branch point to `+π`.
pub fn reduce_phase(theta: f64) -> f64 {
    if !theta.is_finite() {
        return theta;
    }
    let k = (theta / TAU).round();
    // the period is the f64 value of 2π, so `TAU` itself reduces to zero
    let mut r = (-k).mul_add(TAU, theta);
    // rounding of the input can land a half-turn a few ulp either side of ±π
    let snap = 8.0 * f64::EPSILON * theta.abs().max(PI);
    if (r - PI).abs() <= snap || (r + PI).abs() <= snap {
        return PI;
    }
    if r > PI {
        r -= TAU;
    } else if r < -PI {
        r += TAU;
    }
    r
}

/// An element `e^{iΘ}` of the holonomy group with its reduced phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolonomyElement {
    pub theta: f64,
    #[serde(serialize_with = "serialize_complex")]
    pub element: Complex64,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

pub fn holonomy_element(theta: f64) -> HolonomyElement {
    let theta = reduce_phase(theta);
    HolonomyElement {
        theta,
        element: Complex64::from_polar(1.0, theta),
    }
}

/// `e · ½ ∬_S F_{αβ} dx^α ∧ dx^β` over a parametrised surface.
///
/// The integral is taken cell by cell over the surface mesh; inside each
/// cell both directions are refined by bisection, so jumps of the field
/// strength across the surface (a solenoid wall) are resolved.
pub fn flux_surface<P: GaugePotential + ?Sized>(
    pot: &P,
    surface: &SurfacePatch,
    h: f64,
    quad: &Quadrature,
    charge: f64,
) -> Result<f64> {
    let (n_u, n_v) = surface.mesh();
    if n_u < 8 || n_v < 8 {
        return Err(Error::InvalidArgument(format!(
            "surface mesh must be at least 8x8, got {n_u}x{n_v}"
        )));
    }
    quad.validate()?;
    let (tol, depth_u, depth_v) = match *quad {
        Quadrature::Fixed { .. } => (0.0, 0, 0),
        Quadrature::Adaptive { tolerance, .. } => (tolerance, 48, 24),
    };
    let rule = GaussLegendre::new(quad.base_nodes().min(8));
    let map = surface.map();
    let u_edges = surface.u_edges();
    let v_edges = surface.v_edges();

    check_degenerate(surface, &u_edges, &v_edges)?;

    let cells: Vec<Result<f64>> = v_edges
        .par_windows(2)
        .map(|w| {
            let mut failure = None;
            let mut inner = |v: f64| -> f64 {
                let mut total = 0.0;
                for uw in u_edges.windows(2) {
                    let mut g = |u: f64| -> f64 {
                        let p = map.point(u, v);
                        let (tu, tv) = map.tangents(u, v);
                        match field_strength(pot, &p, h) {
                            Ok(f) => f.contract(&tu, &tv),
                            Err(e) => {
                                failure.get_or_insert(e);
                                0.0
                            }
                        }
                    };
                    // u-lines of the built-in patches are straight, so chord seams are exact
                    let (a, b) = (map.point(uw[0], v), map.point(uw[1], v));
                    let mut cuts = vec![uw[0]];
                    let mut s = pot.seams(&a, &b);
                    s.sort_by(f64::total_cmp);
                    cuts.extend(s.into_iter().map(|s| uw[0] + s * (uw[1] - uw[0])));
                    cuts.push(uw[1]);
                    for c in cuts.windows(2).filter(|c| c[1] > c[0]) {
                        total += bisect(&rule, c[0], c[1], 1e-3 * tol, depth_u, &mut g).value;
                    }
                }
                total
            };
            let est = bisect(&rule, w[0], w[1], 1e-2 * tol, depth_v, &mut inner);
            match failure {
                Some(e) => Err(e),
                None => Ok(est.value),
            }
        })
        .collect();
    let mut sum = 0.0;
    for c in cells {
        sum += c?;
    }
    Ok(charge * sum)
}

fn check_degenerate(surface: &SurfacePatch, u_edges: &[f64], v_edges: &[f64]) -> Result<()> {
    let map = surface.map();
    for (iv, vw) in v_edges.windows(2).enumerate() {
        for (iu, uw) in u_edges.windows(2).enumerate() {
            let probes = [0.25, 0.75];
            let all_flat = probes.iter().all(|&a| {
                probes.iter().all(|&b| {
                    let u = uw[0] + a * (uw[1] - uw[0]);
                    let v = vw[0] + b * (vw[1] - vw[0]);
                    let (tu, tv) = map.tangents(u, v);
                    let mut area2 = 0.0;
                    for i in 0..4 {
                        for j in (i + 1)..4 {
                            let w = tu[i] * tv[j] - tu[j] * tv[i];
                            area2 += w * w;
                        }
                    }
                    area2 == 0.0
                })
            });
            if all_flat {
                return Err(Error::SurfaceDegenerate { cell_u: iu, cell_v: iv });
            }
        }
    }
    Ok(())
}

/// Both sides of the Stokes equality and their relative difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StokesReport {
    pub holonomy: f64,
    pub flux: f64,
    /// `|holonomy − flux| / max(1, |flux|)`.
    pub residual: f64,
    pub boundary_distance: f64,
}

/// Compares the contour holonomy with the flux through a surface it bounds.
///
/// The surface boundary must match the contour within
/// `boundary_tolerance` (Hausdorff distance over vertices).
pub fn stokes_residual<P: GaugePotential + ?Sized>(
    pot: &P,
    contour: &Contour,
    surface: &SurfacePatch,
    quad: &Quadrature,
    charge: f64,
    boundary_tolerance: f64,
) -> Result<StokesReport> {
    let distance = hausdorff_distance(contour, surface.boundary());
    if !(distance <= boundary_tolerance) {
        return Err(Error::BoundaryMismatch { distance });
    }
    let holonomy = holonomy_phase(pot, contour, quad, charge)?;
    let flux = flux_surface(pot, surface, super::DEFAULT_DIFF_STEP, quad, charge)?;
    Ok(StokesReport {
        holonomy,
        flux,
        residual: (holonomy - flux).abs() / flux.abs().max(1.0),
        boundary_distance: distance,
    })
}

/// One sample of a contraction trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceSample {
    pub lambda: f64,
    pub theta: f64,
}

/// Holonomy along a contracting contour family at `n` equally spaced values
/// of `λ ∈ [0, 1]`.
pub fn contract_holonomy_trace<P, F>(pot: &P, family: &F, n: usize, quad: &Quadrature, charge: f64) -> Result<Vec<TraceSample>>
where
    P: GaugePotential + ?Sized,
    F: ContourFamily + ?Sized,
{
    if n < 8 {
        return Err(Error::InvalidArgument(format!("contraction trace needs at least 8 samples, got {n}")));
    }
    let start_len = polyline_length(&family.vertices(0.0));
    let end_len = polyline_length(&family.vertices(1.0));
    if end_len > 1e-12 * start_len.max(1.0) {
        return Err(Error::BadFamily { length: end_len });
    }
    (0..n)
        .map(|i| {
            let lambda = i as f64 / (n - 1) as f64;
            let vertices = family.vertices(lambda);
            let theta = if polyline_length(&vertices) <= 1e-12 * start_len.max(1.0) {
                0.0
            } else {
                holonomy_phase(pot, &Contour::closed(vertices)?, quad, charge)?
            };
            Ok(TraceSample { lambda, theta })
        })
        .collect()
}

fn polyline_length(vertices: &[SpaceTimePoint]) -> f64 {
    let n = vertices.len();
    (0..n).map(|k| vertices[k].distance(&vertices[(k + 1) % n])).sum()
}

/// Largest `|ΔΘ|` between adjacent trace samples.
pub fn max_adjacent_jump(trace: &[TraceSample]) -> f64 {
    trace
        .windows(2)
        .map(|w| (w[1].theta - w[0].theta).abs())
        .fold(0.0, f64::max)
}
