use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::{fringe_shift, ScreenProfile};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub flux: f64,
    /// `eΦ`.
    pub holonomy: f64,
    /// Fringe shift against the `Φ = 0` reference, in `(−π, π]`.
    pub shift: f64,
    /// Shift continued along increasing `eΦ`.
    pub unwrapped: f64,
}

/// Least-squares line of unwrapped fringe shift against `eΦ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearityFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
    /// Set when the shifts or the fluxes do not vary; slope is then 0.
    pub degenerate: bool,
    pub points: Vec<ScanPoint>,
}

/// Fits extracted fringe shift against `eΦ` over a flux scan.
///
/// The reference is the profile at `Φ = 0`. A scan with no spread in flux or
/// in shift is reported as a degenerate fit; otherwise at least four points
/// spanning `π` in `eΦ` are needed, spaced by less than `π`.
pub fn phase_linearity_scan(profiles: &[ScreenProfile], charge: f64) -> Result<LinearityFit> {
    if profiles.len() < 2 {
        return Err(Error::ScanTooCoarse(format!("scan has {} point(s), needs at least 2", profiles.len())));
    }
    let reference = profiles
        .iter()
        .find(|p| p.flux == 0.0)
        .ok_or_else(|| Error::ScanTooCoarse("scan needs a Φ = 0 reference profile".into()))?;
    let mut points = profiles
        .iter()
        .map(|p| {
            Ok(ScanPoint {
                flux: p.flux,
                holonomy: charge * p.flux,
                shift: fringe_shift(p, reference)?,
                unwrapped: 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| a.holonomy.total_cmp(&b.holonomy));

    let spread = |f: &dyn Fn(&ScanPoint) -> f64| {
        let lo = points.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    };
    if spread(&|p| p.holonomy) == 0.0 || spread(&|p| p.shift) == 0.0 {
        for p in &mut points {
            p.unwrapped = p.shift;
        }
        let mean = points.iter().map(|p| p.shift).sum::<f64>() / points.len() as f64;
        let max_residual = points.iter().map(|p| (p.shift - mean).abs()).fold(0.0, f64::max);
        return Ok(LinearityFit {
            slope: 0.0,
            intercept: mean,
            max_residual,
            degenerate: true,
            points,
        });
    }
    if points.len() < 4 || spread(&|p| p.holonomy) < PI {
        return Err(Error::ScanTooCoarse(format!(
            "need at least 4 points spanning π in eΦ, got {} spanning {:.6}",
            points.len(),
            spread(&|p| p.holonomy)
        )));
    }

    points[0].unwrapped = points[0].shift;
    for k in 1..points.len() {
        let prev = points[k - 1].unwrapped;
        let raw = points[k].shift;
        let u = raw + TAU * ((prev - raw) / TAU).round();
        if (u - prev).abs() >= PI || points[k].holonomy - points[k - 1].holonomy >= PI {
            return Err(Error::ScanTooCoarse(format!(
                "shift jumps by {:.6} between eΦ = {:.6} and {:.6}",
                u - prev,
                points[k - 1].holonomy,
                points[k].holonomy
            )));
        }
        points[k].unwrapped = u;
    }

    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.holonomy).sum::<f64>() / n;
    let my = points.iter().map(|p| p.unwrapped).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.holonomy - mx) * (p.unwrapped - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.holonomy - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = points
        .iter()
        .map(|p| (p.unwrapped - (slope * p.holonomy + intercept)).abs())
        .fold(0.0, f64::max);
    Ok(LinearityFit {
        slope,
        intercept,
        max_residual,
        degenerate: false,
        points,
    })
}
