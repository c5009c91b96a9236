//! Gauss–Legendre rules and the two refinement strategies built on them.
//!
//! Line integrals along contour segments use a composite rule whose panel
//! count doubles until successive estimates agree. Surface integrals, whose
//! integrands jump across the solenoid wall, use recursive bisection instead.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds an `n`-point rule by Newton iteration on the Legendre polynomial.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[a, b]` with a single panel.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Integrates `f` over `[a, b]` split into `panels` equal panels.
    pub fn composite<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for k in 0..panels {
            let lo = a + h * k as f64;
            let hi = if k + 1 == panels { b } else { lo + h };
            acc += self.integrate(lo, hi, &mut f);
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// How a one-dimensional integral along a contour segment is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Quadrature {
    /// A single Gauss–Legendre panel with this many nodes.
    Fixed { nodes: usize },
    /// Composite Gauss–Legendre, doubling panels until successive estimates
    /// differ by less than `tolerance` or the node cap is reached.
    Adaptive {
        nodes: usize,
        tolerance: f64,
        max_nodes: usize,
    },
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature::Adaptive {
            nodes: 32,
            tolerance: 1e-10,
            max_nodes: 1 << 14,
        }
    }
}

impl Quadrature {
    pub fn fixed(nodes: usize) -> Self {
        Quadrature::Fixed { nodes }
    }

    pub fn adaptive(tolerance: f64) -> Self {
        match Self::default() {
            Quadrature::Adaptive { nodes, max_nodes, .. } => Quadrature::Adaptive {
                nodes,
                tolerance,
                max_nodes,
            },
            q => q,
        }
    }

    pub fn base_nodes(&self) -> usize {
        match *self {
            Quadrature::Fixed { nodes } | Quadrature::Adaptive { nodes, .. } => nodes,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            Quadrature::Fixed { nodes: 0 } => {
                Err(Error::InvalidArgument("quadrature needs at least one node".into()))
            }
            Quadrature::Adaptive {
                nodes,
                tolerance,
                max_nodes,
            } => {
                if nodes == 0 || max_nodes < nodes {
                    Err(Error::InvalidArgument(format!(
                        "adaptive quadrature needs 0 < nodes ({nodes}) <= max_nodes ({max_nodes})"
                    )))
                } else if !(tolerance > 0.0) {
                    Err(Error::InvalidArgument("quadrature tolerance must be positive".into()))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// Result of an adaptive estimate: the value and the last successive difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub residual: f64,
}

/// Integrates `f` over `[0, 1]` using the given rule and refinement policy.
pub(crate) fn integrate_unit<F: FnMut(f64) -> f64>(
    rule: &GaussLegendre,
    quad: &Quadrature,
    mut f: F,
) -> Result<Estimate> {
    match *quad {
        Quadrature::Fixed { .. } => Ok(Estimate {
            value: rule.integrate(0.0, 1.0, &mut f),
            residual: 0.0,
        }),
        Quadrature::Adaptive {
            nodes,
            tolerance,
            max_nodes,
        } => {
            let mut panels = 1usize;
            let mut prev = rule.integrate(0.0, 1.0, &mut f);
            loop {
                if nodes * panels * 2 > max_nodes {
                    return Err(Error::ToleranceNotMet { residual: f64::NAN });
                }
                panels *= 2;
                let next = rule.composite(0.0, 1.0, panels, &mut f);
                let diff = (next - prev).abs();
                if diff < tolerance * prev.abs().max(1.0) {
                    return Ok(Estimate {
                        value: next,
                        residual: diff,
                    });
                }
                if nodes * panels * 2 > max_nodes {
                    return Err(Error::ToleranceNotMet { residual: diff });
                }
                prev = next;
            }
        }
    }
}

/// Recursive bisection on `[a, b]`: a panel is accepted once the single-panel
/// estimate and the two-half estimate differ by at most `tol`.
pub(crate) fn bisect<F: FnMut(f64) -> f64>(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
    f: &mut F,
) -> Estimate {
    let whole = rule.integrate(a, b, &mut *f);
    bisect_inner(rule, a, b, whole, tol, max_depth, f)
}

fn bisect_inner<F: FnMut(f64) -> f64>(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: usize,
    f: &mut F,
) -> Estimate {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(a, mid, &mut *f);
    let right = rule.integrate(mid, b, &mut *f);
    let diff = (left + right - whole).abs();
    if diff <= tol || depth == 0 {
        return Estimate {
            value: left + right,
            residual: diff,
        };
    }
    let l = bisect_inner(rule, a, mid, left, tol, depth - 1, f);
    let r = bisect_inner(rule, mid, b, right, tol, depth - 1, f);
    Estimate {
        value: l.value + r.value,
        residual: l.residual + r.residual,
    }
}
