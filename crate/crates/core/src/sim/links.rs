use num_complex::Complex64;
use rayon::prelude::*;

use super::Grid2D;
use crate::error::{Error, Result};
use crate::gauge::{GaugePotential, SpaceTimePoint};
use crate::quadrature::GaussLegendre;

const MAX_EDGE_PANELS: usize = 64;

/// `U = exp(−i e ∫ A·dl)` on every lattice edge.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkPhases {
    nx: usize,
    ny: usize,
    /// Edge `(i, j) → (i+1, j)` at `i * ny + j`.
    ux: Vec<Complex64>,
    /// Edge `(i, j) → (i, j+1)` at `i * (ny − 1) + j`.
    uy: Vec<Complex64>,
}

impl LinkPhases {
    /// All links equal to one.
    pub fn trivial(grid: &Grid2D) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self {
            nx: grid.nx,
            ny: grid.ny,
            ux: vec![one; (grid.nx - 1) * grid.ny],
            uy: vec![one; grid.nx * (grid.ny - 1)],
        }
    }

    pub fn ux(&self, i: usize, j: usize) -> Complex64 {
        self.ux[i * self.ny + j]
    }

    pub fn uy(&self, i: usize, j: usize) -> Complex64 {
        self.uy[i * (self.ny - 1) + j]
    }

    pub fn x_links(&self) -> &[Complex64] {
        &self.ux
    }

    pub fn y_links(&self) -> &[Complex64] {
        &self.uy
    }

    /// Product of links counter-clockwise around cell `(i, j)`; equals
    /// `exp(−i e Φ_cell)`.
    pub fn plaquette(&self, i: usize, j: usize) -> Complex64 {
        self.ux(i, j) * self.uy(i + 1, j) * self.ux(i, j + 1).conj() * self.uy(i, j).conj()
    }

    pub fn plaquette_phase(&self, i: usize, j: usize) -> f64 {
        self.plaquette(i, j).arg()
    }

    /// Links seen by `e^{ia}ψ` for a node-sampled gauge function:
    /// `U' = U e^{i a(head)} e^{−i a(tail)}`.
    pub fn gauge_conjugated(&self, a: &[f64]) -> Result<Self> {
        let (nx, ny) = (self.nx, self.ny);
        if a.len() != nx * ny {
            return Err(Error::InvalidArgument(format!(
                "gauge function has {} samples, grid has {}",
                a.len(),
                nx * ny
            )));
        }
        let cis = |v: f64| Complex64::from_polar(1.0, v);
        let mut out = self.clone();
        for i in 0..nx - 1 {
            for j in 0..ny {
                out.ux[i * ny + j] *= cis(a[(i + 1) * ny + j]) * cis(-a[i * ny + j]);
            }
        }
        for i in 0..nx {
            for j in 0..ny - 1 {
                out.uy[i * (ny - 1) + j] *= cis(a[i * ny + j + 1]) * cis(-a[i * ny + j]);
            }
        }
        Ok(out)
    }
}

/// `∫ A·dl` along the straight edge `a → b` with a composite three-point
/// Gauss rule on each piece between the potential's seams, doubling the
/// panel count until the estimate settles at rounding level.
fn edge_integral<P: GaugePotential + ?Sized>(pot: &P, rule: &GaussLegendre, a: &SpaceTimePoint, b: &SpaceTimePoint) -> f64 {
    let d = a.delta(b);
    let mut cuts = pot.seams(a, b);
    cuts.sort_by(f64::total_cmp);
    cuts.insert(0, 0.0);
    cuts.push(1.0);
    let f = |s: f64| {
        let c = pot.components(&a.lerp(b, s));
        c[1] * d[1] + c[2] * d[2] + c[3] * d[3]
    };
    cuts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let mut panels = 1;
            let mut prev = rule.composite(w[0], w[1], panels, &f);
            while panels < MAX_EDGE_PANELS {
                panels *= 2;
                let next = rule.composite(w[0], w[1], panels, &f);
                let settled = (next - prev).abs() <= 4.0 * f64::EPSILON * next.abs().max(f64::MIN_POSITIVE);
                prev = next;
                if settled {
                    break;
                }
            }
            prev
        })
        .sum()
}

/// Peierls phases of `pot` at time `t` on every edge of `grid`.
pub fn peierls_links<P: GaugePotential + ?Sized>(grid: &Grid2D, pot: &P, t: f64, charge: f64) -> LinkPhases {
    let rule = GaussLegendre::new(3);
    let node = |i: usize, j: usize| SpaceTimePoint::planar(t, grid.x(i), grid.y(j));
    let link = |a: SpaceTimePoint, b: SpaceTimePoint| Complex64::from_polar(1.0, -charge * edge_integral(pot, &rule, &a, &b));
    let (nx, ny) = (grid.nx, grid.ny);
    let ux = (0..(nx - 1) * ny)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / ny, k % ny);
            link(node(i, j), node(i + 1, j))
        })
        .collect();
    let uy = (0..nx * (ny - 1))
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / (ny - 1), k % (ny - 1));
            link(node(i, j), node(i, j + 1))
        })
        .collect();
    LinkPhases { nx, ny, ux, uy }
}

/// `−e ∫ A·dl` from `origin` to every node along straight lines, at time `t`.
///
/// Multiplying a packet centred on `origin` by `e^{i·phase}` gives it the
/// kinetic momentum it would have in a gauge where `A` vanishes along those
/// lines; in a flat multiply connected region this is the phase of the
/// field-free solution transported into the present gauge.
pub fn transport_phases<P: GaugePotential + ?Sized>(grid: &Grid2D, pot: &P, origin: [f64; 2], t: f64, charge: f64) -> Vec<f64> {
    let rule = GaussLegendre::new(8);
    let o = SpaceTimePoint::planar(t, origin[0], origin[1]);
    (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let q = SpaceTimePoint::planar(t, grid.x(k / grid.ny), grid.y(k % grid.ny));
            -charge * edge_integral(pot, &rule, &o, &q)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::{UniformPotential, ZeroPotential};
    use crate::models::FiniteSolenoid;

    fn grid() -> Grid2D {
        Grid2D::new(8.0, 8.0, 33, 33).unwrap()
    }

    #[test]
    fn transport_phase_of_uniform_potential_is_linear() {
        let g = grid();
        let a = [0.0, 0.3, -0.7, 0.0];
        let ph = transport_phases(&g, &UniformPotential(a), [0.5, -1.0], 0.0, 2.0);
        for k in 0..g.len() {
            let (x, y) = (g.x(k / g.ny), g.y(k % g.ny));
            let want = -2.0 * (a[1] * (x - 0.5) + a[2] * (y + 1.0));
            assert!((ph[k] - want).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_potential_gives_unit_links() {
        let l = peierls_links(&grid(), &ZeroPotential, 0.0, 1.0);
        assert!(l.x_links().iter().chain(l.y_links()).all(|u| *u == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn uniform_potential_gives_identical_x_links() {
        let g = grid();
        let alpha = 0.8;
        let l = peierls_links(&g, &UniformPotential([0.0, alpha, 0.0, 0.0]), 0.0, 1.5);
        let expected = Complex64::from_polar(1.0, -1.5 * alpha * g.dx());
        assert!(l.x_links().iter().all(|u| (u - expected).norm() < 1e-15));
        assert!(l.y_links().iter().all(|u| (u - 1.0).norm() < 1e-15));
    }

    #[test]
    fn links_have_unit_modulus_and_flat_exterior() {
        let g = grid();
        let pot = FiniteSolenoid::new(1.0, 1.3, [0.1, -0.2]).unwrap().potential().unwrap();
        let l = peierls_links(&g, &pot, 0.0, 1.0);
        assert!(l.x_links().iter().chain(l.y_links()).all(|u| (u.norm() - 1.0).abs() < 1e-12));
        for i in 0..g.nx - 1 {
            for j in 0..g.ny - 1 {
                // nearest point of the cell to the axis
                let x = 0.1f64.clamp(g.x(i), g.x(i + 1)) - 0.1;
                let y = (-0.2f64).clamp(g.y(j), g.y(j + 1)) + 0.2;
                if x * x + y * y > 1.0 {
                    assert!(l.plaquette_phase(i, j).abs() < 1e-10, "cell {i},{j}");
                }
            }
        }
    }

    #[test]
    fn conjugation_by_zero_is_identity() {
        let g = grid();
        let pot = FiniteSolenoid::new(1.0, 0.4, [0.0, 0.0]).unwrap().potential().unwrap();
        let l = peierls_links(&g, &pot, 0.0, 1.0);
        assert_eq!(l.gauge_conjugated(&vec![0.0; g.len()]).unwrap(), l);
        assert!(l.gauge_conjugated(&[0.0; 3]).is_err());
    }
}
