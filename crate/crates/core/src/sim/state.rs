use num_complex::Complex64;

use super::Grid2D;
use crate::error::{Error, Result};

/// Lattice wave function with the probability already removed by the absorber.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveState {
    pub grid: Grid2D,
    /// Amplitudes at `grid.index(i, j)`.
    pub psi: Vec<Complex64>,
    pub t: f64,
    pub steps: u64,
    pub absorbed: f64,
}

impl WaveState {
    pub fn zeros(grid: Grid2D) -> Self {
        Self {
            psi: vec![Complex64::new(0.0, 0.0); grid.len()],
            grid,
            t: 0.0,
            steps: 0,
            absorbed: 0.0,
        }
    }

    /// `∑|ψ|² dx dy`, summed row by row in index order.
    pub fn norm(&self) -> f64 {
        self.psi.chunks(self.grid.ny).map(|row| row.iter().map(|z| z.norm_sqr()).sum::<f64>()).sum::<f64>()
            * self.grid.cell_area()
    }

    /// Norm plus absorbed probability; stays at 1 for a normalized start.
    pub fn total_probability(&self) -> f64 {
        self.norm() + self.absorbed
    }

    pub fn density(&self) -> Vec<f64> {
        self.psi.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Probability-weighted mean position.
    pub fn centroid(&self) -> [f64; 2] {
        let g = &self.grid;
        let (mut w, mut sx, mut sy) = (0.0, 0.0, 0.0);
        for i in 0..g.nx {
            for j in 0..g.ny {
                let p = self.psi[g.index(i, j)].norm_sqr();
                w += p;
                sx += p * g.x(i);
                sy += p * g.y(j);
            }
        }
        [sx / w, sy / w]
    }

    /// Lattice momentum: phase of the nearest-neighbour overlap along each
    /// axis divided by the spacing. Exact for a plane wave times a real envelope.
    pub fn mean_momentum(&self) -> [f64; 2] {
        let g = &self.grid;
        let mut cx = Complex64::new(0.0, 0.0);
        let mut cy = Complex64::new(0.0, 0.0);
        for i in 0..g.nx {
            for j in 0..g.ny {
                let z = self.psi[g.index(i, j)].conj();
                if i + 1 < g.nx {
                    cx += z * self.psi[g.index(i + 1, j)];
                }
                if j + 1 < g.ny {
                    cy += z * self.psi[g.index(i, j + 1)];
                }
            }
        }
        [cx.arg() / g.dx(), cy.arg() / g.dy()]
    }

    /// Multiplies each node by `e^{i a}`.
    pub fn phased(&self, a: &[f64]) -> Result<Self> {
        if a.len() != self.psi.len() {
            return Err(Error::InvalidArgument(format!(
                "gauge function has {} samples, grid has {}",
                a.len(),
                self.psi.len()
            )));
        }
        let mut out = self.clone();
        for (z, a) in out.psi.iter_mut().zip(a) {
            *z *= Complex64::from_polar(1.0, *a);
        }
        Ok(out)
    }
}

/// Normalized Gaussian packet `exp(−|x−c|²/4σ² + i k·x)`.
pub fn init_gaussian(grid: &Grid2D, center: [f64; 2], k: [f64; 2], sigma: f64) -> Result<WaveState> {
    grid.validate()?;
    let min_sigma = 2.0 * grid.dx().max(grid.dy());
    if !(sigma > min_sigma) {
        return Err(Error::Config(format!(
            "packet width {sigma} is not resolved; need more than {min_sigma}"
        )));
    }
    if !center.iter().chain(k.iter()).all(|v| v.is_finite()) {
        return Err(Error::Config("packet centre and momentum must be finite".into()));
    }
    let mut state = WaveState::zeros(*grid);
    for i in 0..grid.nx {
        let x = grid.x(i) - center[0];
        for j in 0..grid.ny {
            let y = grid.y(j) - center[1];
            let env = (-(x * x + y * y) / (4.0 * sigma * sigma)).exp();
            let phase = k[0] * grid.x(i) + k[1] * grid.y(j);
            state.psi[grid.index(i, j)] = Complex64::from_polar(env, phase);
        }
    }
    let n = state.norm();
    if !(n > 0.0) {
        return Err(Error::Config("packet does not overlap the grid".into()));
    }
    let scale = n.sqrt().recip();
    state.psi.iter_mut().for_each(|z| *z *= scale);
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid2D {
        Grid2D::new(20.0, 20.0, 161, 161).unwrap()
    }

    #[test]
    fn packet_is_normalized() {
        let s = init_gaussian(&grid(), [1.0, -2.0], [1.5, 0.5], 1.5).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-12);
        assert_eq!(s.t, 0.0);
        let c = s.centroid();
        // the tail beyond the lower edge (5σ away) pulls the centroid up slightly
        assert!((c[0] - 1.0).abs() < 1e-6 && (c[1] + 2.0).abs() < 1e-6, "{c:?}");
    }

    #[test]
    fn zero_momentum_packet_has_constant_phase() {
        let s = init_gaussian(&grid(), [0.0, 0.0], [0.0, 0.0], 1.5).unwrap();
        assert!(s.psi.iter().all(|z| z.im == 0.0 && z.re >= 0.0));
    }

    #[test]
    fn lattice_momentum_recovers_k() {
        // σ = 1.5 is 12 grid spacings
        let s = init_gaussian(&grid(), [0.0, 0.0], [2.0, -1.0], 1.5).unwrap();
        let p = s.mean_momentum();
        assert!((p[0] - 2.0).abs() < 0.02 && (p[1] + 1.0).abs() < 0.01, "{p:?}");
    }

    #[test]
    fn narrow_packet_is_rejected() {
        assert!(matches!(init_gaussian(&grid(), [0.0, 0.0], [0.0, 0.0], 0.2), Err(Error::Config(_))));
    }
}
