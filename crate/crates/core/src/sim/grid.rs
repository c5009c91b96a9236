use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid on `[-lx/2, lx/2] × [-ly/2, ly/2]` with `nx × ny` nodes,
/// boundary nodes included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid2D {
    pub lx: f64,
    pub ly: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid2D {
    pub fn new(lx: f64, ly: f64, nx: usize, ny: usize) -> Result<Self> {
        let g = Self { lx, ly, nx, ny };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 16 || self.ny < 16 {
            return Err(Error::Config(format!("grid needs at least 16x16 nodes, got {}x{}", self.nx, self.ny)));
        }
        if !(self.lx > 0.0 && self.ly > 0.0) || !self.lx.is_finite() || !self.ly.is_finite() {
            return Err(Error::Config(format!("grid extents must be positive, got {} x {}", self.lx, self.ly)));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        self.lx / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        self.ly / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -0.5 * self.lx + i as f64 * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        -0.5 * self.ly + j as f64 * self.dy()
    }

    /// Row-major index; `y` varies fastest.
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.ny + j
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    /// Nearest column to the abscissa `x`, if it lies on the grid.
    pub fn column_of(&self, x: f64) -> Option<usize> {
        let s = (x + 0.5 * self.lx) / self.dx();
        let i = s.round();
        (i >= 0.0 && i <= (self.nx - 1) as f64).then_some(i as usize)
    }

    pub fn ys(&self) -> Vec<f64> {
        (0..self.ny).map(|j| self.y(j)).collect()
    }
}
