use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Intensity along a uniformly sampled screen line, tagged with the flux
/// and charge of the run that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreenProfile {
    pub y: Vec<f64>,
    pub intensity: Vec<f64>,
    pub flux: f64,
    pub charge: f64,
    pub run_id: String,
}

impl ScreenProfile {
    pub const MIN_POINTS: usize = 64;

    pub fn new(y: Vec<f64>, intensity: Vec<f64>, flux: f64, charge: f64, run_id: impl Into<String>) -> Result<Self> {
        let p = Self {
            y,
            intensity,
            flux,
            charge,
            run_id: run_id.into(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.y.len();
        if n < Self::MIN_POINTS || self.intensity.len() != n {
            return Err(Error::InvalidArgument(format!(
                "profile needs at least {} matching samples, got {} y and {} intensities",
                Self::MIN_POINTS,
                n,
                self.intensity.len()
            )));
        }
        if self.intensity.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidArgument("intensities must be finite and non-negative".into()));
        }
        let h = self.spacing();
        if !(h > 0.0) {
            return Err(Error::InvalidArgument("screen coordinates must increase".into()));
        }
        for (k, w) in self.y.windows(2).enumerate() {
            if ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0) {
                return Err(Error::InvalidArgument(format!("screen coordinates are not uniform at sample {k}")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        (self.y[self.y.len() - 1] - self.y[0]) / (self.y.len() - 1) as f64
    }

    /// `eΦ` of the run.
    pub fn holonomy(&self) -> f64 {
        self.charge * self.flux
    }

    pub(crate) fn same_grid(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .y
                .iter()
                .zip(&other.y)
                .all(|(a, b)| (a - b).abs() <= 1e-9 * self.spacing().max(1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ys(n: usize) -> Vec<f64> {
        (0..n).map(|k| k as f64 * 0.1).collect()
    }

    #[test]
    fn short_or_negative_profiles_are_rejected() {
        assert!(ScreenProfile::new(ys(63), vec![1.0; 63], 0.0, 1.0, "a").is_err());
        let mut v = vec![1.0; 64];
        v[3] = -1e-3;
        assert!(ScreenProfile::new(ys(64), v, 0.0, 1.0, "a").is_err());
        assert!(ScreenProfile::new(ys(64), vec![0.0; 64], 0.0, 1.0, "a").is_ok());
    }

    #[test]
    fn uneven_grid_is_rejected() {
        let mut y = ys(64);
        y[10] += 0.01;
        assert!(ScreenProfile::new(y, vec![1.0; 64], 0.0, 1.0, "a").is_err());
    }
}
