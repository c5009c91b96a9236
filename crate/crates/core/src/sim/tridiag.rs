use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Crank–Nicolson factor for one lattice line: `A = 1 + i (dt/2) H` with `H`
/// Hermitian tridiagonal, pre-factorized so that each step is a single
/// Thomas sweep computing `A⁻¹ (2 − A) ψ`.
#[derive(Debug, Clone)]
pub(crate) struct Cayley {
    lower: Vec<Complex64>,
    diag: Vec<Complex64>,
    upper: Vec<Complex64>,
    cp: Vec<Complex64>,
    inv: Vec<Complex64>,
}

impl Cayley {
    /// `hdiag[i] = H[i][i]`, `hsub[i] = H[i+1][i]`; the upper diagonal is the
    /// conjugate of `hsub`.
    pub(crate) fn new(hdiag: &[f64], hsub: &[Complex64], half_dt: f64) -> Result<Self> {
        let n = hdiag.len();
        debug_assert_eq!(hsub.len() + 1, n);
        let mut lower = vec![Complex64::new(0.0, 0.0); n];
        let mut upper = vec![Complex64::new(0.0, 0.0); n];
        let diag: Vec<Complex64> = hdiag.iter().map(|h| Complex64::new(1.0, half_dt * h)).collect();
        for (i, s) in hsub.iter().enumerate() {
            lower[i + 1] = I * half_dt * s;
            upper[i] = I * half_dt * s.conj();
        }
        let mut cp = vec![Complex64::new(0.0, 0.0); n];
        let mut inv = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let den = if i == 0 { diag[0] } else { diag[i] - lower[i] * cp[i - 1] };
            if !(den.norm() > 1e-300) || !den.is_finite() {
                return Err(Error::NumericalFailure(format!("singular tridiagonal pivot at row {i}")));
            }
            inv[i] = den.inv();
            cp[i] = upper[i] * inv[i];
        }
        Ok(Self {
            lower,
            diag,
            upper,
            cp,
            inv,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.diag.len()
    }

    /// Replaces `psi` by `A⁻¹ (2 − A) psi`; `work` must have the same length.
    pub(crate) fn apply(&self, psi: &mut [Complex64], work: &mut [Complex64]) {
        let n = self.len();
        for i in 0..n {
            let mut a = self.diag[i] * psi[i];
            if i > 0 {
                a += self.lower[i] * psi[i - 1];
            }
            if i + 1 < n {
                a += self.upper[i] * psi[i + 1];
            }
            work[i] = 2.0 * psi[i] - a;
        }
        work[0] *= self.inv[0];
        for i in 1..n {
            work[i] = (work[i] - self.lower[i] * work[i - 1]) * self.inv[i];
        }
        psi[n - 1] = work[n - 1];
        for i in (0..n - 1).rev() {
            psi[i] = work[i] - self.cp[i] * psi[i + 1];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> (Vec<f64>, Vec<Complex64>, Vec<Complex64>) {
        let hdiag: Vec<f64> = (0..n).map(|i| 2.0 + (i as f64 * 0.7).sin()).collect();
        let hsub: Vec<Complex64> = (0..n - 1).map(|i| Complex64::from_polar(-1.0, 0.3 * i as f64)).collect();
        let psi: Vec<Complex64> = (0..n).map(|i| Complex64::new((i as f64).cos(), (1.3 * i as f64).sin())).collect();
        (hdiag, hsub, psi)
    }

    #[test]
    fn step_is_unitary() {
        let (hdiag, hsub, mut psi) = sample(64);
        let before: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let c = Cayley::new(&hdiag, &hsub, 0.37).unwrap();
        let mut work = vec![Complex64::new(0.0, 0.0); 64];
        for _ in 0..50 {
            c.apply(&mut psi, &mut work);
        }
        let after: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        assert!((after - before).abs() < 1e-12 * before);
    }

    #[test]
    fn solve_satisfies_the_linear_system() {
        let n = 12;
        let (hdiag, hsub, psi0) = sample(n);
        let h = 0.2;
        let c = Cayley::new(&hdiag, &hsub, h).unwrap();
        let mut psi = psi0.clone();
        let mut work = vec![Complex64::new(0.0, 0.0); n];
        c.apply(&mut psi, &mut work);
        // check (1 + i h H) ψ₁ = (1 − i h H) ψ₀ with a dense H
        let hmul = |v: &[Complex64], i: usize| {
            let mut s = hdiag[i] * v[i];
            if i > 0 {
                s += hsub[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                s += hsub[i].conj() * v[i + 1];
            }
            s
        };
        for i in 0..n {
            let lhs = psi[i] + I * h * hmul(&psi, i);
            let rhs = psi0[i] - I * h * hmul(&psi0, i);
            assert!((lhs - rhs).norm() < 1e-13, "row {i}");
        }
    }
}
