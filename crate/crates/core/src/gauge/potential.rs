use std::sync::Arc;

use super::SpaceTimePoint;
use crate::error::{Error, Result};

/// Local form of a U(1) connection: the four components `A_0..A_3` at any
/// space-time point.
///
/// Implementations must be deterministic and finite everywhere.
pub trait GaugePotential: Send + Sync {
    fn components(&self, p: &SpaceTimePoint) -> [f64; 4];

    /// Closed-form field strength, when the model knows it.
    fn analytic_field_strength(&self, _p: &SpaceTimePoint) -> Option<FieldStrength> {
        None
    }

    /// Parameters `s` in `(0, 1)` along the straight segment `a + s (b - a)`
    /// where the potential stops being smooth. Quadrature splits there.
    fn seams(&self, _a: &SpaceTimePoint, _b: &SpaceTimePoint) -> Vec<f64> {
        Vec::new()
    }
}

impl<T: GaugePotential + ?Sized> GaugePotential for &T {
    fn components(&self, p: &SpaceTimePoint) -> [f64; 4] {
        (**self).components(p)
    }
    fn analytic_field_strength(&self, p: &SpaceTimePoint) -> Option<FieldStrength> {
        (**self).analytic_field_strength(p)
    }
    fn seams(&self, a: &SpaceTimePoint, b: &SpaceTimePoint) -> Vec<f64> {
        (**self).seams(a, b)
    }
}

impl<T: GaugePotential + ?Sized> GaugePotential for Box<T> {
    fn components(&self, p: &SpaceTimePoint) -> [f64; 4] {
        (**self).components(p)
    }
    fn analytic_field_strength(&self, p: &SpaceTimePoint) -> Option<FieldStrength> {
        (**self).analytic_field_strength(p)
    }
    fn seams(&self, a: &SpaceTimePoint, b: &SpaceTimePoint) -> Vec<f64> {
        (**self).seams(a, b)
    }
}

impl<T: GaugePotential + ?Sized> GaugePotential for Arc<T> {
    fn components(&self, p: &SpaceTimePoint) -> [f64; 4] {
        (**self).components(p)
    }
    fn analytic_field_strength(&self, p: &SpaceTimePoint) -> Option<FieldStrength> {
        (**self).analytic_field_strength(p)
    }
    fn seams(&self, a: &SpaceTimePoint, b: &SpaceTimePoint) -> Vec<f64> {
        (**self).seams(a, b)
    }
}

/// The flat connection `A = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroPotential;

impl GaugePotential for ZeroPotential {
    fn components(&self, _p: &SpaceTimePoint) -> [f64; 4] {
        [0.0; 4]
    }
    fn analytic_field_strength(&self, _p: &SpaceTimePoint) -> Option<FieldStrength> {
        Some(FieldStrength::zero())
    }
}

/// Constant components everywhere.
#[derive(Debug, Clone, Copy)]
pub struct UniformPotential(pub [f64; 4]);

impl GaugePotential for UniformPotential {
    fn components(&self, _p: &SpaceTimePoint) -> [f64; 4] {
        self.0
    }
    fn analytic_field_strength(&self, _p: &SpaceTimePoint) -> Option<FieldStrength> {
        Some(FieldStrength::zero())
    }
}

/// Adapter turning a closure into a potential.
pub struct FnPotential<F>(pub F);

impl<F> GaugePotential for FnPotential<F>
where
    F: Fn(&SpaceTimePoint) -> [f64; 4] + Send + Sync,
{
    fn components(&self, p: &SpaceTimePoint) -> [f64; 4] {
        (self.0)(p)
    }
}

/// Antisymmetric `F_{ab}`; only the upper triangle is stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldStrength {
    upper: [f64; 6],
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(a: usize, b: usize) -> usize {
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => unreachable!("not an upper-triangle pair"),
    }
}

impl FieldStrength {
    pub fn zero() -> Self {
        Self { upper: [0.0; 6] }
    }

    /// Builds from a closure evaluated only for `a < b`.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(mut f: F) -> Self {
        let mut upper = [0.0; 6];
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            upper[k] = f(a, b);
        }
        Self { upper }
    }

    /// Field strength with only the purely spatial `F_12` component, the
    /// magnetic field along the third axis.
    pub fn magnetic_12(f12: f64) -> Self {
        let mut upper = [0.0; 6];
        upper[3] = f12;
        Self { upper }
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        assert!(a < 4 && b < 4, "index out of range");
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Less => self.upper[pair_index(a, b)],
            std::cmp::Ordering::Greater => -self.upper[pair_index(b, a)],
        }
    }

    pub fn matrix(&self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (a, row) in m.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v = self.get(a, b);
            }
        }
        m
    }

    /// Frobenius norm over the full antisymmetric matrix.
    pub fn norm(&self) -> f64 {
        (2.0 * self.upper.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    /// Contracts with two tangent vectors: `F_{ab} u^a v^b`.
    pub fn contract(&self, u: &[f64; 4], v: &[f64; 4]) -> f64 {
        PAIRS
            .iter()
            .zip(&self.upper)
            .map(|(&(a, b), f)| f * (u[a] * v[b] - u[b] * v[a]))
            .sum()
    }
}

/// Default finite-difference step in natural units.
pub const DEFAULT_DIFF_STEP: f64 = 1e-4;

/// Fourth-order central difference of a vector-valued function along `dir`.
pub(crate) fn central_difference<const N: usize, F>(
    f: &F,
    p: &SpaceTimePoint,
    dir: usize,
    h: f64,
) -> Result<[f64; N]>
where
    F: Fn(&SpaceTimePoint) -> [f64; N],
{
    let m2 = f(&p.shifted(dir, -2.0 * h));
    let m1 = f(&p.shifted(dir, -h));
    let p1 = f(&p.shifted(dir, h));
    let p2 = f(&p.shifted(dir, 2.0 * h));
    let mut out = [0.0; N];
    for k in 0..N {
        let v = (m2[k] - 8.0 * m1[k] + 8.0 * p1[k] - p2[k]) / (12.0 * h);
        if !v.is_finite() {
            return Err(Error::EvaluationDomain { t: p.t, x: p.x });
        }
        out[k] = v;
    }
    Ok(out)
}

/// `F_{ab} = ∂_a A_b − ∂_b A_a` at `p`.
///
/// Uses the model's closed form when available, otherwise fourth-order
/// central differences with step `h`.
pub fn field_strength<P: GaugePotential + ?Sized>(pot: &P, p: &SpaceTimePoint, h: f64) -> Result<FieldStrength> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!("difference step must be positive, got {h}")));
    }
    if let Some(f) = pot.analytic_field_strength(p) {
        return Ok(f);
    }
    let eval = |q: &SpaceTimePoint| pot.components(q);
    // grad[a][b] = ∂_a A_b
    let mut grad = [[0.0; 4]; 4];
    for (a, row) in grad.iter_mut().enumerate() {
        *row = central_difference(&eval, p, a, h)?;
    }
    Ok(FieldStrength::from_fn(|a, b| grad[a][b] - grad[b][a]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_potential_has_exactly_zero_field() {
        let p = SpaceTimePoint::new(0.3, [1.0, -2.0, 0.5]);
        let f = field_strength(&FnPotential(|_: &SpaceTimePoint| [0.0; 4]), &p, 1e-4).unwrap();
        assert_eq!(f, FieldStrength::zero());
    }

    #[test]
    fn numeric_field_of_linear_potential() {
        // A = (0, -B y / 2, B x / 2, 0) gives F_12 = B
        let b = 3.0;
        let pot = FnPotential(move |p: &SpaceTimePoint| [0.0, -0.5 * b * p.x[1], 0.5 * b * p.x[0], 0.0]);
        let f = field_strength(&pot, &SpaceTimePoint::new(0.0, [0.4, 0.7, 0.0]), 1e-3).unwrap();
        assert!((f.get(1, 2) - b).abs() < 1e-10);
        assert!((f.get(2, 1) + b).abs() < 1e-10);
        assert_eq!(f.get(0, 3), 0.0);
    }

    #[test]
    fn electric_component_from_time_dependent_scalar() {
        // A_0 = x t  =>  F_01 = ∂_0 A_1 − ∂_1 A_0 = −t
        let pot = FnPotential(|p: &SpaceTimePoint| [p.x[0] * p.t, 0.0, 0.0, 0.0]);
        let f = field_strength(&pot, &SpaceTimePoint::new(2.0, [1.0, 0.0, 0.0]), 1e-3).unwrap();
        assert!((f.get(0, 1) + 2.0).abs() < 1e-9);
    }

    #[test]
    fn non_finite_potential_is_reported() {
        let nan = FnPotential(|_: &SpaceTimePoint| [f64::NAN; 4]);
        let err = field_strength(&nan, &SpaceTimePoint::origin(), 1e-3).unwrap_err();
        assert!(matches!(err, Error::EvaluationDomain { .. }));
    }

    #[test]
    fn rejects_non_positive_step() {
        assert!(field_strength(&ZeroPotential, &SpaceTimePoint::origin(), 0.0).is_err());
    }

    #[test]
    fn contraction_matches_matrix_sum() {
        let f = FieldStrength::from_fn(|a, b| (a * 4 + b) as f64 * 0.1);
        let u = [0.3, -1.0, 2.0, 0.5];
        let v = [1.0, 0.2, -0.7, 0.4];
        let m = f.matrix();
        let mut full = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                full += 0.5 * m[a][b] * (u[a] * v[b] - u[b] * v[a]);
            }
        }
        assert!((f.contract(&u, &v) - full).abs() < 1e-14);
    }
}
