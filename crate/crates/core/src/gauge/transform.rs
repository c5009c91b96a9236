use super::potential::central_difference;
use super::{FieldStrength, GaugePotential, SpaceTimePoint, DEFAULT_DIFF_STEP};
use crate::error::{Error, Result};

/// A single-valued differentiable function `a(t, x)` generating the vertical
/// automorphism `ψ' = e^{ia} ψ`.
pub trait GaugeFunction: Send + Sync {
    fn value(&self, p: &SpaceTimePoint) -> f64;

    /// `∂_α a`, when known in closed form.
    fn gradient(&self, _p: &SpaceTimePoint) -> Option<[f64; 4]> {
        None
    }
}

/// Closure-backed gauge function with an optional closed-form gradient.
pub struct FnGauge<F, G = fn(&SpaceTimePoint) -> [f64; 4]> {
    value: F,
    gradient: Option<G>,
}

impl<F> FnGauge<F>
where
    F: Fn(&SpaceTimePoint) -> f64 + Send + Sync,
{
    pub fn new(value: F) -> Self {
        Self { value, gradient: None }
    }
}

impl<F, G> FnGauge<F, G>
where
    F: Fn(&SpaceTimePoint) -> f64 + Send + Sync,
    G: Fn(&SpaceTimePoint) -> [f64; 4] + Send + Sync,
{
    pub fn with_gradient(value: F, gradient: G) -> Self {
        Self {
            value,
            gradient: Some(gradient),
        }
    }
}

impl<F, G> GaugeFunction for FnGauge<F, G>
where
    F: Fn(&SpaceTimePoint) -> f64 + Send + Sync,
    G: Fn(&SpaceTimePoint) -> [f64; 4] + Send + Sync,
{
    fn value(&self, p: &SpaceTimePoint) -> f64 {
        (self.value)(p)
    }

    fn gradient(&self, p: &SpaceTimePoint) -> Option<[f64; 4]> {
        self.gradient.as_ref().map(|g| g(p))
    }
}

impl<T: GaugeFunction + ?Sized> GaugeFunction for &T {
    fn value(&self, p: &SpaceTimePoint) -> f64 {
        (**self).value(p)
    }
    fn gradient(&self, p: &SpaceTimePoint) -> Option<[f64; 4]> {
        (**self).gradient(p)
    }
}

impl<T: GaugeFunction + ?Sized> GaugeFunction for Box<T> {
    fn value(&self, p: &SpaceTimePoint) -> f64 {
        (**self).value(p)
    }
    fn gradient(&self, p: &SpaceTimePoint) -> Option<[f64; 4]> {
        (**self).gradient(p)
    }
}

/// `A'_α = A_α − (1/e) ∂_α a`, the potential seen by `e^{ia} ψ`.
pub struct GaugeTransformed<P, G> {
    base: P,
    gauge: G,
    charge: f64,
    step: f64,
}

impl<P, G> GaugeTransformed<P, G> {
    /// Finite-difference step used when the gauge function has no gradient.
    pub fn with_step(mut self, h: f64) -> Self {
        self.step = h;
        self
    }

    pub fn base(&self) -> &P {
        &self.base
    }

    pub fn gauge(&self) -> &G {
        &self.gauge
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }
}

impl<P: GaugePotential, G: GaugeFunction> GaugeTransformed<P, G> {
    fn gauge_gradient(&self, p: &SpaceTimePoint) -> [f64; 4] {
        if let Some(g) = self.gauge.gradient(p) {
            return g;
        }
        let f = |q: &SpaceTimePoint| [self.gauge.value(q)];
        std::array::from_fn(|a| match central_difference(&f, p, a, self.step) {
            Ok([d]) => d,
            Err(_) => f64::NAN,
        })
    }
}

impl<P: GaugePotential, G: GaugeFunction> GaugePotential for GaugeTransformed<P, G> {
    fn components(&self, p: &SpaceTimePoint) -> [f64; 4] {
        let a = self.base.components(p);
        let grad = self.gauge_gradient(p);
        std::array::from_fn(|k| a[k] - grad[k] / self.charge)
    }

    // F is invariant: mixed partials of a single-valued a commute.
    fn analytic_field_strength(&self, p: &SpaceTimePoint) -> Option<FieldStrength> {
        self.base.analytic_field_strength(p)
    }

    fn seams(&self, a: &SpaceTimePoint, b: &SpaceTimePoint) -> Vec<f64> {
        self.base.seams(a, b)
    }
}

/// Applies the gauge transformation generated by `a` to `pot`.
pub fn gauge_transform<P: GaugePotential, G: GaugeFunction>(pot: P, a: G, charge: f64) -> Result<GaugeTransformed<P, G>> {
    if charge == 0.0 || !charge.is_finite() {
        return Err(Error::InvalidArgument(format!("gauge transform needs a non-zero charge, got {charge}")));
    }
    Ok(GaugeTransformed {
        base: pot,
        gauge: a,
        charge,
        step: DEFAULT_DIFF_STEP,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::{FnPotential, ZeroPotential};

    fn sample_points() -> Vec<SpaceTimePoint> {
        (0..20)
            .map(|k| {
                let s = k as f64;
                SpaceTimePoint::new(0.1 * s, [(0.7 * s).sin() * 3.0, (1.3 * s).cos() * 2.0, 0.05 * s])
            })
            .collect()
    }

    #[test]
    fn constant_gauge_function_changes_nothing() {
        let pot = FnPotential(|p: &SpaceTimePoint| [p.t, p.x[1], -p.x[0], p.x[2] * p.x[2]]);
        let transformed = gauge_transform(&pot, FnGauge::new(|_: &SpaceTimePoint| 4.2), 1.0).unwrap();
        for p in sample_points() {
            let a = pot.components(&p);
            let b = transformed.components(&p);
            for k in 0..4 {
                assert!((a[k] - b[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn linear_in_time_shifts_scalar_potential() {
        let lambda = 0.5;
        let t = gauge_transform(ZeroPotential, FnGauge::new(move |p: &SpaceTimePoint| lambda * p.t), 1.0).unwrap();
        for p in sample_points() {
            let a = t.components(&p);
            assert!((a[0] + 0.5).abs() < 1e-10, "{a:?}");
            assert!(a[1].abs() < 1e-10 && a[2].abs() < 1e-10 && a[3].abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_gradient_takes_precedence() {
        let g = FnGauge::with_gradient(|_: &SpaceTimePoint| 0.0, |_: &SpaceTimePoint| [1.0, 2.0, 3.0, 4.0]);
        let t = gauge_transform(ZeroPotential, g, 2.0).unwrap();
        assert_eq!(t.components(&SpaceTimePoint::origin()), [-0.5, -1.0, -1.5, -2.0]);
    }

    #[test]
    fn zero_charge_is_rejected() {
        assert!(gauge_transform(ZeroPotential, FnGauge::new(|_: &SpaceTimePoint| 0.0), 0.0).is_err());
    }
}
