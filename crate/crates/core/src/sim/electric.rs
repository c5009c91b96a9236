use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::tridiag::Cayley;
use crate::error::{Error, Result};
use crate::gauge::{reduce_phase, Units};
use crate::models::{electric_phase, TubePulse};

/// Probability that may sit outside a tube while its pulse is on.
pub const SUPPORT_LEAK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelPacket {
    pub center: f64,
    pub momentum: f64,
    pub sigma: f64,
}

/// Two identical 1D channels on `[-length/2, length/2]`, each threading a
/// tube over `tube[0] ≤ x ≤ tube[1]` whose scalar potential follows its pulse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectricConfig {
    pub length: f64,
    pub points: usize,
    pub tube: [f64; 2],
    pub packet: ChannelPacket,
    pub dt: f64,
    pub n_steps: usize,
    pub particle: Units,
    /// Pulse on channel 1 (upper path) and channel 2 (lower path).
    pub pulses: [TubePulse; 2],
    #[serde(default = "default_samples")]
    pub readout_samples: usize,
    #[serde(default)]
    pub phase_offset: f64,
}

fn default_samples() -> usize {
    3600
}

impl ElectricConfig {
    pub fn dx(&self) -> f64 {
        self.length / (self.points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -0.5 * self.length + i as f64 * self.dx()
    }

    pub fn end_time(&self) -> f64 {
        self.n_steps as f64 * self.dt
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |m: String| Err(Error::Config(m));
        if self.points < 16 || !(self.length > 0.0) {
            return cfg(format!("channel needs at least 16 points and positive length, got {} over {}", self.points, self.length));
        }
        let Units { charge, mass } = self.particle;
        if !(mass > 0.0) || !charge.is_finite() {
            return cfg(format!("particle needs m > 0 and finite e, got m = {mass}, e = {charge}"));
        }
        if !(self.dt > 0.0) || self.n_steps == 0 {
            return cfg(format!("need dt > 0 and n_steps ≥ 1, got {} and {}", self.dt, self.n_steps));
        }
        let dx = self.dx();
        if !(self.packet.sigma > 2.0 * dx) {
            return cfg(format!("packet width {} is not resolved; need more than {}", self.packet.sigma, 2.0 * dx));
        }
        if !(self.packet.momentum.abs() * self.dt / mass < dx) {
            return cfg(format!("transport per step {} exceeds the spacing {dx}", self.packet.momentum.abs() * self.dt / mass));
        }
        if !(self.tube[0] < self.tube[1]) {
            return cfg(format!("tube interval {:?} is empty", self.tube));
        }
        if self.readout_samples < 16 {
            return cfg("readout needs at least 16 samples".into());
        }
        for p in &self.pulses {
            p.validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    /// `e (∫A₀⁽²⁾ − ∫A₀⁽¹⁾) dt` over the run, reduced.
    pub fn predicted_phase(&self) -> Result<f64> {
        let e = self.particle.charge;
        let t1 = self.end_time();
        let a = electric_phase(&self.pulses[0], 0.0, t1, e)?;
        let b = electric_phase(&self.pulses[1], 0.0, t1, e)?;
        Ok(reduce_phase(b - a))
    }
}

/// Amplitudes of both channels on their shared longitudinal grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoChannelState {
    pub x: Vec<f64>,
    pub psi: [Vec<Complex64>; 2],
    pub t: f64,
    pub pulses: [TubePulse; 2],
}

impl TwoChannelState {
    pub fn new(cfg: &ElectricConfig) -> Result<Self> {
        cfg.validate()?;
        let x: Vec<f64> = (0..cfg.points).map(|i| cfg.x(i)).collect();
        let ChannelPacket { center, momentum, sigma } = cfg.packet;
        let mut psi: Vec<Complex64> = x
            .iter()
            .map(|x| {
                let d = x - center;
                Complex64::from_polar((-d * d / (4.0 * sigma * sigma)).exp(), momentum * x + cfg.phase_offset)
            })
            .collect();
        let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * cfg.dx();
        let s = n.sqrt().recip();
        psi.iter_mut().for_each(|z| *z *= s);
        Ok(Self {
            x,
            psi: [psi.clone(), psi],
            t: 0.0,
            pulses: cfg.pulses,
        })
    }

    /// `∑ (|ψ₁|² + |ψ₂|²) dx`; two for a fresh state.
    pub fn norm(&self, dx: f64) -> f64 {
        self.psi.iter().map(|p| p.iter().map(|z| z.norm_sqr()).sum::<f64>()).sum::<f64>() * dx
    }

    fn inside(&self, k: usize, tube: [f64; 2], dx: f64) -> f64 {
        self.x
            .iter()
            .zip(&self.psi[k])
            .filter(|(x, _)| (tube[0]..=tube[1]).contains(*x))
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            * dx
    }
}

/// Readout curve, extracted and predicted phases of a two-channel run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElectricRun {
    pub chi: Vec<f64>,
    pub intensity: Vec<f64>,
    pub extracted_phase: f64,
    pub predicted_phase: f64,
    /// Smallest in-tube probability seen while a pulse was on.
    pub min_support: f64,
    pub norm_drift: f64,
}

fn channel_step(state: &mut TwoChannelState, cfg: &ElectricConfig, work: &mut [Complex64]) -> Result<()> {
    let Units { charge, mass } = cfg.particle;
    let dx = cfg.dx();
    let k = 1.0 / (2.0 * mass * dx * dx);
    let hsub = vec![Complex64::new(-k, 0.0); cfg.points - 1];
    let tm = state.t + 0.5 * cfg.dt;
    for c in 0..2 {
        let v = charge * state.pulses[c].eval(tm);
        let hdiag: Vec<f64> = state
            .x
            .iter()
            .map(|x| 2.0 * k + if (cfg.tube[0]..=cfg.tube[1]).contains(x) { v } else { 0.0 })
            .collect();
        Cayley::new(&hdiag, &hsub, 0.5 * cfg.dt)?.apply(&mut state.psi[c], work);
    }
    state.t += cfg.dt;
    Ok(())
}

/// `I(χ) = ∑ |ψ₁ + e^{iχ} ψ₂|² dx` on `samples` points of `(−π, π]`.
pub fn readout_curve(psi1: &[Complex64], psi2: &[Complex64], dx: f64, samples: usize) -> (Vec<f64>, Vec<f64>) {
    let chi: Vec<f64> = (1..=samples).map(|s| -PI + TAU * s as f64 / samples as f64).collect();
    let intensity = chi
        .iter()
        .map(|c| {
            let r = Complex64::from_polar(1.0, *c);
            psi1.iter().zip(psi2).map(|(a, b)| (a + r * b).norm_sqr()).sum::<f64>() * dx
        })
        .collect();
    (chi, intensity)
}

/// Argmax of a periodic curve with parabolic refinement, reduced.
pub fn readout_phase(chi: &[f64], intensity: &[f64]) -> f64 {
    let n = intensity.len();
    let k = (0..n).fold(0, |best, i| if intensity[i] > intensity[best] { i } else { best });
    let (a, b, c) = (intensity[(k + n - 1) % n], intensity[k], intensity[(k + 1) % n]);
    let den = a - 2.0 * b + c;
    let off = if den < 0.0 { 0.5 * (a - c) / den } else { 0.0 };
    reduce_phase(chi[k] + off * TAU / n as f64)
}

/// Evolves both channels under their pulses and reads out the relative phase.
pub fn electric_two_path_run(cfg: &ElectricConfig) -> Result<ElectricRun> {
    let mut state = TwoChannelState::new(cfg)?;
    let dx = cfg.dx();
    let n0 = state.norm(dx);
    let mut work = vec![Complex64::new(0.0, 0.0); cfg.points];
    let supports = cfg.pulses.map(|p| p.support());
    let active = |t0: f64, t1: f64| supports.iter().any(|(a, b)| t1 > *a && t0 < *b);
    let mut min_support: f64 = 1.0;
    for _ in 0..cfg.n_steps {
        let t0 = state.t;
        let check = active(t0, t0 + cfg.dt);
        if check {
            for k in 0..2 {
                min_support = min_support.min(state.inside(k, cfg.tube, dx));
            }
        }
        channel_step(&mut state, cfg, &mut work)?;
        if check {
            for k in 0..2 {
                min_support = min_support.min(state.inside(k, cfg.tube, dx));
            }
        }
        if min_support < 1.0 - SUPPORT_LEAK {
            return Err(Error::ExperimentInvalid(format!(
                "packet left the tube while a pulse was on (in-tube probability {min_support:.9})"
            )));
        }
    }
    let norm_drift = (state.norm(dx) - n0).abs() / n0;
    let (chi, intensity) = readout_curve(&state.psi[0], &state.psi[1], dx, cfg.readout_samples);
    Ok(ElectricRun {
        extracted_phase: readout_phase(&chi, &intensity),
        predicted_phase: cfg.predicted_phase()?,
        chi,
        intensity,
        min_support,
        norm_drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn readout_of_known_relative_phase() {
        let base: Vec<Complex64> = (0..50).map(|i| Complex64::from_polar(1.0 + 0.1 * i as f64, 0.2 * i as f64)).collect();
        for phi in [-3.0, -1.2, 0.0, 0.4, 2.9] {
            // ψ₂ = e^{−iφ} ψ₁ peaks at χ = φ
            let other: Vec<Complex64> = base.iter().map(|z| z * Complex64::from_polar(1.0, -phi)).collect();
            let (chi, i) = readout_curve(&base, &other, 0.1, 3600);
            assert!((readout_phase(&chi, &i) - phi).abs() < 1e-5, "{phi}");
        }
    }
}
