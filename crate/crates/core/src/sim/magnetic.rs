use num_complex::Complex64;
use serde::Serialize;

use super::{init_gaussian, transport_phases, BarrierSpec, DetectorMode, DetectorSpec, ExperimentConfig, Simulation, WaveState};
use crate::error::{Error, Result};
use crate::gauge::GaugePotential;
use crate::models::FiniteSolenoid;

/// Largest probability allowed in the outer two rings of nodes.
pub const MAX_EDGE_LEAK: f64 = 1e-3;
/// Largest density inside the solenoid relative to the peak density.
pub const MAX_SHIELD_RATIO: f64 = 1e-8;

/// Screen profile and run diagnostics of a double-slit run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MagneticRun {
    pub flux: f64,
    pub screen_x: f64,
    pub y: Vec<f64>,
    pub intensity: Vec<f64>,
    pub final_norm: f64,
    pub absorbed: f64,
    /// Peak probability found in the outermost two rings of nodes.
    pub edge_leak: f64,
    /// Peak density inside the solenoid over peak density anywhere.
    pub shield_ratio: f64,
    pub steps: u64,
}

impl ExperimentConfig {
    /// Packet of the configuration with its initial phase `Θ₀`.
    pub fn initial_state(&self) -> Result<WaveState> {
        let p = &self.packet;
        let mut s = init_gaussian(&self.grid, p.center, p.momentum, p.sigma)?;
        if self.phase_offset != 0.0 {
            let c = Complex64::from_polar(1.0, self.phase_offset);
            s.psi.iter_mut().for_each(|z| *z *= c);
        }
        Ok(s)
    }

    /// Initial packet carrying the transported phase of `pot` from its
    /// centre, so that its kinetic momentum is the configured `k` whatever
    /// the gauge.
    pub fn prepared_state<P: GaugePotential + ?Sized>(&self, pot: &P) -> Result<WaveState> {
        let s = self.initial_state()?;
        s.phased(&transport_phases(&self.grid, pot, self.packet.center, s.t, self.particle.charge))
    }

    /// Checks the double-slit layout around the solenoid.
    pub fn magnetic_layout(&self) -> Result<(&BarrierSpec, &FiniteSolenoid, &DetectorSpec)> {
        let invalid = |m: &str| Error::ExperimentInvalid(m.to_string());
        let b = self.barrier.as_ref().ok_or_else(|| invalid("double-slit run needs a barrier"))?;
        let s = self.solenoid.as_ref().ok_or_else(|| invalid("double-slit run needs a solenoid"))?;
        let d = self.detector.as_ref().ok_or_else(|| invalid("double-slit run needs a detector"))?;
        if b.slit_centers.len() < 2 {
            return Err(invalid("barrier needs at least two slits"));
        }
        if !self.absorber.enabled {
            return Err(invalid("double-slit run needs the absorber"));
        }
        let cy = s.center[1];
        let below = b.slit_centers.iter().copied().filter(|c| *c < cy).fold(f64::NEG_INFINITY, f64::max);
        let above = b.slit_centers.iter().copied().filter(|c| *c > cy).fold(f64::INFINITY, f64::min);
        if !(below.is_finite() && above.is_finite()) {
            return Err(invalid("solenoid must sit between two slits"));
        }
        if !(s.radius < 0.5 * (above - below)) {
            return Err(invalid("solenoid radius must be below half the slit separation"));
        }
        if !(s.center[0] > b.downstream_face()) {
            return Err(invalid("solenoid must sit behind the wall"));
        }
        if !(d.screen_x > s.center[0] + self.shield_factor * s.radius) {
            return Err(invalid("screen must lie beyond the solenoid shield"));
        }
        Ok((b, s, d))
    }
}

/// Runs the double-slit experiment with the configured solenoid and returns
/// the probability collected along the screen column.
pub fn magnetic_double_slit_run(cfg: &ExperimentConfig) -> Result<MagneticRun> {
    cfg.validate()?;
    let (_, solenoid, detector) = cfg.magnetic_layout()?;
    let pot = solenoid.potential()?;
    let sim = Simulation::from_config(cfg, &pot, 0.0)?;
    let g = cfg.grid;
    let col = g.column_of(detector.screen_x).expect("screen column checked in validate");
    let dt = cfg.integrator.dt;

    let inside: Vec<usize> = (0..g.len())
        .filter(|&k| {
            let (dx, dy) = (g.x(k / g.ny) - solenoid.center[0], g.y(k % g.ny) - solenoid.center[1]);
            dx * dx + dy * dy < solenoid.radius * solenoid.radius
        })
        .collect();
    let mut ring = Vec::new();
    for i in 0..g.nx {
        for j in 0..g.ny {
            if i < 2 || j < 2 || i + 2 >= g.nx || j + 2 >= g.ny {
                ring.push(g.index(i, j));
            }
        }
    }

    let mut state = cfg.prepared_state(&pot)?;
    let mut profile = vec![0.0; g.ny];
    let mut edge_leak: f64 = 0.0;
    let (mut peak, mut peak_inside): (f64, f64) = (0.0, 0.0);
    let observe = |s: &WaveState| -> Result<()> {
        let leak = ring.iter().map(|&k| s.psi[k].norm_sqr()).sum::<f64>() * g.cell_area();
        edge_leak = edge_leak.max(leak);
        if edge_leak > MAX_EDGE_LEAK {
            return Err(Error::AbsorberTooWeak { leak: edge_leak });
        }
        peak = s.psi.iter().fold(peak, |m, z| m.max(z.norm_sqr()));
        peak_inside = inside.iter().fold(peak_inside, |m, &k| m.max(s.psi[k].norm_sqr()));
        if detector.mode == DetectorMode::TimeIntegrated {
            for (j, p) in profile.iter_mut().enumerate() {
                *p += s.psi[g.index(col, j)].norm_sqr() * dt;
            }
        }
        Ok(())
    };
    sim.run_with(&mut state, cfg.integrator.n_steps, observe)?;
    if detector.mode == DetectorMode::Snapshot {
        for (j, p) in profile.iter_mut().enumerate() {
            *p = state.psi[g.index(col, j)].norm_sqr();
        }
    }
    let shield_ratio = if peak > 0.0 { peak_inside / peak } else { 0.0 };
    if shield_ratio >= MAX_SHIELD_RATIO {
        return Err(Error::ExperimentInvalid(format!(
            "solenoid interior reached {shield_ratio:.3e} of the peak density"
        )));
    }
    Ok(MagneticRun {
        flux: solenoid.flux,
        screen_x: g.x(col),
        y: g.ys(),
        intensity: profile,
        final_norm: state.norm(),
        absorbed: state.absorbed,
        edge_leak,
        shield_ratio,
        steps: state.steps,
    })
}
