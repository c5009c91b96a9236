use num_complex::Complex64;
use rayon::prelude::*;

use super::tridiag::Cayley;
use super::{peierls_links, ExperimentConfig, Grid2D, LinkPhases, WaveState};
use crate::error::{Error, Result};
use crate::gauge::{GaugePotential, SpaceTimePoint};

/// Pre-factorized alternating-direction Crank–Nicolson propagator.
///
/// Each axis pass applies the Cayley transform of `K_axis + V/2`, where
/// `K_axis` is the covariant second difference with hopping `−U/(2m h²)`.
/// The pass order alternates between steps.
#[derive(Debug, Clone)]
pub struct Simulation {
    grid: Grid2D,
    dt: f64,
    x_lines: Vec<Cayley>,
    y_lines: Vec<Cayley>,
    mask: Option<Vec<f64>>,
}

impl Simulation {
    pub fn new(
        grid: &Grid2D,
        links: &LinkPhases,
        onsite: &[f64],
        mass: f64,
        dt: f64,
        mask: Option<Vec<f64>>,
    ) -> Result<Self> {
        grid.validate()?;
        if onsite.len() != grid.len() || mask.as_ref().is_some_and(|m| m.len() != grid.len()) {
            return Err(Error::InvalidArgument("on-site potential and mask must cover the grid".into()));
        }
        if !(mass > 0.0) || !(dt > 0.0) {
            return Err(Error::Config(format!("need m > 0 and dt > 0, got m = {mass}, dt = {dt}")));
        }
        if onsite.iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericalFailure("on-site potential is not finite".into()));
        }
        let (nx, ny) = (grid.nx, grid.ny);
        let kx = 1.0 / (2.0 * mass * grid.dx() * grid.dx());
        let ky = 1.0 / (2.0 * mass * grid.dy() * grid.dy());
        let half_dt = 0.5 * dt;
        let x_lines = (0..ny)
            .into_par_iter()
            .map(|j| {
                let hdiag: Vec<f64> = (0..nx).map(|i| 2.0 * kx + 0.5 * onsite[grid.index(i, j)]).collect();
                let hsub: Vec<Complex64> = (0..nx - 1).map(|i| -kx * links.ux(i, j)).collect();
                Cayley::new(&hdiag, &hsub, half_dt)
            })
            .collect::<Result<Vec<_>>>()?;
        let y_lines = (0..nx)
            .into_par_iter()
            .map(|i| {
                let hdiag: Vec<f64> = (0..ny).map(|j| 2.0 * ky + 0.5 * onsite[grid.index(i, j)]).collect();
                let hsub: Vec<Complex64> = (0..ny - 1).map(|j| -ky * links.uy(i, j)).collect();
                Cayley::new(&hdiag, &hsub, half_dt)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid: *grid,
            dt,
            x_lines,
            y_lines,
            mask,
        })
    }

    /// Links from `pot` at the state's start time, on-site barrier plus
    /// `e A₀`, and the configured absorber.
    pub fn from_config<P: GaugePotential + ?Sized>(cfg: &ExperimentConfig, pot: &P, t: f64) -> Result<Self> {
        cfg.validate()?;
        let g = &cfg.grid;
        let e = cfg.particle.charge;
        let links = peierls_links(g, pot, t, e);
        let mut onsite = cfg.barrier_potential();
        for i in 0..g.nx {
            for j in 0..g.ny {
                onsite[g.index(i, j)] += e * pot.components(&SpaceTimePoint::planar(t, g.x(i), g.y(j)))[0];
            }
        }
        Self::new(g, &links, &onsite, cfg.particle.mass, cfg.integrator.dt, cfg.absorber.mask(g))
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn sweep_x(&self, psi: &mut [Complex64], buf: &mut [Complex64]) {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        {
            let src: &[Complex64] = psi;
            buf.par_chunks_mut(nx)
                .zip(self.x_lines.par_iter())
                .enumerate()
                .for_each_init(
                    || vec![Complex64::new(0.0, 0.0); nx],
                    |work, (j, (line, c))| {
                        for (i, z) in line.iter_mut().enumerate() {
                            *z = src[i * ny + j];
                        }
                        c.apply(line, work);
                    },
                );
        }
        let src: &[Complex64] = buf;
        psi.par_chunks_mut(ny).enumerate().for_each(|(i, row)| {
            for (j, z) in row.iter_mut().enumerate() {
                *z = src[j * nx + i];
            }
        });
    }

    fn sweep_y(&self, psi: &mut [Complex64]) {
        let ny = self.grid.ny;
        psi.par_chunks_mut(ny)
            .zip(self.y_lines.par_iter())
            .for_each_init(|| vec![Complex64::new(0.0, 0.0); ny], |work, (row, c)| c.apply(row, work));
    }

    /// Unitary part of one step, without the absorber.
    pub fn propagate(&self, state: &mut WaveState) -> Result<()> {
        if state.grid != self.grid {
            return Err(Error::InvalidArgument("state and simulation grids differ".into()));
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        self.propagate_with(state, &mut buf);
        Ok(())
    }

    fn propagate_with(&self, state: &mut WaveState, buf: &mut [Complex64]) {
        if state.steps.is_multiple_of(2) {
            self.sweep_x(&mut state.psi, buf);
            self.sweep_y(&mut state.psi);
        } else {
            self.sweep_y(&mut state.psi);
            self.sweep_x(&mut state.psi, buf);
        }
    }

    fn absorb(&self, state: &mut WaveState) {
        let Some(mask) = &self.mask else { return };
        let ny = self.grid.ny;
        let lost: Vec<f64> = state
            .psi
            .par_chunks_mut(ny)
            .zip(mask.par_chunks(ny))
            .map(|(row, m)| {
                let mut lost = 0.0;
                for (z, m) in row.iter_mut().zip(m) {
                    if *m < 1.0 {
                        lost += z.norm_sqr() * (1.0 - m * m);
                        *z *= *m;
                    }
                }
                lost
            })
            .collect();
        state.absorbed += lost.iter().sum::<f64>() * self.grid.cell_area();
    }

    /// Advances `n` steps, calling `observe` after each one.
    pub fn run_with<F>(&self, state: &mut WaveState, n: usize, mut observe: F) -> Result<()>
    where
        F: FnMut(&WaveState) -> Result<()>,
    {
        if state.grid != self.grid {
            return Err(Error::InvalidArgument("state and simulation grids differ".into()));
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for _ in 0..n {
            self.propagate_with(state, &mut buf);
            self.absorb(state);
            state.steps += 1;
            state.t = state.steps as f64 * self.dt;
            if state.psi.iter().any(|z| !z.is_finite()) {
                return Err(Error::NumericalFailure(format!("non-finite amplitude after step {}", state.steps)));
            }
            observe(state)?;
        }
        Ok(())
    }

    pub fn run(&self, state: &mut WaveState, n: usize) -> Result<()> {
        self.run_with(state, n, |_| Ok(()))
    }
}

/// Advances `state` by `cfg.integrator.n_steps` under the static potential `pot`.
pub fn evolve<P: GaugePotential + ?Sized>(state: WaveState, cfg: &ExperimentConfig, pot: &P) -> Result<WaveState> {
    if state.grid != cfg.grid {
        return Err(Error::Config("state grid does not match the configuration".into()));
    }
    let sim = Simulation::from_config(cfg, pot, state.t)?;
    let mut state = state;
    sim.run(&mut state, cfg.integrator.n_steps)?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::{Units, ZeroPotential};
    use crate::models::FiniteSolenoid;
    use crate::sim::{init_gaussian, AbsorberSpec, IntegratorSpec, PacketSpec};

    fn cfg(n_steps: usize) -> ExperimentConfig {
        ExperimentConfig {
            grid: Grid2D::new(16.0, 16.0, 97, 97).unwrap(),
            packet: PacketSpec {
                center: [-2.0, 0.5],
                momentum: [1.5, -0.5],
                sigma: 1.2,
            },
            barrier: None,
            absorber: AbsorberSpec::disabled(),
            integrator: IntegratorSpec { dt: 0.02, n_steps },
            detector: None,
            particle: Units { charge: 1.0, mass: 1.0 },
            solenoid: None,
            shield_factor: 1.2,
            phase_offset: 0.0,
        }
    }

    fn start(c: &ExperimentConfig) -> WaveState {
        init_gaussian(&c.grid, c.packet.center, c.packet.momentum, c.packet.sigma).unwrap()
    }

    #[test]
    fn single_step_is_unitary_with_flux() {
        let c = cfg(1);
        let pot = FiniteSolenoid::new(1.0, 2.0, [1.0, 0.0]).unwrap().potential().unwrap();
        let sim = Simulation::from_config(&c, &pot, 0.0).unwrap();
        let mut s = start(&c);
        for _ in 0..4 {
            let before = s.norm();
            sim.propagate(&mut s).unwrap();
            assert!((s.norm() - before).abs() < 1e-12);
            s.steps += 1;
        }
    }

    #[test]
    fn absorbed_probability_is_booked() {
        let mut c = cfg(60);
        c.absorber = AbsorberSpec {
            enabled: true,
            width: 0.3,
            strength: 0.2,
        };
        let s = evolve(start(&c), &c, &ZeroPotential).unwrap();
        assert!(s.absorbed > 1e-4, "{}", s.absorbed);
        assert!((s.total_probability() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_mismatch_is_a_config_error() {
        let c = cfg(1);
        let other = Grid2D::new(16.0, 16.0, 96, 97).unwrap();
        let s = init_gaussian(&other, [0.0, 0.0], [0.0, 0.0], 1.2).unwrap();
        assert!(matches!(evolve(s, &c, &ZeroPotential), Err(Error::Config(_))));
    }

    #[test]
    fn time_and_step_counter_advance() {
        let c = cfg(7);
        let s = evolve(start(&c), &c, &ZeroPotential).unwrap();
        assert_eq!(s.steps, 7);
        assert!((s.t - 0.14).abs() < 1e-15);
    }
}
