//! Gauge invariance twice over: the holonomy of a solenoid loop under random
//! smooth gauge functions, and a lattice run under a transformed potential
//! with a node-phased initial packet, compared density by density.
//!
//! ```text
//! cargo run --release --example gauge_invariance
//! ```

use ab_holonomy::cli::{FourierTerm, GaugeSpec};
use ab_holonomy::gauge::{gauge_transform, holonomy_phase, Contour, GaugeFunction, SpaceTimePoint, Units};
use ab_holonomy::models::FiniteSolenoid;
use ab_holonomy::quadrature::Quadrature;
use ab_holonomy::sim::{evolve, AbsorberSpec, ExperimentConfig, Grid2D, IntegratorSpec, PacketSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_gauge(rng: &mut ChaCha8Rng) -> GaugeSpec {
    let terms = (0..4)
        .map(|_| FourierTerm {
            amplitude: rng.gen_range(-2.0..2.0),
            wavevector: [0.0, rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5), 0.0],
            phase: rng.gen_range(0.0..6.0),
        })
        .collect();
    GaugeSpec::Fourier { terms }
}

fn main() -> ab_holonomy::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let e = 1.0;
    let quad = Quadrature::default();
    let solenoid = FiniteSolenoid::new(1.0, 1.7, [0.0, 0.0])?;
    let pot = solenoid.potential()?;
    let loop_ = Contour::ellipse([0.3, 0.2], [2.5, 1.8], 0.4, 0.0, 256)?;
    let before = holonomy_phase(&pot, &loop_, &quad, e)?;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let a = random_gauge(&mut rng);
        let after = holonomy_phase(&gauge_transform(pot, a, e)?, &loop_, &quad, e)?;
        worst = worst.max((after - before).abs());
    }
    println!("holonomy {before:.12}; largest change over 10 gauges {worst:.1e}");

    let cfg = ExperimentConfig {
        grid: Grid2D::new(16.0, 16.0, 128, 128)?,
        packet: PacketSpec {
            center: [-3.0, 0.5],
            momentum: [2.0, 0.0],
            sigma: 1.0,
        },
        barrier: None,
        absorber: AbsorberSpec::disabled(),
        integrator: IntegratorSpec { dt: 0.01, n_steps: 150 },
        detector: None,
        particle: Units { charge: e, mass: 1.0 },
        solenoid: Some(solenoid),
        shield_factor: 1.2,
        phase_offset: 0.0,
    };
    let a = random_gauge(&mut rng);
    let g = cfg.grid;
    let phases: Vec<f64> = (0..g.len())
        .map(|k| a.value(&SpaceTimePoint::planar(0.0, g.x(k / g.ny), g.y(k % g.ny))))
        .collect();
    let psi0 = cfg.initial_state()?;
    let plain = evolve(psi0.clone(), &cfg, &pot)?;
    let moved = evolve(psi0.phased(&phases)?, &cfg, &gauge_transform(pot, a, e)?)?;
    let diff = plain
        .density()
        .iter()
        .zip(moved.density())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max);
    println!("lattice run, {} steps: largest density difference {diff:.1e}", plain.steps);
    Ok(())
}
