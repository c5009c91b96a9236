//! Sweeps the solenoid flux over one period, extracts the fringe shift of
//! each screen profile against the field-free run and fits it against `eΦ`.
//!
//! ```text
//! cargo run --release --example flux_scan
//! ```

use ab_holonomy::analysis::{fringe_period, phase_linearity_scan, ScreenProfile};
use ab_holonomy::cli::RunConfig;
use ab_holonomy::sim::magnetic_double_slit_run;
use rayon::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig::from_toml(include_str!("configs/double_slit.toml"))?;
    let base = cfg.magnetic.expect("config has [magnetic]");
    let fluxes = cfg.scan.expect("config has [scan]").fluxes;
    let charge = base.particle.charge;
    let solenoid = base.solenoid.expect("config has a solenoid");

    let profiles = fluxes
        .par_iter()
        .map(|&flux| {
            let mut run_cfg = base.clone();
            run_cfg.solenoid = Some(solenoid.with_flux(flux));
            let run = magnetic_double_slit_run(&run_cfg)?;
            ScreenProfile::new(run.y, run.intensity, flux, charge, format!("flux={flux}"))
        })
        .collect::<ab_holonomy::Result<Vec<_>>>()?;

    let reference = profiles.iter().find(|p| p.flux == 0.0).expect("scan includes zero flux");
    println!("fringe period {:.4}", fringe_period(reference)?.period);
    let fit = phase_linearity_scan(&profiles, charge)?;
    println!("{:>10} {:>10} {:>10} {:>10}", "flux", "eΦ", "shift", "unwrapped");
    for p in &fit.points {
        println!("{:10.5} {:10.5} {:10.5} {:10.5}", p.flux, p.holonomy, p.shift, p.unwrapped);
    }
    println!(
        "slope {:.5}  intercept {:.5}  max residual {:.5}",
        fit.slope, fit.intercept, fit.max_residual
    );

    let last = profiles.iter().find(|p| (p.flux - std::f64::consts::TAU).abs() < 1e-12).expect("scan ends at 2π");
    let rms = |v: &[f64]| (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt();
    let diff: Vec<f64> = last.intensity.iter().zip(&reference.intensity).map(|(a, b)| a - b).collect();
    println!("Φ = 2π against Φ = 0: relative RMS difference {:.2e}", rms(&diff) / rms(&reference.intensity));
    Ok(())
}
