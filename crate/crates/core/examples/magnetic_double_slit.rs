//! Double slit with a shielded solenoid between the slits. Prints the screen
//! profile without flux and with `eΦ = π`, where the central maximum turns
//! into a minimum although the packet never enters the field.
//!
//! ```text
//! cargo run --release --example magnetic_double_slit
//! ```

use std::f64::consts::PI;

use ab_holonomy::analysis::{fringe_shift, ScreenProfile};
use ab_holonomy::cli::RunConfig;
use ab_holonomy::sim::{magnetic_double_slit_run, MagneticRun};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = RunConfig::from_toml(include_str!("configs/double_slit.toml"))?
        .magnetic
        .expect("config has [magnetic]");
    let solenoid = base.solenoid.expect("config has a solenoid");
    let e = base.particle.charge;

    let run = |flux: f64| -> ab_holonomy::Result<MagneticRun> {
        let mut cfg = base.clone();
        cfg.solenoid = Some(solenoid.with_flux(flux));
        magnetic_double_slit_run(&cfg)
    };
    let (free, half) = rayon::join(|| run(0.0), || run(PI / e));
    let (free, half) = (free?, half?);
    println!(
        "absorbed {:.4}, left on grid {:.4}, edge leak {:.1e}, density inside solenoid / peak {:.1e}",
        free.absorbed, free.final_norm, free.edge_leak, free.shield_ratio
    );

    let peak = free.intensity.iter().copied().fold(0.0, f64::max);
    println!("{:>8} {:>10} {:>10}", "y", "eΦ = 0", "eΦ = π");
    for j in (0..free.y.len()).step_by(8) {
        let (a, b) = (free.intensity[j] / peak, half.intensity[j] / peak);
        println!("{:8.3} {a:10.4} {b:10.4}  {:<20}|{}", free.y[j], "#".repeat((a * 20.0) as usize), "#".repeat((b * 20.0) as usize));
    }

    let reference = ScreenProfile::new(free.y.clone(), free.intensity.clone(), 0.0, e, "free")?;
    let shifted = ScreenProfile::new(half.y.clone(), half.intensity.clone(), PI / e, e, "half")?;
    println!("fringe shift {:.4} (eΦ = π)", fringe_shift(&shifted, &reference)?);
    Ok(())
}
