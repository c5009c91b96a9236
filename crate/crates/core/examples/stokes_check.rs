//! Stokes equality around a solenoid: contour holonomy against the flux of
//! the field strength through a flat disk, a disk cutting the solenoid wall
//! and a cone over an off-centre ellipse; then a circle against a square.
//!
//! ```text
//! cargo run --release --example stokes_check
//! ```

use ab_holonomy::gauge::{holonomy_phase, stokes_residual, Contour, SpaceTimePoint, SurfacePatch};
use ab_holonomy::models::FiniteSolenoid;
use ab_holonomy::quadrature::Quadrature;

fn main() -> ab_holonomy::Result<()> {
    let e = 1.0;
    let quad = Quadrature::default();
    let pot = FiniteSolenoid::new(1.0, 1.7, [0.0, 0.0])?.potential()?;

    let cases: Vec<(&str, Contour, SurfacePatch)> = vec![
        (
            "disk r=2",
            Contour::circle([0.0, 0.0], 2.0, 0.0, 256)?,
            SurfacePatch::disk([0.0, 0.0], 2.0, 0.0, 256, (8, 16))?,
        ),
        (
            "disk across the wall",
            Contour::circle([1.0, 0.0], 1.0, 0.0, 8192)?,
            SurfacePatch::disk([1.0, 0.0], 1.0, 0.0, 8192, (8, 16))?,
        ),
        {
            let ellipse = Contour::ellipse([0.4, -0.3], [2.5, 1.6], 0.7, 0.0, 256)?;
            let cone = SurfacePatch::cone(SpaceTimePoint::new(0.0, [0.2, 0.1, 1.5]), &ellipse, 12)?;
            ("cone over an ellipse", ellipse, cone)
        },
    ];
    println!("{:<22} {:>18} {:>18} {:>10}", "surface", "holonomy", "flux", "residual");
    for (name, contour, surface) in &cases {
        let r = stokes_residual(&pot, contour, surface, &quad, e, 1e-9)?;
        println!("{name:<22} {:18.12} {:18.12} {:10.2e}", r.holonomy, r.flux, r.residual);
    }

    let circle = holonomy_phase(&pot, &Contour::circle([0.0, 0.0], 2.0, 0.0, 256)?, &quad, e)?;
    let square = holonomy_phase(&pot, &Contour::rectangle([0.5, -0.2], [3.0, 3.0], 0.0)?, &quad, e)?;
    println!("circle {circle:.15}  square {square:.15}  difference {:.1e}", (circle - square).abs());
    Ok(())
}
