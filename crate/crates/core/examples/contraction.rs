//! Holonomy along circles shrinking onto a point inside the solenoid. The
//! phase follows the enclosed flux `eΦ min(1, r²/R²)` and reaches zero. The
//! circles are fine polygons, so the enclosed area misses the circle by
//! about `2π³r²/3n²`.
//!
//! ```text
//! cargo run --release --example contraction
//! ```

use ab_holonomy::gauge::{contract_holonomy_trace, max_adjacent_jump, ConcentricCircles};
use ab_holonomy::models::FiniteSolenoid;
use ab_holonomy::quadrature::Quadrature;

fn main() -> ab_holonomy::Result<()> {
    let solenoid = FiniteSolenoid::new(1.0, 1.7, [0.0, 0.0])?;
    let pot = solenoid.potential()?;
    let family = ConcentricCircles {
        center: [0.0, 0.0],
        start_radius: 2.5,
        t: 0.0,
        vertices: 8192,
    };
    let trace = contract_holonomy_trace(&pot, &family, 21, &Quadrature::default(), 1.0)?;
    println!("{:>6} {:>8} {:>16} {:>16}", "λ", "r", "theta", "eΦ(r)");
    for s in &trace {
        let r = family.radius(s.lambda);
        println!("{:6.3} {r:8.4} {:16.12} {:16.12}", s.lambda, s.theta, solenoid.enclosed_flux(r));
    }
    println!("largest step between samples {:.4}", max_adjacent_jump(&trace));
    Ok(())
}
