//! Holonomy of a finite solenoid along circles of radius 2 for several
//! fluxes, and the same loop traversed backwards.
//!
//! ```text
//! cargo run --release --example holonomy_circle
//! ```

use std::f64::consts::TAU;

use ab_holonomy::gauge::{holonomy_element, holonomy_estimate, Contour};
use ab_holonomy::models::FiniteSolenoid;
use ab_holonomy::quadrature::Quadrature;

fn main() -> ab_holonomy::Result<()> {
    let charge = 1.0;
    let quad = Quadrature::default();
    let circle = Contour::circle([0.0, 0.0], 2.0, 0.0, 256)?;
    println!("{:>8} {:>20} {:>12} {:>10}", "flux", "theta", "residual", "reduced");
    for flux in [0.0, 0.3, 1.7, TAU, 9.1] {
        let pot = FiniteSolenoid::new(1.0, flux, [0.0, 0.0])?.potential()?;
        let est = holonomy_estimate(&pot, &circle, &quad, charge)?;
        let el = holonomy_element(est.value);
        println!("{flux:8.4} {:20.15} {:12.2e} {:10.6}", est.value, est.residual, el.theta);
    }

    let pot = FiniteSolenoid::new(1.0, 1.7, [0.0, 0.0])?.potential()?;
    let back = holonomy_estimate(&pot, &circle.reversed(), &quad, charge)?;
    println!("reversed loop at flux 1.7: {:.15}", back.value);
    let el = holonomy_element(1.7);
    println!("group element e^(1.7i) = {:.12} + {:.12}i", el.element.re, el.element.im);
    Ok(())
}
