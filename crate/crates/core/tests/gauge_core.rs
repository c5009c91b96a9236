use std::f64::consts::{PI, TAU};

use ab_holonomy::gauge::{
    contract_holonomy_trace, field_strength, flux_surface, gauge_transform, holonomy_phase, max_adjacent_jump,
    stokes_residual, ConcentricCircles, Contour, FnGauge, GaugePotential, SpaceTimePoint, SurfacePatch, ZeroPotential,
};
use ab_holonomy::models::{FiniteSolenoid, Tube, TubePotential, TubePulse};
use ab_holonomy::quadrature::Quadrature;

fn solenoid(flux: f64) -> ab_holonomy::models::SolenoidPotential {
    FiniteSolenoid::new(1.0, flux, [0.0, 0.0]).unwrap().potential().unwrap()
}

/// Hides the closed-form field strength so finite differences are exercised.
struct NumericOnly<P>(P);

impl<P: GaugePotential> GaugePotential for NumericOnly<P> {
    fn components(&self, p: &SpaceTimePoint) -> [f64; 4] {
        self.0.components(p)
    }
}

#[test]
fn field_strength_outside_and_inside_finite_solenoid() {
    let pot = NumericOnly(solenoid(TAU));
    let out = field_strength(&pot, &SpaceTimePoint::planar(0.0, 2.0, 0.0), 1e-4).unwrap();
    assert!(out.get(1, 2).abs() < 1e-8);
    // B = Φ/πR² = 2, F_12 = ∂_1 A_2 − ∂_2 A_1 of the interior potential
    let inside = field_strength(&pot, &SpaceTimePoint::planar(0.0, 0.5, 0.0), 1e-4).unwrap();
    assert!((inside.get(1, 2).abs() - 2.0).abs() < 1e-6);
    assert!((inside.get(1, 2) - 2.0).abs() < 1e-6);
    assert_eq!(inside.get(1, 2), -inside.get(2, 1));
}

#[test]
fn holonomy_of_circle_around_solenoid_equals_flux() {
    let c = Contour::circle([0.0, 0.0], 2.0, 0.0, 256).unwrap();
    let th = holonomy_phase(&solenoid(1.7), &c, &Quadrature::default(), 1.0).unwrap();
    assert!((th - 1.7).abs() < 1e-9, "{th}");
}

#[test]
fn holonomy_of_two_tube_time_loop() {
    // lower tube carries V₂ = 0.8, upper V₁ = 0.3 over the plateau [0, 2]
    let tubes = TubePotential::new(vec![
        Tube {
            y_center: 1.0,
            half_width: 0.25,
            pulse: TubePulse::new(0.3, 0.0, 2.0, 0.1).unwrap(),
        },
        Tube {
            y_center: -1.0,
            half_width: 0.25,
            pulse: TubePulse::new(0.8, 0.0, 2.0, 0.1).unwrap(),
        },
    ])
    .unwrap();
    let c = Contour::time_loop(0.0, 2.0, [0.0, -1.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
    let th = holonomy_phase(&tubes, &c, &Quadrature::default(), 1.0).unwrap();
    assert!((th - 1.0).abs() < 1e-10, "{th}");
}

#[test]
fn flux_through_disks() {
    let quad = Quadrature::default();
    let big = SurfacePatch::disk([0.0, 0.0], 2.0, 0.0, 64, (8, 8)).unwrap();
    let f = flux_surface(&solenoid(1.7), &big, 1e-4, &quad, 1.0).unwrap();
    assert!((f - 1.7).abs() < 1e-6, "{f}");
    let small = SurfacePatch::disk([0.0, 0.0], 0.5, 0.0, 64, (8, 8)).unwrap();
    let f = flux_surface(&solenoid(1.7), &small, 1e-4, &quad, 1.0).unwrap();
    assert!((f - 0.425).abs() < 1e-6, "{f}");
    // off-centre disk away from the solenoid
    let away = SurfacePatch::disk([4.0, 1.0], 1.5, 0.0, 64, (8, 8)).unwrap();
    let f = flux_surface(&solenoid(1.7), &away, 1e-4, &quad, 1.0).unwrap();
    assert!(f.abs() < 1e-12, "{f}");
}

#[test]
fn flux_through_disk_straddling_the_wall() {
    // disk of radius 1 centred at (1, 0): overlap area of two unit disks is 2π/3 − √3/2
    let s = SurfacePatch::disk([1.0, 0.0], 1.0, 0.0, 64, (8, 8)).unwrap();
    let f = flux_surface(&solenoid(PI), &s, 1e-4, &Quadrature::default(), 1.0).unwrap();
    let expected = 1.0 * (2.0 * PI / 3.0 - 3f64.sqrt() / 2.0);
    assert!((f - expected).abs() < 1e-8, "{f} vs {expected}");
}

#[test]
fn stokes_for_circle_and_disk() {
    let c = Contour::circle([0.0, 0.0], 2.0, 0.0, 512).unwrap();
    let s = SurfacePatch::disk([0.0, 0.0], 2.0, 0.0, 512, (8, 16)).unwrap();
    let rep = stokes_residual(&solenoid(1.7), &c, &s, &Quadrature::default(), 1.0, 1e-9).unwrap();
    assert!(rep.residual < 1e-6, "{rep:?}");
    let rep = stokes_residual(&ZeroPotential, &c, &s, &Quadrature::default(), 1.0, 1e-9).unwrap();
    assert_eq!(rep.residual, 0.0);
}

#[test]
fn stokes_rejects_mismatched_boundary() {
    let c = Contour::circle([0.0, 0.0], 2.0, 0.0, 128).unwrap();
    let s = SurfacePatch::disk([0.0, 0.0], 2.5, 0.0, 128, (8, 8)).unwrap();
    let err = stokes_residual(&solenoid(1.7), &c, &s, &Quadrature::default(), 1.0, 1e-6).unwrap_err();
    match err {
        ab_holonomy::Error::BoundaryMismatch { distance } => assert!((distance - 0.5).abs() < 1e-9),
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn stokes_on_cone_over_off_centre_polygon() {
    // apex outside the solenoid, polygon straddling the wall
    let c = Contour::ellipse([0.4, -0.3], [1.8, 1.2], 0.6, 0.0, 200).unwrap();
    let s = SurfacePatch::cone(SpaceTimePoint::planar(0.0, 1.0, 0.5), &c, 8).unwrap();
    let rep = stokes_residual(&solenoid(2.3), &c, &s, &Quadrature::default(), 1.0, 1e-12).unwrap();
    assert!(rep.residual < 1e-6, "{rep:?}");
}

#[test]
fn contour_independence_circle_vs_square() {
    let pot = solenoid(1.7);
    let quad = Quadrature::default();
    let circle = holonomy_phase(&pot, &Contour::circle([0.0, 0.0], 2.0, 0.0, 1024).unwrap(), &quad, 1.0).unwrap();
    let square = holonomy_phase(&pot, &Contour::rectangle([0.0, 0.0], [3.0, 3.0], 0.0).unwrap(), &quad, 1.0).unwrap();
    assert!((circle - square).abs() < 1e-8, "{circle} {square}");
}

#[test]
fn gauge_transform_examples() {
    let pot = solenoid(1.7);
    let c = Contour::ellipse([0.3, 0.2], [2.5, 1.9], 0.3, 0.0, 400).unwrap();
    let quad = Quadrature::default();
    let before = holonomy_phase(&pot, &c, &quad, 1.0).unwrap();
    let a = FnGauge::new(|p: &SpaceTimePoint| p.x[0].sin() * p.x[1].cos());
    let transformed = gauge_transform(&pot, a, 1.0).unwrap();
    let after = holonomy_phase(&transformed, &c, &quad, 1.0).unwrap();
    assert!((before - after).abs() < 1e-10, "{before} {after}");
}

#[test]
fn concentric_contraction_follows_enclosed_flux() {
    let pot = solenoid(TAU);
    let fam = ConcentricCircles {
        center: [0.0, 0.0],
        start_radius: 2.0,
        t: 0.0,
        vertices: 8192,
    };
    let trace = contract_holonomy_trace(&pot, &fam, 17, &Quadrature::default(), 1.0).unwrap();
    for s in &trace {
        let r = fam.radius(s.lambda);
        let expected = TAU * (r * r).min(1.0);
        assert!((s.theta - expected).abs() < 1e-6, "λ={} θ={} expected {}", s.lambda, s.theta, expected);
    }
    assert_eq!(trace.last().unwrap().theta, 0.0);
    assert!(max_adjacent_jump(&trace) < 1.7);
}

#[test]
fn contraction_in_flat_region_stays_trivial() {
    let pot = solenoid(TAU);
    let fam = ConcentricCircles {
        center: [5.0, 0.0],
        start_radius: 2.0,
        t: 0.0,
        vertices: 128,
    };
    let trace = contract_holonomy_trace(&pot, &fam, 8, &Quadrature::default(), 1.0).unwrap();
    assert!(trace.iter().all(|s| s.theta.abs() < 1e-12));
    let trace = contract_holonomy_trace(&ZeroPotential, &fam, 8, &Quadrature::default(), 1.0).unwrap();
    assert!(trace.iter().all(|s| s.theta == 0.0));
}
