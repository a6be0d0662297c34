// The retarded propagator of a complex source point is a pulsed beam: along
// the axis it peaks at t = r with height 1/(8π²(u − a) r), and its angular width
// in the far zone shrinks as u → a.

use std::f64::consts::PI;

use causal_beams::beams::{extended_propagator, peak_pattern, Causality, ComplexSpacetimePoint};
use causal_beams::geometry::SourcePoint;
use causal_beams::render::{angular_fwhm, ray_peak};
use nalgebra::Vector3;

fn main() -> causal_beams::Result<()> {
    let y = SourcePoint::new([0.0, 0.0, 1.0], 1.1);
    let r = 50.0;
    let x = Vector3::new(0.0, 0.0, r);
    println!("on-axis pulse at r = {r}, u = {}:", y.u);
    for dt in [-0.6, -0.3, -0.1, 0.0, 0.1, 0.3, 0.6] {
        let z = ComplexSpacetimePoint::new(x, r + dt, y);
        let d = extended_propagator(&z, Causality::Retarded)?;
        println!("  t − r = {dt:+.1}  |D| r = {:.5}", d.norm() * r);
    }

    println!("peak |D| r against 1/(8π²|u − a cos θ|):");
    for theta in [0.0, 0.2, 0.5, PI / 2.0, PI] {
        let peak = ray_peak(theta, r, &y)? * r;
        println!("  θ = {theta:.2}  scan {peak:.5}  pattern {:.5}", peak_pattern(theta, &y) / (4.0 * PI));
    }

    println!("full width at half maximum at r = 200a:");
    for u in [1.5, 1.1, 1.01, 1.001] {
        let y = SourcePoint::new([0.0, 0.0, 1.0], u);
        println!("  u = {u:<6} FWHM = {:.4} rad", angular_fwhm(&y, 200.0)?);
    }
    Ok(())
}
