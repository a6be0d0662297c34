// A measured driving signal: a time,value CSV drives the beam through the
// same analytic-signal machinery as the built-in pulses.

use causal_beams::beams::{driven_beam, ComplexSpacetimePoint};
use causal_beams::geometry::SourcePoint;
use causal_beams::signals::{DrivingSignal, SampledSignal};
use nalgebra::Vector3;

fn main() -> causal_beams::Result<()> {
    let dir = std::env::temp_dir().join(format!("causal-beams-signal-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("pulse.csv");
    let mut csv = String::from("time,value\n");
    for i in 0..=200 {
        let t = 1.5 * i as f64 / 200.0;
        csv += &format!("{t},{}\n", (std::f64::consts::PI * t / 1.5).sin().powi(4));
    }
    std::fs::write(&path, csv)?;

    let g = DrivingSignal::Sampled(SampledSignal::from_csv(&path)?);
    std::fs::remove_dir_all(&dir)?;

    let y = SourcePoint::new([0.0, 0.0, 1.0], 1.2);
    let r = 6.0;
    for dt in [-0.5, 0.0, 0.5, 0.75, 1.0, 1.5, 2.0] {
        let on = driven_beam(&ComplexSpacetimePoint::new(Vector3::new(0.0, 0.0, r), r + dt, y), &g)?;
        let off = driven_beam(&ComplexSpacetimePoint::new(Vector3::new(r, 0.0, 0.0), r + dt, y), &g)?;
        println!("t − r = {dt:+.2}  on axis |W| = {:.4e}  broadside |W| = {:.4e}", on.norm(), off.norm());
    }
    Ok(())
}
