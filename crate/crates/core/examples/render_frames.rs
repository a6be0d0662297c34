// Near-zone wavefronts rendered to CSV and PGM frames in a temporary
// directory.  Nodes within one grid step of the branch circle are masked.

use causal_beams::render::{field_frames, near_zone_preset, write_frames};
use causal_beams::scenario::{Axis, Grid, OutputSpec};
use causal_beams::signals::DrivingSignal;

fn main() -> causal_beams::Result<()> {
    let mut sc = near_zone_preset();
    sc.grid = Grid { x1: Axis::new(-4.0, 4.0, 81), x3: Axis::new(-4.0, 4.0, 81) };
    sc.output = OutputSpec { stem: "wavefronts".into() };
    let frames = field_frames(&sc, &DrivingSignal::Impulse)?;
    for f in &frames {
        println!("t = {:4}  max |D| = {:10.4e}  masked nodes = {}", f.t, f.max_abs(), f.masked());
    }
    let dir = std::env::temp_dir().join(format!("causal-beams-frames-{}", std::process::id()));
    let index = write_frames(&dir, &sc.output, &frames)?;
    println!("wrote {} frames, index at {}", frames.len(), index.display());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
