// As the imaginary part shrinks, y → εy, the smeared difference
// D(z − iεy) − D(z + iεy) of the retarded propagator tends to the real-space
// retarded Green function: the shell integral ∫ F(x, r)/(4πr) d³x.

use causal_beams::beams::{minkowski_limit_probe, Causality, ProbeResolution, SpacetimeBump};
use causal_beams::geometry::SourcePoint;
use causal_beams::oracle::light_cone_shell;

fn main() -> causal_beams::Result<()> {
    let y = SourcePoint::new([0.0, 0.0, 0.5], 1.0);
    let bump = SpacetimeBump { center: [0.0, 0.0, 1.5], t0: 1.5, radius: 0.5, amplitude: 1.0 };
    let res = ProbeResolution { radial: 12, polar: 12, azimuthal: 12 };
    let series = minkowski_limit_probe(&bump, &y, &[1e-1, 1e-2, 1e-3], Causality::Retarded, res)?;
    let shell = light_cone_shell(&bump, 1.0)?;
    for v in &series.values {
        println!("eps = {:.0e}  smeared = {:.8}  rel. gap = {:.2e}", v.eps, v.value.re, (v.value - shell).norm() / shell.norm());
    }
    println!("extrapolated = {:.8}  shell = {:.8}", series.extrapolated.re, shell.re);
    Ok(())
}
