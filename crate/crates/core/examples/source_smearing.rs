// The shielded source ⟨S_ε, f⟩ of a driven beam, checked against the volume
// integral it replaces, and its ε → 0 limit against the bare disk source.

use causal_beams::geometry::SourcePoint;
use causal_beams::numerics::{extrapolate_to_zero, rel_err, QuadratureSpec};
use causal_beams::oracle::shielded_volume;
use causal_beams::signals::DrivingSignal;
use causal_beams::sources::{bare_source_apply, shielded_source_apply, static_source_apply, CatalogFunction};

fn main() -> causal_beams::Result<()> {
    let y = SourcePoint::new([0.0, 0.0, 0.8], 1.2);
    let f = CatalogFunction::GaussianBump { center: [0.2, 0.1, 0.3], width: 0.4, amplitude: 1.0 };
    let g = DrivingSignal::Harmonic { omega0: 2.0 };
    let t = 0.25;

    let eps = 0.3;
    let surface = shielded_source_apply(&f, &y, &g, t, eps)?;
    let volume = shielded_volume(&f, &y, &g, t, eps, &QuadratureSpec::new(1e-8, 1e-15).with_max_subdivisions(4000))?;
    println!("eps = {eps}: surface {:.10}  volume {:.10}  rel {:.1e}", surface.value, volume, rel_err(surface.value, volume));

    let hs = [0.04, 0.02, 0.01, 0.005, 0.0025, 0.00125];
    let mut vals = Vec::new();
    for &h in &hs {
        let s = shielded_source_apply(&f, &y, &g, t, h)?;
        println!("eps = {h:<8} {:.10}  (poles {:.3e})", s.value, s.poles.norm());
        vals.push(s.value);
    }
    let (limit, est) = extrapolate_to_zero(&hs, &vals);
    let bare = bare_source_apply(&f, &y, &g, t)?.value;
    println!("limit {limit:.10} (est. {est:.1e})  bare {bare:.10}  rel {:.1e}", rel_err(limit, bare));

    // The unit static source integrates constants to one.
    println!("<delta3, 1> = {}", static_source_apply(&CatalogFunction::Constant, &y)?.value);
    Ok(())
}
