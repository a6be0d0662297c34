// Spectral side: the disk filter Ω(k) = cos(μa) + l a sinc(μa), its value on
// static plane waves, and the cancellation by which the four shielded-source
// terms collapse onto Ω at the complex wave vector k_ε.

use causal_beams::geometry::SourcePoint;
use causal_beams::numerics::rel_err;
use causal_beams::signals::DrivingSignal;
use causal_beams::sources::{static_source_apply, CatalogFunction};
use causal_beams::spectral::{cancellation_terms, k_eps_map, omega_filter, pulsed_beam_ft, WaveVector};
use num_complex::Complex64;

fn main() -> causal_beams::Result<()> {
    let y = SourcePoint::new([0.0, 0.6, 0.8], 1.3);
    let a = y.a();

    let k = [0.7, -1.1, 0.4];
    let split = WaveVector::new(k, 0.0).split(&y);
    let filter = omega_filter(Complex64::new(split.mu_sq(), 0.0), Complex64::new(split.l, 0.0), a);
    let smeared = static_source_apply(&CatalogFunction::PlaneWave { k }, &y)?.value;
    println!("static plane wave: source {smeared:.12}  filter {filter:.12}");

    for (kv, om, eps) in [([0.3, 0.2, -0.5], 0.9, 0.1), ([2.0, -1.0, 1.5], -3.0, 0.01), ([0.0, 0.0, 4.0], 2.5, 0.5)] {
        let s = WaveVector::new(kv, om).split(&y);
        let terms = cancellation_terms(&s, a, eps);
        let ke = k_eps_map(&s, eps);
        let want = omega_filter(ke.mu_sq(), ke.l_eps, a);
        println!("k = {kv:?}, ω = {om:+}, ε = {eps}: combined {:.6}  Ω(k_ε) {want:.6}  rel {:.1e}", terms.combined(), rel_err(terms.combined(), want));
    }

    // Backward waves see e^{la} exactly, not a cancellation of large terms.
    for l in [-2.0, -8.0] {
        println!("on shell, l = {l}: Ω = {:.6e}  e^(la) = {:.6e}", omega_filter(Complex64::new(-l * l, 0.0), Complex64::new(l, 0.0), a).re, (l * a).exp());
    }

    let w = WaveVector::new([0.0, 0.6, 0.8], 1.5);
    println!("pulsed beam transform at k = {:?}, ω = {}: {:.10}", w.k, w.omega, pulsed_beam_ft(&w, &y, &DrivingSignal::Impulse)?.weight());
    Ok(())
}
