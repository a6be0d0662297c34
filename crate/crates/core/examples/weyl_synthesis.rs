// Plane-wave synthesis of the complex-point spherical wave e^{iωr̃}/(4πr̃),
// including the evanescent part, and the jump across the branch disk.

use causal_beams::geometry::pq_from_cylindrical;
use causal_beams::weyl::{jump_closed, jump_spectral, weyl_eval, xi_min};
use num_complex::Complex64;

fn main() -> causal_beams::Result<()> {
    let (a, omega) = (1.0, 2.0);
    println!("xi_min(a = {a}, ω = {omega}) = {:.3e}", xi_min(a, omega));
    for (rho, xi, w) in [(0.3, 0.5, omega), (1.7, -0.2, omega), (0.5, 1.2, -omega), (2.0, -0.8, -omega)] {
        let v = weyl_eval(rho, xi, a, w)?;
        let (p, q) = pq_from_cylindrical(rho, xi, a);
        let rt = Complex64::new(p, -q);
        let closed = (Complex64::i() * w * rt).exp() / (4.0 * std::f64::consts::PI * rt);
        println!("ρ = {rho}, ξ = {xi:+}, ω = {w:+}: {:?}  synth {:.10}  closed {closed:.10}", v.component, v.value());
    }
    for rho in [0.0, 0.5, 0.9] {
        let s = jump_spectral(rho, a, omega)?;
        println!("jump at ρ = {rho}: spectral {:.10}  closed {:.10}", s.value, jump_closed(rho, a, omega)?);
    }
    Ok(())
}
