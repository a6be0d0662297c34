// Oblate spheroidal coordinates of a complex source point: the invariants
// p² − q² = r² − a², pq = aξ, and the far-zone approach p → r, q → a cos θ.

use causal_beams::geometry::{complex_distance, far_zone, from_os, SourcePoint};
use nalgebra::Vector3;

fn main() -> causal_beams::Result<()> {
    let y = SourcePoint::new([0.0, 0.0, 1.0], 1.5);
    let a = y.a();
    println!("a = {a}, u = {}, timelike = {}", y.u, y.is_timelike());

    for x in [Vector3::new(0.3, 0.0, 0.2), Vector3::new(2.0, -1.0, 0.5), Vector3::new(0.0, 0.0, -3.0)] {
        let cd = complex_distance(&x, &y)?;
        let lhs = cd.p * cd.p - cd.q * cd.q;
        println!(
            "x = [{:5.2} {:5.2} {:5.2}]  p = {:.6}  q = {:+.6}  p²−q²−(r²−a²) = {:.1e}  pq−aξ = {:.1e}",
            x[0], x[1], x[2], cd.p, cd.q, lhs - (cd.r * cd.r - a * a), cd.p * cd.q - a * cd.xi
        );
        let back = from_os(cd.p, cd.q, cd.phi, &y)?;
        assert!((back - x).norm() < 1e-12);
    }

    // p − r and q − a cos θ shrink like 1/r.
    let dir = Vector3::new(1.0, 0.0, 1.0).normalize();
    for r in [10.0, 100.0, 1000.0] {
        let x = dir * r;
        let cd = complex_distance(&x, &y)?;
        let (pf, qf) = far_zone(&x, &y)?;
        println!("r/a = {:6}  |p − r| = {:.2e}  |q − a cosθ| = {:.2e}", r / a, (cd.p - pf).abs(), (cd.q - qf).abs());
    }
    Ok(())
}
