// Electromagnetic wavelets: the complex field F = D + iB of a dipole at a
// complex source point, a finite-difference look at ∂ₜF + i∇×F = 0, and the
// positivity of the reproducing kernel.

use causal_beams::beams::{Causality, ComplexSpacetimePoint};
use causal_beams::em::{dipole_field, helicity_projector, reproducing_kernel, DipoleMoment, EmField};
use causal_beams::geometry::SourcePoint;
use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;

fn main() -> causal_beams::Result<()> {
    let y = SourcePoint::new([0.0, 0.0, 1.0], 1.2);
    let p = DipoleMoment { magnetic: [1.0, 0.0, 0.0], electric: [0.0, 0.5, 0.0] }.vector();
    let field = |x: Vector3<f64>, t: f64| dipole_field(&ComplexSpacetimePoint::new(x, t, y), &p, Causality::Retarded);

    let (x, t) = (Vector3::new(0.8, -0.3, 2.5), 2.0);
    let f = field(x, t)?;
    let real = EmField::from_complex(&f);
    println!("D = {:?}\nB = {:?}", real.d, real.b);

    let h = 1e-3;
    let dt = (field(x, t + h)? - field(x, t - h)?) / Complex64::new(2.0 * h, 0.0);
    let mut jac = [Vector3::zeros(); 3];
    for (j, col) in jac.iter_mut().enumerate() {
        let e = Vector3::ith(j, h);
        *col = (field(x + e, t)? - field(x - e, t)?) / Complex64::new(2.0 * h, 0.0);
    }
    let curl = Vector3::new(jac[1][2] - jac[2][1], jac[2][0] - jac[0][2], jac[0][1] - jac[1][0]);
    let div = jac[0][0] + jac[1][1] + jac[2][2];
    println!("|∂ₜF + i∇×F| / |∂ₜF| = {:.1e}   |∇·F| / |∂ₜF| = {:.1e}", (dt + curl * Complex64::i()).norm() / dt.norm(), div.norm() / dt.norm());

    let proj = helicity_projector([0.0, 0.0, 1.0], 1.0)?;
    println!("helicity projector along z: trace {:.3}", proj.trace());

    let points = [
        ComplexSpacetimePoint::new(Vector3::zeros(), 0.0, SourcePoint::new([0.0, 0.0, 0.5], 1.0)),
        ComplexSpacetimePoint::new(Vector3::new(0.5, 0.0, 0.0), 0.3, SourcePoint::new([0.2, 0.0, 0.0], 0.8)),
        ComplexSpacetimePoint::new(Vector3::new(0.0, -0.4, 0.2), -0.2, SourcePoint::new([0.0, 0.3, -0.3], 1.1)),
    ];
    let n = 3 * points.len();
    let mut gram = DMatrix::<Complex64>::zeros(n, n);
    for (i, zi) in points.iter().enumerate() {
        for (j, zj) in points.iter().enumerate() {
            gram.view_mut((3 * i, 3 * j), (3, 3)).copy_from(&reproducing_kernel(zi, zj)?);
        }
    }
    let eig = gram.symmetric_eigenvalues();
    println!("Gram eigenvalues: min {:.3e}  max {:.3e}", eig.min(), eig.max());
    Ok(())
}
