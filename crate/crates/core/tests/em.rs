use causal_beams::beams::{Causality, ComplexSpacetimePoint};
use causal_beams::em::{dipole_field, helicity_projector, reproducing_kernel, spin_matrix, wavelet_dyadic};
use causal_beams::geometry::SourcePoint;
use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;
use proptest::prelude::*;

fn cvec(re: [f64; 3], im: [f64; 3]) -> Vector3<Complex64> {
    Vector3::from(re).zip_map(&Vector3::from(im), Complex64::new)
}

fn forward_point() -> impl Strategy<Value = ComplexSpacetimePoint> {
    ([-2.0f64..2.0, -2.0..2.0, -2.0..2.0], -2.0f64..2.0, [-0.8f64..0.8, -0.8..0.8, -0.8..0.8], 0.1f64..1.0).prop_filter_map(
        "off the branch circle",
        |(x, t, y, du)| {
            let a = Vector3::from(y).norm();
            let z = ComplexSpacetimePoint::new(Vector3::from(x), t, SourcePoint::new(y, a + du));
            z.distance().ok().filter(|cd| cd.norm_sqr() > 0.05).map(|_| z)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_is_linear_in_the_moment(z in forward_point(), p1 in [-1.0f64..1.0, -1.0..1.0, -1.0..1.0], p2 in [-1.0f64..1.0, -1.0..1.0, -1.0..1.0], c in -2.0f64..2.0) {
        let (a, b) = (cvec(p1, [0.0; 3]), cvec([0.0; 3], p2));
        let f = |p: Vector3<Complex64>| dipole_field(&z, &p, Causality::Retarded).unwrap();
        let lhs = f(a + b * Complex64::new(c, 0.0));
        let rhs = f(a) + f(b) * Complex64::new(c, 0.0);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (lhs.norm() + rhs.norm() + 1e-300));
    }

    #[test]
    fn dyadic_adjoint_symmetry(z in forward_point()) {
        let w = wavelet_dyadic(&z).unwrap();
        let wc = wavelet_dyadic(&z.conj()).unwrap();
        prop_assert!((w.adjoint() - wc).norm() <= 1e-12 * w.norm());
    }

    #[test]
    fn helicity_projector_on_shell(k in [-3.0f64..3.0, -3.0..3.0, -3.0..3.0], forward in any::<bool>()) {
        let n = Vector3::from(k).norm();
        prop_assume!(n > 0.1);
        let w = if forward { n } else { -n };
        let s = spin_matrix(k, w).unwrap();
        let p = helicity_projector(k, w).unwrap();
        prop_assert!((s * s * s - s).norm() <= 1e-13);
        prop_assert!((p * p - p).norm() <= 1e-13);
        prop_assert!((p.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-13);
    }
}

#[test]
fn gram_matrix_is_positive() {
    let pts: Vec<ComplexSpacetimePoint> = [
        ([0.0, 0.0, 0.0], 0.0, [0.0, 0.0, 0.5], 1.0),
        ([0.5, 0.0, 0.2], 0.3, [0.2, 0.0, 0.0], 0.8),
        ([0.0, -0.4, 0.2], -0.2, [0.0, 0.3, -0.3], 1.1),
        ([1.0, 1.0, -1.0], 1.5, [-0.4, 0.1, 0.2], 0.6),
        ([-0.6, 0.2, 0.9], 0.0, [0.1, 0.0, 0.0], 0.5),
    ]
    .iter()
    .map(|&(x, t, y, u)| ComplexSpacetimePoint::new(Vector3::from(x), t, SourcePoint::new(y, u)))
    .collect();
    let n = 3 * pts.len();
    let mut g = DMatrix::<Complex64>::zeros(n, n);
    for (i, zi) in pts.iter().enumerate() {
        for (j, zj) in pts.iter().enumerate() {
            g.view_mut((3 * i, 3 * j), (3, 3)).copy_from(&reproducing_kernel(zi, zj).unwrap());
        }
    }
    assert!((g.adjoint() - &g).norm() <= 1e-13 * g.norm());
    let eig = g.symmetric_eigenvalues();
    assert!(eig.min() >= -1e-12 * eig.max(), "{eig}");
}
