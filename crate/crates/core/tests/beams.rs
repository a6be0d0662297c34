use std::f64::consts::PI;

use causal_beams::beams::{driven_beam, extended_propagator, harmonic_beam, Causality, ComplexSpacetimePoint};
use causal_beams::geometry::{complex_distance, SourcePoint};
use causal_beams::numerics::rel_err;
use causal_beams::render::ray_peak;
use causal_beams::signals::DrivingSignal;
use nalgebra::Vector3;
use proptest::prelude::*;

fn retarded_abs(x: Vector3<f64>, t: f64, y: SourcePoint) -> f64 {
    extended_propagator(&ComplexSpacetimePoint::new(x, t, y), Causality::Retarded).unwrap().norm()
}

fn golden_argmax(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    while hi - lo > 1e-10 {
        let (m1, m2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    0.5 * (lo + hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // At fixed x the retarded pulse peaks at t = p(x).
    #[test]
    fn wavefront_is_the_p_spheroid(x in [-4.0f64..4.0, -4.0..4.0, -4.0..4.0], du in 0.01f64..1.0) {
        let y = SourcePoint::new([0.0, 0.6, 0.8], 1.0 + du);
        let x = Vector3::from(x);
        let Ok(cd) = complex_distance(&x, &y) else { return Ok(()) };
        let t = golden_argmax(|t| retarded_abs(x, t, y), cd.p - 5.0, cd.p + 5.0);
        prop_assert!((t - cd.p).abs() < 1e-6, "argmax {t} vs p {}", cd.p);
    }
}

#[test]
fn on_axis_peak_is_constant_in_r() {
    // r |D⁺| at the peak tends to 1/(8π²(u − a)) with corrections O(a/r).
    let y = SourcePoint::on_axis(1.0, 1.1);
    let want = 1.0 / (8.0 * PI * PI * 0.1);
    for r in [100.0, 400.0, 1600.0] {
        let peak = ray_peak(0.0, r, &y).unwrap() * r;
        assert!((peak / want - 1.0).abs() < 2.0 / r, "r = {r}: {peak} vs {want}");
    }
}

#[test]
fn pulse_duration_is_twice_root_three_u_minus_a() {
    // |D⁺| ∝ 1/|(t − p) − i(u − q)| on the axis, so the half-maximum width is
    // 2√3 (u − a).
    for u in [1.5, 1.1, 1.01] {
        let y = SourcePoint::on_axis(1.0, u);
        let r = 300.0;
        let x = Vector3::new(0.0, 0.0, r);
        let p = complex_distance(&x, &y).unwrap().p;
        let peak = retarded_abs(x, p, y);
        let mut lo = p;
        let mut hi = p + 10.0;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if retarded_abs(x, mid, y) > 0.5 * peak {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let fwhm = 2.0 * (lo - p);
        let want = 2.0 * 3f64.sqrt() * (u - 1.0);
        assert!((fwhm / want - 1.0).abs() < 1e-9, "u = {u}: {fwhm} vs {want}");
    }
}

#[test]
fn harmonic_drive_is_the_helmholtz_beam() {
    let y = SourcePoint::new([0.2, 0.0, 0.9], 1.3);
    let x = Vector3::new(0.4, 1.0, -0.3);
    let omega = 2.5;
    for t in [-1.0, 0.0, 0.7] {
        let w = driven_beam(&ComplexSpacetimePoint::new(x, t, y), &DrivingSignal::Harmonic { omega0: omega }).unwrap();
        // g(τ) = e^{−iωτ}, so W = e^{−iωt} e^{−ωu} e^{iωr̃}/(4πr̃).
        let want = harmonic_beam(&x, &y, omega).unwrap() * num_complex::Complex64::new(0.0, -omega * t).exp() * (-omega * y.u).exp();
        assert!(rel_err(w, want) < 1e-13, "{w} vs {want}");
    }
}
