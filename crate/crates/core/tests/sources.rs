use causal_beams::geometry::SourcePoint;
use causal_beams::numerics::{extrapolate_to_zero, rel_err, QuadratureSpec};
use causal_beams::oracle::shielded_volume;
use causal_beams::signals::{DrivingSignal, SampledSignal};
use causal_beams::sources::{
    bare_source_apply, delta1_apply, shielded_source_apply, static_source_apply, CatalogFunction,
};
use causal_beams::spectral::static_source_ft;
use num_complex::Complex64;
use proptest::prelude::*;

fn y() -> SourcePoint {
    SourcePoint::new([0.2, -0.1, 0.7], 1.2)
}

#[test]
fn sampled_signal_shielded_source_matches_volume() {
    let pulse = SampledSignal::from_fn(|t| (-(t - 0.5) * (t - 0.5) * 4.0).exp(), -2.5, 3.5, 241).unwrap();
    let g = DrivingSignal::Sampled(pulse);
    let f = CatalogFunction::GaussianBump { center: [0.1, 0.2, 0.3], width: 0.5, amplitude: 1.0 };
    let (t, eps) = (0.1, 0.3);
    let s = shielded_source_apply(&f, &y(), &g, t, eps).unwrap().value;
    let v = shielded_volume(&f, &y(), &g, t, eps, &QuadratureSpec::new(1e-6, 1e-15).with_max_subdivisions(4000)).unwrap();
    assert!(rel_err(s, v) < 1e-4, "{s} vs {v}");
}

#[test]
fn shielded_limit_is_the_bare_source() {
    let g = DrivingSignal::Harmonic { omega0: 1.5 };
    let f = CatalogFunction::PolyBump { center: [-0.1, 0.3, 0.2], radius: 1.2, constant: 1.0, slope: [0.3, -0.2, 0.5] };
    let hs = [0.04, 0.02, 0.01, 0.005, 0.0025, 0.00125];
    let vals: Vec<Complex64> = hs.iter().map(|&h| shielded_source_apply(&f, &y(), &g, -0.2, h).unwrap().value).collect();
    let (limit, _) = extrapolate_to_zero(&hs, &vals);
    let bare = bare_source_apply(&f, &y(), &g, -0.2).unwrap().value;
    assert!(rel_err(limit, bare) < 1e-6, "{limit} vs {bare}");
}

#[test]
fn unit_static_source() {
    let v = static_source_apply(&CatalogFunction::Constant, &y()).unwrap().value;
    assert!((v - 1.0).norm() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn static_source_on_plane_waves(k in [-3.0f64..3.0, -3.0..3.0, -3.0..3.0]) {
        let got = static_source_apply(&CatalogFunction::PlaneWave { k }, &y()).unwrap().value;
        prop_assert!(rel_err(got, static_source_ft(k, &y())) < 1e-8);
    }

    #[test]
    fn bare_source_is_linear(c1 in -2.0f64..2.0, c2 in -2.0f64..2.0, t in -0.4f64..0.4) {
        let f1 = CatalogFunction::GaussianBump { center: [0.0, 0.1, 0.2], width: 0.4, amplitude: c1 };
        let f2 = CatalogFunction::GaussianBump { center: [0.0, 0.1, 0.2], width: 0.4, amplitude: c2 };
        let f12 = CatalogFunction::GaussianBump { center: [0.0, 0.1, 0.2], width: 0.4, amplitude: c1 + c2 };
        let g = DrivingSignal::Impulse;
        let s = bare_source_apply(&f1, &y(), &g, t).unwrap().value + bare_source_apply(&f2, &y(), &g, t).unwrap().value;
        let s12 = bare_source_apply(&f12, &y(), &g, t).unwrap().value;
        prop_assert!((s - s12).norm() <= 1e-12 * (s.norm() + 1e-3));
    }

    #[test]
    fn one_dimensional_source(k in -5.0f64..5.0, yv in -2.0f64..2.0) {
        // ⟨δ₁, e^{−ikx}⟩ = 1 + ky at the real point.
        let got = delta1_apply(Complex64::new(1.0, 0.0), Complex64::new(0.0, -k), yv);
        prop_assert!((got - Complex64::new(1.0 + k * yv, 0.0)).norm() <= 1e-14 * (1.0 + (k * yv).abs()));
    }
}
