//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands on
//! finite intervals.
//!
//! Subintervals are refined in order of largest error estimate.  Ties break on
//! position, so results are bit-for-bit reproducible.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and subdivision budget for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }
}

/// Integral estimate with an error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

// Kronrod abscissae (positive half, descending) and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn kronrod<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let value = kron * h;
    let error = ((kron - gauss) * h).norm();
    Panel { a, b, value, error }
}

/// Integrates `f` over `[a, b]` adaptively.
///
/// Returns `Error::QuadratureNotConverged` carrying the best estimate when the
/// subdivision budget runs out before `error <= max(abs_tol, rel_tol |value|)`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quad>
where
    F: FnMut(f64) -> Complex64,
{
    integrate_with_breaks(&mut f, &[a, b], spec)
}

/// Like [`integrate`], seeding the panel list with the given ordered breakpoints.
pub fn integrate_with_breaks<F>(f: &mut F, breaks: &[f64], spec: &QuadratureSpec) -> Result<Quad>
where
    F: FnMut(f64) -> Complex64,
{
    if breaks.len() < 2 || breaks.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("quadrature needs at least two finite endpoints".into()));
    }
    let mut heap: BinaryHeap<ByError> = breaks
        .windows(2)
        .filter(|w| w[1] != w[0])
        .map(|w| ByError(kronrod(f, w[0], w[1])))
        .collect();
    if heap.is_empty() {
        return Ok(Quad { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 });
    }
    let mut evaluations = 15 * heap.len();
    // Running totals, re-summed exactly before every return.
    let mut value: Complex64 = heap.iter().map(|p| p.0.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.0.error).sum();
    let exact = |heap: &BinaryHeap<ByError>| -> (Complex64, f64) {
        (heap.iter().map(|p| p.0.value).sum(), heap.iter().map(|p| p.0.error).sum())
    };
    loop {
        let target = spec.abs_tol.max(spec.rel_tol * value.norm());
        if error <= target {
            let (v, e) = exact(&heap);
            if e <= spec.abs_tol.max(spec.rel_tol * v.norm()) {
                return Ok(Quad { value: v, error: e, evaluations });
            }
            value = v;
            error = e;
        }
        if heap.len() >= spec.max_subdivisions {
            let (value, error) = exact(&heap);
            return Err(Error::QuadratureNotConverged { value, error });
        }
        let p = heap.pop().expect("non-empty").0;
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            // Interval cannot be split further in floating point.
            heap.push(ByError(p));
            let (value, error) = exact(&heap);
            return Err(Error::QuadratureNotConverged { value, error });
        }
        let left = kronrod(f, p.a, m);
        let right = kronrod(f, m, p.b);
        value += left.value + right.value - p.value;
        error += left.error + right.error - p.error;
        heap.push(ByError(left));
        heap.push(ByError(right));
        evaluations += 30;
    }
}

// Max-heap order on the panel error; ties broken by position for determinism.
struct ByError(Panel);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ByError {}

impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error).then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let q = integrate(|x| Complex64::new(f(x), 0.0), a, b, spec)?;
    Ok((q.value.re, q.error))
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on Pₙ.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bessel::j0;

    #[test]
    fn kronrod_weights_sum_to_two() {
        let s: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        assert!((s - 2.0).abs() < 1e-15);
        let g: f64 = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn polynomials_are_exact_on_one_panel() {
        let spec = QuadratureSpec::default();
        for deg in 0..=13 {
            let q = integrate(|x| Complex64::new(x.powi(deg), 0.0), 0.0, 1.0, &spec).unwrap();
            assert!((q.value.re - 1.0 / (deg as f64 + 1.0)).abs() < 1e-15, "degree {deg}");
        }
    }

    #[test]
    fn laplace_transform_of_j0() {
        let spec = QuadratureSpec::default();
        let q = integrate(|x| Complex64::new((-x).exp() * j0(x), 0.0), 0.0, 40.0, &spec).unwrap();
        assert!((q.value.re - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-12);
    }

    #[test]
    fn reports_non_convergence_with_estimate() {
        let spec = QuadratureSpec::new(1e-15, 0.0).with_max_subdivisions(4);
        let err = integrate(|x| Complex64::new(x.abs().sqrt().recip(), 0.0), 0.0, 1.0, &spec)
            .unwrap_err();
        match err {
            Error::QuadratureNotConverged { value, error } => {
                assert!(value.re > 1.0 && error > 0.0);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn agrees_with_fixed_gauss_legendre() {
        let (x, w) = gauss_legendre(64);
        let f = |t: f64| (3.0 * t).cos() * (-t * t).exp();
        let reference: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * f(xi)).sum();
        let (v, _) = integrate_real(f, -1.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((v - reference).abs() < 1e-13);
    }

    #[test]
    fn deterministic() {
        let spec = QuadratureSpec::default();
        let f = |x: f64| Complex64::new((50.0 * x).sin(), x.cos());
        let a = integrate(f, 0.0, 3.0, &spec).unwrap();
        let b = integrate(f, 0.0, 3.0, &spec).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.error, b.error);
    }
}
