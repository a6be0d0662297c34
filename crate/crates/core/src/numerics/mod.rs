//! Special functions and quadrature.

pub mod bessel;
pub mod quadrature;

pub use bessel::{j0, j1};
pub use quadrature::{gauss_legendre, integrate, integrate_real, integrate_with_breaks, Quad, QuadratureSpec};

/// Central tolerance-aware equality used across the checks.
pub fn rel_err(got: num_complex::Complex64, want: num_complex::Complex64) -> f64 {
    let d = (got - want).norm();
    let s = want.norm();
    if s > 0.0 {
        d / s
    } else {
        d
    }
}

/// Polynomial extrapolation of `ys(hs)` to `h = 0` (Neville's scheme).
///
/// Returns the extrapolated value and the change contributed by the last
/// sample, a practical error estimate.
pub fn extrapolate_to_zero(hs: &[f64], ys: &[num_complex::Complex64]) -> (num_complex::Complex64, f64) {
    assert_eq!(hs.len(), ys.len());
    assert!(!hs.is_empty());
    let n = hs.len();
    let mut t = ys.to_vec();
    let mut prev = t[n - 1];
    for m in 1..n {
        prev = t[n - 1];
        for i in (m..n).rev() {
            t[i] = (t[i] * hs[i - m] - t[i - 1] * hs[i]) / (hs[i - m] - hs[i]);
        }
    }
    (t[n - 1], (t[n - 1] - prev).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn extrapolation_is_exact_on_polynomials() {
        let hs = [0.4, 0.2, 0.1, 0.05];
        let ys: Vec<Complex64> = hs.iter().map(|&h| Complex64::new(3.0 - h + 2.0 * h * h - h * h * h, h)).collect();
        let (v, _) = extrapolate_to_zero(&hs, &ys);
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-13);
    }
}
