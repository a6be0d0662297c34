//! Complex distance from an imaginary source point and the oblate spheroidal
//! (OS) coordinates it induces.
//!
//! For an observer `x` and source displacement `y⃗`, the complex distance is the
//! principal root
//!
//! ```text
//! r̃ = √((x − iy)²) = √(r² − a² − 2i x·y) = p − iq,   p ≥ 0, |q| ≤ a.
//! ```
//!
//! Level sets of `p` are confocal oblate spheroids around the branch disk of
//! radius `a = |y⃗|`; level sets of `q` are the orthogonal hyperboloids.  On the
//! disk itself (`ξ = 0`, `ρ < a`) the upper layer `ξ → +0` is returned, so
//! `q = +√(a² − ρ²)` there.

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Imaginary part of a complex spacetime point: spatial displacement `y⃗` and
/// Euclidean time `u`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourcePoint {
    pub y: [f64; 3],
    pub u: f64,
}

impl SourcePoint {
    pub fn new(y: [f64; 3], u: f64) -> Self {
        Self { y, u }
    }

    /// Source on the x₃ axis, the orientation used by the render presets.
    pub fn on_axis(a: f64, u: f64) -> Self {
        Self { y: [0.0, 0.0, a], u }
    }

    pub fn y_vec(&self) -> Vector3<f64> {
        Vector3::from(self.y)
    }

    /// Disk radius `a = |y⃗|`.
    pub fn a(&self) -> f64 {
        self.y_vec().norm()
    }

    /// Unit axis; `None` when `a = 0`.
    pub fn y_hat(&self) -> Option<Vector3<f64>> {
        let a = self.a();
        (a > 0.0).then(|| self.y_vec() / a)
    }

    /// `|u| > a`: the point lies in the causal tube.
    pub fn is_timelike(&self) -> bool {
        self.u.abs() > self.a()
    }

    /// Sign of `u` (±1).
    pub fn u_sign(&self) -> f64 {
        if self.u < 0.0 {
            -1.0
        } else {
            1.0
        }
    }

    pub fn negated(&self) -> Self {
        Self { y: [-self.y[0], -self.y[1], -self.y[2]], u: -self.u }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { y: [s * self.y[0], s * self.y[1], s * self.y[2]], u: s * self.u }
    }

    /// Orthonormal frame `(e₁, e₂, ŷ)` used for azimuths.  With `a = 0` the
    /// axis defaults to x₃.
    pub fn frame(&self) -> [Vector3<f64>; 3] {
        axis_frame(self.y_hat().unwrap_or_else(Vector3::z))
    }
}

/// Right-handed orthonormal frame whose third vector is `n`.
pub fn axis_frame(n: Vector3<f64>) -> [Vector3<f64>; 3] {
    // Seed with the coordinate axis least aligned with n.
    let seed = if n.x.abs() <= n.y.abs() && n.x.abs() <= n.z.abs() {
        Vector3::x()
    } else if n.y.abs() <= n.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let e1 = (seed - n * n.dot(&seed)).normalize();
    let e2 = n.cross(&e1);
    [e1, e2, n]
}

/// `r̃ = p − iq` together with the cylindrical coordinates of `x` about `ŷ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexDistance {
    pub p: f64,
    pub q: f64,
    pub rho: f64,
    pub xi: f64,
    pub phi: f64,
    pub r: f64,
    pub a: f64,
}

impl ComplexDistance {
    pub fn rt(&self) -> Complex64 {
        Complex64::new(self.p, -self.q)
    }

    /// `|r̃|² = p² + q²`.
    pub fn norm_sqr(&self) -> f64 {
        self.p * self.p + self.q * self.q
    }
}

fn singular_threshold(a: f64) -> f64 {
    1e-13 * a.max(1.0)
}

/// Cylindrical coordinates of `x` about the source axis: `(ρ, ξ, φ)`.
pub fn cylindrical(x: &Vector3<f64>, y: &SourcePoint) -> (f64, f64, f64) {
    let [e1, e2, n] = y.frame();
    let xi = x.dot(&n);
    let rho = x.cross(&n).norm();
    let phi = x.dot(&e2).atan2(x.dot(&e1));
    (rho, xi, phi)
}

/// `(p, q)` from cylindrical coordinates, without the singularity check.
pub fn pq_from_cylindrical(rho: f64, xi: f64, a: f64) -> (f64, f64) {
    if a == 0.0 {
        return (rho.hypot(xi), 0.0);
    }
    // w = r² − a² with the cancellation near the branch circle kept exact.
    let w = (rho - a) * (rho + a) + xi * xi;
    let m = w.hypot(2.0 * a * xi);
    if xi == 0.0 {
        return if w >= 0.0 { (w.sqrt(), 0.0) } else { (0.0, (-w).sqrt()) };
    }
    if w >= 0.0 {
        let p = (0.5 * (m + w)).sqrt();
        (p, a * xi / p)
    } else {
        let q = (0.5 * (m - w)).sqrt().copysign(xi);
        (a * xi / q, q)
    }
}

/// Complex distance `r̃` from the source `iy` to the real point `x`.
pub fn complex_distance(x: &Vector3<f64>, y: &SourcePoint) -> Result<ComplexDistance> {
    let a = y.a();
    let (rho, xi, phi) = cylindrical(x, y);
    let (p, q) = pq_from_cylindrical(rho, xi, a);
    let out = ComplexDistance { p, q, rho, xi, phi, r: x.norm(), a };
    if out.norm_sqr().sqrt() < singular_threshold(a) {
        return Err(Error::Singular(out.norm_sqr().sqrt()));
    }
    Ok(out)
}

/// Inverse of [`complex_distance`]: the real point with OS coordinates `(p, q, φ)`.
pub fn from_os(p: f64, q: f64, phi: f64, y: &SourcePoint) -> Result<Vector3<f64>> {
    let a = y.a();
    if a == 0.0 {
        return Err(Error::Degenerate("OS coordinates need a > 0".into()));
    }
    if p < 0.0 || q.abs() > a {
        return Err(Error::InvalidInput(format!("need p >= 0 and |q| <= a, got p = {p}, q = {q}, a = {a}")));
    }
    let xi = p * q / a;
    let rho = ((p * p + a * a) * (a - q) * (a + q)).sqrt() / a;
    let [e1, e2, n] = y.frame();
    Ok((e1 * phi.cos() + e2 * phi.sin()) * rho + n * xi)
}

/// Gradients and Laplacians of `p` and `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OsFrame {
    pub grad_p: Vector3<f64>,
    pub grad_q: Vector3<f64>,
    pub lap_p: f64,
    pub lap_q: f64,
}

pub fn os_frame(x: &Vector3<f64>, y: &SourcePoint) -> Result<OsFrame> {
    let cd = complex_distance(x, y)?;
    let yv = y.y_vec();
    let n2 = cd.norm_sqr();
    Ok(OsFrame {
        grad_p: (x * cd.p + yv * cd.q) / n2,
        grad_q: (yv * cd.p - x * cd.q) / n2,
        lap_p: 2.0 * cd.p / n2,
        lap_q: -2.0 * cd.q / n2,
    })
}

/// Far-zone approximation `(p, q) ≈ (r, a cos θ)`.
pub fn far_zone(x: &Vector3<f64>, y: &SourcePoint) -> Result<(f64, f64)> {
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::InvalidInput("far zone needs r > 0".into()));
    }
    let (_, xi, _) = cylindrical(x, y);
    Ok((r, y.a() * xi / r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_axis() -> SourcePoint {
        SourcePoint::on_axis(1.0, 2.0)
    }

    #[test]
    fn on_axis_point() {
        let cd = complex_distance(&Vector3::new(0.0, 0.0, 2.0), &on_axis()).unwrap();
        assert_eq!((cd.p, cd.q), (2.0, 1.0));
    }

    #[test]
    fn euclidean_when_a_vanishes() {
        let y = SourcePoint::new([0.0; 3], 1.0);
        let cd = complex_distance(&Vector3::new(1.0, 2.0, 2.0), &y).unwrap();
        assert_eq!((cd.p, cd.q), (3.0, 0.0));
    }

    #[test]
    fn disk_point_takes_upper_layer() {
        let x = Vector3::new(0.5, 0.0, 0.0);
        let cd = complex_distance(&x, &on_axis()).unwrap();
        assert_eq!(cd.p, 0.0);
        assert!((cd.q - 0.75f64.sqrt()).abs() < 1e-15);
        // Same value as the principal root just above the disk.
        let above = complex_distance(&Vector3::new(0.5, 0.0, 1e-9), &on_axis()).unwrap();
        assert!((above.q - cd.q).abs() < 1e-8);
        let below = complex_distance(&Vector3::new(0.5, 0.0, -1e-9), &on_axis()).unwrap();
        assert!((below.q + cd.q).abs() < 1e-8);
    }

    #[test]
    fn branch_circle_is_singular() {
        assert!(matches!(
            complex_distance(&Vector3::new(1.0, 0.0, 0.0), &on_axis()),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn from_os_examples() {
        let x = from_os(2.0, 1.0, 0.0, &on_axis()).unwrap();
        assert!((x - Vector3::new(0.0, 0.0, 2.0)).norm() < 1e-15);
        let x = from_os(0.0, 0.0, 0.0, &on_axis()).unwrap();
        assert!((x.norm() - 1.0).abs() < 1e-15 && x.z == 0.0);
        assert!(from_os(1.0, 1.5, 0.0, &on_axis()).is_err());
    }

    #[test]
    fn agrees_with_complex_sqrt_off_the_plane() {
        let y = SourcePoint::new([0.3, -0.2, 0.8], 2.0);
        let x = Vector3::new(0.7, 0.1, -0.4);
        let cd = complex_distance(&x, &y).unwrap();
        let w = Complex64::new(x.norm_squared() - y.a().powi(2), -2.0 * x.dot(&y.y_vec()));
        assert!((cd.rt() - w.sqrt()).norm() < 1e-15);
    }

    #[test]
    fn far_zone_approximation() {
        let y = on_axis();
        let th = std::f64::consts::FRAC_PI_4;
        // The remainder is a² sin²θ / 2r in p.
        for (r, tol) in [(100.0, 3e-3), (1000.0, 3e-4)] {
            let x = Vector3::new(th.sin(), 0.0, th.cos()) * r;
            let cd = complex_distance(&x, &y).unwrap();
            let (pr, qr) = far_zone(&x, &y).unwrap();
            assert!((cd.p - pr).abs() <= tol && (cd.q - qr).abs() <= tol);
        }
        let (_, q) = far_zone(&Vector3::new(0.0, 0.0, 7.0), &y).unwrap();
        assert_eq!(q, 1.0);
    }

    #[test]
    fn on_axis_frame_has_unit_grad_p() {
        let f = os_frame(&Vector3::new(0.0, 0.0, 2.0), &on_axis()).unwrap();
        assert!((f.grad_p.norm_squared() - 1.0).abs() < 1e-15);
        assert!(f.grad_q.norm_squared() < 1e-30);
    }
}
