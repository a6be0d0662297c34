//! Scalar pulsed beams in closed form.
//!
//! The retarded and advanced propagators of the wave equation extend to
//! complex spacetime `z = x − iy` as
//!
//! ```text
//! D̃±(z) = 1 / (8iπ² r̃ (τ ∓ r̃)),   τ = t − iu,
//! ```
//!
//! finite whenever `|u| > a`.  A source driven by `g₀` radiates
//! `W = g(τ − r̃)/(4πr̃)`; the impulse drive gives back `D̃⁺`.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{axis_frame, complex_distance, ComplexDistance, SourcePoint};
use crate::numerics::{extrapolate_to_zero, gauss_legendre, integrate_with_breaks, QuadratureSpec};
use crate::signals::{ast, DrivingSignal};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Retarded (`+`) or advanced (`−`) branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Causality {
    Retarded,
    Advanced,
}

impl Causality {
    fn sign(self) -> f64 {
        match self {
            Causality::Retarded => 1.0,
            Causality::Advanced => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Causality::Retarded => Causality::Advanced,
            Causality::Advanced => Causality::Retarded,
        }
    }
}

/// Complex spacetime point `z = (x⃗ − iy⃗, t − iu)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexSpacetimePoint {
    pub x: Vector3<f64>,
    pub t: f64,
    pub y: SourcePoint,
}

impl ComplexSpacetimePoint {
    pub fn new(x: Vector3<f64>, t: f64, y: SourcePoint) -> Self {
        Self { x, t, y }
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.t, -self.y.u)
    }

    /// `−z`.
    pub fn negated(&self) -> Self {
        Self { x: -self.x, t: -self.t, y: self.y.negated() }
    }

    /// `z*`: the same real part with the imaginary part reversed.
    pub fn conj(&self) -> Self {
        Self { x: self.x, t: self.t, y: self.y.negated() }
    }

    /// `z / s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self { x: self.x / s, t: self.t / s, y: self.y.scaled(1.0 / s) }
    }

    /// Complex distance, requiring the causal tube `|u| > a`.
    pub fn distance(&self) -> Result<ComplexDistance> {
        if !self.y.is_timelike() {
            return Err(Error::NotTimelike { u: self.y.u, a: self.y.a() });
        }
        complex_distance(&self.x, &self.y)
    }

    /// Lorentz square `z² = r̃² − τ²`.
    pub fn square(&self) -> Complex64 {
        let zx = self.x.map(|v| Complex64::new(v, 0.0)) - self.y.y_vec().map(|v| Complex64::new(0.0, v));
        let tau = self.tau();
        zx.dot(&zx) - tau * tau
    }
}

/// `D̃±` from an explicit root `r̃` (either branch) and complex time.
pub fn propagator_from_parts(rt: Complex64, tau: Complex64, which: Causality) -> Complex64 {
    1.0 / (8.0 * I * PI * PI * rt * (tau - which.sign() * rt))
}

/// Extended retarded or advanced propagator `D̃±(z)`.
pub fn extended_propagator(z: &ComplexSpacetimePoint, which: Causality) -> Result<Complex64> {
    let cd = z.distance()?;
    Ok(propagator_from_parts(cd.rt(), z.tau(), which))
}

/// `G₄(z) = 1/(4π² z²)`.
pub fn g4(z: &ComplexSpacetimePoint) -> Complex64 {
    1.0 / (4.0 * PI * PI * z.square())
}

/// Driven beam `W(z) = g(τ − r̃)/(4πr̃)`.
pub fn driven_beam(z: &ComplexSpacetimePoint, signal: &DrivingSignal) -> Result<Complex64> {
    let rt = z.distance()?.rt();
    let g = ast(signal, z.tau() - rt)?.g;
    Ok(g / (4.0 * PI * rt))
}

/// Time-harmonic complex-source beam `B_ω = e^{iωr̃}/(4πr̃)`.
pub fn harmonic_beam(x: &Vector3<f64>, y: &SourcePoint, omega: f64) -> Result<Complex64> {
    let rt = complex_distance(x, y)?.rt();
    Ok((I * omega * rt).exp() / (4.0 * PI * rt))
}

/// ν-wavelet and its retarded/advanced parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NuWavelet {
    pub psi: Complex64,
    pub plus: Complex64,
    pub minus: Complex64,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn nu_parts_forward(rt: Complex64, tau: Complex64, nu: u32) -> (Complex64, Complex64) {
    let c = I * factorial(nu) / (8.0 * PI * PI * rt);
    let e = -(nu as i32 + 1);
    // u + i(t ∓ r̃) = i(τ ∓ r̃)
    let plus = c * (I * (tau - rt)).powi(e);
    let minus = -c * (I * (tau + rt)).powi(e);
    (plus, minus)
}

/// `Ψ = (−∂ᵤ)^ν G` with `G = −1/(4π²z²)`, split into `Ψ⁺ + Ψ⁻`.
///
/// In the backward tube the parts are mirrored, `Ψ±(z) = −Ψ∓(−z)`.
pub fn nu_wavelet(z: &ComplexSpacetimePoint, nu: u32) -> Result<NuWavelet> {
    let rt = z.distance()?.rt();
    let (plus, minus) = if z.y.u > 0.0 {
        nu_parts_forward(rt, z.tau(), nu)
    } else {
        let (p, m) = nu_parts_forward(rt, -z.tau(), nu);
        (-m, -p)
    };
    Ok(NuWavelet { psi: plus + minus, plus, minus })
}

/// Peak magnitude of the Cauchy factor along the direction at angle `θ` from
/// `ŷ` in the far zone, `R(θ) = 1/(2π|u − a cos θ|)`.
pub fn peak_pattern(theta: f64, y: &SourcePoint) -> f64 {
    1.0 / (2.0 * PI * (y.u - y.a() * theta.cos()).abs())
}

/// Cauchy factor `C(τ − r̃) = 1/(2π((u − q) + i(t − p)))`.
pub fn cauchy_factor(z: &ComplexSpacetimePoint) -> Result<Complex64> {
    let cd = z.distance()?;
    Ok(1.0 / (2.0 * PI * Complex64::new(z.y.u - cd.q, z.t - cd.p)))
}

/// Compactly supported smooth bump in spacetime,
/// `F = A exp(1 − 1/(1 − d²/R²))` with `d` the Euclidean 4-distance to the centre.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeBump {
    pub center: [f64; 3],
    pub t0: f64,
    pub radius: f64,
    pub amplitude: f64,
}

impl SpacetimeBump {
    pub fn value(&self, x: &Vector3<f64>, t: f64) -> f64 {
        let d2 = (x - Vector3::from(self.center)).norm_squared() + (t - self.t0).powi(2);
        let s = d2 / (self.radius * self.radius);
        if s >= 1.0 {
            0.0
        } else {
            self.amplitude * (1.0 - 1.0 / (1.0 - s)).exp()
        }
    }
}

/// One smeared value of the Plemelj difference at a given ε.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeValue {
    pub eps: f64,
    pub value: Complex64,
    pub error: f64,
}

/// Sequence of smeared Plemelj differences with its extrapolation to ε = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSeries {
    pub values: Vec<ProbeValue>,
    pub extrapolated: Complex64,
    pub extrapolation_error: f64,
}

/// Node counts for the spatial part of [`minkowski_limit_probe`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeResolution {
    pub radial: usize,
    pub polar: usize,
    pub azimuthal: usize,
}

impl Default for ProbeResolution {
    fn default() -> Self {
        Self { radial: 24, polar: 24, azimuthal: 24 }
    }
}

/// Smears `D̃(· − iεy) − D̃(· + iεy)` against a spacetime bump for each ε.
///
/// The time integral is adaptive (it resolves the near-pole of width ~ε at
/// `t ≈ ±r`); space is integrated with a product Gauss rule in spherical
/// coordinates about the bump centre.  The values converge as ε → 0 to
/// `∫ F(x⃗, ±r)/(4πr) d³x`.
pub fn minkowski_limit_probe(
    bump: &SpacetimeBump,
    y: &SourcePoint,
    eps_list: &[f64],
    which: Causality,
    res: ProbeResolution,
) -> Result<ProbeSeries> {
    if !(y.is_timelike() && y.u > 0.0) {
        return Err(Error::NotTimelike { u: y.u, a: y.a() });
    }
    if eps_list.iter().any(|&e| !(e > 0.0)) || eps_list.is_empty() {
        return Err(Error::InvalidInput("ε values must be positive".into()));
    }
    let (sx, sw) = gauss_legendre(res.radial);
    let (cx, cw) = gauss_legendre(res.polar);
    let frame = axis_frame(Vector3::z());
    let center = Vector3::from(bump.center);
    let big_r = bump.radius;
    let spec = QuadratureSpec::new(1e-10, 1e-15).with_max_subdivisions(4000);

    let mut values = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let below = y.scaled(eps);
        let above = y.scaled(-eps);
        let partial: Result<Vec<(Complex64, f64)>> = (0..res.radial)
            .into_par_iter()
            .map(|i| {
                let s = 0.5 * big_r * (sx[i] + 1.0);
                let ws = 0.5 * big_r * sw[i] * s * s;
                let half = (big_r * big_r - s * s).max(0.0).sqrt();
                let mut acc = Complex64::new(0.0, 0.0);
                let mut err = 0.0;
                for (&ct, &wc) in cx.iter().zip(&cw) {
                    let st = (1.0 - ct * ct).sqrt();
                    for k in 0..res.azimuthal {
                        let ph = 2.0 * PI * (k as f64 + 0.5) / res.azimuthal as f64;
                        let wph = 2.0 * PI / res.azimuthal as f64;
                        let dir = frame[0] * (st * ph.cos()) + frame[1] * (st * ph.sin()) + frame[2] * ct;
                        let x = center + dir * s;
                        let mut f = |t: f64| -> Complex64 {
                            let fv = bump.value(&x, t);
                            if fv == 0.0 {
                                return Complex64::new(0.0, 0.0);
                            }
                            let zb = ComplexSpacetimePoint::new(x, t, below);
                            let za = ComplexSpacetimePoint::new(x, t, above);
                            let d = extended_propagator(&zb, which).unwrap_or_default()
                                - extended_propagator(&za, which).unwrap_or_default();
                            d * fv
                        };
                        let (t0, t1) = (bump.t0 - half, bump.t0 + half);
                        let pole = which.sign() * x.norm();
                        let mut breaks = vec![t0, t1];
                        for b in [pole - 20.0 * eps, pole, pole + 20.0 * eps] {
                            if b > t0 && b < t1 {
                                breaks.push(b);
                            }
                        }
                        breaks.sort_by(f64::total_cmp);
                        let q = integrate_with_breaks(&mut f, &breaks, &spec)?;
                        let w = ws * wc * wph;
                        acc += q.value * w;
                        err += q.error * w.abs();
                    }
                }
                Ok((acc, err))
            })
            .collect();
        let partial = partial?;
        let value = partial.iter().map(|p| p.0).sum();
        let error = partial.iter().map(|p| p.1).sum();
        values.push(ProbeValue { eps, value, error });
    }
    let hs: Vec<f64> = values.iter().map(|v| v.eps).collect();
    let ys: Vec<Complex64> = values.iter().map(|v| v.value).collect();
    let (extrapolated, extrapolation_error) = extrapolate_to_zero(&hs, &ys);
    Ok(ProbeSeries { values, extrapolated, extrapolation_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point() -> ComplexSpacetimePoint {
        ComplexSpacetimePoint::new(Vector3::new(0.4, -0.3, 1.2), 0.7, SourcePoint::new([0.1, 0.2, 0.6], 1.1))
    }

    #[test]
    fn impulse_beam_is_retarded_propagator() {
        let z = point();
        let w = driven_beam(&z, &DrivingSignal::Impulse).unwrap();
        let d = extended_propagator(&z, Causality::Retarded).unwrap();
        assert!((w - d).norm() < 1e-12 * d.norm());
    }

    #[test]
    fn static_beam() {
        let z = point();
        let w = driven_beam(&z, &DrivingSignal::Static).unwrap();
        let rt = z.distance().unwrap().rt();
        assert!((w - 1.0 / (8.0 * PI * rt)).norm() < 1e-15);
    }

    #[test]
    fn harmonic_drive_factorizes() {
        let z = point();
        let w0 = 1.7;
        let w = driven_beam(&z, &DrivingSignal::Harmonic { omega0: w0 }).unwrap();
        let g = ast(&DrivingSignal::Harmonic { omega0: w0 }, z.tau()).unwrap().g;
        let b = harmonic_beam(&z.x, &z.y, w0).unwrap();
        assert!((w - g * b).norm() < 1e-12 * w.norm());
    }

    #[test]
    fn harmonic_beam_limits() {
        let y0 = SourcePoint::new([0.0; 3], 1.0);
        let x = Vector3::new(1.0, 2.0, 2.0);
        let b = harmonic_beam(&x, &y0, 1.5).unwrap();
        assert!((b - (I * 4.5).exp() / (12.0 * PI)).norm() < 1e-16);
        let y = SourcePoint::on_axis(1.0, 2.0);
        let b = harmonic_beam(&Vector3::new(0.0, 0.0, 2.0), &y, 1.0).unwrap();
        let rt = Complex64::new(2.0, -1.0);
        assert!((b - (I * rt).exp() / (4.0 * PI * rt)).norm() < 1e-16);
    }

    #[test]
    fn nu_zero_is_g() {
        let z = point();
        let w = nu_wavelet(&z, 0).unwrap();
        let g = -1.0 / (4.0 * PI * PI * z.square());
        assert!((w.psi - g).norm() < 1e-12 * g.norm());
        let zm = z.negated();
        let wm = nu_wavelet(&zm, 0).unwrap();
        assert!((wm.psi + w.psi).norm() < 1e-12 * g.norm());
        assert!((wm.plus + w.minus).norm() < 1e-12 * g.norm());
    }

    #[test]
    fn nu_one_is_u_derivative() {
        let z = point();
        let h = 1e-4;
        let mut zp = z;
        zp.y.u += h;
        let mut zm = z;
        zm.y.u -= h;
        let d = -(nu_wavelet(&zp, 0).unwrap().psi - nu_wavelet(&zm, 0).unwrap().psi) / (2.0 * h);
        let w1 = nu_wavelet(&z, 1).unwrap().psi;
        assert!((d - w1).norm() < 1e-6 * w1.norm());
    }

    #[test]
    fn pattern_values() {
        let y = SourcePoint::on_axis(1.0, 1.5);
        assert!((peak_pattern(0.0, &y) - 1.0 / PI).abs() < 1e-15);
        // 1/R is affine in cos θ with slope −2πa.
        let f = |c: f64| 1.0 / peak_pattern(c.acos(), &y);
        assert!(((f(0.5) - f(-0.5)) - (-2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn rejects_spacelike_source() {
        let z = ComplexSpacetimePoint::new(Vector3::new(0.0, 0.0, 2.0), 0.0, SourcePoint::on_axis(1.0, 0.5));
        assert!(matches!(extended_propagator(&z, Causality::Retarded), Err(Error::NotTimelike { .. })));
    }
}
