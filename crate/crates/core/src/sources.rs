//! Source distributions of complex point sources, applied to test functions.
//!
//! The driven beam `W` is sourced by `S = −□W`, a distribution carried by the
//! branch disk of radius `a`.  Two equivalent routes are implemented:
//!
//! * the *shielded* source on the spheroid `p = εa`, which radiates the same
//!   exterior field ([`shielded_source_apply`]);
//! * the *bare* source on the disk itself, a point term at the origin plus a
//!   disk integral weighted by the jump average `g̃` ([`bare_source_apply`]).
//!
//! Test-function averages over the azimuth about `ŷ` enter throughout; they
//! are computed with the periodic trapezoidal rule, refined until two
//! successive levels agree.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{from_os, SourcePoint};
use crate::numerics::{integrate_with_breaks, QuadratureSpec};
use crate::signals::{ast, g_tilde, DrivingSignal};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// A smooth spatial test function with its gradient and Laplacian.
pub trait TestFunction: Sync {
    fn value(&self, x: &Vector3<f64>) -> Complex64;
    fn grad(&self, x: &Vector3<f64>) -> Vector3<Complex64>;
    fn laplacian(&self, x: &Vector3<f64>) -> Complex64;
    /// Ball `(centre, radius)` outside which the function vanishes (to double
    /// precision); `None` for functions without compact support.
    fn support(&self) -> Option<(Vector3<f64>, f64)>;
}

/// Built-in test functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CatalogFunction {
    /// `A exp(−|x − c|²/2σ²)`, treated as vanishing beyond 9σ.
    GaussianBump { center: [f64; 3], width: f64, amplitude: f64 },
    /// `(c₀ + g·(x − c)) exp(1 − 1/(1 − |x − c|²/R²))` inside the ball of radius R.
    PolyBump { center: [f64; 3], radius: f64, constant: f64, slope: [f64; 3] },
    /// `e^{−ik⃗·x⃗}`.
    PlaneWave { k: [f64; 3] },
    /// `f ≡ 1`.
    Constant,
}

impl CatalogFunction {
    fn bump_parts(&self, x: &Vector3<f64>) -> Option<(f64, Vector3<f64>, f64)> {
        // Value, gradient and Laplacian of the scalar bump factor.
        match self {
            CatalogFunction::PolyBump { center, radius, .. } => {
                let d = x - Vector3::from(*center);
                let r2 = radius * radius;
                let s = d.norm_squared() / r2;
                if s >= 1.0 {
                    return Some((0.0, Vector3::zeros(), 0.0));
                }
                let w = 1.0 / (1.0 - s);
                let b = (1.0 - w).exp();
                let bs = -b * w * w;
                let bss = b * (w.powi(4) - 2.0 * w.powi(3));
                let grad_s = d * (2.0 / r2);
                let lap = bss * grad_s.norm_squared() + bs * 6.0 / r2;
                Some((b, grad_s * bs, lap))
            }
            _ => None,
        }
    }
}

impl TestFunction for CatalogFunction {
    fn value(&self, x: &Vector3<f64>) -> Complex64 {
        match self {
            CatalogFunction::GaussianBump { center, width, amplitude } => {
                let d2 = (x - Vector3::from(*center)).norm_squared();
                c(amplitude * (-d2 / (2.0 * width * width)).exp())
            }
            CatalogFunction::PolyBump { center, constant, slope, .. } => {
                let (b, _, _) = self.bump_parts(x).unwrap();
                let d = x - Vector3::from(*center);
                c((constant + Vector3::from(*slope).dot(&d)) * b)
            }
            CatalogFunction::PlaneWave { k } => (-I * Vector3::from(*k).dot(x)).exp(),
            CatalogFunction::Constant => c(1.0),
        }
    }

    fn grad(&self, x: &Vector3<f64>) -> Vector3<Complex64> {
        match self {
            CatalogFunction::GaussianBump { center, width, .. } => {
                let d = x - Vector3::from(*center);
                let f = self.value(x);
                d.map(|v| f * (-v / (width * width)))
            }
            CatalogFunction::PolyBump { center, constant, slope, .. } => {
                let (b, gb, _) = self.bump_parts(x).unwrap();
                let d = x - Vector3::from(*center);
                let g = Vector3::from(*slope);
                let pv = constant + g.dot(&d);
                (g * b + gb * pv).map(c)
            }
            CatalogFunction::PlaneWave { k } => {
                let f = self.value(x);
                Vector3::from(*k).map(|v| -I * v * f)
            }
            CatalogFunction::Constant => Vector3::zeros(),
        }
    }

    fn laplacian(&self, x: &Vector3<f64>) -> Complex64 {
        match self {
            CatalogFunction::GaussianBump { center, width, .. } => {
                let d2 = (x - Vector3::from(*center)).norm_squared();
                let s2 = width * width;
                self.value(x) * (d2 / (s2 * s2) - 3.0 / s2)
            }
            CatalogFunction::PolyBump { center, constant, slope, .. } => {
                let (b, gb, lb) = self.bump_parts(x).unwrap();
                let _ = b;
                let d = x - Vector3::from(*center);
                let g = Vector3::from(*slope);
                let pv = constant + g.dot(&d);
                c(pv * lb + 2.0 * g.dot(&gb))
            }
            CatalogFunction::PlaneWave { k } => self.value(x) * (-Vector3::from(*k).norm_squared()),
            CatalogFunction::Constant => c(0.0),
        }
    }

    fn support(&self) -> Option<(Vector3<f64>, f64)> {
        match self {
            CatalogFunction::GaussianBump { center, width, .. } => Some((Vector3::from(*center), 9.0 * width)),
            CatalogFunction::PolyBump { center, radius, .. } => Some((Vector3::from(*center), *radius)),
            _ => None,
        }
    }
}

/// Smeared value with its accumulated quadrature error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmearResult {
    pub value: Complex64,
    pub quadrature_error: f64,
}

/// Shielded-source smear, with the two pole terms left by the integration
/// by parts reported separately from the surface integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShieldedSmear {
    pub value: Complex64,
    pub poles: Complex64,
    pub surface: Complex64,
    pub quadrature_error: f64,
}

/// Azimuthal average of `f` and its cylindrical partials about `ŷ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CylindricalMean {
    pub f: Complex64,
    pub f_rho: Complex64,
    pub f_xi: Complex64,
}

const MEAN_TOL: f64 = 1e-14;
const MEAN_MAX_NODES: usize = 8192;

/// `(f̄, ∂ρ f̄, ∂ξ f̄)` at cylindrical position `(ρ, ξ)`.
pub fn cylindrical_mean(f: &dyn TestFunction, rho: f64, xi: f64, y: &SourcePoint) -> CylindricalMean {
    let [e1, e2, n] = y.frame();
    let sample = |phi: f64| -> [Complex64; 3] {
        let dir = e1 * phi.cos() + e2 * phi.sin();
        let x = dir * rho + n * xi;
        let g = f.grad(&x);
        let dirc = dir.map(c);
        let nc = n.map(c);
        [f.value(&x), g.dot(&dirc), g.dot(&nc)]
    };
    if rho == 0.0 {
        let s = sample(0.0);
        // The radial derivative of an azimuthal mean vanishes on the axis.
        return CylindricalMean { f: s[0], f_rho: c(0.0), f_xi: s[2] };
    }
    let mut n_nodes = 8usize;
    let mut sum = [c(0.0); 3];
    for k in 0..n_nodes {
        let s = sample(2.0 * PI * k as f64 / n_nodes as f64);
        for j in 0..3 {
            sum[j] += s[j];
        }
    }
    let mut mean = sum.map(|v| v / n_nodes as f64);
    while n_nodes < MEAN_MAX_NODES {
        // Midpoints double the rule while reusing all previous nodes.
        for k in 0..n_nodes {
            let s = sample(2.0 * PI * (k as f64 + 0.5) / n_nodes as f64);
            for j in 0..3 {
                sum[j] += s[j];
            }
        }
        n_nodes *= 2;
        let next = sum.map(|v| v / n_nodes as f64);
        let scale = next.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let diff = (0..3).map(|j| (next[j] - mean[j]).norm()).fold(0.0, f64::max);
        mean = next;
        if diff <= MEAN_TOL * scale {
            break;
        }
    }
    CylindricalMean { f: mean[0], f_rho: mean[1], f_xi: mean[2] }
}

/// Azimuthal average in OS coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AzimuthalMean {
    pub f: Complex64,
    pub f_p: Complex64,
    pub f_q: Complex64,
}

/// `(f̄, ∂p f̄, ∂q f̄)` at OS coordinates `(p, q)`, by the chain rule through
/// `∂p = (pρ/(p²+a²))∂ρ + (q/a)∂ξ`, `∂q = −((p²+a²)q/(a²ρ))∂ρ + (p/a)∂ξ`.
pub fn azimuthal_mean(f: &dyn TestFunction, p: f64, q: f64, y: &SourcePoint) -> Result<AzimuthalMean> {
    let a = y.a();
    let x = from_os(p, q, 0.0, y)?;
    let [_, _, n] = y.frame();
    let xi = x.dot(&n);
    let rho = (x - n * xi).norm();
    let m = cylindrical_mean(f, rho, xi, y);
    let s2 = p * p + a * a;
    let f_p = m.f_rho * (p * rho / s2) + m.f_xi * (q / a);
    let f_rho_over_rho = if rho > 1e-6 * a {
        m.f_rho / rho
    } else {
        // On the axis ∂ρ f̄ / ρ → ½ Δ⊥ f, taken at a small offset.
        let r = 1e-4 * a;
        cylindrical_mean(f, r, xi, y).f_rho / r
    };
    let f_q = -f_rho_over_rho * (s2 * q / (a * a)) + m.f_xi * (p / a);
    Ok(AzimuthalMean { f: m.f, f_p, f_q })
}

fn source_spec() -> QuadratureSpec {
    QuadratureSpec::new(1e-12, 1e-15).with_max_subdivisions(4000)
}

fn check_tube(y: &SourcePoint) -> Result<f64> {
    let a = y.a();
    if !y.is_timelike() {
        return Err(Error::NotTimelike { u: y.u, a });
    }
    if a == 0.0 {
        return Err(Error::Degenerate("disk sources need a > 0".into()));
    }
    Ok(a)
}

/// `⟨S_ε, f⟩` for the source on the spheroid `p = εa`.
///
/// ```text
/// ⟨S_ε, f⟩ = (|α|²/2a) [g f̄/(i r̃)] from r̃ = α* to α  +  (|α|²/a) ∫ dq g f̄_r̃ / r̃,
/// α = εa − ia,   2 f̄_r̃ = f̄_p + i f̄_q,   g = g(τ − r̃).
/// ```
///
/// The `q` integral runs over `q = a cos γ`, which absorbs the `1/ρ` in
/// `∂q` near the poles.
pub fn shielded_source_apply(
    f: &dyn TestFunction,
    y: &SourcePoint,
    signal: &DrivingSignal,
    t: f64,
    eps: f64,
) -> Result<ShieldedSmear> {
    let a = check_tube(y)?;
    if !(eps > 0.0) {
        return Err(Error::InvalidInput("ε must be positive".into()));
    }
    let tau = Complex64::new(t, -y.u);
    let p = eps * a;
    let s2 = p * p + a * a;
    let s = s2.sqrt();
    let alpha2 = s2;

    let pole = |q: f64| -> Result<Complex64> {
        let rt = Complex64::new(p, -q);
        let xi = p * q / a;
        let m = cylindrical_mean(f, 0.0, xi, y);
        let g = ast(signal, tau - rt)?.g;
        Ok(g * m.f / (I * rt))
    };
    let poles = (alpha2 / (2.0 * a)) * (pole(a)? - pole(-a)?);

    let mut failure = None;
    let mut integrand = |gam: f64| -> Complex64 {
        let (sg, cg) = gam.sin_cos();
        let q = a * cg;
        let rho = s * sg;
        let xi = p * cg;
        let m = cylindrical_mean(f, rho, xi, y);
        // a sin γ ∂p f̄ and a sin γ ∂q f̄.
        let fp = m.f_rho * (a * sg * p * rho / s2) + m.f_xi * (sg * q);
        let fq = -m.f_rho * (s * q / a) + m.f_xi * (p * sg);
        let rt = Complex64::new(p, -q);
        match ast(signal, tau - rt) {
            Ok(v) => v.g * (fp + I * fq) / (2.0 * rt),
            Err(e) => {
                failure.get_or_insert(e);
                c(0.0)
            }
        }
    };
    let breaks = [0.0, FRAC_PI_2, PI];
    let quad = integrate_with_breaks(&mut integrand, &breaks, &source_spec())?;
    if let Some(e) = failure {
        return Err(e);
    }
    let surface = quad.value * (alpha2 / a);
    Ok(ShieldedSmear {
        value: poles + surface,
        poles,
        surface,
        quadrature_error: quad.error * alpha2 / a,
    })
}

// g̃(τ, a) f(0) + ∫₀^{π/2} dγ g̃(τ, a cos γ) [a ∂ρ f̄ + i a sin γ ∂ξ f̄] at (ρ, ξ) = (a sin γ, 0),
// the disk integral in the variable q = a cos γ.
fn disk_apply(
    f: &dyn TestFunction,
    y: &SourcePoint,
    a: f64,
    gt: &dyn Fn(f64) -> Result<Complex64>,
) -> Result<SmearResult> {
    let f0 = f.value(&Vector3::zeros());
    let point = gt(a)? * f0;
    let mut failure = None;
    let mut integrand = |gam: f64| -> Complex64 {
        let (sg, cg) = gam.sin_cos();
        let m = cylindrical_mean(f, a * sg, 0.0, y);
        match gt(a * cg) {
            Ok(w) => w * (m.f_rho * a + I * (a * sg) * m.f_xi),
            Err(e) => {
                failure.get_or_insert(e);
                c(0.0)
            }
        }
    };
    let quad = integrate_with_breaks(&mut integrand, &[0.0, FRAC_PI_2], &source_spec())?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(SmearResult { value: point + quad.value, quadrature_error: quad.error })
}

/// `⟨S, f⟩` for the bare source supported on the branch disk.
pub fn bare_source_apply(f: &dyn TestFunction, y: &SourcePoint, signal: &DrivingSignal, t: f64) -> Result<SmearResult> {
    let a = check_tube(y)?;
    let tau = Complex64::new(t, -y.u);
    disk_apply(f, y, a, &|q| g_tilde(signal, tau, q))
}

/// Event source: the bare source driven by an impulse.
pub fn event_source_apply(f: &dyn TestFunction, y: &SourcePoint, t: f64) -> Result<SmearResult> {
    bare_source_apply(f, y, &DrivingSignal::Impulse, t)
}

/// Unit static source `δ̃₃` (total strength one).
///
/// The static drive `g₀ ≡ 1` has `g̃ = ū/2`, so `δ̃₃` is `2ū` times its bare
/// source; equivalently `g̃ ≡ 1` below.
pub fn static_source_apply(f: &dyn TestFunction, y: &SourcePoint) -> Result<SmearResult> {
    let a = check_tube(y)?;
    disk_apply(f, y, a, &|_| Ok(c(1.0)))
}

/// Time-harmonic source `e^{−iωt}`-driven.
pub fn harmonic_source_apply(f: &dyn TestFunction, y: &SourcePoint, t: f64, omega: f64) -> Result<SmearResult> {
    bare_source_apply(f, y, &DrivingSignal::Harmonic { omega0: omega }, t)
}

/// One-dimensional analogue `δ̃₁ = δ(x) − iyδ′(x)`: `⟨δ̃₁, f⟩ = f(0) + iy f′(0)`.
pub fn delta1_apply(f0: Complex64, f1: Complex64, y: f64) -> Complex64 {
    f0 + I * y * f1
}
