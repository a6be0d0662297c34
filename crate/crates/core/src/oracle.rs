//! Reference computations used to certify the closed forms.
//!
//! Each routine here reaches its answer by a different path from the
//! production code (brute-force volume integrals, independent coordinates,
//! direct spectral synthesis) so that agreement is meaningful.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::beams::SpacetimeBump;
use crate::error::{Error, Result};
use crate::geometry::{axis_frame, from_os, SourcePoint};
use crate::numerics::{integrate, j0, j1, QuadratureSpec};
use crate::signals::{ast, DrivingSignal};
use crate::sources::TestFunction;
use crate::spectral::{k_eps_map, AxialSplit};

/// `∫ F(x⃗, σ r)/(4πr) d³x` with `σ = ±1`, by nested adaptive quadrature in
/// spherical coordinates about the origin, polar axis through the bump centre.
pub fn light_cone_shell(bump: &SpacetimeBump, sigma: f64) -> Result<Complex64> {
    let c = Vector3::from(bump.center);
    let dist = c.norm();
    let axis = if dist > 0.0 { c / dist } else { Vector3::z() };
    let [e1, e2, n] = axis_frame(axis);
    let r0 = (dist - bump.radius).max(0.0);
    let r1 = dist + bump.radius;
    let spec = QuadratureSpec::new(1e-11, 1e-16).with_max_subdivisions(4000);
    let q = integrate(
        |r| {
            let inner = integrate(
                |ct| {
                    let st = (1.0 - ct * ct).max(0.0).sqrt();
                    let ph = integrate(
                        |phi| {
                            let x = (e1 * phi.cos() + e2 * phi.sin()) * (r * st) + n * (r * ct);
                            Complex64::new(bump.value(&x, sigma * r), 0.0)
                        },
                        0.0,
                        2.0 * PI,
                        &spec,
                    );
                    ph.map(|q| q.value).unwrap_or_else(|_| Complex64::new(f64::NAN, 0.0))
                },
                -1.0,
                1.0,
                &spec,
            );
            inner.map(|q| q.value * r / (4.0 * PI)).unwrap_or_else(|_| Complex64::new(f64::NAN, 0.0))
        },
        r0,
        r1,
        &spec,
    )?;
    Ok(q.value)
}

/// `∫_{p > εa} (W_tt f − W Δf) d³x`: the shielded source applied to `f` as a
/// plain volume integral of the beam outside the spheroid, in OS coordinates
/// with `d³x = a⁻¹|r̃|² dp dq dφ`.
pub fn shielded_volume(
    f: &dyn TestFunction,
    y: &SourcePoint,
    signal: &DrivingSignal,
    t: f64,
    eps: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let a = y.a();
    let (c, r) = f
        .support()
        .ok_or_else(|| Error::InvalidInput("volume oracle needs a compactly supported test function".into()))?;
    // Points with |x| ≤ P have p ≤ P.
    let p_max = c.norm() + r;
    let p_min = eps * a;
    if p_min >= p_max {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let tau = Complex64::new(t, -y.u);
    let nan = Complex64::new(f64::NAN, 0.0);
    let q = integrate(
        |p| {
            integrate(
                |q| {
                    let rt = Complex64::new(p, -q);
                    let Ok(gv) = ast(signal, tau - rt) else { return nan };
                    let w = gv.g / (4.0 * PI * rt);
                    let wtt = gv.g_second / (4.0 * PI * rt);
                    let jac = rt.norm_sqr() / a;
                    integrate(
                        |phi| match from_os(p, q, phi, y) {
                            Ok(x) => wtt * f.value(&x) - w * f.laplacian(&x),
                            Err(_) => nan,
                        },
                        0.0,
                        2.0 * PI,
                        spec,
                    )
                    .map(|v| v.value * jac)
                    .unwrap_or(nan)
                },
                -a,
                a,
                spec,
            )
            .map(|v| v.value)
            .unwrap_or(nan)
        },
        p_min,
        p_max,
        spec,
    )?;
    if !q.value.is_finite() {
        return Err(Error::QuadratureNotConverged { value: q.value, error: q.error });
    }
    Ok(q.value)
}

/// `I₁, I₂, I₃` of the cancellation identity from their defining integrals:
///
/// ```text
/// I₁ = h_ε a ∫₀^{π/2} cosh(ω_ε a cos γ) J₁(h_ε a sin γ) dγ,    I₂ = a⁻¹ ∂I₁/∂ω_ε,
/// I₃ = l ∫₀^a cosh(ω_ε q) J₀(h_ε √(a² − q²)) dq.
/// ```
pub fn cancellation_integrals(k: &AxialSplit, a: f64, eps: f64) -> Result<[Complex64; 3]> {
    let ke = k_eps_map(k, eps);
    let (w, h) = (ke.omega_eps, ke.h_eps);
    let spec = QuadratureSpec::new(1e-14, 1e-16);
    let i1 = integrate(|g: f64| (w * a * g.cos()).cosh() * j1(h * a * g.sin()), 0.0, PI / 2.0, &spec)?.value * (h * a);
    let i2 = integrate(
        |g: f64| (w * a * g.cos()).sinh() * (a * g.cos()) * j1(h * a * g.sin()),
        0.0,
        PI / 2.0,
        &spec,
    )?
    .value
        * h;
    let i3 = integrate(|q: f64| (w * q).cosh() * j0(h * (a * a - q * q).max(0.0).sqrt()), 0.0, a, &spec)?.value * k.l;
    Ok([i1, i2, i3])
}
