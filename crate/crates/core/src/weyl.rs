//! Angular-spectrum synthesis of the time-harmonic beam.
//!
//! For `ω > 0` and `ξ > 0`, with `ζ = ξ − ia`,
//!
//! ```text
//! U⁺ = i ∫₀^ω đh h/(2√(ω²−h²)) J₀(hρ) e^{iζ√(ω²−h²)}  +  ∫_ω^∞ đh h/(2√(h²−ω²)) J₀(hρ) e^{−ζ√(h²−ω²)}
//! ```
//!
//! reproduces `e^{iωr̃}/(4πr̃)`.  The propagating part is integrated in
//! `h = ω sin α`, the evanescent part in `s = √(h² − ω²)`, which removes
//! both endpoint singularities.  The other sign combinations follow by
//! reflecting or conjugating `z`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{extrapolate_to_zero, integrate, integrate_with_breaks, j0, QuadratureSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Point `(ρ, ξ)` relative to a source of radius `a`, at frequency `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylPoint {
    pub rho: f64,
    pub xi: f64,
    pub a: f64,
    pub omega: f64,
}

impl WeylPoint {
    pub fn new(rho: f64, xi: f64, a: f64, omega: f64) -> Self {
        WeylPoint { rho, xi, a, omega }
    }

    pub fn zeta(&self) -> Complex64 {
        Complex64::new(self.xi, -self.a)
    }

    /// `r̃ = √(ρ² + ζ²)`, principal branch.
    pub fn rt(&self) -> Complex64 {
        (self.rho * self.rho + self.zeta() * self.zeta()).sqrt()
    }

    /// `e^{iωr̃}/(4πr̃)`.
    pub fn closed_form(&self) -> Complex64 {
        let rt = self.rt();
        (I * self.omega * rt).exp() / (4.0 * PI * rt)
    }
}

/// Smallest `|ξ|` accepted for synthesis.
pub fn xi_min(a: f64, omega: f64) -> f64 {
    1e-3 * a.abs().max(1.0 / omega.abs())
}

/// A synthesized value with its two parts and an error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylParts {
    pub value: Complex64,
    pub propagating: Complex64,
    pub evanescent: Complex64,
    /// Quadrature estimates plus the truncated evanescent tail bound.
    pub error: f64,
}

fn weyl_spec() -> QuadratureSpec {
    QuadratureSpec::new(1e-12, 1e-15).with_max_subdivisions(400_000)
}

const TAIL_EXP: f64 = 36.9; // e^{−36.9} < 1e−16

/// `U⁺` at `ω > 0`, `ξ > 0`; `a` may carry a sign (reflected or conjugated points).
pub fn u_plus(p: &WeylPoint) -> Result<WeylParts> {
    if !(p.omega > 0.0) {
        return Err(Error::InvalidInput("U⁺ needs ω > 0".into()));
    }
    if p.rho < 0.0 || !p.rho.is_finite() {
        return Err(Error::InvalidInput("ρ must be a finite non-negative number".into()));
    }
    let min = xi_min(p.a, p.omega);
    if !(p.xi >= min) {
        return Err(Error::InvalidInput(format!("ξ = {} is below ξ_min = {min}", p.xi)));
    }
    let (w, rho, zeta) = (p.omega, p.rho, p.zeta());
    let spec = weyl_spec();

    let prop = integrate(
        |al: f64| {
            let (s, c) = al.sin_cos();
            (w * s / 2.0) * j0(w * rho * s) * (I * zeta * w * c).exp()
        },
        0.0,
        FRAC_PI_2,
        &spec,
    )?;
    let propagating = prop.value * I / (2.0 * PI);

    let evan = evanescent(rho, w, |s| (-zeta * s).exp(), p.xi, p.a.abs(), &spec)?;
    let evanescent = evan.0 / (4.0 * PI);
    let tail = (-TAIL_EXP).exp() / (4.0 * PI * p.xi);
    Ok(WeylParts {
        value: propagating + evanescent,
        propagating,
        evanescent,
        error: prop.error / (2.0 * PI) + evan.1 / (4.0 * PI) + tail,
    })
}

// ∫₀^{s_max} J₀(ρ√(s²+ω²)) kernel(s) ds with s_max = 36.9/decay, on panels
// about one oscillation wide.
fn evanescent(
    rho: f64,
    w: f64,
    kernel: impl Fn(f64) -> Complex64,
    decay: f64,
    freq: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64)> {
    let s_max = TAIL_EXP / decay;
    let width = 2.0 * PI / (rho + freq).max(1e-3 * decay).max(1.0 / s_max);
    let n = ((s_max / width).ceil() as usize).max(1);
    let breaks: Vec<f64> = (0..=n).map(|k| s_max * k as f64 / n as f64).collect();
    let spec = spec.with_max_subdivisions(spec.max_subdivisions.max(4 * n));
    let mut f = |s: f64| j0(rho * (s * s + w * w).sqrt()) * kernel(s);
    let q = integrate_with_breaks(&mut f, &breaks, &spec)?;
    Ok((q.value, q.error))
}

/// Which row of the four-case table a point falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeylComponent {
    /// `ω > 0, ξ > 0`: `U⁺(z)`.
    LargeRight,
    /// `ω > 0, ξ < 0`: `U⁺(−z)`.
    SmallLeft,
    /// `ω < 0, ξ > 0`: `U⁺(z*)*`.
    SmallRight,
    /// `ω < 0, ξ < 0`: `U⁺(−z*)*`.
    LargeLeft,
}

/// Synthesized `B_ω(ρ, ξ − ia)` for either sign of `ω` and `ξ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylValue {
    pub component: WeylComponent,
    pub parts: WeylParts,
}

impl WeylValue {
    pub fn value(&self) -> Complex64 {
        self.parts.value
    }
}

/// Four-case dispatch onto [`u_plus`].
pub fn weyl_eval(rho: f64, xi: f64, a: f64, omega: f64) -> Result<WeylValue> {
    if omega == 0.0 {
        return Err(Error::InvalidInput("ω must be non-zero".into()));
    }
    let min = xi_min(a, omega);
    if !(xi.abs() >= min) {
        return Err(Error::InvalidInput(format!("|ξ| = {} is below ξ_min = {min}", xi.abs())));
    }
    let w = omega.abs();
    // −z flips ζ; z* flips the sign of a.
    let (component, a_eff, conj) = match (omega > 0.0, xi > 0.0) {
        (true, true) => (WeylComponent::LargeRight, a, false),
        (true, false) => (WeylComponent::SmallLeft, -a, false),
        (false, true) => (WeylComponent::SmallRight, -a, true),
        (false, false) => (WeylComponent::LargeLeft, a, true),
    };
    let mut parts = u_plus(&WeylPoint::new(rho, xi.abs(), a_eff, w))?;
    if conj {
        parts.value = parts.value.conj();
        parts.propagating = parts.propagating.conj();
        parts.evanescent = parts.evanescent.conj();
    }
    Ok(WeylValue { component, parts })
}

/// Boundary values on `ξ = 0` from above and below, each extrapolated from
/// synthesized values at `ξ = k ξ_min`, `k = 1…4`.
pub fn boundary_limits(rho: f64, a: f64, omega: f64) -> Result<(Complex64, Complex64)> {
    let m = xi_min(a, omega);
    let hs: Vec<f64> = (1..=4).rev().map(|k| k as f64 * m).collect();
    let side = |sign: f64| -> Result<Complex64> {
        let ys = hs.iter().map(|&h| weyl_eval(rho, sign * h, a, omega).map(|v| v.value())).collect::<Result<Vec<_>>>()?;
        Ok(extrapolate_to_zero(&hs, &ys).0)
    };
    Ok((side(1.0)?, side(-1.0)?))
}

/// Jump of `B_ω` across the branch disk: `iΘ(a−ρ) cosh(ω√(a²−ρ²))/(2π√(a²−ρ²))`.
pub fn jump_closed(rho: f64, a: f64, omega: f64) -> Result<Complex64> {
    if rho == a {
        return Err(Error::Singular(0.0));
    }
    if rho > a {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let d = (a * a - rho * rho).sqrt();
    Ok(I * (omega * d).cosh() / (2.0 * PI * d))
}

/// Spectral value of the jump with its extrapolation error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpSpectral {
    pub value: Complex64,
    pub error: f64,
}

/// Jump from its spectral form `i∫₀^∞ h đh J₀(hρ) sin(μa)/μ`.
///
/// The evanescent tail only converges conditionally, so it is damped by
/// `e^{−δs}` and the damped values are extrapolated to `δ = 0`.  They are
/// analytic in `δ` within `|a − ρ|`, which sets the damping scale.
pub fn jump_spectral(rho: f64, a: f64, omega: f64) -> Result<JumpSpectral> {
    if !(omega > 0.0) || !(a > 0.0) || rho < 0.0 {
        return Err(Error::InvalidInput("jump synthesis needs ω > 0, a > 0, ρ ≥ 0".into()));
    }
    let gap = (a - rho).abs();
    if gap < 1e-3 * a {
        return Err(Error::InvalidInput("ρ too close to the branch circle".into()));
    }
    let spec = QuadratureSpec::new(1e-12, 1e-12).with_max_subdivisions(400_000);
    let prop = integrate(
        |al: f64| {
            let (s, c) = al.sin_cos();
            Complex64::new(w_sinh(omega, a, s, c) * j0(omega * rho * s), 0.0)
        },
        0.0,
        FRAC_PI_2,
        &spec,
    )?
    .value;
    let deltas: Vec<f64> = (0..8).map(|k| 0.5 * gap / 2f64.powi(k)).collect();
    let evans = deltas
        .iter()
        .map(|&d| evanescent(rho, omega, |s| Complex64::new((a * s).sin() * (-d * s).exp(), 0.0), d, a, &spec).map(|v| v.0))
        .collect::<Result<Vec<_>>>()?;
    let (evan, err) = extrapolate_to_zero(&deltas, &evans);
    Ok(JumpSpectral { value: I * (prop + evan) / (2.0 * PI), error: err / (2.0 * PI) })
}

// ω sin α sinh(ωa cos α): the propagating integrand after h = ω sin α.
fn w_sinh(omega: f64, a: f64, s: f64, c: f64) -> f64 {
    omega * s * (omega * a * c).sinh()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_space_weyl() {
        let p = WeylPoint::new(0.3, 0.7, 0.0, 2.0);
        let v = u_plus(&p).unwrap();
        assert!((v.value - p.closed_form()).norm() < 1e-8);
    }

    #[test]
    fn complex_source_weyl() {
        let p = WeylPoint::new(0.5, 1.0, 1.0, 2.0);
        let v = u_plus(&p).unwrap();
        let want = p.closed_form();
        assert!((v.value - want).norm() < 1e-7 * want.norm(), "{} {want}", v.value);
    }

    #[test]
    fn axis_propagating_part() {
        // On the axis the propagating integral is (e^{iζω} − 1)/(4πζ).
        let p = WeylPoint::new(0.0, 2.0, 1.0, 2.0);
        let v = u_plus(&p).unwrap();
        let z = p.zeta();
        let want = ((I * z * 2.0).exp() - 1.0) / (4.0 * PI * z);
        assert!((v.propagating - want).norm() < 1e-12);
        assert!(v.error < 1e-9);
    }

    #[test]
    fn left_and_right() {
        for xi in [1.0, -1.0] {
            let v = weyl_eval(0.5, xi, 1.0, 2.0).unwrap();
            let want = WeylPoint::new(0.5, xi, 1.0, 2.0).closed_form();
            assert!((v.value() - want).norm() < 1e-7 * want.norm());
        }
    }

    #[test]
    fn negative_frequency_is_conjugate() {
        let (rho, xi, a, w) = (0.4, 0.8, 1.0, 1.5);
        let neg = weyl_eval(rho, xi, a, -w).unwrap().value();
        let want = WeylPoint::new(rho, xi, -a, w).closed_form().conj();
        assert!((neg - want).norm() < 1e-7 * want.norm());
    }

    #[test]
    fn rejects_near_cut() {
        assert!(weyl_eval(0.5, 1e-5, 1.0, 2.0).is_err());
        assert!(u_plus(&WeylPoint::new(0.5, 1.0, 1.0, -2.0)).is_err());
    }

    #[test]
    fn jump_examples() {
        let v = jump_closed(0.0, 1.0, 1.0).unwrap();
        assert!((v - I * 1f64.cosh() / (2.0 * PI)).norm() < 1e-15);
        assert!((v.im - 0.245_588_910_620_225_9).abs() < 1e-15);
        assert_eq!(jump_closed(1.5, 1.0, 1.0).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn jump_spectral_matches_closed() {
        for rho in [0.3, 1.5] {
            let s = jump_spectral(rho, 1.0, 1.0).unwrap();
            let c = jump_closed(rho, 1.0, 1.0).unwrap();
            assert!((s.value - c).norm() < 1e-6, "ρ={rho}: {} vs {c}", s.value);
        }
    }
}
