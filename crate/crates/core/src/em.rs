//! Electromagnetic wavelets from Hertz potentials.
//!
//! A Hertz potential `Z` generates the field `F = D + iB` through
//! `F = iL Z` with `L Z = ∇×∇×Z + i∂ₜ∇×Z`.  For a dipole potential
//! `Z = φ p` this expands to
//!
//! ```text
//! L[φ p] = ∇(p·∇φ) − p Δφ + i (∇∂ₜφ) × p,
//! ```
//!
//! and every derivative of `φ(r̃, τ)` is taken in closed form through
//! `∂ᵢ r̃ = zᵢ/r̃`.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::beams::{Causality, ComplexSpacetimePoint};
use crate::error::{Error, Result};
use crate::geometry::SourcePoint;
use crate::spectral::{pulsed_beam_ft, WaveVector};
use crate::signals::DrivingSignal;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn cross_matrix(n: &Vector3<Complex64>) -> Matrix3<Complex64> {
    let z = c(0.0);
    Matrix3::new(z, -n[2], n[1], n[2], z, -n[0], -n[1], n[0], z)
}

/// `S(k) v = i n × v` with `n = k⃗/ω`.
pub fn spin_matrix(k3: [f64; 3], omega: f64) -> Result<Matrix3<Complex64>> {
    if omega == 0.0 {
        return Err(Error::InvalidInput("spin matrix needs ω ≠ 0".into()));
    }
    let n = Vector3::from(k3).map(|v| c(v / omega));
    Ok(cross_matrix(&n) * I)
}

/// `P(k) = (S² + S)/2`; on the light cone the projector onto helicity `+1`.
pub fn helicity_projector(k3: [f64; 3], omega: f64) -> Result<Matrix3<Complex64>> {
    let s = spin_matrix(k3, omega)?;
    Ok((s * s + s) * c(0.5))
}

/// Dipole moment `p = p_m − i p_e`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DipoleMoment {
    pub magnetic: [f64; 3],
    pub electric: [f64; 3],
}

impl DipoleMoment {
    pub fn vector(&self) -> Vector3<Complex64> {
        Vector3::from(self.magnetic).zip_map(&Vector3::from(self.electric), |m, e| Complex64::new(m, -e))
    }
}

/// Value and closed-form partials of a potential `φ(r̃, τ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialJet {
    pub phi: Complex64,
    pub r: Complex64,
    pub rr: Complex64,
    pub tau: Complex64,
    pub tau_tau: Complex64,
    pub r_tau: Complex64,
}

// φ = 1/(N h) from the partials of h.
fn reciprocal_jet(n: Complex64, h: Complex64, hr: Complex64, hrr: Complex64, ht: Complex64, htt: Complex64, hrt: Complex64) -> PotentialJet {
    let nh = n * h;
    let nh2 = nh * h;
    let nh3 = nh2 * h;
    PotentialJet {
        phi: 1.0 / nh,
        r: -hr / nh2,
        rr: (2.0 * hr * hr - h * hrr) / nh3,
        tau: -ht / nh2,
        tau_tau: (2.0 * ht * ht - h * htt) / nh3,
        r_tau: (2.0 * hr * ht - h * hrt) / nh3,
    }
}

/// Jet of `D̃± = 1/(8iπ² r̃(τ ∓ r̃))`.
pub fn propagator_jet(rt: Complex64, tau: Complex64, which: Causality) -> PotentialJet {
    let s = match which {
        Causality::Retarded => 1.0,
        Causality::Advanced => -1.0,
    };
    let h = rt * tau - s * rt * rt;
    reciprocal_jet(8.0 * I * PI * PI, h, tau - 2.0 * s * rt, c(-2.0 * s), rt, c(0.0), c(1.0))
}

/// Jet of `G₄ = 1/(4π²(r̃² − τ²))`.
pub fn g4_jet(rt: Complex64, tau: Complex64) -> PotentialJet {
    reciprocal_jet(c(4.0 * PI * PI), rt * rt - tau * tau, 2.0 * rt, c(2.0), -2.0 * tau, c(-2.0), c(0.0))
}

/// Spatial derivatives of `φ(r̃(z⃗), τ)` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpatialDerivatives {
    pub value: Complex64,
    pub grad: Vector3<Complex64>,
    pub hessian: Matrix3<Complex64>,
    pub laplacian: Complex64,
    pub dt: Complex64,
    pub dtt: Complex64,
    pub grad_dt: Vector3<Complex64>,
}

fn complex_position(z: &ComplexSpacetimePoint) -> Vector3<Complex64> {
    z.x.zip_map(&z.y.y_vec(), |x, y| Complex64::new(x, -y))
}

fn spatial(z: &ComplexSpacetimePoint, jet: &PotentialJet, rt: Complex64) -> SpatialDerivatives {
    let u = complex_position(z) / rt;
    let uut = u * u.transpose();
    let hessian = uut * (jet.rr - jet.r / rt) + Matrix3::identity() * (jet.r / rt);
    SpatialDerivatives {
        value: jet.phi,
        grad: u * jet.r,
        hessian,
        laplacian: jet.rr + 2.0 * jet.r / rt,
        dt: jet.tau,
        dtt: jet.tau_tau,
        grad_dt: u * jet.r_tau,
    }
}

fn root(z: &ComplexSpacetimePoint) -> Result<Complex64> {
    let rt = z.distance()?.rt();
    if rt.norm() < 1e-13 * z.y.a().max(1.0) {
        return Err(Error::Singular(rt.norm()));
    }
    Ok(rt)
}

/// Derivatives of `D̃±` at `z`.
pub fn propagator_derivatives(z: &ComplexSpacetimePoint, which: Causality) -> Result<SpatialDerivatives> {
    let rt = root(z)?;
    Ok(spatial(z, &propagator_jet(rt, z.tau(), which), rt))
}

/// Derivatives of `G₄` at `z`.
pub fn g4_derivatives(z: &ComplexSpacetimePoint) -> Result<SpatialDerivatives> {
    let rt = root(z)?;
    let jet = g4_jet(rt, z.tau());
    if !jet.phi.is_finite() {
        return Err(Error::Singular(0.0));
    }
    Ok(spatial(z, &jet, rt))
}

/// Matrix of `p ↦ L[φ p]`.
pub fn l_matrix(d: &SpatialDerivatives) -> Matrix3<Complex64> {
    d.hessian - Matrix3::identity() * d.laplacian + cross_matrix(&d.grad_dt) * I
}

/// Hertz potential `Z± = D̃±(z) p`.
pub fn dipole_potential(z: &ComplexSpacetimePoint, p: &Vector3<Complex64>, which: Causality) -> Result<Vector3<Complex64>> {
    let rt = root(z)?;
    Ok(p * propagator_jet(rt, z.tau(), which).phi)
}

/// Dipole pulsed-beam field `F± = iL[D̃± p]`.
pub fn dipole_field(z: &ComplexSpacetimePoint, p: &Vector3<Complex64>, which: Causality) -> Result<Vector3<Complex64>> {
    let d = propagator_derivatives(z, which)?;
    Ok(l_matrix(&d) * p * I)
}

/// Real field pair `D = Re F`, `B = Im F`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmField {
    pub d: [f64; 3],
    pub b: [f64; 3],
}

impl EmField {
    pub fn from_complex(f: &Vector3<Complex64>) -> Self {
        EmField { d: [f[0].re, f[1].re, f[2].re], b: [f[0].im, f[1].im, f[2].im] }
    }
}

/// Wavelet dyadic `𝕎(z) = ∫ đk̃ Θ(−k·y) e^{ik·z} ω² P(k)`, i.e. `2𝕎 p = L[G₄ p]`
/// since `G₄ = ∫ đk̃ Θ(−k·y) e^{ik·z}`.
pub fn wavelet_dyadic(z: &ComplexSpacetimePoint) -> Result<Matrix3<Complex64>> {
    Ok(l_matrix(&g4_derivatives(z)?) * c(0.5))
}

/// Retarded or advanced part with `𝕎 = 𝕎⁺ − 𝕎⁻`.  From `G₄ = iD̃⁻ − iD̃⁺`
/// this gives `2𝕎± p = −F±_p`.
pub fn wavelet_dyadic_part(z: &ComplexSpacetimePoint, which: Causality) -> Result<Matrix3<Complex64>> {
    Ok(l_matrix(&propagator_derivatives(z, which)?) * (I * -0.5))
}

/// Minkowski product `y′·y = y⃗′·y⃗ − u′u`.
pub fn minkowski_dot(a: &SourcePoint, b: &SourcePoint) -> f64 {
    a.y_vec().dot(&b.y_vec()) - a.u * b.u
}

/// `K(z₁, z₂*) = Θ(−y₁·y₂) 𝕎(z₁ − z₂*)`.
pub fn reproducing_kernel(z1: &ComplexSpacetimePoint, z2: &ComplexSpacetimePoint) -> Result<Matrix3<Complex64>> {
    if minkowski_dot(&z1.y, &z2.y) >= 0.0 {
        return Ok(Matrix3::zeros());
    }
    // z₁ − z₂* has real part x₁ − x₂ and imaginary part −(y₁ + y₂).
    let y = SourcePoint::new((z1.y.y_vec() + z2.y.y_vec()).into(), z1.y.u + z2.y.u);
    let z = ComplexSpacetimePoint::new(z1.x - z2.x, z1.t - z2.t, y);
    wavelet_dyadic(&z)
}

/// Scalar factor `Ĉ(ω,u) Ω/(μ² + l²)` of the retarded dipole potential transform.
pub fn em_wavelet_prefactor(k: &WaveVector, y: &SourcePoint) -> Result<Complex64> {
    Ok(pulsed_beam_ft(k, y, &DrivingSignal::Impulse)?.weight())
}

/// `i k⃗×(k⃗×p) + ω k⃗×p`, which equals `−2iω² P p` on the light cone.
pub fn em_bracket(k3: [f64; 3], omega: f64, p: &Vector3<Complex64>) -> Vector3<Complex64> {
    let k = Vector3::from(k3).map(c);
    k.cross(&k.cross(p)) * I + k.cross(p) * c(omega)
}

/// Transform of `2𝕎⁺ p = −F⁺_p`: the prefactor times the bracket.
///
/// The symbol of `iL` on `e^{ik·x}` is minus the bracket, so `F̂⁺_p` is the
/// negative of this.
pub fn em_wavelet_ft(k: &WaveVector, y: &SourcePoint, p: &Vector3<Complex64>) -> Result<Vector3<Complex64>> {
    if !(k.omega > 0.0) {
        return Err(Error::InvalidInput("EM wavelet transform is defined for ω > 0".into()));
    }
    Ok(em_bracket(k.k, k.omega, p) * em_wavelet_prefactor(k, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(m: &Matrix3<Complex64>) -> f64 {
        m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    fn point() -> ComplexSpacetimePoint {
        ComplexSpacetimePoint::new(Vector3::new(0.4, -0.3, 0.9), 0.2, SourcePoint::new([0.1, 0.2, 0.5], 1.1))
    }

    #[test]
    fn fixed_helicity_vector() {
        let v = Vector3::new(c(1.0), I, c(0.0)) / c(2f64.sqrt());
        let s = spin_matrix([0.0, 0.0, 2.0], 2.0).unwrap();
        let p = helicity_projector([0.0, 0.0, 2.0], 2.0).unwrap();
        assert!((s * v - v).norm() < 1e-15);
        assert!((p * v - v).norm() < 1e-15);
    }

    #[test]
    fn on_shell_algebra() {
        let k = [0.3, -1.2, 0.7];
        let w = Vector3::from(k).norm();
        let s = spin_matrix(k, w).unwrap();
        let p = helicity_projector(k, w).unwrap();
        assert!(norm(&(s * s * s - s)) < 1e-14);
        assert!(norm(&(p * p - p)) < 1e-14);
        assert!(norm(&(p.adjoint() - p)) < 1e-14);
        assert!(norm(&(s * p - p)) < 1e-14);
        assert!((p.trace() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn wave_equation_jets() {
        let z = point();
        for d in [
            propagator_derivatives(&z, Causality::Retarded).unwrap(),
            propagator_derivatives(&z, Causality::Advanced).unwrap(),
            g4_derivatives(&z).unwrap(),
        ] {
            assert!((d.laplacian - d.dtt).norm() < 1e-10 * d.dtt.norm());
        }
    }

    #[test]
    fn split_identity() {
        let z = point();
        let w = wavelet_dyadic(&z).unwrap();
        let plus = wavelet_dyadic_part(&z, Causality::Retarded).unwrap();
        let minus = wavelet_dyadic_part(&z, Causality::Advanced).unwrap();
        assert!(norm(&(w - (plus - minus))) < 1e-12 * norm(&w));
    }

    #[test]
    fn adjoint_symmetry_and_scaling() {
        let z = point();
        let w = wavelet_dyadic(&z).unwrap();
        let wc = wavelet_dyadic(&z.conj()).unwrap();
        assert!(norm(&(w.adjoint() - wc)) < 1e-12 * norm(&w));
        let s = (z.y.u * z.y.u - z.y.a() * z.y.a()).sqrt();
        let ws = wavelet_dyadic(&z.scaled(s)).unwrap() / c(s.powi(4));
        assert!(norm(&(w - ws)) < 1e-12 * norm(&w));
    }

    #[test]
    fn kernel_vanishes_across_tubes() {
        let z1 = point();
        let z2 = ComplexSpacetimePoint::new(Vector3::new(0.1, 0.0, 0.0), 0.0, SourcePoint::new([0.0, 0.1, 0.2], -1.0));
        assert_eq!(reproducing_kernel(&z1, &z2).unwrap(), Matrix3::zeros());
    }

    #[test]
    fn on_shell_bracket() {
        let k = [0.6, 0.2, -0.9];
        let w = Vector3::from(k).norm();
        let p = Vector3::new(Complex64::new(0.3, -0.1), c(1.0), Complex64::new(0.0, 0.4));
        let b = em_bracket(k, w, &p);
        let want = helicity_projector(k, w).unwrap() * p * (-2.0 * I * w * w);
        assert!((b - want).norm() < 1e-13);
        let along = Vector3::from(k).map(c);
        assert!(em_bracket(k, 0.4, &along).norm() < 1e-15);
    }
}
