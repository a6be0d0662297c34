//! Fourier-domain sources and beams.
//!
//! Everything here is closed form.  Transforms use `F̂(k) = ∫ e^{−ik·x} F`
//! with `k·x = k⃗·x⃗ − ωt`, and wave vectors are split relative to the source
//! axis `ŷ` into `l = ŷ·k⃗` and `h = |k⃗ − lŷ|`.
//!
//! The disk source multiplies the signal spectrum by the filter
//! `Ω = cos(μa) + (l/μ) sin(μa)`, `μ² = h² − ω²`, which is entire in `μ²`.

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SourcePoint;
use crate::signals::{cauchy_ft, signal_ft, DrivingSignal, Spectrum};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A real spacetime wave vector `(k⃗, ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveVector {
    pub k: [f64; 3],
    pub omega: f64,
}

/// Components of a wave vector relative to the source axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxialSplit {
    pub l: f64,
    pub h: f64,
    pub kappa: f64,
    pub omega: f64,
}

impl WaveVector {
    pub fn new(k: [f64; 3], omega: f64) -> Self {
        WaveVector { k, omega }
    }

    pub fn with_omega(&self, omega: f64) -> Self {
        WaveVector { k: self.k, omega }
    }

    pub fn negated(&self) -> Self {
        WaveVector { k: self.k.map(|v| -v), omega: -self.omega }
    }

    pub fn split(&self, y: &SourcePoint) -> AxialSplit {
        let kv = Vector3::from(self.k);
        let n = y.frame()[2];
        let l = kv.dot(&n);
        let kappa = kv.norm();
        let h = (kv - n * l).norm();
        AxialSplit { l, h, kappa, omega: self.omega }
    }
}

impl AxialSplit {
    pub fn mu_sq(&self) -> f64 {
        self.h * self.h - self.omega * self.omega
    }

    /// `k² = κ² − ω²`.
    pub fn k_sq(&self) -> f64 {
        self.mu_sq() + self.l * self.l
    }
}

/// The complex wave vector `k_ε` seen by the shielded source.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpsWaveVector {
    pub omega_eps: Complex64,
    pub l_eps: Complex64,
    pub h_eps: f64,
    pub eta: Complex64,
}

impl EpsWaveVector {
    pub fn mu_sq(&self) -> Complex64 {
        self.h_eps * self.h_eps - self.omega_eps * self.omega_eps
    }

    pub fn k_sq(&self) -> Complex64 {
        self.mu_sq() + self.l_eps * self.l_eps
    }
}

/// `ω_ε = ω − iεl`, `l_ε = l − iεω`, `h_ε = |η|h` with `η = ε − i`.
pub fn k_eps_map(k: &AxialSplit, eps: f64) -> EpsWaveVector {
    let eta = Complex64::new(eps, -1.0);
    EpsWaveVector {
        omega_eps: Complex64::new(k.omega, -eps * k.l),
        l_eps: Complex64::new(k.l, -eps * k.omega),
        h_eps: eta.norm() * k.h,
        eta,
    }
}

const SERIES_LIMIT: f64 = 1e-4;

/// `Ω = cos(μa) + l a sinc(μa)` as a function of `μ²`.
pub fn omega_filter(mu_sq: Complex64, l: Complex64, a: f64) -> Complex64 {
    let z = mu_sq * (a * a);
    if z.norm() < SERIES_LIMIT {
        // cos √z = Σ (−z)ⁿ/(2n)!,  sinc √z = Σ (−z)ⁿ/(2n+1)!
        let (mut cos, mut sinc) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let mut term = Complex64::new(1.0, 0.0);
        for n in 0..6 {
            cos += term;
            sinc += term / (2 * n + 1) as f64;
            term *= -z / ((2 * n + 1) * (2 * n + 2)) as f64;
        }
        return cos + l * a * sinc;
    }
    omega_filter_from_mu(mu_sq.sqrt(), l, a, mu_sq + l * l)
}

// For |Im μa| > 1, Ω = [e^{iμa}(iμ + l) + e^{−iμa}(iμ − l)]/(2iμ).  The two
// coefficients multiply to −k², so the smaller one is formed from k²
// directly: near the light cone it would otherwise cancel against a large
// exponential.
fn omega_filter_from_mu(mu: Complex64, l: Complex64, a: f64, k_sq: Complex64) -> Complex64 {
    let x = mu * a;
    if x.im.abs() <= 1.0 {
        return x.cos() + l * a * (x.sin() / x);
    }
    let im = I * mu;
    let (mut plus, mut minus) = (im + l, im - l);
    if plus.norm() < minus.norm() {
        plus = -k_sq / minus;
    } else {
        minus = -k_sq / plus;
    }
    let e = (im * a).exp();
    (e * plus + minus / e) / (2.0 * im)
}

/// `Ω(k, ŷ)` for a real wave vector.
pub fn omega_of(k: &WaveVector, y: &SourcePoint) -> Complex64 {
    let s = k.split(y);
    omega_filter(Complex64::new(s.mu_sq(), 0.0), Complex64::new(s.l, 0.0), y.a())
}

/// `Ω(k_ε, ŷ)`.
pub fn omega_eps_of(k: &WaveVector, y: &SourcePoint, eps: f64) -> Complex64 {
    let ke = k_eps_map(&k.split(y), eps);
    omega_filter(ke.mu_sq(), ke.l_eps, y.a())
}

fn with_filter(spec: Spectrum, k: &WaveVector, filter: impl Fn(&WaveVector) -> Complex64) -> Spectrum {
    match spec {
        Spectrum::Value(v) => Spectrum::Value(v * filter(k)),
        Spectrum::DeltaLine { frequency, weight } => Spectrum::DeltaLine {
            frequency,
            weight: weight * filter(&k.with_omega(frequency)),
        },
    }
}

/// `Ŝ_ε = ĝ(ω, u) e^{iεωa} Ω(k_ε, ŷ)`.
pub fn shielded_source_ft(k: &WaveVector, y: &SourcePoint, signal: &DrivingSignal, eps: f64) -> Result<Spectrum> {
    let a = y.a();
    let g = signal_ft(signal, k.omega, y.u)?;
    Ok(with_filter(g, k, |kk| (I * eps * kk.omega * a).exp() * omega_eps_of(kk, y, eps)))
}

/// `Ŝ = ĝ(ω, u) Ω(k, ŷ)`.
pub fn bare_source_ft(k: &WaveVector, y: &SourcePoint, signal: &DrivingSignal) -> Result<Spectrum> {
    let g = signal_ft(signal, k.omega, y.u)?;
    Ok(with_filter(g, k, |kk| omega_of(kk, y)))
}

/// Event source transform `Ĉ(ω, u) Ω(k, ŷ)`.
pub fn event_source_ft(k: &WaveVector, y: &SourcePoint) -> Result<Complex64> {
    Ok(cauchy_ft(k.omega, y.u)? * omega_of(k, y))
}

/// Spatial transform of `δ̃₃`: `cos(ha) + (l/h) sin(ha)`.
pub fn static_source_ft(k3: [f64; 3], y: &SourcePoint) -> Complex64 {
    omega_of(&WaveVector::new(k3, 0.0), y)
}

/// `Ŵ = ĝ Ω/(μ² + l²)`, the driven pulsed beam.
pub fn pulsed_beam_ft(k: &WaveVector, y: &SourcePoint, signal: &DrivingSignal) -> Result<Spectrum> {
    let guard = |kk: &WaveVector| -> Result<f64> {
        let s = kk.split(y);
        let k2 = s.k_sq();
        if k2.abs() <= 1e-14 * (s.kappa * s.kappa).max(s.omega * s.omega).max(1e-300) {
            return Err(Error::Singular(k2));
        }
        Ok(k2)
    };
    let g = signal_ft(signal, k.omega, y.u)?;
    let k_line = match g {
        Spectrum::DeltaLine { frequency, .. } => k.with_omega(frequency),
        Spectrum::Value(_) => *k,
    };
    let k2 = guard(&k_line)?;
    Ok(with_filter(g, k, |kk| omega_of(kk, y) / k2))
}

/// `e^{iμa}/(2μ(μ + il)) + e^{−iμa}/(2μ(μ − il))`, which equals `Ω/(μ² + l²)`.
pub fn partial_fractions(mu: Complex64, l: Complex64, a: f64) -> Complex64 {
    let e = (I * mu * a).exp();
    e / (2.0 * mu * (mu + I * l)) + 1.0 / (e * 2.0 * mu * (mu - I * l))
}

/// The terms `I₀ … I₃` whose combination `I₀ − I₁ + iεI₂ + η*η I₃` is `Ω(k_ε)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CancellationTerms {
    pub i0: Complex64,
    pub i1: Complex64,
    pub i2: Complex64,
    pub i3: Complex64,
    pub eps: f64,
    pub eta: Complex64,
}

impl CancellationTerms {
    pub fn combined(&self) -> Complex64 {
        self.i0 - self.i1 + I * self.eps * self.i2 + self.eta.norm_sqr() * self.i3
    }
}

/// Point-source term `I₀`, the ρ-derivative terms `I₁, I₂` and the
/// ξ-derivative term `I₃` of the shielded plane-wave smear.
pub fn cancellation_terms(k: &AxialSplit, a: f64, eps: f64) -> CancellationTerms {
    let ke = k_eps_map(k, eps);
    let w = ke.omega_eps;
    let mu2 = ke.mu_sq();
    let z = mu2 * (a * a);
    // sin(μa)/μ as a function of μ².
    let sin_over_mu = if z.norm() < SERIES_LIMIT {
        let mut s = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(a, 0.0);
        for n in 0..6 {
            s += term;
            term *= -z / ((2 * n + 2) * (2 * n + 3)) as f64;
        }
        s
    } else {
        let mu = mu2.sqrt();
        (mu * a).sin() / mu
    };
    let cos_mu = omega_filter(mu2, Complex64::new(0.0, 0.0), a);
    let (ch, sh) = ((w * a).cosh(), (w * a).sinh());
    CancellationTerms {
        i0: ch - I * eps * sh,
        i1: ch - cos_mu,
        i2: sh - w * sin_over_mu,
        i3: k.l * sin_over_mu,
        eps,
        eta: ke.eta,
    }
}

/// What a spectral grid evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralQuantity {
    OmegaFilter,
    BareSource,
    ShieldedSource,
    PulsedBeam,
}

/// One row of a spectral table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumRow {
    pub k: [f64; 3],
    pub omega: f64,
    pub value: Complex64,
}

/// Evaluate `quantity` on the rectilinear grid `kx × ky × kz × ω`.
///
/// Spectral lines collapse the ω axis: a line at `ω₀` contributes one row per
/// `k⃗` with `ω = ω₀` and the line weight as value.  Points where the beam
/// transform is singular are skipped.
pub fn evaluate_grid(
    quantity: SpectralQuantity,
    y: &SourcePoint,
    signal: &DrivingSignal,
    eps: f64,
    axes: [&[f64]; 4],
) -> Result<Vec<SpectrumRow>> {
    let [kx, ky, kz, om] = axes;
    let mut ks = Vec::with_capacity(kx.len() * ky.len() * kz.len());
    for &a in kx {
        for &b in ky {
            for &c in kz {
                ks.push([a, b, c]);
            }
        }
    }
    let rows: Result<Vec<Vec<SpectrumRow>>> = ks
        .par_iter()
        .map(|&k3| {
            let mut out = Vec::new();
            let mut line_seen = false;
            for &w in om {
                let k = WaveVector::new(k3, w);
                let s = match quantity {
                    SpectralQuantity::OmegaFilter => Spectrum::Value(omega_eps_of(&k, y, eps)),
                    SpectralQuantity::BareSource => bare_source_ft(&k, y, signal)?,
                    SpectralQuantity::ShieldedSource => shielded_source_ft(&k, y, signal, eps)?,
                    SpectralQuantity::PulsedBeam => match pulsed_beam_ft(&k, y, signal) {
                        Ok(s) => s,
                        Err(Error::Singular(_)) => continue,
                        Err(e) => return Err(e),
                    },
                };
                match s {
                    Spectrum::Value(v) => out.push(SpectrumRow { k: k3, omega: w, value: v }),
                    Spectrum::DeltaLine { frequency, weight } => {
                        if !line_seen {
                            out.push(SpectrumRow { k: k3, omega: frequency, value: weight });
                            line_seen = true;
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn split(l: f64, h: f64, omega: f64) -> AxialSplit {
        AxialSplit { l, h, kappa: (l * l + h * h).sqrt(), omega }
    }

    #[test]
    fn identity_at_zero_eps() {
        let k = split(0.7, 1.1, 2.3);
        let ke = k_eps_map(&k, 0.0);
        assert_eq!(ke.omega_eps, Complex64::new(2.3, 0.0));
        assert_eq!(ke.l_eps, Complex64::new(0.7, 0.0));
        assert_eq!(ke.h_eps, 1.1);
    }

    #[test]
    fn light_cone_preserved() {
        let k = split(-0.4, 1.7, 0.9);
        let ke = k_eps_map(&k, 0.3);
        let want = 1.09 * k.k_sq();
        assert!((ke.k_sq() - want).norm() < 1e-13);
        // Null vectors stay null.
        let n = split(0.6, 0.8, 1.0);
        assert!(k_eps_map(&n, 0.7).k_sq().norm() < 1e-14);
    }

    #[test]
    fn filter_examples() {
        assert_eq!(omega_filter(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 1.3), Complex64::new(1.0, 0.0));
        let (mu, a) = (1.7, 0.8);
        let on = omega_filter(Complex64::new(mu * mu, 0.0), I * mu, a);
        assert!((on - (I * mu * a).exp()).norm() < 1e-13);
        let on = omega_filter(Complex64::new(mu * mu, 0.0), -I * mu, a);
        assert!((on + -(-I * mu * a).exp()).norm() < 1e-13);
        // h = 0, l = k: the one-dimensional source 1 + ky.
        let (kk, y) = (1.3, 0.4);
        let v = omega_filter(Complex64::new(0.0, 0.0), Complex64::new(kk, 0.0), y);
        assert!((v - (1.0 + kk * y)).norm() < 1e-15);
    }

    #[test]
    fn series_matches_closed_form_at_switch() {
        let l = Complex64::new(0.3, -0.2);
        for m2 in [Complex64::new(9e-5, 1e-6), Complex64::new(-9.9e-5, 0.0), Complex64::new(0.0, 9.9e-5)] {
            let s = omega_filter(m2, l, 1.0);
            let c = omega_filter_from_mu(m2.sqrt(), l, 1.0, m2 + l * l);
            assert!((s - c).norm() < 1e-15, "{s} {c}");
        }
    }

    #[test]
    fn backward_light_cone_is_exact() {
        // cos + (l/μ) sin cancels to e^{la} for l < 0; the product form does not.
        for l in [-0.5, -3.0, -8.0] {
            let v = omega_filter(Complex64::new(-l * l, 0.0), Complex64::new(l, 0.0), 1.5);
            assert!((v - (l * 1.5).exp()).norm() < 4e-15 * (l * 1.5).exp(), "{l} {v}");
        }
    }

    #[test]
    fn filter_is_even_in_mu() {
        let l = Complex64::new(0.9, 0.1);
        let mu = Complex64::new(1.3, -0.4);
        let k2 = mu * mu + l * l;
        let (p, m) = (omega_filter_from_mu(mu, l, 0.7, k2), omega_filter_from_mu(-mu, l, 0.7, k2));
        assert!((p - m).norm() < 1e-15 * p.norm());
    }

    #[test]
    fn static_transform() {
        let y = SourcePoint::on_axis(1.0, 2.0);
        let v = static_source_ft([1.0, 0.0, 1.0], &y);
        assert!((v - (1f64.cos() + 1f64.sin())).norm() < 1e-15);
        assert!((v.re - 1.381773290676036).abs() < 1e-12);
        assert_eq!(static_source_ft([0.0; 3], &y), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn event_is_one_sided() {
        let y = SourcePoint::on_axis(1.0, 2.0);
        assert_eq!(event_source_ft(&WaveVector::new([0.2, 0.1, 0.4], -1.0), &y).unwrap(), Complex64::new(0.0, 0.0));
        assert!(event_source_ft(&WaveVector::new([0.2, 0.1, 0.4], 1.0), &y).unwrap().norm() > 0.0);
    }

    #[test]
    fn cancellation_identity() {
        let k = split(0.8, 1.3, 1.9);
        for eps in [0.0, 0.2, 1.5] {
            let t = cancellation_terms(&k, 0.9, eps);
            let ke = k_eps_map(&k, eps);
            let want = omega_filter(ke.mu_sq(), ke.l_eps, 0.9);
            assert!((t.combined() - want).norm() < 1e-12 * want.norm().max(1.0));
        }
    }

    #[test]
    fn partial_fraction_identity() {
        let (mu, l, a) = (Complex64::new(1.2, 0.3), Complex64::new(-0.5, 0.2), 0.8);
        let want = omega_filter(mu * mu, l, a) / (mu * mu + l * l);
        assert!((partial_fractions(mu, l, a) - want).norm() < 1e-12);
    }

    #[test]
    fn beam_reduces_to_helmholtz() {
        let y = SourcePoint::on_axis(0.0, 1.0);
        let k = WaveVector::new([0.3, 0.4, 1.2], 0.7);
        let w = pulsed_beam_ft(&k, &y, &DrivingSignal::Impulse).unwrap().weight();
        let c = cauchy_ft(0.7, 1.0).unwrap();
        assert!((w - c / (1.69 - 0.49)).norm() < 1e-14);
    }

    #[test]
    fn lines_carry_filter_at_line_frequency() {
        let y = SourcePoint::on_axis(0.5, 1.0);
        let k = WaveVector::new([0.3, 0.0, 0.4], 7.0);
        let s = bare_source_ft(&k, &y, &DrivingSignal::Harmonic { omega0: 2.0 }).unwrap();
        let Spectrum::DeltaLine { frequency, weight } = s else { panic!() };
        assert_eq!(frequency, 2.0);
        let want = 2.0 * PI * (-2.0f64).exp() * omega_of(&k.with_omega(2.0), &y);
        assert!((weight - want).norm() < 1e-14);
    }
}
