//! Driving signals and their analytic-signal extension to complex time.
//!
//! A real signal `g₀(t)` is extended to `τ = t − iu` by the Cauchy integral
//!
//! ```text
//! g(τ) = (1/2πi) ∫ g₀(t′) dt′ / (τ − t′)
//! ```
//!
//! which keeps only positive frequencies below the real axis (`u > 0`) and only
//! negative ones above it.  Conventions: `Θ(0) = 1/2`, `ū = sgn u`.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{integrate, integrate_with_breaks, QuadratureSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Heaviside step with `Θ(0) = 1/2`.
pub fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

fn sign(u: f64) -> f64 {
    if u < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Real signal sampled on a strictly increasing grid, interpolated by a
/// natural cubic spline and taken to vanish outside the sampled interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SampledData", into = "SampledData")]
pub struct SampledSignal {
    times: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SampledData {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<SampledData> for SampledSignal {
    type Error = Error;
    fn try_from(d: SampledData) -> Result<Self> {
        SampledSignal::new(d.times, d.values)
    }
}

impl From<SampledSignal> for SampledData {
    fn from(s: SampledSignal) -> Self {
        SampledData { times: s.times, values: s.values }
    }
}

impl SampledSignal {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() || times.len() < 3 {
            return Err(Error::InvalidInput("sampled signal needs >= 3 (time, value) pairs".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) || times.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("sample times must be finite and strictly increasing".into()));
        }
        let second = natural_spline(&times, &values);
        Ok(Self { times, values, second })
    }

    /// Samples `f` at `n` equally spaced times on `[t0, t1]`.
    pub fn from_fn(f: impl Fn(f64) -> f64, t0: f64, t1: f64, n: usize) -> Result<Self> {
        let n = n.max(3);
        let times: Vec<f64> = (0..n).map(|i| t0 + (t1 - t0) * i as f64 / (n - 1) as f64).collect();
        let values = times.iter().map(|&t| f(t)).collect();
        Self::new(times, values)
    }

    /// Reads a two-column `time,value` CSV; a non-numeric first row is skipped.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_path(path)?;
        let (mut times, mut values) = (Vec::new(), Vec::new());
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let parse = |j: usize| rec.get(j).and_then(|s| s.parse::<f64>().ok());
            match (parse(0), parse(1)) {
                (Some(t), Some(v)) => {
                    times.push(t);
                    values.push(v);
                }
                _ if i == 0 => continue,
                _ => return Err(Error::InvalidInput(format!("bad sample row {}", i + 1))),
            }
        }
        Self::new(times, values)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.times[0], *self.times.last().unwrap())
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Interpolated value; zero outside the support.
    pub fn value(&self, t: f64) -> f64 {
        let (t0, t1) = self.support();
        if t < t0 || t > t1 {
            return 0.0;
        }
        let k = match self.times.partition_point(|&s| s <= t) {
            0 => 0,
            k if k >= self.times.len() => self.times.len() - 2,
            k => k - 1,
        };
        let h = self.times[k + 1] - self.times[k];
        let a = (self.times[k + 1] - t) / h;
        let b = 1.0 - a;
        a * self.values[k]
            + b * self.values[k + 1]
            + ((a * a * a - a) * self.second[k] + (b * b * b - b) * self.second[k + 1]) * h * h / 6.0
    }
}

fn natural_spline(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = vec![0.0; n];
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    // Tridiagonal system for interior second derivatives (Thomas algorithm).
    for i in 1..n - 1 {
        let h0 = x[i] - x[i - 1];
        let h1 = x[i + 1] - x[i];
        let rhs = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        let diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
        c[i] = h1 / diag;
        d[i] = (rhs - h0 * d[i - 1]) / diag;
    }
    for i in (1..n - 1).rev() {
        m[i] = d[i] - c[i] * m[i + 1];
    }
    m
}

/// The real time signal `g₀` that drives a source.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DrivingSignal {
    /// `g₀ = δ(t)`.
    Impulse,
    /// `g₀ ≡ 1`.
    Static,
    /// `g₀ = e^{−iω₀t}`.
    Harmonic { omega0: f64 },
    /// Tabulated real signal.
    Sampled(SampledSignal),
}

/// `g`, `g′` and `g″` at one complex time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticSignalValue {
    pub g: Complex64,
    pub g_prime: Complex64,
    pub g_second: Complex64,
}

/// Fourier transform of a signal: a regular value, or a spectral line
/// `weight · δ(ω − frequency)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spectrum {
    Value(Complex64),
    DeltaLine { frequency: f64, weight: Complex64 },
}

impl Spectrum {
    /// The number multiplying the delta (or the value itself).
    pub fn weight(&self) -> Complex64 {
        match *self {
            Spectrum::Value(v) => v,
            Spectrum::DeltaLine { weight, .. } => weight,
        }
    }
}

fn sampled_quad() -> QuadratureSpec {
    QuadratureSpec::new(1e-12, 1e-15).with_max_subdivisions(20_000)
}

fn sampled_ast(s: &SampledSignal, tau: Complex64) -> Result<AnalyticSignalValue> {
    let (t0, t1) = s.support();
    let u = -tau.im;
    let mut breaks = vec![t0, t1];
    for k in [-8.0, -2.0, 0.0, 2.0, 8.0] {
        let b = tau.re + k * u.abs();
        if b > t0 && b < t1 {
            breaks.push(b);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let spec = sampled_quad();
    let c = 1.0 / (2.0 * PI * I);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (n, slot) in out.iter_mut().enumerate() {
        // d^n/dτ^n 1/(τ − t′) = (−1)^n n! /(τ − t′)^{n+1}
        let coef = [1.0, -1.0, 2.0][n];
        let mut f = |t: f64| {
            let d = tau - t;
            s.value(t) * coef / d.powi(n as i32 + 1)
        };
        *slot = c * integrate_with_breaks(&mut f, &breaks, &spec)?.value;
    }
    Ok(AnalyticSignalValue { g: out[0], g_prime: out[1], g_second: out[2] })
}

/// Analytic-signal value `g(τ)` with its first two derivatives.
pub fn ast(signal: &DrivingSignal, tau: Complex64) -> Result<AnalyticSignalValue> {
    let u = -tau.im;
    if u == 0.0 || !tau.re.is_finite() || !u.is_finite() {
        return Err(Error::InvalidInput("analytic signal needs Im τ ≠ 0".into()));
    }
    let ub = sign(u);
    let zero = Complex64::new(0.0, 0.0);
    Ok(match signal {
        DrivingSignal::Impulse => {
            let g = 1.0 / (2.0 * PI * I * tau);
            AnalyticSignalValue { g, g_prime: -g / tau, g_second: 2.0 * g / (tau * tau) }
        }
        DrivingSignal::Static => AnalyticSignalValue { g: Complex64::new(ub / 2.0, 0.0), g_prime: zero, g_second: zero },
        DrivingSignal::Harmonic { omega0 } => {
            let w = *omega0;
            let g = ub * heaviside(w * u) * (-I * w * tau).exp();
            AnalyticSignalValue { g, g_prime: -I * w * g, g_second: -w * w * g }
        }
        DrivingSignal::Sampled(s) => sampled_ast(s, tau)?,
    })
}

/// Fourier transform of the Cauchy kernel, `ū Θ(ωu) e^{−ωu}`.
pub fn cauchy_ft(omega: f64, u: f64) -> Result<f64> {
    if u == 0.0 {
        return Err(Error::InvalidInput("Cauchy transform needs u ≠ 0".into()));
    }
    let h = heaviside(omega * u);
    Ok(if h == 0.0 { 0.0 } else { sign(u) * h * (-omega * u).exp() })
}

/// Jump average `g̃(τ, q) = ½[g(τ + iq) + g(τ − iq)]`.
pub fn g_tilde(signal: &DrivingSignal, tau: Complex64, q: f64) -> Result<Complex64> {
    if tau.im.abs() <= q.abs() {
        return Err(Error::InvalidInput(format!("g̃ needs |Im τ| > |q|: Im τ = {}, q = {q}", tau.im)));
    }
    if q == 0.0 {
        return Ok(ast(signal, tau)?.g);
    }
    let up = ast(signal, tau + I * q)?.g;
    let down = ast(signal, tau - I * q)?.g;
    Ok(0.5 * (up + down))
}

/// Fourier transform of the real signal, `ĝ₀(ω) = ∫ e^{iωt} g₀(t) dt`.
pub fn base_ft(signal: &DrivingSignal, omega: f64) -> Result<Spectrum> {
    Ok(match signal {
        DrivingSignal::Impulse => Spectrum::Value(Complex64::new(1.0, 0.0)),
        DrivingSignal::Static => Spectrum::DeltaLine { frequency: 0.0, weight: Complex64::new(2.0 * PI, 0.0) },
        DrivingSignal::Harmonic { omega0 } => Spectrum::DeltaLine { frequency: *omega0, weight: Complex64::new(2.0 * PI, 0.0) },
        DrivingSignal::Sampled(s) => {
            let (t0, t1) = s.support();
            let spec = sampled_quad();
            let q = integrate(|t| s.value(t) * (I * omega * t).exp(), t0, t1, &spec)?;
            Spectrum::Value(q.value)
        }
    })
}

/// `ĝ(ω, u) = Ĉ(ω, u) ĝ₀(ω)`; spectral lines carry the factor at their own frequency.
pub fn signal_ft(signal: &DrivingSignal, omega: f64, u: f64) -> Result<Spectrum> {
    let c = cauchy_ft(omega, u)?;
    Ok(match base_ft(signal, omega)? {
        Spectrum::Value(v) => Spectrum::Value(c * v),
        Spectrum::DeltaLine { frequency, weight } => Spectrum::DeltaLine {
            frequency,
            weight: weight * cauchy_ft(frequency, u)?,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> DrivingSignal {
        DrivingSignal::Sampled(SampledSignal::from_fn(|t| (-t * t).exp(), -8.0, 8.0, 4001).unwrap())
    }

    #[test]
    fn closed_forms() {
        let tau = Complex64::new(0.4, -1.3);
        let g = ast(&DrivingSignal::Impulse, tau).unwrap().g;
        assert!((g - 1.0 / (2.0 * PI * I * tau)).norm() < 1e-16);
        assert_eq!(ast(&DrivingSignal::Static, tau).unwrap().g.re, 0.5);
        assert_eq!(ast(&DrivingSignal::Static, tau.conj()).unwrap().g.re, -0.5);
        let h = ast(&DrivingSignal::Harmonic { omega0: -2.0 }, tau).unwrap();
        assert_eq!(h.g, Complex64::new(0.0, 0.0));
        assert!(ast(&DrivingSignal::Impulse, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn cauchy_ft_values() {
        assert_eq!(cauchy_ft(0.0, 2.0).unwrap(), 0.5);
        assert!((cauchy_ft(1.0, 1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-16);
        assert_eq!(cauchy_ft(1.0, -1.0).unwrap(), 0.0);
        assert_eq!(cauchy_ft(-1.0, -1.0).unwrap(), -(-1.0f64).exp());
    }

    #[test]
    fn derivatives_by_differences() {
        let tau = Complex64::new(0.3, -0.8);
        for s in [DrivingSignal::Impulse, DrivingSignal::Harmonic { omega0: 1.7 }] {
            let v = ast(&s, tau).unwrap();
            let errs: Vec<f64> = [1e-2, 5e-3]
                .iter()
                .map(|&h| {
                    let d = (ast(&s, tau + h).unwrap().g - ast(&s, tau - h).unwrap().g) / (2.0 * h);
                    (d - v.g_prime).norm()
                })
                .collect();
            let slope = (errs[0] / errs[1]).log2();
            assert!(slope > 1.9, "slope {slope}");
            let h = 1e-4;
            let d2 = (ast(&s, tau + h).unwrap().g_prime - ast(&s, tau - h).unwrap().g_prime) / (2.0 * h);
            assert!((d2 - v.g_second).norm() < 1e-6 * v.g_second.norm());
        }
    }

    #[test]
    fn g_tilde_forms() {
        let tau = Complex64::new(0.6, -1.5);
        let q = 0.7;
        let gt = g_tilde(&DrivingSignal::Impulse, tau, q).unwrap();
        let z2 = -(tau * tau + q * q);
        assert!((gt - I * tau / (2.0 * PI * z2)).norm() < 1e-12 * gt.norm());
        let w = 1.3;
        let gh = g_tilde(&DrivingSignal::Harmonic { omega0: w }, tau, q).unwrap();
        let want = (-I * w * tau).exp() * (w * q).cosh();
        assert!((gh - want).norm() < 1e-12 * want.norm());
        assert_eq!(g_tilde(&gaussian(), tau, 0.3).unwrap(), g_tilde(&gaussian(), tau, -0.3).unwrap());
        assert_eq!(g_tilde(&DrivingSignal::Impulse, tau, 0.0).unwrap(), ast(&DrivingSignal::Impulse, tau).unwrap().g);
    }

    #[test]
    fn sampled_gaussian_time_vs_frequency() {
        let tau = Complex64::new(0.3, -0.5);
        let g = ast(&gaussian(), tau).unwrap().g;
        // Half-line frequency synthesis with ĝ₀(ω) = √π e^{−ω²/4}.
        let spec = QuadratureSpec::new(1e-13, 1e-16);
        let f = integrate(|w| PI.sqrt() * (-w * w / 4.0).exp() * (-I * w * tau).exp() / (2.0 * PI), 0.0, 20.0, &spec)
            .unwrap()
            .value;
        assert!((g - f).norm() < 1e-8, "{g} vs {f}");
    }

    #[test]
    fn signal_ft_values() {
        let v = signal_ft(&DrivingSignal::Impulse, 2.0, 1.0).unwrap();
        assert!((v.weight().re - (-2.0f64).exp()).abs() < 1e-16);
        match signal_ft(&DrivingSignal::Harmonic { omega0: 3.0 }, 3.0, 1.0).unwrap() {
            Spectrum::DeltaLine { frequency, weight } => {
                assert_eq!(frequency, 3.0);
                assert!((weight.re - 2.0 * PI * (-3.0f64).exp()).abs() < 1e-15);
            }
            _ => panic!("expected a spectral line"),
        }
        let s = signal_ft(&gaussian(), 1.0, 0.5).unwrap().weight();
        let want = PI.sqrt() * (-0.25f64).exp() * (-0.5f64).exp();
        assert!((s - want).norm() < 1e-9);
    }

    #[test]
    fn spline_reproduces_cubics() {
        let s = SampledSignal::from_fn(|t| 2.0 * t - 1.0, 0.0, 1.0, 11).unwrap();
        assert!((s.value(0.37) - (2.0 * 0.37 - 1.0)).abs() < 1e-15);
        assert_eq!(s.value(1.5), 0.0);
    }
}
