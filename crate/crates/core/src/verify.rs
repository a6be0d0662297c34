//! The acceptance suite: nine groups of checks with pinned tolerances.
//!
//! Every group draws its random inputs from its own ChaCha8 stream seeded
//! with `seed + group`, so a report is a pure function of the seed, the
//! profile and the injected fault.  Wall-clock times vary from run to run;
//! they are kept out of the report and returned separately.

use std::f64::consts::PI;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::{DMatrix, Matrix3, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::beams::{
    extended_propagator, minkowski_limit_probe, propagator_from_parts, Causality, ComplexSpacetimePoint, ProbeResolution,
    SpacetimeBump,
};
use crate::em::{
    dipole_field, em_bracket, em_wavelet_prefactor, helicity_projector, reproducing_kernel, spin_matrix, wavelet_dyadic,
};
use crate::error::{Error, Result};
use crate::geometry::{complex_distance, os_frame, pq_from_cylindrical, SourcePoint};
use crate::numerics::{extrapolate_to_zero, rel_err, QuadratureSpec};
use crate::oracle::{light_cone_shell, shielded_volume};
use crate::render::{angular_fwhm, anisotropy, far_zone_preset, field_frames, near_zone_preset, ridge_offsets, Sample};
use crate::scenario::{Axis, Grid};
use crate::signals::DrivingSignal;
use crate::sources::{
    bare_source_apply, delta1_apply, shielded_source_apply, static_source_apply, CatalogFunction,
};
use crate::spectral::{cancellation_terms, k_eps_map, omega_filter, pulsed_beam_ft, WaveVector};
use crate::weyl::{jump_closed, jump_spectral, weyl_eval, xi_min, WeylComponent};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Tolerance profile.  `Strict` tightens every error tolerance tenfold;
/// structural checks (monotonicity, grid-step offsets, counts) are unchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Default,
    Strict,
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(Profile::Default),
            "strict" => Ok(Profile::Strict),
            _ => Err(Error::InvalidInput(format!("unknown tolerance profile {s:?}"))),
        }
    }
}

/// Deliberate defects for negative-control runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Use `cos(μa) − (l/μ) sin(μa)` as the disk filter in the cancellation check.
    FlipFilterSine,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub profile: Profile,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { profile: Profile::Default, seed: 20240611, fault: None }
    }
}

/// One line of the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: usize,
    pub name: String,
    pub expected: String,
    /// Measured error (or 1/0 for yes/no checks).
    pub got: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub profile: Profile,
    pub seed: u64,
    pub fault: Option<Fault>,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub criterion: usize,
    pub title: String,
    pub seconds: f64,
    pub budget_seconds: f64,
    pub within_budget: bool,
}

/// Titles and runtime budgets (seconds) of the nine groups.
pub const CRITERIA: [(&str, f64); 9] = [
    ("geometry invariants", 5.0),
    ("propagator identities", 1.0),
    ("Minkowskian limit", 60.0),
    ("source theorems", 120.0),
    ("Fourier-source identity", 60.0),
    ("cancellation identity", 1.0),
    ("generalized Weyl", 120.0),
    ("electromagnetic wavelets", 60.0),
    ("far- and near-zone renders", 120.0),
];

struct Checker {
    criterion: usize,
    scale: f64,
    checks: Vec<Check>,
}

impl Checker {
    fn new(criterion: usize, profile: Profile) -> Self {
        let scale = match profile {
            Profile::Default => 1.0,
            Profile::Strict => 0.1,
        };
        Self { criterion, scale, checks: Vec::new() }
    }

    fn push(&mut self, name: &str, expected: &str, got: f64, tolerance: f64) {
        self.checks.push(Check {
            criterion: self.criterion,
            name: name.into(),
            expected: expected.into(),
            got,
            tolerance,
            pass: got <= tolerance,
        });
    }

    /// Error check; the tolerance follows the profile.
    fn error(&mut self, name: &str, expected: &str, got: f64, tol: f64) {
        self.push(name, expected, got, tol * self.scale);
    }

    /// Structural bound, independent of the profile.
    fn bound(&mut self, name: &str, expected: &str, got: f64, tol: f64) {
        self.push(name, expected, got, tol);
    }

    fn holds(&mut self, name: &str, expected: &str, ok: bool) {
        self.push(name, expected, if ok { 0.0 } else { 1.0 }, 0.0);
    }
}

fn rng_for(opts: &VerifyOptions, criterion: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(criterion as u64))
}

fn uniform3(rng: &mut ChaCha8Rng, half: f64) -> [f64; 3] {
    [rng.gen_range(-half..half), rng.gen_range(-half..half), rng.gen_range(-half..half)]
}

/// Random timelike source with `a ∈ [a0, a1)` and `u − a ∈ [0.1, 1.1)`, `u > 0`.
fn random_source(rng: &mut ChaCha8Rng, a0: f64, a1: f64) -> SourcePoint {
    let dir = loop {
        let v = Vector3::from(uniform3(rng, 1.0));
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            break v / n;
        }
    };
    let a = rng.gen_range(a0..a1);
    let u = a + rng.gen_range(0.1..1.1);
    SourcePoint::new((dir * a).into(), u)
}

/// Run one group; returns its checks and wall-clock seconds.
pub fn run_criterion(criterion: usize, opts: &VerifyOptions) -> Result<(Vec<Check>, f64)> {
    let mut ck = Checker::new(criterion, opts.profile);
    let mut rng = rng_for(opts, criterion);
    let start = Instant::now();
    match criterion {
        1 => geometry_invariants(&mut ck, &mut rng)?,
        2 => propagator_identities(&mut ck, &mut rng)?,
        3 => minkowski_limit(&mut ck)?,
        4 => source_theorems(&mut ck, &mut rng)?,
        5 => fourier_source(&mut ck, &mut rng)?,
        6 => cancellation(&mut ck, &mut rng, opts.fault)?,
        7 => generalized_weyl(&mut ck, &mut rng)?,
        8 => em_suite(&mut ck, &mut rng)?,
        9 => renders(&mut ck)?,
        _ => return Err(Error::InvalidInput(format!("no criterion {criterion}"))),
    }
    Ok((ck.checks, start.elapsed().as_secs_f64()))
}

/// Run all nine groups in order.
pub fn run_all(opts: &VerifyOptions) -> Result<(Report, Vec<Timing>)> {
    run_selected(opts, &[1, 2, 3, 4, 5, 6, 7, 8, 9])
}

/// Run the listed groups (1-based) in the order given.
pub fn run_selected(opts: &VerifyOptions, criteria: &[usize]) -> Result<(Report, Vec<Timing>)> {
    let mut checks = Vec::new();
    let mut timings = Vec::new();
    for &n in criteria {
        let &(title, budget) = CRITERIA
            .get(n.wrapping_sub(1))
            .ok_or_else(|| Error::InvalidInput(format!("no criterion {n}")))?;
        let (mut c, secs) = run_criterion(n, opts)?;
        checks.append(&mut c);
        timings.push(Timing {
            criterion: n,
            title: title.to_string(),
            seconds: secs,
            budget_seconds: budget,
            within_budget: secs <= budget,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok((Report { profile: opts.profile, seed: opts.seed, fault: opts.fault, pass, checks }, timings))
}

fn geometry_invariants(ck: &mut Checker, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut w = [0.0f64; 5];
    let mut grads = 0;
    for _ in 0..10_000 {
        let y = SourcePoint::new(uniform3(rng, 1.5), 3.0);
        let x = Vector3::from(uniform3(rng, 3.0));
        let Ok(cd) = complex_distance(&x, &y) else { continue };
        let (p, q, a) = (cd.p, cd.q, cd.a);
        let s = cd.r * cd.r + a * a;
        w[0] = w[0].max(((p * p - q * q) - (cd.r * cd.r - a * a)).abs() / s);
        w[1] = w[1].max((p * q - a * cd.xi).abs() / s);
        w[2] = w[2].max((a * a * cd.rho * cd.rho - (p * p + a * a) * (a * a - q * q)).abs() / (s * s));
        w[3] = w[3].max((q.abs() - a).max(0.0) / a);
        // Gradients are smooth away from the circle; sample where the
        // central difference is well conditioned.
        if (cd.rho - a).hypot(cd.xi) > 0.2 * a && p > 0.05 {
            let fr = os_frame(&x, &y)?;
            let h = 1e-5;
            let mut fd_p = Vector3::zeros();
            let mut fd_q = Vector3::zeros();
            for j in 0..3 {
                let mut e = Vector3::zeros();
                e[j] = h;
                let plus = complex_distance(&(x + e), &y)?;
                let minus = complex_distance(&(x - e), &y)?;
                fd_p[j] = (plus.p - minus.p) / (2.0 * h);
                fd_q[j] = (plus.q - minus.q) / (2.0 * h);
            }
            let scale = fr.grad_p.norm().max(fr.grad_q.norm());
            w[4] = w[4].max((fd_p - fr.grad_p).norm() / scale).max((fd_q - fr.grad_q).norm() / scale);
            grads += 1;
        }
    }
    ck.error("p^2 - q^2 = r^2 - a^2", "relative residual", w[0], 1e-11);
    ck.error("p q = a xi", "relative residual", w[1], 1e-11);
    ck.error("a^2 rho^2 = (p^2 + a^2)(a^2 - q^2)", "relative residual", w[2], 1e-11);
    ck.error("|q| <= a", "relative excess", w[3], 1e-11);
    ck.error("OS gradients vs central differences", "relative error", w[4], 1e-7);
    ck.holds("gradient sample size", ">= 5000 points", grads >= 5000);
    Ok(())
}

fn random_tube_point(rng: &mut ChaCha8Rng) -> ComplexSpacetimePoint {
    let mut y = random_source(rng, 0.05, 1.0);
    if rng.gen_bool(0.5) {
        y = y.negated();
    }
    loop {
        let x = Vector3::from(uniform3(rng, 2.0));
        if complex_distance(&x, &y).map(|cd| cd.norm_sqr().sqrt() > 0.05).unwrap_or(false) {
            return ComplexSpacetimePoint::new(x, rng.gen_range(-2.0..2.0), y);
        }
    }
}

fn propagator_identities(ck: &mut Checker, rng: &mut ChaCha8Rng) -> Result<()> {
    let (mut split, mut hom, mut flip) = (0.0f64, 0.0f64, 0.0f64);
    let s = 2.5;
    for _ in 0..100 {
        let z = random_tube_point(rng);
        let dp = extended_propagator(&z, Causality::Retarded)?;
        let dm = extended_propagator(&z, Causality::Advanced)?;
        let g = 1.0 / (4.0 * PI * PI * z.square());
        split = split.max(rel_err(I * dm - I * dp, g));
        let zs = z.scaled(s);
        for (which, d) in [(Causality::Retarded, dp), (Causality::Advanced, dm)] {
            hom = hom.max(rel_err(extended_propagator(&zs, which)? / (s * s), d));
            let rt = z.distance()?.rt();
            let flipped = propagator_from_parts(-rt, z.tau(), which);
            let other = propagator_from_parts(rt, z.tau(), which.flipped());
            flip = flip.max(rel_err(flipped, -other));
        }
    }
    ck.error("i D- - i D+ = 1/(4 pi^2 z^2)", "relative error, 100 points", split, 1e-12);
    ck.error("D(z) = s^-2 D(z/s), s = 2.5", "relative error, 100 points", hom, 1e-12);
    ck.error("branch flip D+- -> -D-+", "relative error, 100 points", flip, 1e-12);
    Ok(())
}

fn minkowski_limit(ck: &mut Checker) -> Result<()> {
    let y = SourcePoint::new([0.0, 0.0, 0.5], 1.0);
    let eps = [1e-1, 1e-2, 1e-3, 1e-4];
    let res = ProbeResolution { radial: 16, polar: 16, azimuthal: 16 };
    // Bumps centred on the forward light cone, clear of the origin.
    let on_cone = [([0.0, 0.0, 1.5], 0.5), ([1.2, -0.4, 0.3], 0.6), ([-0.8, 1.1, -0.9], 0.7)];
    let mut worst = 0.0f64;
    for (center, radius) in on_cone {
        let t0 = Vector3::from(center).norm();
        let bump = SpacetimeBump { center, t0, radius, amplitude: 1.0 };
        let series = minkowski_limit_probe(&bump, &y, &eps, Causality::Retarded, res)?;
        worst = worst.max(rel_err(series.extrapolated, light_cone_shell(&bump, 1.0)?));
    }
    ck.error("Plemelj probe -> retarded shell (3 bumps)", "relative error of the extrapolated limit", worst, 1e-3);

    // Support strictly inside the cone: t < r everywhere.
    let inside = SpacetimeBump { center: [0.0, 0.0, 2.0], t0: 0.5, radius: 0.5, amplitude: 1.0 };
    let reference = light_cone_shell(&SpacetimeBump { t0: 2.0, ..inside }, 1.0)?.norm();
    let series = minkowski_limit_probe(&inside, &y, &eps, Causality::Retarded, res)?;
    ck.error("interior bump -> 0", "|limit| / shell of the same bump on the cone", series.extrapolated.norm() / reference, 1e-3);

    // Riemann function: retarded minus advanced probes give both shells.
    let both = SpacetimeBump { center: [0.9, 0.3, 0.0], t0: 0.2, radius: 0.85, amplitude: 1.0 };
    let ret = minkowski_limit_probe(&both, &y, &eps, Causality::Retarded, res)?;
    let adv = minkowski_limit_probe(&both, &y, &eps, Causality::Advanced, res)?;
    let want = light_cone_shell(&both, 1.0)? - light_cone_shell(&both, -1.0)?;
    ck.error(
        "Riemann pairing = shell(t=r) - shell(t=-r)",
        "relative error of the extrapolated limit",
        rel_err(ret.extrapolated - adv.extrapolated, want),
        1e-3,
    );
    Ok(())
}

fn random_test_function(rng: &mut ChaCha8Rng, a: f64, i: usize) -> CatalogFunction {
    let dir = Vector3::from(uniform3(rng, 1.0));
    let center: [f64; 3] = (dir * (0.5 * a)).into();
    if i.is_multiple_of(2) {
        CatalogFunction::GaussianBump { center, width: rng.gen_range(0.15..0.3), amplitude: rng.gen_range(0.5..2.0) }
    } else {
        CatalogFunction::PolyBump {
            center,
            radius: rng.gen_range(0.5..0.9),
            constant: rng.gen_range(0.5..1.5),
            slope: uniform3(rng, 1.0),
        }
    }
}

fn source_theorems(ck: &mut Checker, rng: &mut ChaCha8Rng) -> Result<()> {
    let y = SourcePoint::new([0.2, -0.1, 0.7], 1.2);
    let signals = [DrivingSignal::Impulse, DrivingSignal::Harmonic { omega0: 2.5 }, DrivingSignal::Static];
    let spec = QuadratureSpec::new(1e-7, 1e-15).with_max_subdivisions(4000);
    let eps_list = [0.04, 0.02, 0.01, 0.005, 0.0025, 0.00125];
    let (mut vol, mut lim) = (0.0f64, 0.0f64);
    for i in 0..10 {
        let f = random_test_function(rng, y.a(), i);
        let t = rng.gen_range(-0.4..0.4);
        for g in &signals {
            let surface = shielded_source_apply(&f, &y, g, t, 0.3)?.value;
            let volume = shielded_volume(&f, &y, g, t, 0.3, &spec)?;
            vol = vol.max(rel_err(surface, volume));
            let ys = eps_list.iter().map(|&e| shielded_source_apply(&f, &y, g, t, e).map(|s| s.value)).collect::<Result<Vec<_>>>()?;
            let (limit, _) = extrapolate_to_zero(&eps_list, &ys);
            lim = lim.max(rel_err(limit, bare_source_apply(&f, &y, g, t)?.value));
        }
    }
    ck.error("shielded source vs volume oracle", "relative error, 10 functions x 3 signals", vol, 1e-4);
    ck.error("eps -> 0 limit vs bare disk source", "relative error, 10 functions x 3 signals", lim, 1e-6);
    let unit = static_source_apply(&CatalogFunction::Constant, &y)?.value;
    ck.error("<delta3, 1> = 1", "absolute error", (unit - 1.0).norm(), 1e-12);
    Ok(())
}

fn fourier_source(ck: &mut Checker, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let y = random_source(rng, 0.2, 1.5);
        let k = uniform3(rng, 4.0);
        let kv = Vector3::from(k);
        let n = y.y_hat().ok_or_else(|| Error::Degenerate("a = 0".into()))?;
        let l = kv.dot(&n);
        let h = kv.cross(&n).norm();
        let a = y.a();
        let want = (h * a).cos() + l * a * sinc(h * a);
        let got = static_source_apply(&CatalogFunction::PlaneWave { k }, &y)?.value;
        worst = worst.max(rel_err(got, c(want)));
    }
    ck.error("static source on plane waves = cos(ha) + (l/h) sin(ha)", "relative error, 50 wave vectors", worst, 1e-8);
    let mut one = 0.0f64;
    for _ in 0..50 {
        let (k, yv) = (rng.gen_range(-5.0..5.0), rng.gen_range(-2.0..2.0));
        one = one.max((delta1_apply(c(1.0), -I * k, yv) - (1.0 + k * yv)).norm());
    }
    ck.error("1D source on e^{-ikx} = 1 + k y", "absolute error, 50 samples", one, 1e-13);
    Ok(())
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn cancellation(ck: &mut Checker, rng: &mut ChaCha8Rng, fault: Option<Fault>) -> Result<()> {
    let (mut canc, mut shell) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let y = random_source(rng, 0.1, 1.5);
        let k = WaveVector::new(uniform3(rng, 3.0), rng.gen_range(-3.0..3.0));
        let eps = rng.gen_range(0.0..1.0);
        let s = k.split(&y);
        let a = y.a();
        let ke = k_eps_map(&s, eps);
        let mut filter = omega_filter(ke.mu_sq(), ke.l_eps, a);
        if fault == Some(Fault::FlipFilterSine) {
            filter = 2.0 * (ke.mu_sq().sqrt() * a).cos() - filter;
        }
        canc = canc.max(rel_err(cancellation_terms(&s, a, eps).combined(), filter));
        let want = c((1.0 + eps * eps) * s.k_sq());
        shell = shell.max((ke.k_sq() - want).norm() / ((1.0 + eps * eps) * (s.kappa * s.kappa + s.omega * s.omega)));
    }
    ck.error("I0 - I1 + i eps I2 + |eta|^2 I3 = Omega(k_eps)", "relative error, 1000 (k, eps)", canc, 1e-12);
    ck.error("k_eps^2 = (1 + eps^2) k^2", "relative error, 1000 (k, eps)", shell, 1e-13);
    let mut on = 0.0f64;
    for _ in 0..200 {
        // μ² = −l² exactly, either root of μ = ±il.
        let l = rng.gen_range(-5.0..5.0);
        let a = rng.gen_range(0.01..1.5);
        on = on.max(rel_err(omega_filter(c(-l * l), c(l), a), c((l * a).exp())));
    }
    ck.error("on-shell Omega = e^{-i mu a} = e^{l a}", "relative error, 200 (l, a) with mu^2 = -l^2", on, 1e-13);
    Ok(())
}

fn generalized_weyl(ck: &mut Checker, rng: &mut ChaCha8Rng) -> Result<()> {
    let a_values = [0.0, 0.5, 1.0];
    let omegas = [1.0, 2.0, 5.0];
    let mut worst = 0.0f64;
    let mut seen = [false; 4];
    for i in 0..100 {
        let (a, w) = (a_values[i % 3], omegas[(i / 3) % 3]);
        let case = (i / 9) % 4;
        let (sw, sx) = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)][case];
        let m = xi_min(a, w);
        let xi = sx * m * (2.0 / m).powf(rng.gen::<f64>());
        let rho = rng.gen_range(0.0..2.5 * a.max(0.5));
        let v = weyl_eval(rho, xi, a, sw * w)?;
        let (p, q) = pq_from_cylindrical(rho, xi, a);
        let rt = Complex64::new(p, -q);
        let want = (I * (sw * w) * rt).exp() / (4.0 * PI * rt);
        worst = worst.max(rel_err(v.value(), want));
        seen[match v.component {
            WeylComponent::LargeRight => 0,
            WeylComponent::SmallLeft => 1,
            WeylComponent::SmallRight => 2,
            WeylComponent::LargeLeft => 3,
        }] = true;
    }
    ck.error("Weyl synthesis = e^{i omega r}/(4 pi r)", "relative error, 100 points", worst, 1e-7);
    ck.holds("all four sign cases covered", "4 of 4", seen.iter().all(|&s| s));
    let mut jump = 0.0f64;
    for a in [0.5, 1.0] {
        for w in omegas {
            for r in [0.1, 0.5, 0.9, 1.1, 1.5, 1.9] {
                let closed = jump_closed(r * a, a, w)?;
                let spectral = jump_spectral(r * a, a, w)?.value;
                jump = jump.max((spectral - closed).norm() / closed.norm().max(1.0 / (2.0 * PI * a)));
            }
        }
    }
    ck.error("disk jump: spectral = closed form", "relative error, rho in (0,a) and (a,2a)", jump, 1e-6);
    Ok(())
}

fn fro(m: &Matrix3<Complex64>) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// `(|∂ₜF + i∇×F|, |∇·F|)` relative to `|∂ₜF|`, by fourth-order differences.
type FieldFn = dyn Fn(Vector3<f64>, f64) -> Result<Vector3<Complex64>>;

fn maxwell_residual<F>(field: F, x: Vector3<f64>, t: f64, h: f64) -> Result<(f64, f64)>
where
    F: Fn(Vector3<f64>, f64) -> Result<Vector3<Complex64>>,
{
    let d = |g: &dyn Fn(f64) -> Result<Vector3<Complex64>>| -> Result<Vector3<Complex64>> {
        Ok((g(-2.0 * h)? - g(2.0 * h)? + (g(h)? - g(-h)?) * c(8.0)) / c(12.0 * h))
    };
    let dt = d(&|s| field(x, t + s))?;
    let mut jac = [Vector3::zeros(); 3];
    for (j, col) in jac.iter_mut().enumerate() {
        let mut e = Vector3::zeros();
        e[j] = 1.0;
        *col = d(&|s| field(x + e * s, t))?;
    }
    // jac[j][i] = ∂_j F_i
    let curl = Vector3::new(jac[1][2] - jac[2][1], jac[2][0] - jac[0][2], jac[0][1] - jac[1][0]);
    let div = jac[0][0] + jac[1][1] + jac[2][2];
    let scale = dt.norm();
    Ok(((dt + curl * I).norm() / scale, div.norm() / scale))
}

fn em_suite(ck: &mut Checker, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut alg = 0.0f64;
    for _ in 0..100 {
        let k3 = uniform3(rng, 3.0);
        let w = Vector3::from(k3).norm() * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let s = spin_matrix(k3, w)?;
        let p = helicity_projector(k3, w)?;
        alg = alg.max(fro(&(s * s * s - s))).max(fro(&(p * p - p))).max(fro(&(p.adjoint() - p))).max(fro(&(s * p - p)));
    }
    ck.error("S^3 = S, P^2 = P = P*, S P = P on the light cone", "max Frobenius residual, 100 wave vectors", alg, 1e-14);

    let (mut curl, mut div) = (0.0f64, 0.0f64);
    let mut points = 0;
    while points < 50 {
        let y = random_source(rng, 0.2, 1.0);
        let x = Vector3::from(uniform3(rng, 2.5));
        let Ok(cd) = complex_distance(&x, &y) else { continue };
        if cd.p < 0.5 * y.a() {
            continue;
        }
        points += 1;
        let t = rng.gen_range(-1.0..1.0);
        let pm = Vector3::from(uniform3(rng, 1.0)).map(c) + Vector3::from(uniform3(rng, 1.0)).map(|v| I * v);
        let h = 2e-3 * cd.norm_sqr().sqrt().min(1.0);
        let mut fields: Vec<Box<FieldFn>> = Vec::new();
        for which in [Causality::Retarded, Causality::Advanced] {
            fields.push(Box::new(move |xx, tt| dipole_field(&ComplexSpacetimePoint::new(xx, tt, y), &pm, which)));
        }
        for j in 0..3 {
            fields.push(Box::new(move |xx, tt| Ok(wavelet_dyadic(&ComplexSpacetimePoint::new(xx, tt, y))?.column(j).into_owned())));
        }
        for f in &fields {
            let (r1, r2) = maxwell_residual(f, x, t, h)?;
            curl = curl.max(r1);
            div = div.max(r2);
        }
    }
    ck.error("Maxwell: d_t F + i curl F = 0 (dipoles, dyadic columns)", "relative residual, 50 exterior points", curl, 1e-4);
    ck.error("Maxwell: div F = 0 (dipoles, dyadic columns)", "relative residual, 50 exterior points", div, 1e-4);

    let (mut adj, mut hom) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let z = random_tube_point(rng);
        let w = wavelet_dyadic(&z)?;
        adj = adj.max(fro(&(w.adjoint() - wavelet_dyadic(&z.conj())?)) / fro(&w));
        let s = rng.gen_range(0.3..3.0);
        hom = hom.max(fro(&(wavelet_dyadic(&z.scaled(s))? / c(s.powi(4)) - w)) / fro(&w));
    }
    ck.error("W(z)^dagger = W(z*)", "relative error, 50 points", adj, 1e-12);
    ck.error("W(z) = s^-4 W(z/s)", "relative error, 50 points", hom, 1e-12);

    // Gram matrix of the reproducing kernel over six forward-tube points.
    let pts: Vec<ComplexSpacetimePoint> = (0..6)
        .map(|_| ComplexSpacetimePoint::new(Vector3::from(uniform3(rng, 1.0)), rng.gen_range(-1.0..1.0), random_source(rng, 0.1, 0.8)))
        .collect();
    let mut gram = DMatrix::<Complex64>::zeros(18, 18);
    for (i, zi) in pts.iter().enumerate() {
        for (j, zj) in pts.iter().enumerate() {
            let k = reproducing_kernel(zi, zj)?;
            gram.view_mut((3 * i, 3 * j), (3, 3)).copy_from(&k);
        }
    }
    let herm = (&gram - gram.adjoint()).norm() / gram.norm();
    let eig = ((&gram + gram.adjoint()) * c(0.5)).symmetric_eigenvalues();
    let (lo, hi) = eig.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &e| (lo.min(e), hi.max(e.abs())));
    ck.error("reproducing-kernel Gram matrix is Hermitian", "relative anti-Hermitian part", herm, 1e-12);
    ck.error("reproducing-kernel Gram matrix is positive", "-(smallest eigenvalue) / largest", (-lo / hi).max(0.0), 1e-12);

    let (mut pre, mut bracket) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let y = random_source(rng, 0.1, 1.0);
        let k3 = uniform3(rng, 3.0);
        let k = WaveVector::new(k3, rng.gen_range(0.1..3.0));
        let Ok(want) = pulsed_beam_ft(&k, &y, &DrivingSignal::Impulse) else { continue };
        pre = pre.max(rel_err(em_wavelet_prefactor(&k, &y)?, want.weight()));
        let w = Vector3::from(k3).norm();
        let p = Vector3::from(uniform3(rng, 1.0)).map(c) + Vector3::from(uniform3(rng, 1.0)).map(|v| I * v);
        let proj = helicity_projector(k3, w)? * p * (-2.0 * I * w * w);
        bracket = bracket.max((em_bracket(k3, w, &p) - proj).norm() / (w * w * p.norm()));
    }
    ck.error("transform prefactor = pulsed-beam transform (impulse)", "relative error, 50 wave vectors", pre, 1e-12);
    ck.error("on-shell bracket = -2 i omega^2 P p", "relative error, 50 wave vectors", bracket, 1e-13);
    Ok(())
}

fn renders(ck: &mut Checker) -> Result<()> {
    let far = far_zone_preset();
    field_frames(&far, &DrivingSignal::Impulse)?;
    let widths = far.sources().iter().map(|y| angular_fwhm(y, 200.0 * y.a())).collect::<Result<Vec<_>>>()?;
    let decreasing = widths.windows(2).all(|w| w[1] < w[0]);
    ck.holds("far-zone angular FWHM strictly decreasing in u (1.5, 1.1, 1.01, 1.001)", "strictly decreasing", decreasing);

    let near = near_zone_preset();
    let frames = field_frames(&near, &DrivingSignal::Impulse)?;
    let y = near.y;
    let mut worst = 0.0f64;
    let mut bins = 0;
    for fr in &frames {
        let r = ridge_offsets(fr, &y, 0.95 * y.a(), 5)?;
        worst = worst.max(r.worst_steps);
        bins += r.bins;
    }
    ck.bound("near-zone ridge of |D+|^2 on p = t", "|p - t| in local grid steps, flow lines q >= 0.95a", worst, 1.0);
    ck.holds("near-zone ridge bins populated", "40 of 40", bins == 40);

    let point = crate::scenario::FieldScenario {
        y: SourcePoint::new([0.0; 3], 1.0),
        u_values: Vec::new(),
        times: vec![0.5, 2.0],
        grid: Grid { x1: Axis::new(-3.0, 3.0, 101), x3: Axis::new(-3.0, 3.0, 101) },
        ..near
    };
    let mut aniso = 0.0f64;
    for fr in field_frames(&point, &DrivingSignal::Impulse)? {
        aniso = aniso.max(anisotropy(&fr, |z| Ok(Sample::from(extended_propagator(z, Causality::Retarded)?)))?);
    }
    ck.error("a = 0 frames are spherically symmetric", "max relative anisotropy", aniso, 1e-10);
    Ok(())
}
