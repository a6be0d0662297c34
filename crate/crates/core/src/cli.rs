//! Scenario runners behind the `causal-beams` binary.
//!
//! Each runner reads a validated [`Scenario`] body, writes its files into the
//! output directory and returns whether its own checks passed (runners that
//! only sample fields always pass).

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::pq_from_cylindrical;
use crate::numerics::{extrapolate_to_zero, rel_err, QuadratureSpec};
use crate::oracle::shielded_volume;
use crate::render::{em_frames, field_frames, write_frames};
use crate::scenario::{EmFieldScenario, FieldScenario, Scenario, SourceTestScenario, SpectrumScenario, WeylScenario};
use crate::signals::DrivingSignal;
use crate::sources::{bare_source_apply, shielded_source_apply};
use crate::spectral::evaluate_grid;
use crate::verify::{run_selected, Profile, Report, VerifyOptions};
use crate::weyl::{jump_closed, jump_spectral, weyl_eval, xi_min};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "CAUSAL_BEAMS_THREADS";

/// Size the global thread pool from `CAUSAL_BEAMS_THREADS` when it is set.
pub fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidInput(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

fn tolerance_scale(profile: Profile) -> f64 {
    match profile {
        Profile::Default => 1.0,
        Profile::Strict => 0.1,
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    Ok(csv::Writer::from_writer(BufWriter::new(File::create(path)?)))
}

pub fn run_field(sc: &FieldScenario, base: &Path, out: &Path) -> Result<PathBuf> {
    let signal = sc.signal.resolve(base)?;
    let frames = field_frames(sc, &signal)?;
    write_frames(out, &sc.output, &frames)
}

pub fn run_em_field(sc: &EmFieldScenario, out: &Path) -> Result<PathBuf> {
    write_frames(out, &sc.output, &em_frames(sc)?)
}

pub fn run_spectrum(sc: &SpectrumScenario, base: &Path, out: &Path) -> Result<PathBuf> {
    let signal = sc.signal.resolve(base)?;
    let ax = [sc.axes.kx.nodes(), sc.axes.ky.nodes(), sc.axes.kz.nodes(), sc.axes.omega.nodes()];
    let rows = evaluate_grid(sc.quantity, &sc.y, &signal, sc.eps, [&ax[0], &ax[1], &ax[2], &ax[3]])?;
    std::fs::create_dir_all(out)?;
    let path = out.join(format!("{}.csv", sc.output.stem));
    let mut w = csv_writer(&path)?;
    w.write_record(["kx", "ky", "kz", "omega", "Re", "Im"])?;
    for r in rows {
        w.serialize((r.k[0], r.k[1], r.k[2], r.omega, r.value.re, r.value.im))?;
    }
    w.flush()?;
    Ok(path)
}

#[derive(Serialize)]
struct WeylRow {
    rho: f64,
    xi: f64,
    a: f64,
    omega: f64,
    case: String,
    re: f64,
    im: f64,
    closed_re: f64,
    closed_im: f64,
    rel_err: f64,
}

#[derive(Serialize)]
struct JumpRow {
    rho: f64,
    a: f64,
    omega: f64,
    re: f64,
    im: f64,
    closed_re: f64,
    closed_im: f64,
    error_estimate: f64,
    err: f64,
}

/// Synthesize `B_ω` at random points of every `(a, ω)` pair and sign case and
/// compare with the closed form (tolerance 1e−7); check the disk jump at the
/// requested radii (tolerance 1e−6).
pub fn run_weyl_verify(sc: &WeylScenario, out: &Path, seed: u64, profile: Profile) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = tolerance_scale(profile);
    std::fs::create_dir_all(out)?;
    let mut pass = true;
    let mut w = csv_writer(&out.join(format!("{}_points.csv", sc.output.stem)))?;
    for &a in &sc.a_values {
        for &om in &sc.omega_values {
            for (sw, sx) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                for _ in 0..sc.points_per_case {
                    let m = xi_min(a, om);
                    let xi = sx * m * (2.0 / m).powf(rng.gen::<f64>());
                    let rho = rng.gen_range(0.0..2.5 * a.max(0.5));
                    let v = weyl_eval(rho, xi, a, sw * om)?;
                    let (p, q) = pq_from_cylindrical(rho, xi, a);
                    let rt = Complex64::new(p, -q);
                    let want = (Complex64::i() * sw * om * rt).exp() / (4.0 * std::f64::consts::PI * rt);
                    let e = rel_err(v.value(), want);
                    pass &= e <= 1e-7 * scale;
                    w.serialize(WeylRow {
                        rho,
                        xi,
                        a,
                        omega: sw * om,
                        case: format!("{:?}", v.component),
                        re: v.value().re,
                        im: v.value().im,
                        closed_re: want.re,
                        closed_im: want.im,
                        rel_err: e,
                    })?;
                }
            }
        }
    }
    w.flush()?;
    let mut w = csv_writer(&out.join(format!("{}_jump.csv", sc.output.stem)))?;
    for &a in sc.a_values.iter().filter(|&&a| a > 0.0) {
        for &om in &sc.omega_values {
            for &r in &sc.jump_radii {
                let s = jump_spectral(r * a, a, om)?;
                let closed = jump_closed(r * a, a, om)?;
                let err = (s.value - closed).norm() / closed.norm().max(1.0 / (2.0 * std::f64::consts::PI * a));
                pass &= err <= 1e-6 * scale;
                w.serialize(JumpRow {
                    rho: r * a,
                    a,
                    omega: om,
                    re: s.value.re,
                    im: s.value.im,
                    closed_re: closed.re,
                    closed_im: closed.im,
                    error_estimate: s.error,
                    err,
                })?;
            }
        }
    }
    w.flush()?;
    Ok(pass)
}

fn signal_label(s: &DrivingSignal) -> String {
    match s {
        DrivingSignal::Impulse => "impulse".into(),
        DrivingSignal::Static => "static".into(),
        DrivingSignal::Harmonic { omega0 } => format!("harmonic({omega0})"),
        DrivingSignal::Sampled(_) => "sampled".into(),
    }
}

#[derive(Serialize)]
struct SourceRow {
    function: usize,
    signal: String,
    eps: f64,
    surface_re: f64,
    surface_im: f64,
    reference_re: f64,
    reference_im: f64,
    rel_err: f64,
}

/// Shielded source against the volume oracle at every `ε` (tolerance 1e−4),
/// and the extrapolation `ε → 0` against the bare disk source (1e−6).  Rows
/// with `eps = 0` hold the extrapolated limit.
pub fn run_source_test(sc: &SourceTestScenario, base: &Path, out: &Path, profile: Profile) -> Result<bool> {
    let scale = tolerance_scale(profile);
    let signals = sc.signals.iter().map(|s| s.resolve(base)).collect::<Result<Vec<_>>>()?;
    let spec = QuadratureSpec::new(1e-7, 1e-15).with_max_subdivisions(4000);
    std::fs::create_dir_all(out)?;
    let mut w = csv_writer(&out.join(format!("{}.csv", sc.output.stem)))?;
    let mut pass = true;
    for (i, f) in sc.functions.iter().enumerate() {
        for g in &signals {
            let mut values = Vec::with_capacity(sc.eps.len());
            for &eps in &sc.eps {
                let s = shielded_source_apply(f, &sc.y, g, sc.t, eps)?.value;
                let v = shielded_volume(f, &sc.y, g, sc.t, eps, &spec)?;
                let e = rel_err(s, v);
                pass &= e <= 1e-4 * scale;
                values.push(s);
                w.serialize(SourceRow {
                    function: i,
                    signal: signal_label(g),
                    eps,
                    surface_re: s.re,
                    surface_im: s.im,
                    reference_re: v.re,
                    reference_im: v.im,
                    rel_err: e,
                })?;
            }
            if sc.eps.len() >= 2 {
                let (limit, _) = extrapolate_to_zero(&sc.eps, &values);
                let bare = bare_source_apply(f, &sc.y, g, sc.t)?.value;
                let e = rel_err(limit, bare);
                pass &= e <= 1e-6 * scale;
                w.serialize(SourceRow {
                    function: i,
                    signal: signal_label(g),
                    eps: 0.0,
                    surface_re: limit.re,
                    surface_im: limit.im,
                    reference_re: bare.re,
                    reference_im: bare.im,
                    rel_err: e,
                })?;
            }
        }
    }
    w.flush()?;
    Ok(pass)
}

/// All nine acceptance groups.
pub const ALL_CRITERIA: [usize; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

/// Run acceptance groups and write `<stem>.json` (deterministic) and
/// `<stem>_timing.json` (wall clock).
pub fn run_verify_all(opts: &VerifyOptions, criteria: &[usize], out: &Path, stem: &str) -> Result<Report> {
    let (report, timings) = run_selected(opts, criteria)?;
    std::fs::create_dir_all(out)?;
    std::fs::write(out.join(format!("{stem}.json")), serde_json::to_string_pretty(&report)? + "\n")?;
    std::fs::write(out.join(format!("{stem}_timing.json")), serde_json::to_string_pretty(&timings)? + "\n")?;
    Ok(report)
}

/// One report line per check.
pub fn format_check_lines(report: &Report) -> Vec<String> {
    report
        .checks
        .iter()
        .map(|c| {
            format!(
                "[{}] C{} {}: got {:.3e}, tolerance {:.1e} ({})",
                if c.pass { "PASS" } else { "FAIL" },
                c.criterion,
                c.name,
                c.got,
                c.tolerance,
                c.expected
            )
        })
        .collect()
}

/// Dispatch a loaded scenario.  `base` resolves relative signal files.
pub fn run_scenario(sc: &Scenario, base: &Path, out: &Path, opts: &VerifyOptions) -> Result<bool> {
    match sc {
        Scenario::Field(f) => run_field(f, base, out).map(|_| true),
        Scenario::EmField(e) => run_em_field(e, out).map(|_| true),
        Scenario::Spectrum(s) => run_spectrum(s, base, out).map(|_| true),
        Scenario::WeylVerify(w) => run_weyl_verify(w, out, opts.seed, opts.profile),
        Scenario::SourceTest(s) => run_source_test(s, base, out, opts.profile),
        Scenario::VerifyAll(v) => {
            let report = run_verify_all(opts, &ALL_CRITERIA, out, &v.output.stem)?;
            for line in format_check_lines(&report) {
                println!("{line}");
            }
            Ok(report.pass)
        }
    }
}
