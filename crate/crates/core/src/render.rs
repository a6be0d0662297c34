//! Field frames on the `x₁–x₃` slice and their files.
//!
//! Each frame is written as a CSV table (`x1,x3,t,Re,Im,Abs`) and an 8-bit
//! PGM (P5) image scaled by the frame's own maximum of `Abs`; the scale of
//! every frame goes into a JSON sidecar.  Nodes closer to the branch circle
//! than one grid step are masked: they are left out of the CSV and drawn
//! black.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beams::{driven_beam, extended_propagator, Causality, ComplexSpacetimePoint};
use crate::em::{dipole_field, EmField};
use crate::error::{Error, Result};
use crate::geometry::{complex_distance, cylindrical, os_frame, SourcePoint};
use crate::scenario::{Axis, EmComponent, EmFieldScenario, FieldQuantity, FieldScenario, Grid, OutputSpec, SignalSpec};
use crate::signals::DrivingSignal;

/// One sampled number: real and imaginary part plus the magnitude drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

impl From<Complex64> for Sample {
    fn from(z: Complex64) -> Self {
        Sample { re: z.re, im: z.im, abs: z.norm() }
    }
}

/// Samples of one time step; row-major with `x₃` outer, `None` where masked.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub u: f64,
    pub t: f64,
    pub grid: Grid,
    pub samples: Vec<Option<Sample>>,
}

impl Frame {
    pub fn node(&self, idx: usize) -> Vector3<f64> {
        let n1 = self.grid.x1.steps;
        let (i3, i1) = (idx / n1, idx % n1);
        Vector3::new(
            self.grid.x1.min + self.grid.x1.step() * i1 as f64,
            0.0,
            self.grid.x3.min + self.grid.x3.step() * i3 as f64,
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().flatten().map(|s| s.abs).fold(0.0, f64::max)
    }

    pub fn masked(&self) -> usize {
        self.samples.iter().filter(|s| s.is_none()).count()
    }

    /// 8-bit pixels, top row at the largest `x₃`.
    pub fn pixels(&self) -> Vec<u8> {
        let (n1, n3) = (self.grid.x1.steps, self.grid.x3.steps);
        let m = self.max_abs();
        let mut out = Vec::with_capacity(n1 * n3);
        for i3 in (0..n3).rev() {
            for i1 in 0..n1 {
                let v = match self.samples[i3 * n1 + i1] {
                    Some(s) if m > 0.0 => (255.0 * s.abs / m).round().clamp(0.0, 255.0) as u8,
                    _ => 0,
                };
                out.push(v);
            }
        }
        out
    }
}

/// Distance from `x` to the branch circle of `y` (to the origin when `a = 0`).
pub fn branch_circle_distance(x: &Vector3<f64>, y: &SourcePoint) -> f64 {
    let (rho, xi, _) = cylindrical(x, y);
    (rho - y.a()).hypot(xi)
}

/// Sample `f` at every node of `grid` at time `t`.
pub fn sample_frame<F>(grid: &Grid, y: &SourcePoint, t: f64, f: F) -> Result<Frame>
where
    F: Fn(&ComplexSpacetimePoint) -> Result<Sample> + Sync,
{
    let frame = Frame { u: y.u, t, grid: *grid, samples: Vec::new() };
    let n = grid.x1.steps * grid.x3.steps;
    let guard = grid.step();
    let samples: Result<Vec<Option<Sample>>> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let x = frame.node(idx);
            if branch_circle_distance(&x, y) < guard {
                return Ok(None);
            }
            match f(&ComplexSpacetimePoint::new(x, t, *y)) {
                Ok(s) => Ok(Some(s)),
                Err(Error::Singular(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();
    Ok(Frame { samples: samples?, ..frame })
}

/// Frames of a field scenario, sweep-major then time.
pub fn field_frames(sc: &FieldScenario, signal: &DrivingSignal) -> Result<Vec<Frame>> {
    let jobs: Vec<(SourcePoint, f64)> = sc.sources().into_iter().flat_map(|y| sc.times.iter().map(move |&t| (y, t))).collect();
    jobs.par_iter()
        .map(|(y, t)| {
            sample_frame(&sc.grid, y, *t, |z| {
                let v = match sc.quantity {
                    FieldQuantity::Propagator => extended_propagator(z, Causality::Retarded)?,
                    FieldQuantity::DrivenBeam => driven_beam(z, signal)?,
                };
                Ok(v.into())
            })
        })
        .collect()
}

/// Frames of an electromagnetic dipole scenario.
pub fn em_frames(sc: &EmFieldScenario) -> Result<Vec<Frame>> {
    let p = sc.dipole.vector();
    sc.times
        .par_iter()
        .map(|&t| {
            sample_frame(&sc.grid, &sc.y, t, |z| {
                let f = dipole_field(z, &p, sc.which)?;
                Ok(match sc.component {
                    EmComponent::X => f[0].into(),
                    EmComponent::Y => f[1].into(),
                    EmComponent::Z => f[2].into(),
                    EmComponent::Norm => {
                        let EmField { d, b } = EmField::from_complex(&f);
                        Sample { re: Vector3::from(d).norm(), im: Vector3::from(b).norm(), abs: f.norm() }
                    }
                })
            })
        })
        .collect()
}

/// Sidecar entry for one written frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameRecord {
    pub index: usize,
    pub u: f64,
    pub t: f64,
    /// `Abs` value mapped to pixel 255.
    pub normalization: f64,
    pub masked_nodes: usize,
    pub csv: String,
    pub pgm: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameIndex {
    pub stem: String,
    pub grid: Grid,
    pub frames: Vec<FrameRecord>,
}

pub fn write_csv(path: &Path, frame: &Frame) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    w.write_record(["x1", "x3", "t", "Re", "Im", "Abs"])?;
    for (idx, s) in frame.samples.iter().enumerate() {
        if let Some(s) = s {
            let x = frame.node(idx);
            w.serialize((x[0], x[2], frame.t, s.re, s.im, s.abs))?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_pgm(path: &Path, frame: &Frame) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write!(w, "P5\n{} {}\n255\n", frame.grid.x1.steps, frame.grid.x3.steps)?;
    w.write_all(&frame.pixels())?;
    w.flush()?;
    Ok(())
}

/// Write every frame plus `<stem>_frames.json`; returns the sidecar path.
pub fn write_frames(dir: &Path, out: &OutputSpec, frames: &[Frame]) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut records = Vec::with_capacity(frames.len());
    for (index, frame) in frames.iter().enumerate() {
        let csv = format!("{}_{index:03}.csv", out.stem);
        let pgm = format!("{}_{index:03}.pgm", out.stem);
        write_csv(&dir.join(&csv), frame)?;
        write_pgm(&dir.join(&pgm), frame)?;
        records.push(FrameRecord {
            index,
            u: frame.u,
            t: frame.t,
            normalization: frame.max_abs(),
            masked_nodes: frame.masked(),
            csv,
            pgm,
        });
    }
    let grid = frames.first().map(|f| f.grid).ok_or_else(|| Error::Scenario("no frames".into()))?;
    let index = FrameIndex { stem: out.stem.clone(), grid, frames: records };
    let path = dir.join(format!("{}_frames.json", out.stem));
    std::fs::write(&path, serde_json::to_string_pretty(&index)? + "\n")?;
    Ok(path)
}

/// Far-zone time-lapse of the retarded pulse for `u` approaching `a = 1`.
pub fn far_zone_preset() -> FieldScenario {
    FieldScenario {
        y: SourcePoint::new([0.0, 0.0, 1.0], 1.5),
        u_values: vec![1.5, 1.1, 1.01, 1.001],
        signal: SignalSpec::default(),
        quantity: FieldQuantity::Propagator,
        grid: Grid { x1: Axis::new(-12.0, 12.0, 400), x3: Axis::new(-12.0, 12.0, 400) },
        times: vec![10.0],
        output: OutputSpec { stem: "far_zone".into() },
    }
}

/// Near-zone wavefronts of the retarded pulse at `u = 1.01`.
pub fn near_zone_preset() -> FieldScenario {
    FieldScenario {
        y: SourcePoint::new([0.0, 0.0, 1.0], 1.01),
        u_values: Vec::new(),
        signal: SignalSpec::default(),
        quantity: FieldQuantity::Propagator,
        grid: Grid { x1: Axis::new(-4.0, 4.0, 400), x3: Axis::new(-4.0, 4.0, 400) },
        times: vec![0.1, 1.0, 2.0, 3.0],
        output: OutputSpec { stem: "near_zone".into() },
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Ridge value of `|D̃⁺|` along the ray at angle `θ` from `ŷ` (in the plane of
/// `ŷ` and `x₁`) at radius `r`: its maximum over `t`.
pub fn ray_peak(theta: f64, r: f64, y: &SourcePoint) -> Result<f64> {
    let [e1, _, n] = y.frame();
    let x = (e1 * theta.sin() + n * theta.cos()) * r;
    complex_distance(&x, y)?;
    let f = |t: f64| {
        extended_propagator(&ComplexSpacetimePoint::new(x, t, *y), Causality::Retarded)
            .map(|v| v.norm())
            .unwrap_or(0.0)
    };
    let a = y.a();
    Ok(golden_max(f, r - a - 1.0, r + 1.0, 1e-10 * r.max(1.0)).1)
}

/// Full angular width at half maximum of the far-zone ridge at radius `r`.
pub fn angular_fwhm(y: &SourcePoint, r: f64) -> Result<f64> {
    let peak0 = ray_peak(0.0, r, y)?;
    let g = |th: f64| -> Result<f64> { Ok(ray_peak(th, r, y)? / peak0 - 0.5) };
    let (mut lo, mut hi) = (0.0, std::f64::consts::PI);
    if g(hi)? > 0.0 {
        return Ok(2.0 * hi);
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + hi)
}

/// Ridge of a wavefront frame, binned by flow line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RidgeReport {
    pub bins: usize,
    /// Largest `|p − t|` at a bin maximum, in units of the local grid step in `p`.
    pub worst_steps: f64,
}

/// In each of `bins` equal slices of `q ∈ [q_min, a]` and each half-plane
/// `x₁ ≷ 0`, take the brightest node and measure how far its spheroid `p`
/// lies from `p = t`, relative to `grid step · |∇p|` at that node.
pub fn ridge_offsets(frame: &Frame, y: &SourcePoint, q_min: f64, bins: usize) -> Result<RidgeReport> {
    let a = y.a();
    let mut best: Vec<Option<(f64, usize)>> = vec![None; 2 * bins];
    for (idx, s) in frame.samples.iter().enumerate() {
        let Some(s) = s else { continue };
        let x = frame.node(idx);
        let cd = complex_distance(&x, y)?;
        if cd.q < q_min || cd.q > a {
            continue;
        }
        let b = (((cd.q - q_min) / (a - q_min) * bins as f64) as usize).min(bins - 1) + if x[0] < 0.0 { bins } else { 0 };
        let v = s.abs * s.abs;
        if best[b].is_none_or(|(bv, _)| v > bv) {
            best[b] = Some((v, idx));
        }
    }
    let step = frame.grid.step();
    let mut worst: f64 = 0.0;
    let mut used = 0;
    for (_, idx) in best.into_iter().flatten() {
        let x = frame.node(idx);
        let p = complex_distance(&x, y)?.p;
        let gp = os_frame(&x, y)?.grad_p.norm();
        worst = worst.max((p - frame.t).abs() / (step * gp));
        used += 1;
    }
    Ok(RidgeReport { bins: used, worst_steps: worst })
}

/// Largest relative deviation of a frame from its on-axis radial profile,
/// `max |F(x) − F(|x| ẑ)| / |F(|x| ẑ)|` over unmasked nodes.
pub fn anisotropy<F>(frame: &Frame, f: F) -> Result<f64>
where
    F: Fn(&ComplexSpacetimePoint) -> Result<Sample>,
{
    let y = SourcePoint::new([0.0; 3], frame.u);
    let mut worst: f64 = 0.0;
    for (idx, s) in frame.samples.iter().enumerate() {
        let Some(s) = s else { continue };
        let r = frame.node(idx).norm();
        let radial = f(&ComplexSpacetimePoint::new(Vector3::new(0.0, 0.0, r), frame.t, y))?;
        let d = Complex64::new(s.re - radial.re, s.im - radial.im).norm();
        worst = worst.max(d / radial.abs);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(y: SourcePoint) -> FieldScenario {
        FieldScenario {
            y,
            u_values: Vec::new(),
            signal: SignalSpec::default(),
            quantity: FieldQuantity::Propagator,
            grid: Grid { x1: Axis::new(-2.0, 2.0, 41), x3: Axis::new(-2.0, 2.0, 41) },
            times: vec![0.5, 1.5],
            output: OutputSpec { stem: "t".into() },
        }
    }

    #[test]
    fn masks_the_branch_circle() {
        let sc = small(SourcePoint::new([0.0, 0.0, 1.0], 1.2));
        let frames = field_frames(&sc, &DrivingSignal::Impulse).unwrap();
        assert_eq!(frames.len(), 2);
        let step = sc.grid.step();
        for (idx, s) in frames[0].samples.iter().enumerate() {
            let d = branch_circle_distance(&frames[0].node(idx), &sc.y);
            assert_eq!(s.is_none(), d < step);
        }
        assert!(frames[0].masked() > 0);
    }

    #[test]
    fn point_source_frames_are_isotropic() {
        let sc = small(SourcePoint::new([0.0; 3], 1.0));
        let frames = field_frames(&sc, &DrivingSignal::Impulse).unwrap();
        for fr in &frames {
            let an = anisotropy(fr, |z| Ok(extended_propagator(z, Causality::Retarded)?.into())).unwrap();
            assert!(an <= 1e-10, "anisotropy {an}");
        }
    }

    #[test]
    fn pixels_are_normalized() {
        let sc = small(SourcePoint::new([0.0, 0.0, 1.0], 1.2));
        let fr = &field_frames(&sc, &DrivingSignal::Impulse).unwrap()[1];
        let px = fr.pixels();
        assert_eq!(px.len(), 41 * 41);
        assert_eq!(*px.iter().max().unwrap(), 255);
    }

    #[test]
    fn fwhm_follows_the_pattern() {
        // 1/R is affine in cos θ, so the half-maximum sits at cos θ = 2 − u/a.
        let y = SourcePoint::new([0.0, 0.0, 1.0], 1.5);
        let w = angular_fwhm(&y, 200.0).unwrap();
        assert!((w - 2.0 * (0.5f64).acos()).abs() < 2e-2, "{w}");
    }
}
