//! Scenario files driving the command-line runner.
//!
//! A scenario is one JSON object whose `kind` field selects the job:
//!
//! ```json
//! {
//!   "kind": "field",
//!   "y": { "y": [0.0, 0.0, 1.0], "u": 1.01 },
//!   "signal": { "type": "impulse" },
//!   "quantity": "propagator",
//!   "grid": { "x1": { "min": -3.0, "max": 3.0, "steps": 400 },
//!             "x3": { "min": -3.0, "max": 3.0, "steps": 400 } },
//!   "times": [0.1, 1.0, 2.0, 3.0],
//!   "output": { "stem": "wavefronts" }
//! }
//! ```
//!
//! Signals are written inline (`{"type": "harmonic", "omega0": 2.0}`) or as a
//! path to a `time,value` CSV (`{"sampled_csv": "pulse.csv"}`), resolved
//! relative to the scenario file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::beams::Causality;
use crate::em::DipoleMoment;
use crate::error::{Error, Result};
use crate::geometry::SourcePoint;
use crate::signals::{DrivingSignal, SampledSignal};
use crate::sources::CatalogFunction;
use crate::spectral::SpectralQuantity;

/// Uniform axis of `steps` nodes from `min` to `max` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps }
    }

    pub fn step(&self) -> f64 {
        if self.steps > 1 {
            (self.max - self.min) / (self.steps - 1) as f64
        } else {
            0.0
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.steps).map(|i| self.min + h * i as f64).collect()
    }

    fn validate(&self, name: &str) -> Result<()> {
        let ok = self.steps >= 1 && self.min.is_finite() && self.max.is_finite() && (self.steps == 1 || self.max > self.min);
        if ok {
            Ok(())
        } else {
            Err(Error::Scenario(format!("axis {name} must have steps >= 1 and max > min")))
        }
    }
}

/// Rectangle in the `x₁–x₃` plane (`x₂ = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x1: Axis,
    pub x3: Axis,
}

impl Grid {
    /// Larger of the two node spacings.
    pub fn step(&self) -> f64 {
        self.x1.step().max(self.x3.step())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    /// File-name prefix inside the output directory.
    pub stem: String,
}

/// A driving signal, inline or from a `time,value` CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignalSpec {
    Inline(DrivingSignal),
    File { sampled_csv: PathBuf },
}

impl Default for SignalSpec {
    fn default() -> Self {
        SignalSpec::Inline(DrivingSignal::Impulse)
    }
}

impl SignalSpec {
    pub fn resolve(&self, base: &Path) -> Result<DrivingSignal> {
        match self {
            SignalSpec::Inline(s) => Ok(s.clone()),
            SignalSpec::File { sampled_csv } => Ok(DrivingSignal::Sampled(SampledSignal::from_csv(base.join(sampled_csv))?)),
        }
    }
}

/// Scalar field rendered on the slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldQuantity {
    /// Retarded extended propagator `D̃⁺`.
    Propagator,
    /// Driven beam `W` for the scenario's signal.
    DrivenBeam,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldScenario {
    pub y: SourcePoint,
    /// Optional sweep over `u` with `y⃗` fixed; frames are `u × times`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub u_values: Vec<f64>,
    #[serde(default)]
    pub signal: SignalSpec,
    pub quantity: FieldQuantity,
    pub grid: Grid,
    pub times: Vec<f64>,
    pub output: OutputSpec,
}

impl FieldScenario {
    /// Source points of the sweep (just `y` when no sweep is given).
    pub fn sources(&self) -> Vec<SourcePoint> {
        if self.u_values.is_empty() {
            vec![self.y]
        } else {
            self.u_values.iter().map(|&u| SourcePoint::new(self.y.y, u)).collect()
        }
    }
}

/// Which number of the complex field `F = D + iB` is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmComponent {
    X,
    Y,
    Z,
    /// `Re = |D|`, `Im = |B|`, `Abs = |F|`.
    Norm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmFieldScenario {
    pub y: SourcePoint,
    pub dipole: DipoleMoment,
    #[serde(default = "retarded")]
    pub which: Causality,
    pub component: EmComponent,
    pub grid: Grid,
    pub times: Vec<f64>,
    pub output: OutputSpec,
}

fn retarded() -> Causality {
    Causality::Retarded
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralAxes {
    pub kx: Axis,
    pub ky: Axis,
    pub kz: Axis,
    pub omega: Axis,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumScenario {
    pub y: SourcePoint,
    #[serde(default)]
    pub signal: SignalSpec,
    pub quantity: SpectralQuantity,
    #[serde(default)]
    pub eps: f64,
    pub axes: SpectralAxes,
    pub output: OutputSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylScenario {
    pub a_values: Vec<f64>,
    pub omega_values: Vec<f64>,
    /// Random `(ρ, ξ)` samples per `(a, ω)` pair and sign case.
    pub points_per_case: usize,
    /// Radii (in units of `a`) at which the disk jump is checked.
    #[serde(default)]
    pub jump_radii: Vec<f64>,
    pub output: OutputSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceTestScenario {
    pub y: SourcePoint,
    pub t: f64,
    pub functions: Vec<CatalogFunction>,
    pub signals: Vec<SignalSpec>,
    pub eps: Vec<f64>,
    pub output: OutputSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyScenario {
    pub output: OutputSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scenario {
    Field(FieldScenario),
    EmField(EmFieldScenario),
    Spectrum(SpectrumScenario),
    WeylVerify(WeylScenario),
    SourceTest(SourceTestScenario),
    VerifyAll(VerifyScenario),
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Field(_) => "field",
            Scenario::EmField(_) => "em-field",
            Scenario::Spectrum(_) => "spectrum",
            Scenario::WeylVerify(_) => "weyl-verify",
            Scenario::SourceTest(_) => "source-test",
            Scenario::VerifyAll(_) => "verify-all",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Scenario::Field(f) => {
                for y in f.sources() {
                    timelike(&y)?;
                }
                validate_slice(&f.grid, &f.times)
            }
            Scenario::EmField(e) => {
                timelike(&e.y)?;
                validate_slice(&e.grid, &e.times)
            }
            Scenario::Spectrum(s) => {
                for (ax, name) in [(s.axes.kx, "kx"), (s.axes.ky, "ky"), (s.axes.kz, "kz"), (s.axes.omega, "omega")] {
                    ax.validate(name)?;
                }
                if !(s.eps >= 0.0) {
                    return Err(Error::Scenario("eps must be >= 0".into()));
                }
                Ok(())
            }
            Scenario::WeylVerify(w) => {
                if w.a_values.iter().any(|&a| !(a >= 0.0)) || w.omega_values.iter().any(|&o| !(o > 0.0)) {
                    return Err(Error::Scenario("weyl: need a >= 0 and omega > 0".into()));
                }
                Ok(())
            }
            Scenario::SourceTest(s) => {
                if !(s.y.is_timelike() && s.y.a() > 0.0) {
                    return Err(Error::Scenario("source-test needs a timelike y with a > 0".into()));
                }
                if s.eps.iter().any(|&e| !(e > 0.0)) {
                    return Err(Error::Scenario("eps values must be positive".into()));
                }
                Ok(())
            }
            Scenario::VerifyAll(_) => Ok(()),
        }
    }
}

fn timelike(y: &SourcePoint) -> Result<()> {
    if y.is_timelike() {
        Ok(())
    } else {
        Err(Error::Scenario(format!("source is not timelike: |u| = {} <= a = {}", y.u.abs(), y.a())))
    }
}

fn validate_slice(grid: &Grid, times: &[f64]) -> Result<()> {
    grid.x1.validate("x1")?;
    grid.x3.validate("x3")?;
    if times.is_empty() || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::Scenario("times must be a non-empty list of finite values".into()));
    }
    Ok(())
}
