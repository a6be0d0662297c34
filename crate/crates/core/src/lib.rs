//! Pulsed beams from point sources in complex spacetime.
//!
//! A source at the imaginary point `iy = (iy⃗, iu)` radiates a field that is
//! singular only on a disk of radius `|y⃗|` and, for `|u| > |y⃗|`, forms a
//! pulsed beam collimated along `ū y⃗`.  The crate evaluates these fields in
//! closed form, the distributions that source them, their Fourier-domain forms
//! and angular spectra, and the electromagnetic wavelets built from them, and
//! cross-checks each closed form against an independent quadrature or finite
//! difference.
//!
//! Units have `c = 1`.  Spacetime pairing is `k·x = k⃗·x⃗ − ωt` and Fourier
//! transforms carry the kernel `e^{−ik·x}`.

// Tabulated coefficients keep their published digits; `!(x > 0.0)` style
// guards are there to reject NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod beams;
pub mod cli;
pub mod em;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod oracle;
pub mod render;
pub mod scenario;
pub mod signals;
pub mod sources;
pub mod spectral;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
