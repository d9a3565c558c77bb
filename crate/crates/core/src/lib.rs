//! Homodyne tomography under finite windows, jitter noise and discrete
//! sampling.
//!
//! The crate covers the forward maps from a Wigner function to its homodyne,
//! symplectic and windowed ("thick") tomograms, the continuous inversion
//! formulas, Shannon-Whittaker sampling on ℝ × 𝕋 with the discrete Wigner
//! reconstruction, jitter models and the robustness metrics used by the
//! `tomography` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod inversion;
pub mod phase_space;
pub mod io;
pub mod metrics;
pub mod noise;
pub mod quadrature;
pub mod sampling;
pub mod states;
pub mod tomogram;
pub mod transforms;
pub mod window;

pub use error::{Result, TomoError};
pub use phase_space::{PhaseSpaceGrid, PhaseSpacePoint, WignerField};
pub use tomogram::{canonical_angle, SymplecticTomogramFunction, TomogramFunction};
pub use window::WindowFunction;
