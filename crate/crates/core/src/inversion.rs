//! Continuous-domain reconstruction of the Wigner function from ideal or
//! windowed tomograms.
//!
//! Both inversions share one kernel. In polar coordinates (μ, ν) =
//! r(cos φ, sin φ) the reconstruction reads
//!
//! ```text
//! W(p, q) = 𝒩/(2π)² ∫₀^R r dr ∫_𝕋 dφ F(r, φ) e^{−ir(q cos φ + p sin φ)}
//! ```
//!
//! where F(r, φ) is the X-Fourier transform of the tomogram at the frequency
//! matching r. Integrating X first makes the r-integrand decay, so the
//! improper r-integral can be truncated at `radial_cutoff`. F does not depend
//! on the phase-space point and is tabulated once in a [`PolarSpectrum`].

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, TomoError};
use crate::phase_space::{PhaseSpaceGrid, PhaseSpacePoint, WignerField};
use crate::quadrature::{periodic_trapezoid, CompositeRule};
use crate::tomogram::{SymplecticTomogramFunction, TomogramFunction};
use crate::window::WindowFunction;

/// Largest tolerated imaginary part of a reconstructed value.
pub const IMAGINARY_TOLERANCE: f64 = 1e-6;

/// Largest tolerated r·|F(r, φ)| at the outermost radial node.
pub const RADIAL_TAIL_TOLERANCE: f64 = 1e-8;

/// Smallest |Ξ̃(−1)| for which the window is considered invertible.
pub const MIN_CHARACTERISTIC: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionSpec {
    pub radial_cutoff: f64,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    pub x_half_range: f64,
    pub x_nodes: usize,
}

impl Default for InversionSpec {
    fn default() -> Self {
        InversionSpec {
            radial_cutoff: 40.0,
            radial_nodes: 400,
            angular_nodes: 64,
            x_half_range: 8.0,
            x_nodes: 512,
        }
    }
}

impl InversionSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.radial_cutoff > 0.0) || !self.radial_cutoff.is_finite() {
            return Err(TomoError::invalid("radial_cutoff", "must be positive and finite"));
        }
        if !(self.x_half_range > 0.0) || !self.x_half_range.is_finite() {
            return Err(TomoError::invalid("x_half_range", "must be positive and finite"));
        }
        for (name, n) in [
            ("radial_nodes", self.radial_nodes),
            ("angular_nodes", self.angular_nodes),
            ("x_nodes", self.x_nodes),
        ] {
            if n < 16 {
                return Err(TomoError::invalid(name, format!("at least 16 required, got {n}")));
            }
        }
        Ok(())
    }
}

/// 𝒩_Ξ = 1/Ξ̃(−1), the only trace the window leaves on the inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationConstant(Complex64);

impl NormalizationConstant {
    /// Constant of the Dirac window.
    pub fn unit() -> Self {
        NormalizationConstant(Complex64::new(1.0, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

pub fn normalization_constant(window: &WindowFunction) -> Result<NormalizationConstant> {
    let c = window.char_at_one();
    if !(c.norm() > MIN_CHARACTERISTIC) {
        return Err(TomoError::VanishingCharacteristic(c.norm()));
    }
    Ok(NormalizationConstant(c.inv()))
}

/// Tabulated F(r_i, φ_a) on the radial Gauss-Legendre and angular trapezoid
/// nodes, scaled by the normalization constant.
#[derive(Debug, Clone)]
pub struct PolarSpectrum {
    radii: Vec<f64>,
    radial_weights: Vec<f64>,
    cos_phi: Vec<f64>,
    sin_phi: Vec<f64>,
    angle_weight: f64,
    /// Row-major: radius outer, angle inner.
    values: Vec<Complex64>,
}

impl PolarSpectrum {
    /// F(r, φ) = ∫ 𝒲(X, φ) e^{irX} dX for a homodyne tomogram.
    pub fn from_tomogram(tomogram: &TomogramFunction, spec: &InversionSpec) -> Result<Self> {
        spec.validate()?;
        let radial = CompositeRule::new(0.0, spec.radial_cutoff, spec.radial_nodes);
        let xs = CompositeRule::new(-spec.x_half_range, spec.x_half_range, spec.x_nodes);
        let (angles, angle_weight) = periodic_trapezoid(spec.angular_nodes);

        // column per angle, then transpose into radius-major order
        let columns: Vec<Vec<Complex64>> = angles
            .par_iter()
            .map(|&phi| {
                let weighted: Vec<f64> = xs
                    .nodes
                    .iter()
                    .zip(&xs.weights)
                    .map(|(&x, &w)| w * tomogram.eval(x, phi))
                    .collect();
                radial
                    .nodes
                    .iter()
                    .map(|&r| fourier_at(&xs.nodes, &weighted, r))
                    .collect()
            })
            .collect();

        Self::assemble(radial, &angles, angle_weight, columns, Complex64::new(1.0, 0.0))
    }

    /// F(r, φ) = 𝒩 ∫ 𝒲^♯_Ξ(X, r cos φ, r sin φ) e^{iX} dX for a thick
    /// symplectic tomogram. The X-range at radius r is
    /// ±(r·x_half_range + support_radius): the sharp tomogram spreads
    /// proportionally to r and the window adds its own width.
    pub fn from_thick(
        thick: &SymplecticTomogramFunction,
        constant: NormalizationConstant,
        support_radius: f64,
        spec: &InversionSpec,
    ) -> Result<Self> {
        spec.validate()?;
        let radial = CompositeRule::new(0.0, spec.radial_cutoff, spec.radial_nodes);
        let (angles, angle_weight) = periodic_trapezoid(spec.angular_nodes);
        let columns: Vec<Vec<Complex64>> = angles
            .par_iter()
            .map(|&phi| {
                let (s, c) = phi.sin_cos();
                radial
                    .nodes
                    .iter()
                    .map(|&r| {
                        let half = r * spec.x_half_range + support_radius;
                        let xs = CompositeRule::new(-half, half, spec.x_nodes);
                        let weighted: Vec<f64> = xs
                            .nodes
                            .iter()
                            .zip(&xs.weights)
                            .map(|(&x, &w)| w * thick.eval(x, r * c, r * s))
                            .collect();
                        fourier_at(&xs.nodes, &weighted, 1.0)
                    })
                    .collect()
            })
            .collect();

        Self::assemble(radial, &angles, angle_weight, columns, constant.value())
    }

    fn assemble(
        radial: CompositeRule,
        angles: &[f64],
        angle_weight: f64,
        columns: Vec<Vec<Complex64>>,
        scale: Complex64,
    ) -> Result<Self> {
        let n_r = radial.len();
        let n_a = angles.len();
        let mut values = vec![Complex64::new(0.0, 0.0); n_r * n_a];
        for (a, col) in columns.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                values[i * n_a + a] = scale * v;
            }
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(TomoError::NonFinite("tomogram Fourier transform"));
        }
        let r_last = radial.nodes[n_r - 1];
        let tail = values[(n_r - 1) * n_a..]
            .iter()
            .map(|v| r_last * v.norm())
            .fold(0.0, f64::max);
        if tail > RADIAL_TAIL_TOLERANCE {
            return Err(TomoError::RadialTail(tail));
        }
        Ok(PolarSpectrum {
            radii: radial.nodes,
            radial_weights: radial.weights,
            cos_phi: angles.iter().map(|a| a.cos()).collect(),
            sin_phi: angles.iter().map(|a| a.sin()).collect(),
            angle_weight,
            values,
        })
    }

    /// Complex reconstruction integral at `point`; the real part is W(p, q).
    pub fn evaluate_complex(&self, point: PhaseSpacePoint) -> Complex64 {
        let n_a = self.cos_phi.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, (&r, &wr)) in self.radii.iter().zip(&self.radial_weights).enumerate() {
            let row = &self.values[i * n_a..(i + 1) * n_a];
            let mut ring = Complex64::new(0.0, 0.0);
            for ((v, &cp), &sp) in row.iter().zip(&self.cos_phi).zip(&self.sin_phi) {
                let phase = -r * (point.q * cp + point.p * sp);
                let (s, c) = phase.sin_cos();
                ring += v * Complex64::new(c, s);
            }
            acc += ring * (wr * r);
        }
        acc * (self.angle_weight / (4.0 * PI * PI))
    }

    pub fn evaluate(&self, point: PhaseSpacePoint) -> Result<f64> {
        let v = self.evaluate_complex(point);
        if !v.re.is_finite() {
            return Err(TomoError::NonFinite("reconstruction integral"));
        }
        if v.im.abs() > IMAGINARY_TOLERANCE {
            return Err(TomoError::ImaginaryResidue(v.im.abs()));
        }
        Ok(v.re)
    }

    pub fn reconstruct(&self, grid: &PhaseSpaceGrid) -> Result<WignerField> {
        let points: Vec<PhaseSpacePoint> = grid.points().collect();
        let values = points
            .par_iter()
            .map(|&pt| self.evaluate(pt))
            .collect::<Result<Vec<f64>>>()?;
        WignerField::new(*grid, values)
    }
}

fn fourier_at(nodes: &[f64], weighted: &[f64], k: f64) -> Complex64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (&x, &w) in nodes.iter().zip(weighted) {
        let (s, c) = (k * x).sin_cos();
        re += w * c;
        im += w * s;
    }
    Complex64::new(re, im)
}

/// Inverse Radon transform of a homodyne tomogram at one point.
pub fn inverse_radon(tomogram: &TomogramFunction, point: PhaseSpacePoint, spec: &InversionSpec) -> Result<f64> {
    PolarSpectrum::from_tomogram(tomogram, spec)?.evaluate(point)
}

/// Window-independent inversion of a thick tomogram: the same kernel as the
/// ideal case, scaled by 𝒩_Ξ. Only Ξ̃(−1) and the support radius (which
/// bounds the X-range) are read from the window.
pub fn inverse_thick(
    thick: &SymplecticTomogramFunction,
    window: &WindowFunction,
    point: PhaseSpacePoint,
    spec: &InversionSpec,
) -> Result<f64> {
    let constant = normalization_constant(window)?;
    PolarSpectrum::from_thick(thick, constant, window.support_radius(), spec)?.evaluate(point)
}
