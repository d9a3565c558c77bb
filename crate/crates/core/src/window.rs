//! Smearing windows Ξ and their characteristic value Ξ̃(−1) = ∫ Ξ(z) e^{iz} dz.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Result, TomoError};
use crate::quadrature::{CompositeRule, QuadratureSpec};

/// Allowed deviation of a window's mass from 1.
pub const MASS_TOLERANCE: f64 = 1e-8;

const CHAR_CONVERGENCE_TOLERANCE: f64 = 1e-8;

type DensityFn = dyn Fn(f64) -> f64 + Send + Sync;

#[derive(Clone)]
pub enum WindowProfile {
    /// Absolutely continuous window with a density.
    Density(Arc<DensityFn>),
    /// Finite sum of point masses `(position, weight)`.
    Atoms(Vec<(f64, f64)>),
}

impl fmt::Debug for WindowProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowProfile::Density(_) => f.write_str("Density(..)"),
            WindowProfile::Atoms(a) => f.debug_tuple("Atoms").field(a).finish(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct WindowFunction {
    profile: WindowProfile,
    char_at_one: Complex64,
    support_radius: f64,
    mass: f64,
}

/// Gaussian window of standard deviation `sigma`.
pub fn gaussian_window(sigma: f64) -> Result<WindowFunction> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(TomoError::invalid(
            "sigma",
            format!("must be positive and finite, got {sigma}"),
        ));
    }
    let norm = 1.0 / (2.0 * std::f64::consts::PI * sigma * sigma).sqrt();
    let two_var = 2.0 * sigma * sigma;
    Ok(WindowFunction {
        profile: WindowProfile::Density(Arc::new(move |z| norm * (-z * z / two_var).exp())),
        char_at_one: Complex64::new((-0.5 * sigma * sigma).exp(), 0.0),
        support_radius: 8.0 * sigma,
        mass: 1.0,
    })
}

/// Uniform window on [−a, a].
pub fn uniform_window(a: f64) -> Result<WindowFunction> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(TomoError::invalid("a", format!("must be positive, got {a}")));
    }
    let h = 0.5 / a;
    WindowFunction::from_density(move |z| if z.abs() <= a { h } else { 0.0 }, a)
}

/// Ξ̃(−1) = ∫ Ξ(z) e^{iz} dz by composite Gauss-Legendre quadrature over
/// the range of `spec`. Fails if halving the panel count moves the result
/// by more than 1e-8.
pub fn window_char_at_one<F: Fn(f64) -> f64>(density: F, spec: &QuadratureSpec) -> Result<Complex64> {
    let eval = |rule: &CompositeRule| {
        let (mut re, mut im) = (0.0, 0.0);
        for (&z, &w) in rule.nodes.iter().zip(&rule.weights) {
            let d = w * density(z);
            let (s, c) = z.sin_cos();
            re += d * c;
            im += d * s;
        }
        Complex64::new(re, im)
    };
    let fine = eval(&spec.rule());
    let coarse = eval(&spec.coarse_rule());
    if !(fine.re.is_finite() && fine.im.is_finite()) {
        return Err(TomoError::NonFinite("window characteristic value"));
    }
    let diff = (fine - coarse).norm();
    if diff > CHAR_CONVERGENCE_TOLERANCE {
        return Err(TomoError::NoConvergence {
            what: "window characteristic value",
            diff,
        });
    }
    Ok(fine)
}

impl WindowFunction {
    /// The Dirac window: Ξ = δ, Ξ̃(−1) = 1.
    pub fn delta() -> Self {
        WindowFunction {
            profile: WindowProfile::Atoms(vec![(0.0, 1.0)]),
            char_at_one: Complex64::new(1.0, 0.0),
            support_radius: 0.0,
            mass: 1.0,
        }
    }

    /// Point-mass window; weights must sum to 1.
    pub fn atoms(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() || atoms.iter().any(|(a, w)| !a.is_finite() || !(*w >= 0.0)) {
            return Err(TomoError::invalid(
                "atoms",
                "need at least one atom with finite position and nonnegative weight",
            ));
        }
        let mass: f64 = atoms.iter().map(|(_, w)| w).sum();
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(TomoError::NotNormalized { mass });
        }
        let char_at_one = atoms
            .iter()
            .map(|&(a, w)| Complex64::from_polar(w, a))
            .sum();
        let support_radius = atoms.iter().fold(0.0f64, |m, (a, _)| m.max(a.abs()));
        Ok(WindowFunction {
            profile: WindowProfile::Atoms(atoms),
            char_at_one,
            support_radius,
            mass,
        })
    }

    /// Window with density `f`, negligible outside [−support, support].
    /// The mass must be 1 within 1e-8.
    pub fn from_density<F>(f: F, support_radius: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let w = Self::from_density_any_mass(f, support_radius)?;
        if !w.is_unit_mass() {
            return Err(TomoError::NotNormalized { mass: w.mass });
        }
        Ok(w)
    }

    /// Accepts a density of any positive mass. The inversion constant then
    /// absorbs the mass; [`WindowFunction::is_unit_mass`] reports it.
    pub fn from_density_any_mass<F>(f: F, support_radius: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let spec = QuadratureSpec::new(support_radius, 512)?;
        let mass = spec.rule().integrate(&f);
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(TomoError::NotNormalized { mass });
        }
        let char_at_one = window_char_at_one(&f, &spec)?;
        Ok(WindowFunction {
            profile: WindowProfile::Density(Arc::new(f)),
            char_at_one,
            support_radius,
            mass,
        })
    }

    pub fn profile(&self) -> &WindowProfile {
        &self.profile
    }

    pub fn char_at_one(&self) -> Complex64 {
        self.char_at_one
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn is_unit_mass(&self) -> bool {
        (self.mass - 1.0).abs() <= MASS_TOLERANCE
    }

    /// Density at `z`, or `None` for point-mass windows.
    pub fn density(&self, z: f64) -> Option<f64> {
        match &self.profile {
            WindowProfile::Density(f) => Some(f(z)),
            WindowProfile::Atoms(_) => None,
        }
    }

    /// (Ξ ⋆ g)(x) = ∫ Ξ(z) g(x − z) dz, with `nodes` quadrature points over
    /// the support for continuous windows.
    pub fn convolve<G: Fn(f64) -> f64>(&self, g: G, x: f64, nodes: usize) -> f64 {
        match &self.profile {
            WindowProfile::Atoms(atoms) => atoms.iter().map(|&(a, w)| w * g(x - a)).sum(),
            WindowProfile::Density(f) => {
                let s = self.support_radius;
                CompositeRule::new(-s, s, nodes).integrate(|z| f(z) * g(x - z))
            }
        }
    }
}
