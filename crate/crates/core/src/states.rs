//! Analytic reference states with closed-form Wigner functions and
//! tomograms.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Result, TomoError};
use crate::tomogram::{SymplecticTomogramFunction, TomogramFunction};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// W(p, q) = (2(p² + q²) − 1) e^{−(p² + q²)} / π
pub fn single_photon_wigner(p: f64, q: f64) -> f64 {
    let rho2 = p * p + q * q;
    (2.0 * rho2 - 1.0) * (-rho2).exp() / PI
}

/// 𝒲(X, φ) = 2X² e^{−X²} / √π, independent of φ.
pub fn single_photon_tomogram(x: f64, _phi: f64) -> f64 {
    2.0 * x * x * (-x * x).exp() / SQRT_PI
}

pub fn vacuum_wigner(p: f64, q: f64) -> f64 {
    (-(p * p + q * q)).exp() / PI
}

pub fn vacuum_tomogram(x: f64, _phi: f64) -> f64 {
    (-x * x).exp() / SQRT_PI
}

/// Thick symplectic tomogram of the single-photon state under a Gaussian
/// window of deviation `sigma` acting on X:
///
/// ∫ W(p, q) Ξ_σ(X − qμ − pν) dp dq
///   = 2(X²/r² + s²(2s² + 1)) e^{−X²/(r²(2s² + 1))} / (√π r (2s² + 1)^{5/2}),
///
/// with r = √(μ² + ν²) and s = σ/r. On the unit circle (r = 1) this is the
/// familiar σ-form; at X = 0 it reduces to 2σ² / (√π (r² + 2σ²)^{3/2}).
pub fn smoothed_single_photon_tomogram(x: f64, mu: f64, nu: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(TomoError::invalid(
            "sigma",
            format!("must be positive and finite, got {sigma}"),
        ));
    }
    let r = mu.hypot(nu);
    if r == 0.0 {
        return Err(TomoError::ZeroRadius);
    }
    let s = sigma / r;
    let g = 2.0 * s * s + 1.0;
    let u2 = (x / r) * (x / r);
    Ok(2.0 * (u2 + s * s * g) * (-u2 / g).exp() / (SQRT_PI * r * g * g * g.sqrt()))
}

/// Reference states selectable by identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnalyticState {
    SinglePhoton,
    Vacuum,
}

impl AnalyticState {
    pub const ALL: [AnalyticState; 2] = [AnalyticState::SinglePhoton, AnalyticState::Vacuum];

    pub fn id(&self) -> &'static str {
        match self {
            AnalyticState::SinglePhoton => "single-photon",
            AnalyticState::Vacuum => "vacuum",
        }
    }

    pub fn wigner(&self, p: f64, q: f64) -> f64 {
        match self {
            AnalyticState::SinglePhoton => single_photon_wigner(p, q),
            AnalyticState::Vacuum => vacuum_wigner(p, q),
        }
    }

    pub fn radon_tomogram(&self, x: f64, phi: f64) -> f64 {
        match self {
            AnalyticState::SinglePhoton => single_photon_tomogram(x, phi),
            AnalyticState::Vacuum => vacuum_tomogram(x, phi),
        }
    }

    /// Largest |ℓ| with a nonzero angular Fourier coefficient.
    pub fn angular_bandwidth(&self) -> u32 {
        // both reference states are rotation invariant
        0
    }

    pub fn tomogram(&self) -> TomogramFunction {
        let state = *self;
        TomogramFunction::new(move |x, phi| state.radon_tomogram(x, phi))
    }

    /// Ideal symplectic tomogram (1/r) 𝒲(X/r, φ).
    pub fn symplectic_tomogram(&self) -> SymplecticTomogramFunction {
        let state = *self;
        SymplecticTomogramFunction::new(move |x, mu, nu| {
            let r = mu.hypot(nu);
            state.radon_tomogram(x / r, nu.atan2(mu)) / r
        })
    }
}

impl fmt::Display for AnalyticState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for AnalyticState {
    type Err = TomoError;

    fn from_str(s: &str) -> Result<Self> {
        AnalyticState::ALL
            .into_iter()
            .find(|st| st.id() == s)
            .ok_or_else(|| TomoError::UnknownState(s.to_string()))
    }
}
