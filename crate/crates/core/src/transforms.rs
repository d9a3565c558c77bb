//! Forward maps from a Wigner function to its tomograms: the Radon
//! transform, the symplectic tomogram obtained through degree −1
//! homogeneity, and windowed ("thick") tomograms.

use std::sync::Arc;

use crate::error::{Result, TomoError};
use crate::quadrature::QuadratureSpec;
use crate::tomogram::{canonical_angle, SymplecticTomogramFunction, TomogramFunction};
use crate::window::WindowFunction;

pub use crate::window::{gaussian_window, uniform_window, window_char_at_one};

/// ∫ W(p, q) δ(X − q cos φ − p sin φ) dp dq as an arclength integral along
/// the line q cos φ + p sin φ = X. `wigner` takes `(p, q)`.
pub fn radon_forward<W>(wigner: W, x: f64, phi: f64, spec: &QuadratureSpec) -> Result<f64>
where
    W: Fn(f64, f64) -> f64,
{
    let v = line_integral(&wigner, x, phi, spec);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(TomoError::NonFinite("Radon line integral"))
    }
}

fn line_integral<W: Fn(f64, f64) -> f64>(wigner: &W, x: f64, phi: f64, spec: &QuadratureSpec) -> f64 {
    let (s, c) = phi.sin_cos();
    // foot of the perpendicular plus arclength t along (−sin φ, cos φ) in (q, p)
    spec.rule().integrate(|t| wigner(x * s + t * c, x * c - t * s))
}

/// Tomogram function backed by numerical Radon transforms of `wigner`.
pub fn radon_tomogram<W>(wigner: W, spec: QuadratureSpec) -> TomogramFunction
where
    W: Fn(f64, f64) -> f64 + Send + Sync + 'static,
{
    let rule = Arc::new(spec.rule());
    TomogramFunction::new(move |x, phi| {
        let (s, c) = phi.sin_cos();
        rule.integrate(|t| wigner(x * s + t * c, x * c - t * s))
    })
}

/// 𝒲^♯(X, μ, ν) = 𝒲(X/r, φ)/r with r = |(μ, ν)|, φ = atan2(ν, μ).
pub fn symplectic_from_radon(tomogram: &TomogramFunction, x: f64, mu: f64, nu: f64) -> Result<f64> {
    let r = mu.hypot(nu);
    if r == 0.0 {
        return Err(TomoError::ZeroRadius);
    }
    Ok(tomogram.eval(x / r, canonical_angle(nu.atan2(mu))) / r)
}

/// Symplectic tomogram function built from a homodyne tomogram. Evaluating
/// at μ = ν = 0 yields NaN.
pub fn symplectic_tomogram(tomogram: TomogramFunction) -> SymplecticTomogramFunction {
    SymplecticTomogramFunction::new(move |x, mu, nu| {
        symplectic_from_radon(&tomogram, x, mu, nu).unwrap_or(f64::NAN)
    })
}

/// ∫ W(p, q) Ξ(X − qμ − pν) dp dq, evaluated as the one-dimensional
/// convolution (Ξ ⋆ 𝒲^♯(·, μ, ν))(X) along the tomogram coordinate.
pub fn thick_tomogram<W>(
    wigner: W,
    window: &WindowFunction,
    x: f64,
    mu: f64,
    nu: f64,
    spec: &QuadratureSpec,
) -> Result<f64>
where
    W: Fn(f64, f64) -> f64,
{
    let r = mu.hypot(nu);
    if r == 0.0 {
        return Err(TomoError::ZeroRadius);
    }
    if window.support_radius() > spec.x_half_range {
        return Err(TomoError::WindowTooWide {
            support: window.support_radius(),
            range: spec.x_half_range,
        });
    }
    let phi = nu.atan2(mu);
    let v = window.convolve(|y| line_integral(&wigner, y / r, phi, spec) / r, x, spec.nodes);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(TomoError::NonFinite("thick tomogram"))
    }
}

/// Thick tomogram function of `wigner` under `window`.
pub fn thick_tomogram_function<W>(
    wigner: W,
    window: WindowFunction,
    spec: QuadratureSpec,
) -> Result<SymplecticTomogramFunction>
where
    W: Fn(f64, f64) -> f64 + Send + Sync + 'static,
{
    if window.support_radius() > spec.x_half_range {
        return Err(TomoError::WindowTooWide {
            support: window.support_radius(),
            range: spec.x_half_range,
        });
    }
    Ok(SymplecticTomogramFunction::new(move |x, mu, nu| {
        thick_tomogram(&wigner, &window, x, mu, nu, &spec).unwrap_or(f64::NAN)
    }))
}
