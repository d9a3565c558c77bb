//! Continuous tomogram representations.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use crate::quadrature::QuadratureSpec;

/// Maps an angle onto [0, 2π).
pub fn canonical_angle(phi: f64) -> f64 {
    let a = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if a >= TAU {
        0.0
    } else {
        a
    }
}

type TomogramFn = dyn Fn(f64, f64) -> f64 + Send + Sync;
type SymplecticFn = dyn Fn(f64, f64, f64) -> f64 + Send + Sync;

/// Homodyne tomogram 𝒲(X, φ), 2π-periodic in φ.
#[derive(Clone)]
pub struct TomogramFunction {
    evaluator: Arc<TomogramFn>,
}

impl TomogramFunction {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        TomogramFunction {
            evaluator: Arc::new(f),
        }
    }

    /// Evaluates at quadrature `x` and angle `phi` (canonicalized first).
    pub fn eval(&self, x: f64, phi: f64) -> f64 {
        (self.evaluator)(x, canonical_angle(phi))
    }

    /// ∫ 𝒲(X, φ) dX over the truncated range of `spec`.
    pub fn mass(&self, phi: f64, spec: &QuadratureSpec) -> f64 {
        spec.rule().integrate(|x| self.eval(x, phi))
    }
}

impl fmt::Debug for TomogramFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TomogramFunction(..)")
    }
}

/// Symplectic tomogram 𝒲^♯(X, μ, ν).
#[derive(Clone)]
pub struct SymplecticTomogramFunction {
    evaluator: Arc<SymplecticFn>,
}

impl SymplecticTomogramFunction {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    {
        SymplecticTomogramFunction {
            evaluator: Arc::new(f),
        }
    }

    pub fn eval(&self, x: f64, mu: f64, nu: f64) -> f64 {
        (self.evaluator)(x, mu, nu)
    }
}

impl fmt::Debug for SymplecticTomogramFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SymplecticTomogramFunction(..)")
    }
}
