#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use tomography::TomogramFunction;

/// g(X) h(φ) with g = sinc⁸(aX), whose Fourier transform vanishes outside
/// [−8a, 8a], and h a trigonometric polynomial of degree 2.
#[derive(Debug, Clone, Copy)]
pub struct BandLimited {
    pub a: f64,
}

impl BandLimited {
    pub fn g(&self, x: f64) -> f64 {
        let u = self.a * x;
        let s = if u.abs() < 1e-8 { 1.0 - u * u / 6.0 } else { u.sin() / u };
        s.powi(8)
    }

    pub fn h(phi: f64) -> f64 {
        1.0 + 0.5 * phi.cos() + 0.3 * (2.0 * phi).sin()
    }

    pub fn eval(&self, x: f64, phi: f64) -> f64 {
        self.g(x) * Self::h(phi)
    }

    pub fn tomogram(&self) -> TomogramFunction {
        let s = *self;
        TomogramFunction::new(move |x, phi| s.eval(x, phi))
    }

    /// ∫ g(X) e^{−iωX} dX = (π/a) M₈(ω/(2a)), M₈ the centred cardinal
    /// B-spline of order 8.
    pub fn g_hat(&self, omega: f64) -> f64 {
        PI / self.a * bspline8(omega / (2.0 * self.a))
    }

    /// ∫ (dφ/2π) e^{−iℓφ} h(φ).
    pub fn h_hat(l: i64) -> Complex64 {
        match l {
            0 => Complex64::new(1.0, 0.0),
            1 | -1 => Complex64::new(0.25, 0.0),
            2 => Complex64::new(0.0, -0.15),
            -2 => Complex64::new(0.0, 0.15),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn spectrum(&self, omega: f64, l: i64) -> Complex64 {
        Self::h_hat(l) * self.g_hat(omega)
    }
}

fn bspline8(x: f64) -> f64 {
    let n = 8;
    let mut binom = 1.0;
    let mut sum = 0.0;
    for j in 0..=n {
        let t = x + n as f64 / 2.0 - j as f64;
        if t > 0.0 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binom * t.powi(n - 1);
        }
        binom = binom * (n - j) as f64 / (j + 1) as f64;
    }
    sum / 5040.0
}

/// Uniform f64 in [lo, hi) from a deterministic stream.
pub struct Uniform(ChaCha20Rng);

impl Uniform {
    pub fn new(seed: u64) -> Self {
        Uniform(ChaCha20Rng::seed_from_u64(seed))
    }

    pub fn next(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
