//! Jitter on sample positions, the noise-window equivalence and
//! noise-averaged reconstruction.
//!
//! # Random streams
//!
//! All draws come from ChaCha20 (`rand_chacha::ChaCha20Rng`) keyed by a
//! 32-byte seed made of four little-endian 64-bit words
//! `(seed, realization, axis, index)`:
//!
//! * linear jitter ξ⁽¹⁾_k uses `axis = 0`, `index = k` (two's complement);
//! * angular jitter ξ⁽²⁾_m uses `axis = 1`, `index = m`;
//! * Monte-Carlo window draws use `realization = 0`, `axis = 2`, `index = 0`
//!   and read the stream sequentially.
//!
//! A standard normal variate is built from two consecutive `next_u64`
//! outputs a, b by Box-Muller: u₁ = ((a >> 11) + 1)·2⁻⁵³,
//! u₂ = (b >> 11)·2⁻⁵³, z = √(−2 ln u₁) cos(2π u₂).

use std::f64::consts::TAU;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use num_complex::Complex64;

use crate::error::{Result, TomoError};
use crate::phase_space::{PhaseSpaceGrid, WignerField};
use crate::sampling::{reconstruct_wigner, SamplingScheme, TomogramSamples};
use crate::tomogram::{SymplecticTomogramFunction, TomogramFunction};
use crate::window::{gaussian_window, WindowFunction};

const AXIS_LINEAR: u64 = 0;
const AXIS_ANGULAR: u64 = 1;
const AXIS_MONTE_CARLO: u64 = 2;

/// Minimum number of Monte-Carlo draws.
pub const MIN_DRAWS: usize = 100;

/// Zero-mean Gaussian jitter on the sample lattice. Deviations are in
/// units of the grid steps T and 2π/N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JitterModel {
    linear_sd: f64,
    angular_sd: f64,
    seed: u64,
}

impl JitterModel {
    pub fn new(linear_sd: f64, angular_sd: f64, seed: u64) -> Result<Self> {
        for (name, v) in [("sigma1", linear_sd), ("sigma2", angular_sd)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(TomoError::invalid(name, format!("must be finite and nonnegative, got {v}")));
            }
        }
        Ok(JitterModel { linear_sd, angular_sd, seed })
    }

    pub fn noiseless() -> Self {
        JitterModel { linear_sd: 0.0, angular_sd: 0.0, seed: 0 }
    }

    pub fn linear_sd(&self) -> f64 {
        self.linear_sd
    }

    pub fn angular_sd(&self) -> f64 {
        self.angular_sd
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// ξ⁽¹⁾_k for one realization, in units of T.
    pub fn linear_jitter(&self, realization: u64, k: i64) -> f64 {
        if self.linear_sd == 0.0 {
            return 0.0;
        }
        self.linear_sd * standard_normal(&mut stream(self.seed, realization, AXIS_LINEAR, k as u64))
    }

    /// ξ⁽²⁾_m for one realization, in units of 2π/N.
    pub fn angular_jitter(&self, realization: u64, m: usize) -> f64 {
        if self.angular_sd == 0.0 {
            return 0.0;
        }
        self.angular_sd * standard_normal(&mut stream(self.seed, realization, AXIS_ANGULAR, m as u64))
    }
}

fn stream(seed: u64, realization: u64, axis: u64, index: u64) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    for (i, word) in [seed, realization, axis, index].into_iter().enumerate() {
        key[8 * i..8 * i + 8].copy_from_slice(&word.to_le_bytes());
    }
    ChaCha20Rng::from_seed(key)
}

fn standard_normal(rng: &mut ChaCha20Rng) -> f64 {
    let scale = 1.0 / (1u64 << 53) as f64;
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * scale;
    let u2 = (rng.next_u64() >> 11) as f64 * scale;
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

/// Perturbed positions of one realization: `(X_k, k = −K..K)` and
/// `(φ_m, m = 0..N−1)` with X_k = T(k + ξ⁽¹⁾_k), φ_m = (2π/N)(m + ξ⁽²⁾_m).
#[derive(Debug, Clone, PartialEq)]
pub struct JitteredPositions {
    pub linear: Vec<f64>,
    pub angular: Vec<f64>,
}

pub fn jittered_positions(scheme: &SamplingScheme, model: &JitterModel, realization: u64) -> JitteredPositions {
    let linear = scheme
        .linear_indices()
        .map(|k| scheme.step() * (k as f64 + model.linear_jitter(realization, k)))
        .collect();
    let dphi = TAU / scheme.angles() as f64;
    let angular = (0..scheme.angles())
        .map(|m| dphi * (m as f64 + model.angular_jitter(realization, m)))
        .collect();
    JitteredPositions { linear, angular }
}

/// 𝒲^{(ξ)}_{k,m}: the tomogram read at the jittered positions.
pub fn jittered_samples(
    tomogram: &TomogramFunction,
    scheme: &SamplingScheme,
    model: &JitterModel,
    realization: u64,
) -> TomogramSamples {
    let pos = jittered_positions(scheme, model, realization);
    let values = pos
        .linear
        .iter()
        .flat_map(|&x| pos.angular.iter().map(move |&phi| tomogram.eval(x, phi)))
        .collect();
    TomogramSamples::new(*scheme, values).expect("shape follows the scheme")
}

/// Mean over realizations 0..realizations of the reconstructions from
/// jittered samples. The reconstruction is linear in the samples, so the
/// samples are averaged first and reconstructed once.
pub fn averaged_reconstruction(
    tomogram: &TomogramFunction,
    scheme: &SamplingScheme,
    model: &JitterModel,
    realizations: usize,
    grid: PhaseSpaceGrid,
    angular_nodes: usize,
) -> Result<WignerField> {
    let mean = averaged_samples(tomogram, scheme, model, realizations)?;
    reconstruct_wigner(&mean, grid, angular_nodes)
}

/// Element-wise mean of the jittered samples over realizations
/// 0..realizations, summed in realization order.
pub fn averaged_samples(
    tomogram: &TomogramFunction,
    scheme: &SamplingScheme,
    model: &JitterModel,
    realizations: usize,
) -> Result<TomogramSamples> {
    if realizations == 0 {
        return Err(TomoError::invalid("realizations", "must be at least 1"));
    }
    let all: Vec<TomogramSamples> = (0..realizations as u64)
        .into_par_iter()
        .map(|r| jittered_samples(tomogram, scheme, model, r))
        .collect();
    let mut sum = vec![0.0; all[0].values().len()];
    for s in &all {
        for (acc, v) in sum.iter_mut().zip(s.values()) {
            *acc += v;
        }
    }
    let n = realizations as f64;
    sum.iter_mut().for_each(|v| *v /= n);
    TomogramSamples::new(*scheme, sum)
}

/// Law of the additive noise ξ on the quadrature value.
#[derive(Clone)]
pub enum NoiseLaw {
    /// Zero-mean Gaussian with the given deviation; zero gives no noise.
    Gaussian(f64),
    /// Absolutely continuous law with density `f`, negligible outside
    /// [−support, support].
    Density {
        density: std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        support: f64,
    },
    /// Discrete law: `(value, probability)` pairs.
    Atoms(Vec<(f64, f64)>),
}

/// Ξ(X) = E[δ(X + ξ)], the window equivalent on average to the noise ξ:
/// the law of −ξ.
pub fn window_from_noise(law: NoiseLaw) -> Result<WindowFunction> {
    match law {
        NoiseLaw::Gaussian(s) => {
            if s == 0.0 {
                Ok(WindowFunction::delta())
            } else {
                gaussian_window(s)
            }
        }
        NoiseLaw::Density { density, support } => {
            WindowFunction::from_density(move |x| density(-x), support)
        }
        NoiseLaw::Atoms(atoms) => WindowFunction::atoms(atoms.into_iter().map(|(a, w)| (-a, w)).collect()),
    }
}

/// Monte-Carlo estimate of the thick tomogram E[𝒲^♯(X + ξ, μ, ν)] for
/// Gaussian ξ of deviation `s`. Returns the sample mean and its standard
/// error.
pub fn monte_carlo_thick_tomogram(
    tomogram: &SymplecticTomogramFunction,
    x: f64,
    mu: f64,
    nu: f64,
    s: f64,
    draws: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if draws < MIN_DRAWS {
        return Err(TomoError::invalid("draws", format!("need at least {MIN_DRAWS}, got {draws}")));
    }
    if !(s >= 0.0) || !s.is_finite() {
        return Err(TomoError::invalid("s", format!("must be finite and nonnegative, got {s}")));
    }
    if s == 0.0 {
        return Ok((tomogram.eval(x, mu, nu), 0.0));
    }
    let mut rng = stream(seed, 0, AXIS_MONTE_CARLO, 0);
    let (mut mean, mut m2) = (0.0, 0.0);
    for i in 0..draws {
        let v = tomogram.eval(x + s * standard_normal(&mut rng), mu, nu);
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    if !mean.is_finite() {
        return Err(TomoError::NonFinite("Monte-Carlo thick tomogram"));
    }
    let var = m2 / (draws - 1) as f64;
    Ok((mean, (var / draws as f64).sqrt()))
}

/// (T/N) Σ_k Σ_m 𝒲^{(ξ)}_{k,m} e^{−iX^{(ξ)}_k ω} e^{−iφ^{(ξ)}_m ℓ} χ_D(ω, ℓ)
/// for one realization, with the phases taken at the jittered positions.
pub fn jittered_discrete_spectrum(
    tomogram: &TomogramFunction,
    scheme: &SamplingScheme,
    model: &JitterModel,
    realization: u64,
    omega: f64,
    l: i64,
) -> Complex64 {
    if !scheme.in_band(omega, l) {
        return Complex64::new(0.0, 0.0);
    }
    let pos = jittered_positions(scheme, model, realization);
    let mut sum = Complex64::new(0.0, 0.0);
    for &x in &pos.linear {
        let lin = Complex64::from_polar(1.0, -omega * x);
        for &phi in &pos.angular {
            sum += lin * Complex64::from_polar(tomogram.eval(x, phi), -(l as f64) * phi);
        }
    }
    sum * (scheme.step() / scheme.angles() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::sample_tomogram;
    use crate::states::{single_photon_wigner, smoothed_single_photon_tomogram, AnalyticState};
    use approx::assert_abs_diff_eq;

    fn scheme() -> SamplingScheme {
        SamplingScheme::new(0.1, 5, 40).unwrap()
    }

    #[test]
    fn rejects_negative_deviation() {
        assert!(JitterModel::new(-0.1, 0.0, 1).is_err());
        assert!(JitterModel::new(0.0, f64::NAN, 1).is_err());
    }

    #[test]
    fn zero_noise_gives_grid_positions() {
        let s = scheme();
        let pos = jittered_positions(&s, &JitterModel::new(0.0, 0.0, 7).unwrap(), 3);
        for (i, k) in s.linear_indices().enumerate() {
            assert_eq!(pos.linear[i], s.step() * k as f64);
        }
        for m in 0..5 {
            assert_eq!(pos.angular[m], s.angular_position(m));
        }
        let t = AnalyticState::SinglePhoton.tomogram();
        assert_eq!(jittered_samples(&t, &s, &JitterModel::noiseless(), 0), sample_tomogram(&t, s));
    }

    #[test]
    fn draws_are_reproducible_and_distinct() {
        let m = JitterModel::new(0.5, 0.5, 42).unwrap();
        let a = jittered_positions(&scheme(), &m, 0);
        assert_eq!(a, jittered_positions(&scheme(), &m, 0));
        assert_ne!(a, jittered_positions(&scheme(), &m, 1));
        let other = JitterModel::new(0.5, 0.5, 43).unwrap();
        assert_ne!(a, jittered_positions(&scheme(), &other, 0));
        assert_ne!(m.linear_jitter(0, 3), m.linear_jitter(0, -3));
        assert_ne!(m.linear_jitter(0, 2), m.angular_jitter(0, 2));
    }

    #[test]
    fn known_first_draw() {
        // pins the documented stream rule
        let z = standard_normal(&mut stream(1, 2, 0, 3));
        let mut r = ChaCha20Rng::from_seed({
            let mut k = [0u8; 32];
            k[0] = 1;
            k[8] = 2;
            k[24] = 3;
            k
        });
        let u1 = ((r.next_u64() >> 11) + 1) as f64 / 9_007_199_254_740_992.0;
        let u2 = (r.next_u64() >> 11) as f64 / 9_007_199_254_740_992.0;
        assert_eq!(z, (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos());
    }

    #[test]
    fn jitter_is_zero_mean_with_given_spread() {
        let m = JitterModel::new(0.5, 0.5, 11).unwrap();
        let s = scheme();
        let n = 10_000;
        let offsets: Vec<f64> = (0..n).map(|r| jittered_positions(&s, &m, r).linear[45] - 5.0 * s.step()).collect();
        let mean = offsets.iter().sum::<f64>() / n as f64;
        assert!(mean.abs() < 3.0 * 0.5 * s.step() / 100.0, "mean {mean}");
        let var = offsets.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert_abs_diff_eq!(var.sqrt(), 0.05, epsilon = 0.002);
    }

    #[test]
    fn angular_jitter_does_not_affect_rotation_invariant_state() {
        let t = AnalyticState::SinglePhoton.tomogram();
        let s = jittered_samples(&t, &scheme(), &JitterModel::new(0.0, 0.5, 5).unwrap(), 0);
        for k in scheme().linear_indices() {
            let row = s.row(k);
            assert!(row.iter().all(|&v| v == row[0]));
        }
    }

    #[test]
    fn averaging_samples_equals_averaging_reconstructions() {
        let t = AnalyticState::SinglePhoton.tomogram();
        let s = scheme();
        let m = JitterModel::new(0.5, 0.5, 9).unwrap();
        let grid = PhaseSpaceGrid::new(1.5, 7).unwrap();
        let avg = averaged_reconstruction(&t, &s, &m, 4, grid, 20).unwrap();
        let mut mean = vec![0.0; grid.len()];
        for r in 0..4 {
            let f = reconstruct_wigner(&jittered_samples(&t, &s, &m, r), grid, 20).unwrap();
            for (a, v) in mean.iter_mut().zip(f.values()) {
                *a += v / 4.0;
            }
        }
        for (a, b) in avg.values().iter().zip(&mean) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
        let one = averaged_reconstruction(&t, &s, &m, 1, grid, 20).unwrap();
        let single = reconstruct_wigner(&jittered_samples(&t, &s, &m, 0), grid, 20).unwrap();
        assert_eq!(one, single);
        assert!(averaged_reconstruction(&t, &s, &m, 0, grid, 20).is_err());
    }

    #[test]
    fn noise_windows() {
        let g = window_from_noise(NoiseLaw::Gaussian(0.3)).unwrap();
        assert_abs_diff_eq!(g.char_at_one().re, (-0.045f64).exp(), epsilon = 1e-15);
        let d = window_from_noise(NoiseLaw::Gaussian(0.0)).unwrap();
        assert_eq!(d.char_at_one().re, 1.0);
        let a = 0.4;
        let two = window_from_noise(NoiseLaw::Atoms(vec![(-a, 0.5), (a, 0.5)])).unwrap();
        assert_abs_diff_eq!(two.char_at_one().re, a.cos(), epsilon = 1e-15);
        // ξ exponential on [0, ∞): the window is its mirror image
        let exp = window_from_noise(NoiseLaw::Density {
            density: std::sync::Arc::new(|z: f64| if z >= 0.0 { (-z).exp() } else { 0.0 }),
            support: 40.0,
        })
        .unwrap();
        assert_abs_diff_eq!(exp.density(-1.0).unwrap(), (-1.0f64).exp(), epsilon = 1e-15);
        assert_eq!(exp.density(1.0).unwrap(), 0.0);
        let bad = window_from_noise(NoiseLaw::Density { density: std::sync::Arc::new(|_| 1.0), support: 1.0 });
        assert!(matches!(bad, Err(TomoError::NotNormalized { .. })));
    }

    #[test]
    fn monte_carlo_matches_smoothed_tomogram() {
        let t = AnalyticState::SinglePhoton.symplectic_tomogram();
        let (mean, se) = monte_carlo_thick_tomogram(&t, 0.0, 1.0, 0.0, 0.5, 100_000, 3).unwrap();
        let exact = smoothed_single_photon_tomogram(0.0, 1.0, 0.0, 0.5).unwrap();
        assert!((mean - exact).abs() < 3.0 * se, "mean {mean} se {se}");
        let (v, zero) = monte_carlo_thick_tomogram(&t, 0.7, 1.0, 0.0, 0.0, 100, 3).unwrap();
        assert_eq!(zero, 0.0);
        assert_eq!(v, t.eval(0.7, 1.0, 0.0));
        assert!(monte_carlo_thick_tomogram(&t, 0.0, 1.0, 0.0, 0.5, 99, 3).is_err());
    }

    #[test]
    fn standard_error_scales_with_draws() {
        let t = AnalyticState::SinglePhoton.symplectic_tomogram();
        let (_, a) = monte_carlo_thick_tomogram(&t, 0.4, 0.8, 0.6, 0.5, 20_000, 1).unwrap();
        let (_, b) = monte_carlo_thick_tomogram(&t, 0.4, 0.8, 0.6, 0.5, 40_000, 1).unwrap();
        assert_abs_diff_eq!(b / a, std::f64::consts::FRAC_1_SQRT_2, epsilon = 0.03);
    }

    #[test]
    fn jittered_spectrum_without_noise_is_discrete_spectrum() {
        let t = AnalyticState::SinglePhoton.tomogram();
        let s = scheme();
        let a = jittered_discrete_spectrum(&t, &s, &JitterModel::noiseless(), 0, 1.3, 0);
        let b = crate::sampling::discrete_spectrum(&sample_tomogram(&t, s), 1.3, 0);
        assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-14);
        assert_eq!(jittered_discrete_spectrum(&t, &s, &JitterModel::noiseless(), 0, 99.0, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn noisy_reconstruction_degrades_gracefully() {
        let t = AnalyticState::SinglePhoton.tomogram();
        let grid = PhaseSpaceGrid::new(1.5, 7).unwrap();
        let m = JitterModel::new(0.5, 0.5, 1).unwrap();
        let f = averaged_reconstruction(&t, &scheme(), &m, 10, grid, 20).unwrap();
        for (pt, &v) in grid.points().zip(f.values()) {
            assert!((v - single_photon_wigner(pt.p, pt.q)).abs() < 0.2);
        }
    }
}
