//! Discrete acquisition on ℝ × 𝕋: the sample lattice X_k = kT, φ_m = 2πm/N,
//! the sinc and S_N interpolation kernels, periodized spectra and the
//! direct reconstruction of a Wigner function from samples.

use std::f64::consts::{PI, TAU};
use std::io::{Read, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, TomoError};
use crate::io::format_number;
use crate::phase_space::{PhaseSpaceGrid, WignerField};
use crate::quadrature::{periodic_trapezoid, QuadratureSpec};
use crate::tomogram::TomogramFunction;

const SINC_SERIES_THRESHOLD: f64 = 1e-4;
const SN_SERIES_THRESHOLD: f64 = 1e-6;
const KERNEL_TAYLOR_THRESHOLD: f64 = 1e-4;
const NODE_SNAP: f64 = 1e-12;
const SPECTRUM_CONVERGENCE_TOLERANCE: f64 = 1e-8;

/// Sample lattice with linear step `T`, `N` angles and k ∈ {−K..K}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingScheme {
    step: f64,
    angles: usize,
    truncation: usize,
}

/// Maps an even angle count to N − 1, the odd count whose S_N kernel is
/// well defined. Odd counts are returned unchanged.
pub fn odd_angle_count(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n.saturating_sub(1)
    } else {
        n
    }
}

impl SamplingScheme {
    pub fn new(step: f64, angles: usize, truncation: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(TomoError::invalid("T", format!("must be positive, got {step}")));
        }
        if angles < 3 || angles.is_multiple_of(2) {
            return Err(TomoError::invalid(
                "N",
                format!("must be odd and at least 3, got {angles}; an even count N is used as N - 1"),
            ));
        }
        if truncation < 1 {
            return Err(TomoError::invalid("K", "must be at least 1"));
        }
        Ok(SamplingScheme { step, angles, truncation })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Number of linear positions, 2K + 1.
    pub fn linear_count(&self) -> usize {
        2 * self.truncation + 1
    }

    /// Linear indices −K..=K in storage order.
    pub fn linear_indices(&self) -> impl Iterator<Item = i64> + Clone {
        let k = self.truncation as i64;
        -k..=k
    }

    pub fn linear_position(&self, k: i64) -> f64 {
        k as f64 * self.step
    }

    pub fn angular_position(&self, m: usize) -> f64 {
        TAU * m as f64 / self.angles as f64
    }

    /// χ_D: whether (ω, ℓ) lies in (−π/T, π/T) × (−N/2, N/2).
    pub fn in_band(&self, omega: f64, l: i64) -> bool {
        omega.abs() < PI / self.step && 2 * l.unsigned_abs() < self.angles as u64
    }
}

/// Samples 𝒲_{k,m} stored k-outer, shape (2K + 1) × N.
#[derive(Debug, Clone, PartialEq)]
pub struct TomogramSamples {
    scheme: SamplingScheme,
    values: Vec<f64>,
}

impl TomogramSamples {
    pub fn new(scheme: SamplingScheme, values: Vec<f64>) -> Result<Self> {
        let expected = scheme.linear_count() * scheme.angles();
        if values.len() != expected {
            return Err(TomoError::GridMismatch(format!(
                "expected {expected} samples for the scheme, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(TomoError::NonFinite("tomogram samples"));
        }
        Ok(TomogramSamples { scheme, values })
    }

    pub fn zeros(scheme: SamplingScheme) -> Self {
        let n = scheme.linear_count() * scheme.angles();
        TomogramSamples { scheme, values: vec![0.0; n] }
    }

    pub fn scheme(&self) -> &SamplingScheme {
        &self.scheme
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    fn index(&self, k: i64, m: usize) -> usize {
        let row = (k + self.scheme.truncation as i64) as usize;
        row * self.scheme.angles + m
    }

    /// 𝒲_{k,m}. Panics if k or m is out of range.
    pub fn get(&self, k: i64, m: usize) -> f64 {
        assert!(k.unsigned_abs() as usize <= self.scheme.truncation && m < self.scheme.angles);
        self.values[self.index(k, m)]
    }

    /// Row `k` as a slice over m.
    pub fn row(&self, k: i64) -> &[f64] {
        let start = self.index(k, 0);
        &self.values[start..start + self.scheme.angles]
    }

    /// Writes `k,m,X,phi,value` rows, header first.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let mut buf = String::from("k,m,X,phi,value\n");
        for k in self.scheme.linear_indices() {
            for m in 0..self.scheme.angles {
                buf.push_str(&format!(
                    "{k},{m},{},{},{}\n",
                    format_number(self.scheme.linear_position(k)),
                    format_number(self.scheme.angular_position(m)),
                    format_number(self.get(k, m))
                ));
            }
        }
        out.write_all(buf.as_bytes())
    }

    /// Reads samples written by [`TomogramSamples::write_csv`]. The step is
    /// recovered from the `X` column.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(input);
        let mut rows: Vec<(i64, usize, f64, f64)> = Vec::new();
        for (line, rec) in reader.records().enumerate() {
            let bad = |what: &str| TomoError::GridMismatch(format!("row {}: {what}", line + 2));
            let rec = rec.map_err(|e| bad(&e.to_string()))?;
            if rec.len() != 5 {
                return Err(bad("expected 5 fields"));
            }
            let k = rec[0].parse::<i64>().map_err(|_| bad("bad k"))?;
            let m = rec[1].parse::<usize>().map_err(|_| bad("bad m"))?;
            let x = rec[2].parse::<f64>().map_err(|_| bad("bad X"))?;
            let v = rec[4].parse::<f64>().map_err(|_| bad("bad value"))?;
            rows.push((k, m, x, v));
        }
        let truncation = rows.iter().map(|r| r.0.unsigned_abs()).max().unwrap_or(0) as usize;
        let angles = rows.iter().map(|r| r.1).max().map_or(0, |m| m + 1);
        let step = rows
            .iter()
            .find(|r| r.0 == truncation as i64)
            .map_or(0.0, |r| r.2 / truncation as f64);
        let scheme = SamplingScheme::new(step, angles, truncation)?;
        let mut samples = TomogramSamples::zeros(scheme);
        if rows.len() != samples.values.len() {
            return Err(TomoError::GridMismatch(format!(
                "{} rows for a {}x{} sample array",
                rows.len(),
                scheme.linear_count(),
                angles
            )));
        }
        for (k, m, _, v) in rows {
            let i = samples.index(k, m);
            samples.values[i] = v;
        }
        TomogramSamples::new(scheme, samples.values)
    }
}

/// 𝒲_{k,m} = 𝒲(kT, 2πm/N).
pub fn sample_tomogram(tomogram: &TomogramFunction, scheme: SamplingScheme) -> TomogramSamples {
    let mut values = Vec::with_capacity(scheme.linear_count() * scheme.angles());
    for k in scheme.linear_indices() {
        let x = scheme.linear_position(k);
        for m in 0..scheme.angles() {
            values.push(tomogram.eval(x, scheme.angular_position(m)));
        }
    }
    TomogramSamples { scheme, values }
}

/// sin(x)/x, equal to 1 at the origin.
pub fn sinc_kernel(x: f64) -> f64 {
    if x.abs() < SINC_SERIES_THRESHOLD {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// S_N(x) = sin(Nx) / (N sin x) for odd N, with its limits at multiples of
/// π (where it equals 1).
pub fn sn_kernel(x: f64, n: usize) -> Result<f64> {
    if n.is_multiple_of(2) {
        return Err(TomoError::invalid(
            "N",
            format!("S_N needs odd N, got {n}; replace an even N by N - 1 first"),
        ));
    }
    // π-periodic for odd N
    let h = x - PI * (x / PI).round();
    let s = h.sin();
    if s.abs() < SN_SERIES_THRESHOLD {
        let nf = n as f64;
        return Ok(1.0 - (nf * nf - 1.0) * h * h / 6.0);
    }
    Ok((n as f64 * h).sin() / (n as f64 * s))
}

/// sinc(πu), exactly 0 at nonzero integers and 1 at 0.
fn sinc_pi(u: f64) -> f64 {
    let n = u.round();
    let f = u - n;
    if f == 0.0 {
        return if n == 0.0 { 1.0 } else { 0.0 };
    }
    if u.abs() * PI < SINC_SERIES_THRESHOLD {
        return sinc_kernel(PI * u);
    }
    let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
    sign * (PI * f).sin() / (PI * u)
}

/// S_N(πd/N) for odd N, exactly the Kronecker delta at integer d.
fn sn_pi(d: f64, n: usize) -> f64 {
    let nf = n as f64;
    let d = d - nf * (d / nf).round();
    let j = d.round();
    let f = d - j;
    if f == 0.0 {
        return if j == 0.0 { 1.0 } else { 0.0 };
    }
    let h = PI * d / nf;
    if h.sin().abs() < SN_SERIES_THRESHOLD {
        return 1.0 - (nf * nf - 1.0) * h * h / 6.0;
    }
    let sign = if (j as i64) % 2 == 0 { 1.0 } else { -1.0 };
    sign * (PI * f).sin() / (nf * h.sin())
}

fn snap(u: f64) -> f64 {
    let r = u.round();
    if (u - r).abs() <= NODE_SNAP * r.abs().max(1.0) {
        r
    } else {
        u
    }
}

/// Shannon-Whittaker interpolation
/// Σ_k Σ_m 𝒲_{k,m} sinc(π(X − X_k)/T) S_N((φ − φ_m)/2).
pub fn interpolate_tomogram(samples: &TomogramSamples, x: f64, phi: f64) -> f64 {
    let scheme = samples.scheme();
    let n = scheme.angles();
    let u = snap(x / scheme.step());
    let w = snap(phi * n as f64 / TAU);
    let ang: Vec<f64> = (0..n).map(|m| sn_pi(w - m as f64, n)).collect();
    scheme
        .linear_indices()
        .map(|k| {
            let lin = sinc_pi(u - k as f64);
            if lin == 0.0 {
                return 0.0;
            }
            let row: f64 = samples.row(k).iter().zip(&ang).map(|(v, a)| v * a).sum();
            lin * row
        })
        .sum()
}

/// f̃_N(ℓ) = (1/N) Σ_m e^{−iℓφ_m} f(φ_m) with φ_m = 2πm/N.
pub fn periodized_torus_spectrum(f_samples: &[f64], l: i64) -> Complex64 {
    let n = f_samples.len();
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let sum: Complex64 = f_samples
        .iter()
        .enumerate()
        .map(|(m, &f)| {
            // reduce ℓm mod N before forming the angle
            let j = (l.rem_euclid(n as i64) as usize * m) % n;
            Complex64::from_polar(f, -TAU * j as f64 / n as f64)
        })
        .sum();
    sum / n as f64
}

/// ∫ dX e^{−iωX} ∫ (dφ/2π) e^{−iℓφ} 𝒲(X, φ), with Gauss-Legendre in X over
/// the range of `spec` and a trapezoid rule on `angular_nodes` angles.
/// Fails if halving the linear panel count moves the result by more than
/// 1e-8.
pub fn tomogram_spectrum(
    tomogram: &TomogramFunction,
    omega: f64,
    l: i64,
    spec: &QuadratureSpec,
    angular_nodes: usize,
) -> Result<Complex64> {
    if angular_nodes == 0 {
        return Err(TomoError::invalid("angular_nodes", "must be positive"));
    }
    let (angles, dphi) = periodic_trapezoid(angular_nodes);
    let angular = |x: f64| -> Complex64 {
        angles
            .iter()
            .map(|&phi| Complex64::from_polar(tomogram.eval(x, phi), -(l as f64) * phi))
            .sum::<Complex64>()
            * (dphi / TAU)
    };
    let eval = |nodes: &[f64], weights: &[f64]| -> Complex64 {
        nodes
            .iter()
            .zip(weights)
            .map(|(&x, &w)| angular(x) * Complex64::from_polar(w, -omega * x))
            .sum()
    };
    let fine_rule = spec.rule();
    let coarse_rule = spec.coarse_rule();
    let fine = eval(&fine_rule.nodes, &fine_rule.weights);
    if !(fine.re.is_finite() && fine.im.is_finite()) {
        return Err(TomoError::NonFinite("tomogram spectrum"));
    }
    let coarse = eval(&coarse_rule.nodes, &coarse_rule.weights);
    let diff = (fine - coarse).norm();
    if diff > SPECTRUM_CONVERGENCE_TOLERANCE {
        return Err(TomoError::NoConvergence { what: "tomogram spectrum", diff });
    }
    Ok(fine)
}

/// (T/N) Σ_k Σ_m 𝒲_{k,m} e^{−iX_kω} e^{−iφ_mℓ} χ_D(ω, ℓ).
pub fn discrete_spectrum(samples: &TomogramSamples, omega: f64, l: i64) -> Complex64 {
    let scheme = samples.scheme();
    if !scheme.in_band(omega, l) {
        return Complex64::new(0.0, 0.0);
    }
    let sum: Complex64 = scheme
        .linear_indices()
        .map(|k| {
            let ang = periodized_torus_spectrum(samples.row(k), l);
            ang * Complex64::from_polar(1.0, -omega * scheme.linear_position(k))
        })
        .sum();
    sum * scheme.step()
}

/// (α sin α + cos α − 1) / (4Tα²), the real radial kernel of the discrete
/// reconstruction; equals 1/(8T) at α = 0.
pub fn reconstruction_kernel(alpha: f64, step: f64) -> f64 {
    if alpha.abs() < KERNEL_TAYLOR_THRESHOLD {
        return (0.125 - alpha * alpha / 32.0) / step;
    }
    let half = (0.5 * alpha).sin();
    (alpha * alpha.sin() - 2.0 * half * half) / (4.0 * step * alpha * alpha)
}

/// W(p, q) = Σ_k Σ_m 𝒲_{k,m} ∫ dφ S_N((φ − φ_m)/2) κ(α_k(φ), T), with
/// α_k = π(X_k − q cos φ − p sin φ)/T and κ the [`reconstruction_kernel`].
/// The φ-integral uses a trapezoid rule on `angular_nodes` ≥ 4N nodes.
pub fn reconstruct_wigner(
    samples: &TomogramSamples,
    grid: PhaseSpaceGrid,
    angular_nodes: usize,
) -> Result<WignerField> {
    let scheme = *samples.scheme();
    let n = scheme.angles();
    if angular_nodes < 4 * n {
        return Err(TomoError::invalid(
            "angular_nodes",
            format!("must be at least 4N = {}, got {angular_nodes}", 4 * n),
        ));
    }
    let (angles, dphi) = periodic_trapezoid(angular_nodes);
    let nk = scheme.linear_count();
    let kmin = -(scheme.truncation() as i64);

    // A[j][k] = Σ_m S_N((φ_j − φ_m)/2) 𝒲_{k,m}
    let mut interp = vec![0.0; angular_nodes * nk];
    for (j, &phi) in angles.iter().enumerate() {
        let w = phi * n as f64 / TAU;
        let weights: Vec<f64> = (0..n).map(|m| sn_pi(w - m as f64, n)).collect();
        for (ki, k) in scheme.linear_indices().enumerate() {
            interp[j * nk + ki] = samples.row(k).iter().zip(&weights).map(|(v, a)| v * a).sum();
        }
    }
    let trig: Vec<(f64, f64)> = angles.iter().map(|a| a.sin_cos()).collect();
    let step = scheme.step();
    let inv_step = 1.0 / step;

    let values: Vec<f64> = grid
        .points()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|pt| {
            let mut total = 0.0;
            for (j, &(s, c)) in trig.iter().enumerate() {
                let u = (pt.q * c + pt.p * s) * inv_step;
                let (su, cu) = (PI * u).sin_cos();
                let row = &interp[j * nk..(j + 1) * nk];
                let mut acc = 0.0;
                for (ki, &a) in row.iter().enumerate() {
                    let k = kmin + ki as i64;
                    let alpha = PI * (k as f64 - u);
                    let kernel = if alpha.abs() < 0.5 {
                        reconstruction_kernel(alpha, step)
                    } else {
                        let parity = if k % 2 == 0 { 1.0 } else { -1.0 };
                        let sa = -parity * su;
                        let ca = parity * cu;
                        (alpha * sa + ca - 1.0) / (4.0 * step * alpha * alpha)
                    };
                    acc += a * kernel;
                }
                total += acc;
            }
            total * dphi
        })
        .collect();
    WignerField::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::CompositeRule;
    use crate::states::{single_photon_tomogram, single_photon_wigner, AnalyticState};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn fig1_scheme() -> SamplingScheme {
        SamplingScheme::new(0.1, 5, 40).unwrap()
    }

    #[test]
    fn scheme_validation() {
        assert!(SamplingScheme::new(0.1, 4, 40).is_err());
        assert!(SamplingScheme::new(0.1, 1, 40).is_err());
        assert!(SamplingScheme::new(0.0, 5, 40).is_err());
        assert!(SamplingScheme::new(0.1, 5, 0).is_err());
        assert_eq!(odd_angle_count(6), 5);
        assert_eq!(odd_angle_count(7), 7);
        let s = fig1_scheme();
        assert!(s.in_band(31.0, 2));
        assert!(!s.in_band(32.0, 0));
        assert!(!s.in_band(0.0, 3));
        assert!(!s.in_band(0.0, -3));
    }

    #[test]
    fn samples_of_single_photon() {
        let s = sample_tomogram(&AnalyticState::SinglePhoton.tomogram(), fig1_scheme());
        assert_eq!(s.values().len(), 81 * 5);
        for m in 0..5 {
            assert_eq!(s.get(0, m), 0.0);
            assert_eq!(s.get(17, m), s.get(17, 0));
        }
        assert_abs_diff_eq!(s.get(10, 0), 2.0 * (-1.0f64).exp() / PI.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc_kernel(0.0), 1.0);
        assert_abs_diff_eq!(sinc_kernel(PI), 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(sinc_kernel(PI / 2.0), 2.0 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(sinc_kernel(0.99e-4), (0.99e-4f64).sin() / 0.99e-4, epsilon = 1e-15);
    }

    #[test]
    fn sn_values() {
        assert_eq!(sn_kernel(0.0, 5).unwrap(), 1.0);
        assert_abs_diff_eq!(sn_kernel(2.0 * PI / 5.0, 5).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sn_kernel(PI, 5).unwrap(), 1.0, epsilon = 1e-15);
        assert!(sn_kernel(0.3, 4).is_err());
        assert_eq!(sn_kernel(0.7, 1).unwrap(), 1.0);
    }

    proptest! {
        #[test]
        fn sn_is_normalized_dirichlet_sum(x in -10.0f64..10.0, half in 0usize..6) {
            let n = 2 * half + 1;
            let j = half as i64;
            let dirichlet: f64 = (-j..=j).map(|l| (2.0 * l as f64 * x).cos()).sum::<f64>() / n as f64;
            prop_assert!((sn_kernel(x, n).unwrap() - dirichlet).abs() < 1e-10);
        }

        #[test]
        fn kernel_is_even(alpha in -50.0f64..50.0, step in 0.01f64..2.0) {
            prop_assert_eq!(reconstruction_kernel(alpha, step), reconstruction_kernel(-alpha, step));
        }
    }

    #[test]
    fn private_kernels_agree_with_public_ones() {
        for &u in &[0.3, -2.7, 11.01, 1e-6, 40.5] {
            assert_abs_diff_eq!(sinc_pi(u), sinc_kernel(PI * u), epsilon = 1e-14);
            assert_abs_diff_eq!(sn_pi(u, 5), sn_kernel(PI * u / 5.0, 5).unwrap(), epsilon = 1e-13);
        }
        assert_eq!(sinc_pi(3.0), 0.0);
        assert_eq!(sn_pi(7.0, 5), 0.0);
        assert_eq!(sn_pi(10.0, 5), 1.0);
    }

    #[test]
    fn kernel_values() {
        assert_eq!(reconstruction_kernel(0.0, 0.1), 1.0 / 0.8);
        assert_abs_diff_eq!(reconstruction_kernel(PI, 0.1), -2.0 / (0.4 * PI * PI), epsilon = 1e-14);
        assert_abs_diff_eq!(reconstruction_kernel(PI, 0.1), -0.506_605_918_211_689, epsilon = 1e-12);
        let a = KERNEL_TAYLOR_THRESHOLD;
        let taylor = (0.125 - a * a / 32.0) / 0.1;
        let direct = reconstruction_kernel(a * (1.0 + 1e-12), 0.1);
        assert_abs_diff_eq!(taylor, direct, epsilon = 1e-10);
    }

    #[test]
    fn kernel_matches_radial_integral() {
        // T/(2π)² ∫_0^{π/T} r cos(r s) dr with α = πs/T
        let step = 0.1;
        for &alpha in &[0.3, 2.0, -7.5, 30.0] {
            let s = alpha * step / PI;
            let rule = CompositeRule::new(0.0, PI / step, 512);
            let integral = rule.integrate(|r| r * (r * s).cos()) * step / (4.0 * PI * PI);
            assert_abs_diff_eq!(reconstruction_kernel(alpha, step), integral, epsilon = 1e-10);
        }
    }

    #[test]
    fn interpolation_is_exact_on_nodes() {
        let t = TomogramFunction::new(|x, phi| (x * 1.3).cos() * (-x * x / 9.0).exp() + 0.2 * (2.0 * phi).sin());
        let scheme = SamplingScheme::new(0.25, 7, 12).unwrap();
        let s = sample_tomogram(&t, scheme);
        for k in scheme.linear_indices() {
            for m in 0..7 {
                let v = interpolate_tomogram(&s, scheme.linear_position(k), scheme.angular_position(m));
                assert_eq!(v, s.get(k, m));
            }
        }
    }

    #[test]
    fn single_photon_interpolation_is_close() {
        let s = sample_tomogram(&AnalyticState::SinglePhoton.tomogram(), fig1_scheme());
        for &(x, phi) in &[(0.05, 0.3), (1.234, 2.0), (-2.71, 5.5), (0.517, 1.1)] {
            let v = interpolate_tomogram(&s, x, phi);
            assert_abs_diff_eq!(v, single_photon_tomogram(x, phi), epsilon = 1e-3);
        }
    }

    #[test]
    fn torus_spectrum_values() {
        let ones = [1.0; 5];
        assert_abs_diff_eq!(periodized_torus_spectrum(&ones, 0).re, 1.0, epsilon = 1e-15);
        for l in 1..5 {
            assert_abs_diff_eq!(periodized_torus_spectrum(&ones, l).norm(), 0.0, epsilon = 1e-15);
        }
        let cos: Vec<f64> = (0..5).map(|m| (TAU * m as f64 / 5.0).cos()).collect();
        for l in [1, -1] {
            let c = periodized_torus_spectrum(&cos, l);
            assert_abs_diff_eq!(c.re, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-15);
        }
        let alias: Vec<f64> = (0..5).map(|m| (5.0 * TAU * m as f64 / 5.0).cos()).collect();
        assert_abs_diff_eq!(periodized_torus_spectrum(&alias, 0).re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn single_photon_spectrum() {
        let t = AnalyticState::SinglePhoton.tomogram();
        let spec = QuadratureSpec::new(10.0, 512).unwrap();
        assert_abs_diff_eq!(tomogram_spectrum(&t, 0.0, 0, &spec, 32).unwrap().re, 1.0, epsilon = 1e-10);
        for l in [1, -2, 3] {
            assert_abs_diff_eq!(tomogram_spectrum(&t, 0.7, l, &spec, 32).unwrap().norm(), 0.0, epsilon = 1e-8);
        }
        for w in [0.5, 1.7, 4.0] {
            let c = tomogram_spectrum(&t, w, 0, &spec, 32).unwrap();
            let exact = (1.0 - w * w / 2.0) * (-w * w / 4.0f64).exp();
            assert_abs_diff_eq!(c.re, exact, epsilon = 1e-10);
            assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn spectrum_reports_non_convergence() {
        let t = TomogramFunction::new(|x, _| (40.0 * x).cos() * (-x * x / 50.0).exp());
        let spec = QuadratureSpec::new(30.0, 64).unwrap();
        assert!(matches!(tomogram_spectrum(&t, 0.0, 0, &spec, 8), Err(TomoError::NoConvergence { .. })));
    }

    #[test]
    fn discrete_spectrum_of_single_photon() {
        let s = sample_tomogram(&AnalyticState::SinglePhoton.tomogram(), fig1_scheme());
        assert_eq!(discrete_spectrum(&s, 40.0, 0), Complex64::new(0.0, 0.0));
        assert_eq!(discrete_spectrum(&s, 0.0, 3), Complex64::new(0.0, 0.0));
        let c = discrete_spectrum(&s, 1.0, 0);
        // truncation at |X| <= KT = 4 leaves a tail of order 1e-7
        assert_abs_diff_eq!(c.re, 0.5 * (-0.25f64).exp(), epsilon = 1e-6);
        assert_abs_diff_eq!(discrete_spectrum(&s, 1.0, 1).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn reconstruction_requires_enough_angular_nodes() {
        let s = TomogramSamples::zeros(fig1_scheme());
        let grid = PhaseSpaceGrid::new(1.0, 5).unwrap();
        assert!(reconstruct_wigner(&s, grid, 19).is_err());
        let w = reconstruct_wigner(&s, grid, 20).unwrap();
        assert!(w.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn reconstruction_fast_path_matches_direct_formula() {
        let scheme = SamplingScheme::new(0.2, 5, 10).unwrap();
        let t = TomogramFunction::new(|x, phi| (-(x - 0.3 * phi.cos()).powi(2)).exp());
        let s = sample_tomogram(&t, scheme);
        let grid = PhaseSpaceGrid::new(1.0, 5).unwrap();
        let field = reconstruct_wigner(&s, grid, 40).unwrap();
        let (angles, dphi) = periodic_trapezoid(40);
        for (pt, &v) in grid.points().zip(field.values()) {
            let mut direct = 0.0;
            for k in scheme.linear_indices() {
                for m in 0..5 {
                    for &phi in &angles {
                        let alpha = PI * (scheme.linear_position(k) - pt.q * phi.cos() - pt.p * phi.sin()) / 0.2;
                        let sn = sn_kernel((phi - scheme.angular_position(m)) / 2.0, 5).unwrap();
                        direct += s.get(k, m) * sn * reconstruction_kernel(alpha, 0.2) * dphi;
                    }
                }
            }
            assert_abs_diff_eq!(v, direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn reconstructs_single_photon_near_origin() {
        let s = sample_tomogram(&AnalyticState::SinglePhoton.tomogram(), fig1_scheme());
        let grid = PhaseSpaceGrid::new(1.0, 5).unwrap();
        let field = reconstruct_wigner(&s, grid, 64).unwrap();
        for (pt, &v) in grid.points().zip(field.values()) {
            assert_abs_diff_eq!(v, single_photon_wigner(pt.p, pt.q), epsilon = 1e-3);
        }
    }

    #[test]
    fn csv_round_trip() {
        let scheme = SamplingScheme::new(0.25, 3, 2).unwrap();
        let s = sample_tomogram(&AnalyticState::Vacuum.tomogram(), scheme);
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("k,m,X,phi,value\n-2,0,-0.5,0,"));
        assert_eq!(text.lines().count(), 1 + 5 * 3);
        let back = TomogramSamples::read_csv(&buf[..]).unwrap();
        assert_eq!(back.scheme(), s.scheme());
        for (a, b) in back.values().iter().zip(s.values()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
    }
}
