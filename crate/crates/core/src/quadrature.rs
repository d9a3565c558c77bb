//! Fixed quadrature rules: composite Gauss-Legendre panels on finite
//! intervals and the uniform trapezoid rule on the circle.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Result, TomoError};

/// Points per Gauss-Legendre panel.
pub const PANEL_ORDER: usize = 16;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1].
///
/// Roots of P_n are refined by Newton iteration from the Tricomi initial
/// guess; weights are 2 / ((1 - x^2) P_n'(x)^2).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn base_panel() -> &'static (Vec<f64>, Vec<f64>) {
    static BASE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    BASE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

/// Composite Gauss-Legendre rule on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl CompositeRule {
    /// At least `min_nodes` points, rounded up to whole 16-point panels.
    pub fn new(a: f64, b: f64, min_nodes: usize) -> Self {
        let panels = min_nodes.div_ceil(PANEL_ORDER).max(1);
        Self::with_panels(a, b, panels)
    }

    pub fn with_panels(a: f64, b: f64, panels: usize) -> Self {
        let (x, w) = base_panel();
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * PANEL_ORDER);
        let mut weights = Vec::with_capacity(panels * PANEL_ORDER);
        for j in 0..panels {
            let lo = a + j as f64 * h;
            let mid = lo + 0.5 * h;
            for (xi, wi) in x.iter().zip(w) {
                nodes.push(mid + 0.5 * h * xi);
                weights.push(0.5 * h * wi);
            }
        }
        CompositeRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Truncation and resolution of an improper line integral over ℝ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub x_half_range: f64,
    pub nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            x_half_range: 8.0,
            nodes: 512,
        }
    }
}

/// Integrand tail tolerance enforced by [`QuadratureSpec::with_decay_bound`].
pub const TAIL_TOLERANCE: f64 = 1e-12;

impl QuadratureSpec {
    pub fn new(x_half_range: f64, nodes: usize) -> Result<Self> {
        if !(x_half_range > 0.0) || !x_half_range.is_finite() {
            return Err(TomoError::invalid(
                "x_half_range",
                format!("must be positive and finite, got {x_half_range}"),
            ));
        }
        if nodes < 16 {
            return Err(TomoError::invalid(
                "nodes",
                format!("at least 16 nodes required, got {nodes}"),
            ));
        }
        Ok(QuadratureSpec {
            x_half_range,
            nodes,
        })
    }

    /// Like [`QuadratureSpec::new`], additionally checking that the caller's
    /// bound on |integrand| at the truncation point is below 1e-12.
    pub fn with_decay_bound<B: Fn(f64) -> f64>(
        x_half_range: f64,
        nodes: usize,
        decay_bound: B,
    ) -> Result<Self> {
        let spec = Self::new(x_half_range, nodes)?;
        let tail = decay_bound(x_half_range);
        if !(tail < TAIL_TOLERANCE) {
            return Err(TomoError::invalid(
                "x_half_range",
                format!("integrand bound {tail:e} at the truncation point exceeds {TAIL_TOLERANCE:e}"),
            ));
        }
        Ok(spec)
    }

    pub fn rule(&self) -> CompositeRule {
        CompositeRule::new(-self.x_half_range, self.x_half_range, self.nodes)
    }

    /// Same range with half as many panels (never fewer than one).
    pub(crate) fn coarse_rule(&self) -> CompositeRule {
        let panels = self.nodes.div_ceil(PANEL_ORDER).max(2) / 2;
        CompositeRule::with_panels(-self.x_half_range, self.x_half_range, panels)
    }
}

/// Uniform periodic trapezoid nodes on [0, 2π): angles and the common weight.
pub fn periodic_trapezoid(nodes: usize) -> (Vec<f64>, f64) {
    let h = 2.0 * PI / nodes as f64;
    ((0..nodes).map(|j| j as f64 * h).collect(), h)
}
