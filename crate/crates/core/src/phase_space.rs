//! Phase-space points, origin-centred square meshes and sampled Wigner
//! fields.

use crate::error::{Result, TomoError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpacePoint {
    /// Momentum quadrature.
    pub p: f64,
    /// Position quadrature.
    pub q: f64,
}

impl PhaseSpacePoint {
    pub fn new(p: f64, q: f64) -> Self {
        PhaseSpacePoint { p, q }
    }
}

/// Uniform mesh on the box [-b, b]² with an odd number of nodes per axis,
/// so the origin is always a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceGrid {
    box_half_width: f64,
    points_per_axis: usize,
}

impl PhaseSpaceGrid {
    pub fn new(box_half_width: f64, points_per_axis: usize) -> Result<Self> {
        if !(box_half_width > 0.0) || !box_half_width.is_finite() {
            return Err(TomoError::invalid(
                "box_half_width",
                format!("must be positive and finite, got {box_half_width}"),
            ));
        }
        if points_per_axis < 3 || points_per_axis.is_multiple_of(2) {
            return Err(TomoError::invalid(
                "points_per_axis",
                format!("must be odd and at least 3, got {points_per_axis}"),
            ));
        }
        Ok(PhaseSpaceGrid {
            box_half_width,
            points_per_axis,
        })
    }

    pub fn box_half_width(&self) -> f64 {
        self.box_half_width
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.box_half_width / (self.points_per_axis - 1) as f64
    }

    /// Coordinate of node `i` along either axis. The centre node is exactly 0.
    pub fn coordinate(&self, i: usize) -> f64 {
        let c = (self.points_per_axis / 2) as isize;
        let offset = i as isize - c;
        if offset == 0 {
            0.0
        } else {
            offset as f64 * self.box_half_width / c as f64
        }
    }

    pub fn axis(&self) -> Vec<f64> {
        (0..self.points_per_axis).map(|i| self.coordinate(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.points_per_axis * self.points_per_axis
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Nodes in row-major order: p outer, q inner.
    pub fn points(&self) -> impl Iterator<Item = PhaseSpacePoint> + '_ {
        let n = self.points_per_axis;
        (0..n).flat_map(move |i| {
            let p = self.coordinate(i);
            (0..n).map(move |j| PhaseSpacePoint::new(p, self.coordinate(j)))
        })
    }

    /// Trapezoid weight of node (i, j) for integrals over the box.
    pub fn trapezoid_weight(&self, i: usize, j: usize) -> f64 {
        let edge = |k: usize| {
            if k == 0 || k + 1 == self.points_per_axis {
                0.5
            } else {
                1.0
            }
        };
        let h = self.spacing();
        edge(i) * edge(j) * h * h
    }
}

/// Real field values on a [`PhaseSpaceGrid`], row-major (p outer, q inner).
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    grid: PhaseSpaceGrid,
    values: Vec<f64>,
}

impl WignerField {
    pub fn new(grid: PhaseSpaceGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(TomoError::GridMismatch(format!(
                "{} values for a {n}x{n} grid",
                values.len(),
                n = grid.points_per_axis()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(TomoError::NonFinite("Wigner field values"));
        }
        Ok(WignerField { grid, values })
    }

    pub fn zeros(grid: PhaseSpaceGrid) -> Self {
        WignerField {
            values: vec![0.0; grid.len()],
            grid,
        }
    }

    /// Tabulates `f(p, q)` on every node.
    pub fn from_fn<F: Fn(f64, f64) -> f64>(grid: PhaseSpaceGrid, f: F) -> Result<Self> {
        let values = grid.points().map(|pt| f(pt.p, pt.q)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &PhaseSpaceGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.points_per_axis() + j]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Bilinear interpolation; exact on nodes.
    pub fn evaluate(&self, point: PhaseSpacePoint) -> Result<f64> {
        let b = self.grid.box_half_width();
        let slack = 1e-12 * b;
        if !(point.p.abs() <= b + slack && point.q.abs() <= b + slack) {
            return Err(TomoError::OutOfBox {
                p: point.p,
                q: point.q,
                half_width: b,
            });
        }
        let n = self.grid.points_per_axis();
        let h = self.grid.spacing();
        let locate = |x: f64| {
            let s = ((x + b) / h).clamp(0.0, (n - 1) as f64);
            let i = (s.floor() as usize).min(n - 2);
            (i, s - i as f64)
        };
        let (i, tp) = locate(point.p);
        let (j, tq) = locate(point.q);
        let v00 = self.get(i, j);
        let v01 = self.get(i, j + 1);
        let v10 = self.get(i + 1, j);
        let v11 = self.get(i + 1, j + 1);
        if tp == 0.0 && tq == 0.0 {
            return Ok(v00);
        }
        Ok((1.0 - tp) * ((1.0 - tq) * v00 + tq * v01) + tp * ((1.0 - tq) * v10 + tq * v11))
    }
}
