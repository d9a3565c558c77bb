//! Reconstruction-quality metrics over the phase-space box, integrated with
//! the trapezoidal rule on the field's own grid.

use serde::Serialize;

use crate::error::{Result, TomoError};
use crate::phase_space::WignerField;

/// Summary of a reconstruction against a reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorReport {
    /// ½ ∫_B |W − W_rec|.
    pub epsilon: f64,
    /// ∫_B |W| of the reference.
    pub w_norm: f64,
    /// max over nodes of |W − W_rec|.
    pub sup_error: f64,
}

impl ErrorReport {
    pub fn compare(reference: &WignerField, reconstructed: &WignerField) -> Result<Self> {
        Ok(ErrorReport {
            epsilon: l1_half_distance(reference, reconstructed)?,
            w_norm: l1_norm(reference),
            sup_error: sup_error(reference, reconstructed)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain floats serialize")
    }
}

fn check_grids(a: &WignerField, b: &WignerField) -> Result<()> {
    if a.grid() != b.grid() {
        return Err(TomoError::GridMismatch(format!(
            "{}x{} grid on [-{}, {}]^2 vs {}x{} grid on [-{}, {}]^2",
            a.grid().points_per_axis(),
            a.grid().points_per_axis(),
            a.grid().box_half_width(),
            a.grid().box_half_width(),
            b.grid().points_per_axis(),
            b.grid().points_per_axis(),
            b.grid().box_half_width(),
            b.grid().box_half_width(),
        )));
    }
    Ok(())
}

fn trapezoid<F: Fn(usize) -> f64>(field: &WignerField, f: F) -> f64 {
    let grid = field.grid();
    let n = grid.points_per_axis();
    let mut total = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += grid.trapezoid_weight(i, j) * f(i * n + j);
        }
        total += row;
    }
    total
}

/// ∫_B |W| dp dq.
pub fn l1_norm(field: &WignerField) -> f64 {
    let v = field.values();
    trapezoid(field, |i| v[i].abs())
}

/// ε = ½ ∫_B |W − W_rec| dp dq.
pub fn l1_half_distance(reference: &WignerField, reconstructed: &WignerField) -> Result<f64> {
    check_grids(reference, reconstructed)?;
    let (a, b) = (reference.values(), reconstructed.values());
    Ok(0.5 * trapezoid(reference, |i| (a[i] - b[i]).abs()))
}

/// Largest node-wise |W − W_rec|.
pub fn sup_error(reference: &WignerField, reconstructed: &WignerField) -> Result<f64> {
    check_grids(reference, reconstructed)?;
    Ok(reference
        .values()
        .iter()
        .zip(reconstructed.values())
        .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}
