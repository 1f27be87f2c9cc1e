//! The two pasting conditions that 2-cells from tensor products satisfy,
//! with every cell a scalar field on one common node set.
//!
//! The first says that `α ⊗ β` commutes with the interchange cells of the
//! 1-intertwiners on its boundary: `φ_{h,k} · α · β = α · β · φ_{g,f}`.
//! The second says that the four interchange cells `f_i ⊗ g_j` of a 3×3
//! grid paste to the interchange cell of the composites
//! `(f₂f₁) ⊗ (g₂g₁)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterchangeGrid {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    /// Interchange cell of the source 1-intertwiners.
    pub phi_gf: Vec<f64>,
    /// Interchange cell of the target 1-intertwiners.
    pub phi_hk: Vec<f64>,
    /// `squares[i][j]`: interchange cell of `f_{i+1} ⊗ g_{j+1}`.
    pub squares: [[Vec<f64>; 2]; 2],
    /// Interchange cell of `(f₂f₁) ⊗ (g₂g₁)`.
    pub corner: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterchangeReport {
    pub square_residual: f64,
    pub corner_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl InterchangeGrid {
    /// Every cell equal to the unit field on `n` nodes.
    pub fn identity(n: usize) -> Self {
        let one = vec![1.0; n];
        Self {
            alpha: one.clone(),
            beta: one.clone(),
            phi_gf: one.clone(),
            phi_hk: one.clone(),
            squares: [[one.clone(), one.clone()], [one.clone(), one.clone()]],
            corner: one,
        }
    }

    /// Interchange cells from a bicharacter: `f_i ⊗ g_j ↦ exp(θᵢ ψⱼ)`,
    /// pointwise. Composites add the charges, so the corner is
    /// `exp((θ₁+θ₂)(ψ₁+ψ₂))`.
    pub fn from_bicharacter(alpha: Vec<f64>, beta: Vec<f64>, theta: [&[f64]; 2], psi: [&[f64]; 2]) -> Self {
        let cell = |t: &[f64], p: &[f64]| -> Vec<f64> { t.iter().zip(p).map(|(a, b)| (a * b).exp()).collect() };
        let sum = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let squares = [
            [cell(theta[0], psi[0]), cell(theta[0], psi[1])],
            [cell(theta[1], psi[0]), cell(theta[1], psi[1])],
        ];
        let corner = cell(&sum(theta[0], theta[1]), &sum(psi[0], psi[1]));
        Self {
            alpha,
            beta,
            phi_gf: squares[0][0].clone(),
            phi_hk: squares[0][0].clone(),
            squares,
            corner,
        }
    }

    fn len_checked(&self) -> Result<usize> {
        let n = self.alpha.len();
        let all = [&self.beta, &self.phi_gf, &self.phi_hk, &self.corner]
            .into_iter()
            .chain(self.squares.iter().flatten());
        for v in all {
            if v.len() != n {
                return Err(Error::Mismatch("cells of the grid live on different node sets".into()));
            }
        }
        Ok(n)
    }
}

/// Checks both pasting equalities node by node, with residuals relative
/// to `max(1, |rhs|)`.
pub fn check_interchange_conditions(grid: &InterchangeGrid, tol: f64) -> Result<InterchangeReport> {
    let n = grid.len_checked()?;
    let rel = |l: f64, r: f64| (l - r).abs() / r.abs().max(1.0);
    let mut square: f64 = 0.0;
    let mut corner: f64 = 0.0;
    for i in 0..n {
        let ab = grid.alpha[i] * grid.beta[i];
        square = square.max(rel(grid.phi_hk[i] * ab, ab * grid.phi_gf[i]));
        let pasted = grid.squares[0][0][i] * grid.squares[0][1][i] * grid.squares[1][0][i] * grid.squares[1][1][i];
        corner = corner.max(rel(pasted, grid.corner[i]));
    }
    Ok(InterchangeReport {
        square_residual: square,
        corner_residual: corner,
        tolerance: tol,
        passed: square <= tol && corner <= tol,
    })
}
