//! 2-intertwiners as scalar fields on a discretized orbit.
//!
//! Vertical composition multiplies fields pointwise. Horizontal composition
//! of `α: f ⇒ f'` and `β: g ⇒ g'` along a middle object is the decomposable
//! field `α·β` on the middle orbit; its quadrature integral
//! [`TwoIntertwiner::integral`] is the convolution over that orbit.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::one::{compose_1, tensor_1, InterchangeChoice, OneIntertwiner};
use crate::error::{Error, Result};
use crate::quadrature::OrbitGrid;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoIntertwiner {
    pub source: Arc<OneIntertwiner>,
    pub target: Arc<OneIntertwiner>,
    pub grid: Arc<OrbitGrid>,
    values: Vec<f64>,
}

fn same_cell(a: &Arc<OneIntertwiner>, b: &Arc<OneIntertwiner>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl TwoIntertwiner {
    pub fn new(source: Arc<OneIntertwiner>, target: Arc<OneIntertwiner>, grid: Arc<OrbitGrid>, values: Vec<f64>) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(Error::Mismatch("2-cell between non-parallel 1-intertwiners".into()));
        }
        if values.len() != grid.len() {
            return Err(Error::InvalidInput(format!("{} values on {} nodes", values.len(), grid.len())));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite value at node {i}")));
        }
        Ok(Self {
            source,
            target,
            grid,
            values,
        })
    }

    pub fn from_fn<F>(source: Arc<OneIntertwiner>, target: Arc<OneIntertwiner>, grid: Arc<OrbitGrid>, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64,
    {
        let values = grid.points().map(f).collect();
        Self::new(source, target, grid, values)
    }

    pub fn constant(source: Arc<OneIntertwiner>, target: Arc<OneIntertwiner>, grid: Arc<OrbitGrid>, c: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(source, target, grid, vec![c; n])
    }

    /// The unit field on `f ⇒ f`.
    pub fn identity(f: Arc<OneIntertwiner>, grid: Arc<OrbitGrid>) -> Result<Self> {
        Self::constant(f.clone(), f, grid, 1.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// `Σ wᵢ vᵢ` in node order.
    pub fn integral(&self) -> f64 {
        self.values.iter().zip(self.grid.weights()).map(|(v, w)| v * w).sum()
    }

    /// Quadrature volume of the grid window the field lives on.
    pub fn window_volume(&self) -> f64 {
        self.grid.volume()
    }

    /// `node,weight,value` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("node,weight,value\n");
        for (i, (w, v)) in self.grid.weights().iter().zip(&self.values).enumerate() {
            s.push_str(&format!("{i},{w:e},{v:e}\n"));
        }
        s
    }

    /// Reads values written by [`Self::to_csv`] onto `grid`; weights must
    /// match the grid.
    pub fn from_csv(source: Arc<OneIntertwiner>, target: Arc<OneIntertwiner>, grid: Arc<OrbitGrid>, text: &str) -> Result<Self> {
        let mut values = vec![f64::NAN; grid.len()];
        for (lineno, line) in text.lines().enumerate().skip(1) {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: lineno + 1, msg };
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(err(format!("expected 3 columns, got {}", cols.len())));
            }
            let node: usize = cols[0].trim().parse().map_err(|e| err(format!("node: {e}")))?;
            let w: f64 = cols[1].trim().parse().map_err(|e| err(format!("weight: {e}")))?;
            let v: f64 = cols[2].trim().parse().map_err(|e| err(format!("value: {e}")))?;
            let expected = *grid.weights().get(node).ok_or_else(|| err(format!("node {node} out of range")))?;
            if (w - expected).abs() > 1e-12 * expected.abs().max(1.0) {
                return Err(Error::ResampleRequired);
            }
            values[node] = v;
        }
        Self::new(source, target, grid, values)
    }
}

fn check_grid(a: &TwoIntertwiner, b: &TwoIntertwiner) -> Result<()> {
    if Arc::ptr_eq(&a.grid, &b.grid) || a.grid.spec() == b.grid.spec() {
        Ok(())
    } else {
        Err(Error::ResampleRequired)
    }
}

fn pointwise(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.par_iter().zip(b.par_iter()).map(|(x, y)| x * y).collect()
}

/// `β ∘ α` for `α: f ⇒ g`, `β: g ⇒ h`.
pub fn compose_2_vertical(alpha: &TwoIntertwiner, beta: &TwoIntertwiner) -> Result<TwoIntertwiner> {
    if !same_cell(&alpha.target, &beta.source) {
        return Err(Error::Mismatch("target of the first 2-cell differs from source of the second".into()));
    }
    check_grid(alpha, beta)?;
    Ok(TwoIntertwiner {
        source: alpha.source.clone(),
        target: beta.target.clone(),
        grid: alpha.grid.clone(),
        values: pointwise(&alpha.values, &beta.values),
    })
}

/// `α ∗ β` for `α: f ⇒ f'` on `A → B` and `β: g ⇒ g'` on `B → C`.
pub fn compose_2_horizontal(alpha: &TwoIntertwiner, beta: &TwoIntertwiner) -> Result<TwoIntertwiner> {
    check_grid(alpha, beta)?;
    let source = compose_1(&alpha.source, &beta.source)?;
    let target = if Arc::ptr_eq(&alpha.source, &alpha.target) && Arc::ptr_eq(&beta.source, &beta.target) {
        source.clone()
    } else {
        compose_1(&alpha.target, &beta.target)?
    };
    Ok(TwoIntertwiner {
        source: Arc::new(source),
        target: Arc::new(target),
        grid: alpha.grid.clone(),
        values: pointwise(&alpha.values, &beta.values),
    })
}

/// `α ⊗ β` on the product grid, node `(i, j)` at index `i·|β| + j`.
pub fn tensor_2(alpha: &TwoIntertwiner, beta: &TwoIntertwiner) -> Result<TwoIntertwiner> {
    let grid = OrbitGrid::product(&alpha.grid, &beta.grid);
    let values = alpha
        .values
        .par_iter()
        .flat_map_iter(|a| beta.values.iter().map(move |b| a * b))
        .collect();
    Ok(TwoIntertwiner {
        source: Arc::new(tensor_1(&alpha.source, &beta.source, InterchangeChoice::Identity)?),
        target: Arc::new(tensor_1(&alpha.target, &beta.target, InterchangeChoice::Identity)?),
        grid: Arc::new(grid),
        values,
    })
}
