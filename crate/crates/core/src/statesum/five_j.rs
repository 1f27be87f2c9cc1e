//! Pentagon traces of the five tetrahedron fields of a 4-simplex.
//!
//! The tetrahedra of a simplex `[v₀ … v₄]` are numbered by their missing
//! vertex, `α₁ … α₅`. The plus path pastes `α₂ ⊗ α₄` into `α₁ ⊗ α₃ ⊗ α₅` and
//! traces over the unit sphere of directions on the Fibonacci grid. The
//! minus path pastes in the opposite order, which reverses orientation: it
//! traces over the antipodal grid. Both paths carry the same volume factor
//! `4π`, and they agree in the continuum because the round measure is
//! reflection invariant.

use serde::{Deserialize, Serialize};

use super::labelling::{triangle_status, Labelling, TetraField};
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::quadrature::OrbitGrid;
use crate::rng::stream_rng;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PentagonTrace {
    pub plus: f64,
    pub minus: f64,
    pub residual: f64,
}

/// The fields `α₁ … α₅` of simplex `simplex`; tetrahedron `k` omits vertex `k`.
pub fn simplex_fields(t: &Triangulation, simplex: usize, l: &Labelling) -> Result<[TetraField; 5]> {
    let s = *t
        .simplices
        .get(simplex)
        .ok_or(Error::IndexOutOfRange { index: simplex, dim: t.simplices.len() })?;
    Ok(std::array::from_fn(|k| {
        let mut tet = [0; 4];
        let mut j = 0;
        for (i, &v) in s.iter().enumerate() {
            if i != k {
                tet[j] = v;
                j += 1;
            }
        }
        l.tetra(&tet)
    }))
}

fn fields_of(t: &Triangulation, simplex: usize, l: &Labelling) -> Result<[TetraField; 5]> {
    let fields = simplex_fields(t, simplex, l)?;
    let colors = l.colors_for(t)?;
    for &f in &t.simplex_triangles[simplex] {
        let c = t.triangle_edges[f].map(|e| colors[e]);
        if !triangle_status(c).passes() {
            return Err(Error::Mismatch(format!("triangle {:?} colored {c:?} is not admissible", t.triangles[f])));
        }
    }
    Ok(fields)
}

/// Trace of five fields along both paths on an `nodes`-point grid.
pub fn pentagon_trace(fields: &[TetraField; 5], nodes: usize) -> Result<PentagonTrace> {
    let grid = OrbitGrid::sphere(nodes, 1.0)?;
    let reflected = grid.reflected()?;
    let at = |p: &[f64]| [p[0], p[1], p[2]];
    let plus = grid.integrate(|p| {
        let n = at(p);
        (fields[1].eval(n) * fields[3].eval(n)) * (fields[0].eval(n) * fields[2].eval(n) * fields[4].eval(n))
    });
    let minus = reflected.integrate(|p| {
        let n = at(p);
        (fields[0].eval(n) * fields[2].eval(n) * fields[4].eval(n)) * (fields[1].eval(n) * fields[3].eval(n))
    });
    Ok(PentagonTrace {
        plus,
        minus,
        residual: (plus - minus).abs(),
    })
}

/// The 5j symbol of simplex `simplex` under `l`.
pub fn five_j(t: &Triangulation, simplex: usize, l: &Labelling, nodes: usize) -> Result<PentagonTrace> {
    pentagon_trace(&fields_of(t, simplex, l)?, nodes)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericityReport {
    pub nodes: usize,
    pub trials: usize,
    /// Largest `|plus − minus|` over all simplices and draws.
    pub max_residual: f64,
    /// Largest residual per simplex.
    pub per_simplex: Vec<f64>,
}

/// Runs [`five_j`] on every simplex: once with the labelling's own fields,
/// then `trials` times with fresh band-limited fields on every tetrahedron.
/// Draw `k` of simplex `s` uses stream `s · trials + k`.
pub fn sphericity_check(t: &Triangulation, l: &Labelling, nodes: usize, trials: usize, seed: u64) -> Result<SphericityReport> {
    let mut per_simplex = Vec::with_capacity(t.simplices.len());
    for s in 0..t.simplices.len() {
        let mut worst = five_j(t, s, l, nodes)?.residual;
        for k in 0..trials {
            let mut rng = stream_rng(seed, (s * trials + k) as u64);
            let fields: [TetraField; 5] = std::array::from_fn(|_| TetraField::random_ridge(&mut rng));
            worst = worst.max(pentagon_trace(&fields, nodes)?.residual);
        }
        per_simplex.push(worst);
    }
    Ok(SphericityReport {
        nodes,
        trials,
        max_residual: per_simplex.iter().cloned().fold(0.0, f64::max),
        per_simplex,
    })
}

/// [`sphericity_check`] at each resolution, with the same draws.
pub fn sphericity_sweep(
    t: &Triangulation,
    l: &Labelling,
    resolutions: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<SphericityReport>> {
    resolutions.iter().map(|&n| sphericity_check(t, l, n, trials, seed)).collect()
}
