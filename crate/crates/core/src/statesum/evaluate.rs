//! The regularized state sum
//! `Z = 𝒩 ∫_{(0,Λ]^{Δ₁}} ∏ ρ_e ∏ 𝒜_f ∏ 𝒜_t ∏ 5j · 1[admissible] dρ`.
//!
//! Each integrand value is the product of its factors taken in sorted order,
//! and the terms are accumulated exactly, so grid results depend only on the
//! multiset of terms and not on how edges are numbered.

use accurate::sum::OnlineExactSum;
use accurate::traits::SumAccumulator;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{AmplitudeConfig, EdgeWeight, FaceAmplitude, Integrator, TetraAmplitude};
use super::five_j::{pentagon_trace, simplex_fields};
use super::labelling::{triangle_status, Labelling};
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::rep::triangle_geometry;
use crate::rng::{par_blocks, BLOCK};

/// Largest number of grid points accepted by the grid integrator.
pub const MAX_GRID_POINTS: u64 = 10_000_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZReport {
    pub value: f64,
    /// Monte Carlo standard error; `None` for the grid integrator.
    pub standard_error: Option<f64>,
    pub cutoff: f64,
    pub integrator: Integrator,
    pub points: u64,
    pub admissible_points: u64,
    /// `Λ^{|Δ₁|}`.
    pub color_volume: f64,
    /// `∏ 𝒜_t ∏ 5j`, the color-independent part of the integrand.
    pub constant_factor: f64,
    /// Plus-path 5j value of each simplex.
    pub five_j: Vec<f64>,
    pub normalization: f64,
}

/// Face factor `𝒜_f` (times the face Hilbert dimension) for colors `c`.
pub fn face_amplitude(a: &FaceAmplitude, c: [f64; 3]) -> f64 {
    match a {
        FaceAmplitude::Unit => 1.0,
        FaceAmplitude::BcWeight { n } => {
            let mut s = c;
            s.sort_by(f64::total_cmp);
            let rho = triangle_geometry(s[0], s[1], s[2]).ok().and_then(|g| g.radius()).unwrap_or(0.0);
            bc_face_weight(rho, *n)
        }
        FaceAmplitude::Table(t) => {
            let top = c.iter().cloned().fold(0.0, f64::max);
            t.iter().rev().find(|(th, _)| top >= *th).map_or(0.0, |(_, v)| *v)
        }
    }
}

/// `ρ² + n²`.
pub fn bc_face_weight(rho: f64, n: f64) -> f64 {
    rho * rho + n * n
}

fn sorted_product(factors: &mut [f64]) -> f64 {
    factors.sort_by(f64::total_cmp);
    factors.iter().product()
}

struct Integrand<'a> {
    t: &'a Triangulation,
    cfg: &'a AmplitudeConfig,
    face_dims: Vec<f64>,
}

impl Integrand<'_> {
    /// `None` on inadmissible colorings.
    fn eval(&self, colors: &[f64], buf: &mut Vec<f64>) -> Option<f64> {
        buf.clear();
        for es in &self.t.triangle_edges {
            if !triangle_status(es.map(|e| colors[e])).passes() {
                return None;
            }
        }
        if self.cfg.edge_weight == EdgeWeight::Rho {
            buf.extend_from_slice(colors);
        }
        if self.cfg.face_amplitude != FaceAmplitude::Unit {
            for es in &self.t.triangle_edges {
                buf.push(face_amplitude(&self.cfg.face_amplitude, es.map(|e| colors[e])));
            }
        }
        buf.extend(self.face_dims.iter().filter(|&&d| d != 1.0));
        Some(sorted_product(buf))
    }
}

/// Exact sum that tolerates having seen only zeros.
#[derive(Clone)]
struct ExactSum {
    acc: OnlineExactSum<f64>,
    nonzero: bool,
}

impl ExactSum {
    fn new() -> Self {
        Self {
            acc: OnlineExactSum::zero(),
            nonzero: false,
        }
    }

    fn sum(self) -> f64 {
        if self.nonzero {
            self.acc.sum()
        } else {
            0.0
        }
    }
}

impl std::ops::AddAssign<f64> for ExactSum {
    fn add_assign(&mut self, x: f64) {
        if x != 0.0 {
            self.acc += x;
            self.nonzero = true;
        }
    }
}

impl std::ops::Add for ExactSum {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self {
            acc: self.acc + other.acc,
            nonzero: self.nonzero || other.nonzero,
        }
    }
}

#[derive(Clone)]
struct Partial {
    sum: ExactSum,
    sum_sq: ExactSum,
    admissible: u64,
}

impl Partial {
    fn new() -> Self {
        Self {
            sum: ExactSum::new(),
            sum_sq: ExactSum::new(),
            admissible: 0,
        }
    }

    fn merge(self, other: Self) -> Self {
        Self {
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
            admissible: self.admissible + other.admissible,
        }
    }
}

/// [`evaluate_z_with`] with default face and tetrahedron labels.
pub fn evaluate_z(t: &Triangulation, cfg: &AmplitudeConfig) -> Result<ZReport> {
    evaluate_z_with(t, &Labelling::default(), cfg)
}

/// Integrates the edge colors over `(0, Λ]^{|Δ₁|}`; the edge colors of
/// `labels` are ignored, its face and tetrahedron labels are used.
pub fn evaluate_z_with(t: &Triangulation, labels: &Labelling, cfg: &AmplitudeConfig) -> Result<ZReport> {
    cfg.validate()?;
    let n_edges = t.edges.len();
    let five_j = (0..t.simplices.len())
        .map(|s| Ok(pentagon_trace(&simplex_fields(t, s, labels)?, cfg.five_j_nodes)?.plus))
        .collect::<Result<Vec<f64>>>()?;
    let mut constants = five_j.clone();
    if let TetraAmplitude::Constant(c) = cfg.tetra_amplitude {
        constants.extend(std::iter::repeat_n(c, t.tetrahedra.len()));
    }
    let constant_factor = sorted_product(&mut constants);
    let integrand = Integrand {
        t,
        cfg,
        face_dims: t.triangles.iter().map(|f| labels.face(f).hilbert_dim as f64).collect(),
    };
    let lambda = cfg.cutoff;
    let color_volume = lambda.powi(n_edges as i32);

    match cfg.integrator {
        Integrator::Grid { resolution } => {
            let points = (resolution as u64)
                .checked_pow(n_edges as u32)
                .filter(|&p| p <= MAX_GRID_POINTS)
                .ok_or_else(|| Error::InvalidInput(format!("{resolution}^{n_edges} grid points exceed the limit; use monte_carlo")))?;
            let step = lambda / resolution as f64;
            let n_blocks = points.div_ceil(BLOCK as u64);
            let total = (0..n_blocks)
                .into_par_iter()
                .map(|b| {
                    let mut acc = Partial::new();
                    let mut colors = vec![0.0; n_edges];
                    let mut buf = Vec::new();
                    let start = b * BLOCK as u64;
                    for i in start..(start + BLOCK as u64).min(points) {
                        let mut k = i;
                        for c in colors.iter_mut() {
                            *c = ((k % resolution as u64) as f64 + 0.5) * step;
                            k /= resolution as u64;
                        }
                        if let Some(v) = integrand.eval(&colors, &mut buf) {
                            acc.sum += v;
                            acc.admissible += 1;
                        }
                    }
                    acc
                })
                .reduce(Partial::new, Partial::merge);
            let cell = step.powi(n_edges as i32);
            Ok(ZReport {
                value: cfg.normalization * (cell * (constant_factor * total.sum.sum())),
                standard_error: None,
                cutoff: lambda,
                integrator: cfg.integrator,
                points,
                admissible_points: total.admissible,
                color_volume,
                constant_factor,
                five_j,
                normalization: cfg.normalization,
            })
        }
        Integrator::MonteCarlo { samples, seed } => {
            let parts = par_blocks(samples, seed, |rng, range| {
                let mut acc = Partial::new();
                let mut colors = vec![0.0; n_edges];
                let mut buf = Vec::new();
                for _ in range {
                    for c in colors.iter_mut() {
                        *c = lambda * (1.0 - rng.random::<f64>());
                    }
                    if let Some(v) = integrand.eval(&colors, &mut buf) {
                        acc.sum += v;
                        acc.sum_sq += v * v;
                        acc.admissible += 1;
                    }
                }
                acc
            });
            let total = parts.into_iter().fold(Partial::new(), Partial::merge);
            let n = samples as f64;
            let mean = total.sum.sum() / n;
            let var = if samples > 1 {
                ((total.sum_sq.sum() - n * mean * mean) / (n - 1.0)).max(0.0)
            } else {
                0.0
            };
            let scale = cfg.normalization * color_volume * constant_factor;
            Ok(ZReport {
                value: scale * mean,
                standard_error: Some(scale.abs() * (var / n).sqrt()),
                cutoff: lambda,
                integrator: cfg.integrator,
                points: samples as u64,
                admissible_points: total.admissible,
                color_volume,
                constant_factor,
                five_j,
                normalization: cfg.normalization,
            })
        }
    }
}
