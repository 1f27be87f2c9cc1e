//! Edge colors, face and tetrahedron labels, and the triangle condition.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::rng::unit_vector;

/// Relative tolerance separating collinear triangles from strict ones.
pub const ADMISSIBILITY_TOL: f64 = 1e-12;

/// Scalar field on the unit sphere attached to a tetrahedron.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum TetraField {
    Constant(f64),
    /// `1 + Σ_k a_k (u_k · n)^{d_k}`.
    Ridge { terms: Vec<RidgeTerm> },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RidgeTerm {
    pub amplitude: f64,
    pub direction: [f64; 3],
    pub degree: u32,
}

/// Number of ridge terms in [`TetraField::random_ridge`].
pub const RIDGE_TERMS: usize = 4;
/// Largest ridge degree in [`TetraField::random_ridge`].
pub const RIDGE_MAX_DEGREE: u32 = 3;

impl Default for TetraField {
    fn default() -> Self {
        TetraField::Constant(1.0)
    }
}

impl TetraField {
    pub fn eval(&self, n: [f64; 3]) -> f64 {
        match self {
            TetraField::Constant(c) => *c,
            TetraField::Ridge { terms } => {
                1.0 + terms
                    .iter()
                    .map(|t| {
                        let d = t.direction[0] * n[0] + t.direction[1] * n[1] + t.direction[2] * n[2];
                        t.amplitude * d.powi(t.degree as i32)
                    })
                    .sum::<f64>()
            }
        }
    }

    /// A band-limited field of degree at most [`RIDGE_MAX_DEGREE`] with
    /// amplitudes in `[-0.25, 0.25]`.
    pub fn random_ridge<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let terms = (0..RIDGE_TERMS)
            .map(|_| RidgeTerm {
                amplitude: rng.random_range(-0.25..=0.25),
                direction: unit_vector(rng),
                degree: rng.random_range(1..=RIDGE_MAX_DEGREE),
            })
            .collect();
        TetraField::Ridge { terms }
    }
}

/// Face 1-intertwiner: a strong intertwiner with uniform Hilbert dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLabel {
    pub hilbert_dim: u64,
}

impl Default for FaceLabel {
    fn default() -> Self {
        Self { hilbert_dim: 1 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Labelling {
    pub edge_colors: BTreeMap<[usize; 2], f64>,
    pub face_labels: BTreeMap<[usize; 3], FaceLabel>,
    pub tetra_labels: BTreeMap<[usize; 4], TetraField>,
}

impl Labelling {
    pub fn set_edge(&mut self, a: usize, b: usize, rho: f64) -> Result<()> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::InvalidInput(format!("edge color must be finite and ≥ 0, got {rho}")));
        }
        let key = if a < b { [a, b] } else { [b, a] };
        self.edge_colors.insert(key, rho);
        Ok(())
    }

    pub fn edge(&self, e: &[usize; 2]) -> Option<f64> {
        self.edge_colors.get(e).copied()
    }

    pub fn face(&self, f: &[usize; 3]) -> FaceLabel {
        self.face_labels.get(f).copied().unwrap_or_default()
    }

    pub fn tetra(&self, t: &[usize; 4]) -> TetraField {
        self.tetra_labels.get(t).cloned().unwrap_or_default()
    }

    /// Colors of all edges of `t`, in edge order, or the missing edges.
    pub fn colors_for(&self, t: &Triangulation) -> Result<Vec<f64>> {
        let missing: Vec<String> = t
            .edges
            .iter()
            .filter(|e| !self.edge_colors.contains_key(*e))
            .map(|e| format!("{}-{}", e[0], e[1]))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingLabels(missing.join(", ")));
        }
        Ok(t.edges.iter().map(|e| self.edge_colors[e]).collect())
    }

    /// Renames vertices as in [`Triangulation::relabel`].
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        let sorted2 = |k: [usize; 2]| {
            let mut k = k.map(&map);
            k.sort_unstable();
            k
        };
        let sorted3 = |k: [usize; 3]| {
            let mut k = k.map(&map);
            k.sort_unstable();
            k
        };
        let sorted4 = |k: [usize; 4]| {
            let mut k = k.map(&map);
            k.sort_unstable();
            k
        };
        Self {
            edge_colors: self.edge_colors.iter().map(|(k, v)| (sorted2(*k), *v)).collect(),
            face_labels: self.face_labels.iter().map(|(k, v)| (sorted3(*k), *v)).collect(),
            tetra_labels: self.tetra_labels.iter().map(|(k, v)| (sorted4(*k), v.clone())).collect(),
        }
    }
}

/// Parses `edge v_a v_b rho <real>` lines; `#` starts a comment.
pub fn load_labels(text: &str) -> Result<Labelling> {
    let mut l = Labelling::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let w: Vec<&str> = line.split_whitespace().collect();
        match w.as_slice() {
            ["edge", a, b, "rho", r] => {
                let a: usize = a.parse().map_err(|e| err(format!("vertex {a:?}: {e}")))?;
                let b: usize = b.parse().map_err(|e| err(format!("vertex {b:?}: {e}")))?;
                if a == b {
                    return Err(err("edge with equal endpoints".into()));
                }
                let r: f64 = r.parse().map_err(|e| err(format!("rho {r:?}: {e}")))?;
                l.set_edge(a, b, r).map_err(|e| err(e.to_string()))?;
            }
            _ => return Err(err(format!("expected `edge a b rho x`, got {line:?}"))),
        }
    }
    Ok(l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleStatus {
    /// One color strictly exceeds the sum of the other two.
    Admissible,
    /// One color equals the sum of the other two.
    Collinear,
    Violated,
}

impl TriangleStatus {
    pub fn passes(self) -> bool {
        self != TriangleStatus::Violated
    }
}

/// The timelike triangle condition: the largest color is at least the sum
/// of the other two.
pub fn triangle_status(colors: [f64; 3]) -> TriangleStatus {
    let mut c = colors;
    c.sort_by(f64::total_cmp);
    let gap = c[2] - (c[0] + c[1]);
    if gap.abs() <= ADMISSIBILITY_TOL * c[2].max(f64::MIN_POSITIVE) || (c[2] == 0.0) {
        TriangleStatus::Collinear
    } else if gap > 0.0 {
        TriangleStatus::Admissible
    } else {
        TriangleStatus::Violated
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleCheck {
    pub triangle: [usize; 3],
    pub colors: [f64; 3],
    pub status: TriangleStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub passed: bool,
    pub triangles: Vec<TriangleCheck>,
}

impl AdmissibilityReport {
    pub fn collinear(&self) -> impl Iterator<Item = &TriangleCheck> {
        self.triangles.iter().filter(|t| t.status == TriangleStatus::Collinear)
    }
}

pub fn admissible(t: &Triangulation, l: &Labelling) -> Result<AdmissibilityReport> {
    let colors = l.colors_for(t)?;
    let triangles: Vec<TriangleCheck> = t
        .triangles
        .iter()
        .zip(&t.triangle_edges)
        .map(|(tri, es)| {
            let c = es.map(|e| colors[e]);
            TriangleCheck {
                triangle: *tri,
                colors: c,
                status: triangle_status(c),
            }
        })
        .collect();
    Ok(AdmissibilityReport {
        passed: triangles.iter().all(|c| c.status.passes()),
        triangles,
    })
}

/// Colors `|t_a − t_b|` for vertex times `t_v`: every triangle is collinear.
pub fn time_ordered_labelling(t: &Triangulation, time: impl Fn(usize) -> f64) -> Result<Labelling> {
    let mut l = Labelling::default();
    for e in &t.edges {
        l.set_edge(e[0], e[1], (time(e[0]) - time(e[1])).abs())?;
    }
    Ok(l)
}
