//! Timelike triangles and quadrilaterals with prescribed side radii.
//!
//! For a target `T = (r, 0, 0, 0)` the triangle fiber is the set of future
//! timelike `u` with `u·u = r₁²` and `(T − u)·(T − u) = r₂²`, `T − u` future.
//! Writing `u = (u₀, u⃗)` the two conditions fix
//! `u₀ = (r² + r₁² − r₂²) / 2r` and `|u⃗|² = u₀² − r₁²`, so the fiber is a
//! round 2-sphere for `r > r₁ + r₂`, a point at `r = r₁ + r₂`, and empty below.

use nalgebra::{Matrix3x4, SVD};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{rotation_matrix3, FourVector, LorentzTransform};
use crate::rng::{par_blocks, unit_vector};

/// Relative tolerance for deciding that `r = r₁ + r₂`.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// Step of the finite-difference rotations used for tangent ranks.
const FD_STEP: f64 = 1e-6;

/// Shape of the triangle fiber over `(r, 0, 0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FiberGeometry {
    Empty,
    /// The collinear solution `u = (r₁, 0, 0, 0)`.
    Point { time: f64 },
    /// `{ (time, radius·n̂) : n̂ ∈ S² }`.
    Sphere { time: f64, radius: f64 },
}

impl FiberGeometry {
    pub fn is_empty(&self) -> bool {
        matches!(self, FiberGeometry::Empty)
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            FiberGeometry::Empty => None,
            FiberGeometry::Point { .. } => Some(0),
            FiberGeometry::Sphere { .. } => Some(2),
        }
    }

    /// Spatial radius of the fiber (zero for the collinear point).
    pub fn radius(&self) -> Option<f64> {
        match *self {
            FiberGeometry::Empty => None,
            FiberGeometry::Point { .. } => Some(0.0),
            FiberGeometry::Sphere { radius, .. } => Some(radius),
        }
    }
}

fn check_radii(rs: &[f64]) -> Result<()> {
    if rs.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::InvalidInput(format!("radii must be finite and positive, got {rs:?}")));
    }
    Ok(())
}

/// Closed-form triangle fiber over `(r, 0, 0, 0)`.
pub fn triangle_geometry(r1: f64, r2: f64, r: f64) -> Result<FiberGeometry> {
    check_radii(&[r1, r2, r])?;
    let sum = r1 + r2;
    if (r - sum).abs() <= COLLINEAR_TOL * sum {
        return Ok(FiberGeometry::Point { time: r1 });
    }
    if r < sum {
        return Ok(FiberGeometry::Empty);
    }
    let time = (r * r + r1 * r1 - r2 * r2) / (2.0 * r);
    // (u₀ − r₁)(u₀ + r₁) avoids cancellation near the collinear point
    let radius = ((time - r1) * (time + r1)).max(0.0).sqrt();
    Ok(FiberGeometry::Sphere { time, radius })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleFiber {
    pub r1: f64,
    pub r2: f64,
    pub r: f64,
    pub geometry: FiberGeometry,
    pub samples: Vec<FourVector>,
    /// Rank of the tangent map of the residual rotation action, maximized
    /// over samples; `None` for an empty fiber.
    pub tangent_rank: Option<usize>,
    /// Whether every sampled pair is related by a rotation fixing the target.
    pub transitive: Option<bool>,
    /// Largest relative violation of the two side conditions.
    pub max_constraint_residual: f64,
}

/// Samples the triangle fiber and measures its dimension and homogeneity.
pub fn triangle_fiber(r1: f64, r2: f64, r: f64, n_samples: usize, seed: u64) -> Result<TriangleFiber> {
    if n_samples == 0 {
        return Err(Error::InvalidInput("sample count must be ≥ 1".into()));
    }
    let geometry = triangle_geometry(r1, r2, r)?;
    let target = FourVector::new(r, 0.0, 0.0, 0.0);
    let samples: Vec<FourVector> = match geometry {
        FiberGeometry::Empty => vec![],
        FiberGeometry::Point { time } => vec![FourVector::new(time, 0.0, 0.0, 0.0)],
        FiberGeometry::Sphere { time, radius } => par_blocks(n_samples, seed, |rng, range| {
            range
                .map(|_| FourVector::from_parts(time, unit_vector(rng).map(|c| radius * c)))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect(),
    };
    let scale = r * r;
    let max_constraint_residual = samples
        .iter()
        .map(|u| {
            let w = target - *u;
            ((u.interval() - r1 * r1).abs().max((w.interval() - r2 * r2).abs())) / scale
        })
        .fold(0.0, f64::max);
    let tangent_rank = (!samples.is_empty()).then(|| samples.iter().map(|u| tangent_rank(*u)).max().unwrap_or(0));
    let transitive = (!samples.is_empty()).then(|| residual_transitivity(&samples, target));
    Ok(TriangleFiber {
        r1,
        r2,
        r,
        geometry,
        samples,
        tangent_rank,
        transitive,
        max_constraint_residual,
    })
}

/// Rank of `ξ ↦ d/dε exp(εξ)·u` for `ξ ∈ so(3)`.
fn tangent_rank(u: FourVector) -> usize {
    let rows = rotation_tangents(u);
    numerical_rank(&rows, 1e-6 * u.euclidean_norm_sq().sqrt().max(1.0))
}

fn rotation_tangents(u: FourVector) -> Matrix3x4<f64> {
    let mut m = Matrix3x4::zeros();
    for (k, axis) in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]].into_iter().enumerate() {
        let plus = LorentzTransform::from_rotation(rotation_matrix3(axis, FD_STEP)).act(u);
        let minus = LorentzTransform::from_rotation(rotation_matrix3(axis, -FD_STEP)).act(u);
        let d = (plus - minus).to_array();
        for c in 0..4 {
            m[(k, c)] = d[c] / (2.0 * FD_STEP);
        }
    }
    m
}

fn numerical_rank(m: &Matrix3x4<f64>, tol: f64) -> usize {
    SVD::new(*m, false, false).singular_values.iter().filter(|s| **s > tol).count()
}

/// For consecutive sample pairs, builds the rotation aligning the spatial
/// parts and checks that it maps one sample onto the other and fixes the
/// target.
fn residual_transitivity(samples: &[FourVector], target: FourVector) -> bool {
    let tol = 1e-9 * target.t.abs().max(1.0);
    samples.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        let rot = align(a.spatial(), b.spatial());
        let ra = rot.act(a);
        let rt = rot.act(target);
        (ra - b).euclidean_norm_sq().sqrt() <= tol && (rt - target).euclidean_norm_sq().sqrt() <= tol
    })
}

/// A rotation taking the direction of `a` to the direction of `b`, or the
/// identity when either vanishes.
fn align(a: [f64; 3], b: [f64; 3]) -> LorentzTransform {
    let na = a.iter().map(|c| c * c).sum::<f64>().sqrt();
    let nb = b.iter().map(|c| c * c).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return LorentzTransform::identity();
    }
    let (a, b) = (a.map(|c| c / na), b.map(|c| c / nb));
    let cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let s = cross.iter().map(|c| c * c).sum::<f64>().sqrt();
    let c = a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>();
    let angle = s.atan2(c);
    let axis = if s > 1e-12 {
        cross.map(|x| x / s)
    } else {
        // parallel or antiparallel: any axis orthogonal to a
        let helper = if a[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let d = helper.iter().zip(&a).map(|(x, y)| x * y).sum::<f64>();
        let o = [helper[0] - d * a[0], helper[1] - d * a[1], helper[2] - d * a[2]];
        let n = o.iter().map(|x| x * x).sum::<f64>().sqrt();
        o.map(|x| x / n)
    };
    LorentzTransform::from_rotation(rotation_matrix3(axis, angle))
}

/// Isotropy of a closed quadrilateral under the rotations fixing its total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Isotropy {
    /// Generic shapes; these contribute the maximal irreps `L_r`.
    Trivial,
    /// All edges lie in one timelike 2-plane containing the total; these
    /// contribute `(M_r, S²)`.
    SO2,
    /// All edges along the total: measure zero.
    SU2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadrilateralSample {
    /// Edges `u₁, u₂, u₃` with `u₁ + u₂ + u₃ = (r, 0, 0, 0)`.
    pub edges: [FourVector; 3],
    pub isotropy: Isotropy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadrilateralReport {
    pub radii: [f64; 3],
    pub total: f64,
    pub samples: Vec<QuadrilateralSample>,
    /// Sample counts per isotropy type.
    pub counts: Vec<(Isotropy, usize)>,
    /// Largest relative violation of the side and closure conditions.
    pub max_constraint_residual: f64,
}

impl QuadrilateralReport {
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Isotropy of the edge configuration: the dimension of the common
/// stabilizer in `so(3)` of all edges is 3, 1 or 0.
pub fn classify_quadrilateral(edges: &[FourVector]) -> Isotropy {
    let scale = edges.iter().map(|e| e.euclidean_norm_sq().sqrt()).fold(1.0, f64::max);
    // stack the tangent maps of all edges: ξ ↦ (ξ·u₁, ξ·u₂, …)
    let mut stacked = nalgebra::DMatrix::<f64>::zeros(3, 4 * edges.len());
    for (i, e) in edges.iter().enumerate() {
        let t = rotation_tangents(*e);
        for r in 0..3 {
            for c in 0..4 {
                stacked[(r, 4 * i + c)] = t[(r, c)];
            }
        }
    }
    let rank = stacked
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|s| **s > 1e-7 * scale)
        .count();
    match 3 - rank {
        3 => Isotropy::SU2,
        1 => Isotropy::SO2,
        _ => Isotropy::Trivial,
    }
}

/// Samples closed timelike quadrilaterals with sides of radii `r₁, r₂, r₃`
/// and total `(r, 0, 0, 0)`.
///
/// `u₁` is drawn with rapidity uniform on the admissible range (the
/// remainder `T − u₁` must have radius at least `r₂ + r₃`), then `u₂` is
/// drawn from the triangle fiber of `(r₂, r₃)` over `T − u₁`.
pub fn quadrilateral_shape_space(
    r1: f64,
    r2: f64,
    r3: f64,
    r: f64,
    n_samples: usize,
    seed: u64,
) -> Result<QuadrilateralReport> {
    check_radii(&[r1, r2, r3, r])?;
    if n_samples == 0 {
        return Err(Error::InvalidInput("sample count must be ≥ 1".into()));
    }
    let target = FourVector::new(r, 0.0, 0.0, 0.0);
    let rest = r2 + r3;
    let mut report = QuadrilateralReport {
        radii: [r1, r2, r3],
        total: r,
        samples: vec![],
        counts: vec![],
        max_constraint_residual: 0.0,
    };
    if r < r1 + rest {
        return Ok(report);
    }
    let cosh_max = ((r * r + r1 * r1 - rest * rest) / (2.0 * r * r1)).max(1.0);
    let eta_max = cosh_max.acosh();
    let samples: Vec<QuadrilateralSample> = par_blocks(n_samples, seed, |rng, range| {
        range
            .map(|_| {
                let eta = rng.random_range(0.0..=eta_max);
                let n = unit_vector(rng);
                let u1 = FourVector::from_parts(r1 * eta.cosh(), n.map(|c| r1 * eta.sinh() * c));
                let remainder = target - u1;
                let s = remainder.interval().max(0.0).sqrt().max(rest);
                let u2_rest = match triangle_geometry(r2, r3, s).unwrap_or(FiberGeometry::Empty) {
                    FiberGeometry::Sphere { time, radius } => {
                        FourVector::from_parts(time, unit_vector(rng).map(|c| radius * c))
                    }
                    _ => FourVector::new(r2, 0.0, 0.0, 0.0),
                };
                let u2 = rest_frame_boost(remainder).act(u2_rest);
                let u3 = remainder - u2;
                let edges = [u1, u2, u3];
                QuadrilateralSample {
                    edges,
                    isotropy: classify_quadrilateral(&edges),
                }
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    let mut counts = std::collections::BTreeMap::new();
    let mut worst: f64 = 0.0;
    for s in &samples {
        *counts.entry(s.isotropy).or_insert(0usize) += 1;
        let [u1, u2, u3] = s.edges;
        let scale = r * r;
        worst = worst
            .max((u1.interval() - r1 * r1).abs() / scale)
            .max((u2.interval() - r2 * r2).abs() / scale)
            .max((u3.interval() - r3 * r3).abs() / scale)
            .max((u1 + u2 + u3 - target).euclidean_norm_sq().sqrt() / r);
    }
    report.samples = samples;
    report.counts = counts.into_iter().collect();
    report.max_constraint_residual = worst;
    Ok(report)
}

/// The pure boost taking `(|v|, 0, 0, 0)` to the future timelike `v`.
fn rest_frame_boost(v: FourVector) -> LorentzTransform {
    let s = v.interval().max(0.0).sqrt();
    let p = v.spatial();
    let pn = p.iter().map(|c| c * c).sum::<f64>().sqrt();
    if pn == 0.0 || s == 0.0 {
        return LorentzTransform::identity();
    }
    let rapidity = (pn / s).asinh();
    LorentzTransform::boost(p.map(|c| c / pn), rapidity).unwrap_or_else(|_| LorentzTransform::identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_examples() {
        let generic = triangle_fiber(1.0, 2.0, 4.0, 500, 1).unwrap();
        assert_eq!(generic.tangent_rank, Some(2));
        assert_eq!(generic.transitive, Some(true));
        assert!(generic.max_constraint_residual < 1e-12);
        let collinear = triangle_fiber(1.0, 2.0, 3.0, 500, 1).unwrap();
        assert_eq!(collinear.geometry, FiberGeometry::Point { time: 1.0 });
        assert_eq!(collinear.tangent_rank, Some(0));
        assert_eq!(collinear.samples.len(), 1);
        let empty = triangle_fiber(1.0, 1.0, 1.5, 500, 1).unwrap();
        assert!(empty.geometry.is_empty() && empty.samples.is_empty());
        assert_eq!(empty.tangent_rank, None);
        assert!(triangle_fiber(0.0, 1.0, 2.0, 10, 0).is_err());
    }

    #[test]
    fn past_directed_remainder_is_empty() {
        // r < r₁ − r₂ solves the quadratic but leaves T − u in the past cone
        assert!(triangle_geometry(5.0, 1.0, 2.0).unwrap().is_empty());
    }

    #[test]
    fn sphere_radius_closed_form() {
        // |u⃗|² = u₀² − r₁² with u₀ = (16 + 1 − 4)/8
        let g = triangle_geometry(1.0, 2.0, 4.0).unwrap();
        let t = 13.0 / 8.0;
        assert_eq!(g, FiberGeometry::Sphere { time: t, radius: (t * t - 1.0f64).sqrt() });
    }

    #[test]
    fn quadrilateral_generic_and_fixtures() {
        let rep = quadrilateral_shape_space(1.0, 1.0, 1.0, 3.5, 200, 7).unwrap();
        assert_eq!(rep.samples.len(), 200);
        assert!(rep.max_constraint_residual < 1e-9, "{}", rep.max_constraint_residual);
        assert_eq!(rep.counts, vec![(Isotropy::Trivial, 200)]);
        // all edges in the (t, x) plane
        let b = |eta: f64, r: f64| FourVector::new(r * eta.cosh(), r * eta.sinh(), 0.0, 0.0);
        let (u1, u2) = (b(0.3, 1.0), b(-0.5, 1.0));
        let u3 = FourVector::new(3.5, 0.0, 0.0, 0.0) - u1 - u2;
        assert_eq!(classify_quadrilateral(&[u1, u2, u3]), Isotropy::SO2);
        let c = FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(classify_quadrilateral(&[c, c, c]), Isotropy::SU2);
        assert!(quadrilateral_shape_space(1.0, 1.0, 1.0, 2.5, 10, 0).unwrap().is_empty());
    }
}
