//! Bridges `G_𝒪 / (H₁ ∩ H₂)` between fibers `G_𝒪/H₁` and `G_𝒪/H₂`.

use nalgebra::{DMatrix, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::rotation_matrix3;
use crate::rep::StabilizerGroup;
use crate::rng::{stream_rng, unit_vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub group: StabilizerGroup,
    pub h1: StabilizerGroup,
    pub h2: StabilizerGroup,
    pub intersection: StabilizerGroup,
    /// `dim G − dim(H₁ ∩ H₂)`.
    pub dim: usize,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `H₁ ∩ H₂` for subgroups sharing their rotation axis (and, for cyclic
/// groups, their generator's axis).
pub fn intersect_same_axis(g: &StabilizerGroup, h1: &StabilizerGroup, h2: &StabilizerGroup) -> Result<StabilizerGroup> {
    use StabilizerGroup as S;
    let uncatalogued = || Error::UncataloguedSubgroup {
        group: g.to_string(),
        subgroup: format!("{h1} ∩ {h2}"),
    };
    Ok(match (h1, h2) {
        (S::NonLie(_), _) | (_, S::NonLie(_)) => return Err(Error::Unsupported("intersections with non-Lie subgroups".into())),
        _ if h1 == h2 => h1.clone(),
        (S::Trivial, _) | (_, S::Trivial) => S::Trivial,
        _ if h1 == g => h2.clone(),
        _ if h2 == g => h1.clone(),
        (S::U1 | S::SO2, S::CyclicZn(n)) | (S::CyclicZn(n), S::U1 | S::SO2) => S::CyclicZn(*n),
        (S::CyclicZn(n), S::CyclicZn(m)) => match gcd(*n, *m) {
            1 => S::Trivial,
            d => S::CyclicZn(d),
        },
        _ => return Err(uncatalogued()),
    })
}

pub fn bridge(g: &StabilizerGroup, h1: &StabilizerGroup, h2: &StabilizerGroup) -> Result<Bridge> {
    for h in [h1, h2] {
        if !g.has_subgroup(h) {
            return Err(Error::UncataloguedSubgroup {
                group: g.to_string(),
                subgroup: h.to_string(),
            });
        }
    }
    let intersection = intersect_same_axis(g, h1, h2)?;
    let dim = g.dim().zip(intersection.dim()).map(|(a, b)| a - b).ok_or(Error::NonHausdorff)?;
    Ok(Bridge {
        group: g.clone(),
        h1: h1.clone(),
        h2: h2.clone(),
        intersection,
        dim,
    })
}

/// Points of ℝ³ whose common stabilizer in SO(3) is the given subgroup
/// (same-axis convention, axis `ẑ`).
fn witness(h: &StabilizerGroup) -> Result<Vec<Vector3<f64>>> {
    use StabilizerGroup as S;
    Ok(match h {
        S::SU2 => vec![],
        S::U1 => vec![Vector3::z()],
        S::CyclicZn(_) | S::Trivial => vec![Vector3::z(), Vector3::x()],
        other => return Err(Error::Unsupported(format!("quotient chart for SU2/{other}"))),
    })
}

/// Numerical dimension of the bridge: the rank of the tangent map of
/// `R ↦ (R w)_w` at `n_samples` random rotations, where the witness points
/// `w` have common stabilizer `H₁ ∩ H₂`. Only SU(2) bridges have charts.
pub fn bridge_tangent_rank(b: &Bridge, n_samples: usize, seed: u64) -> Result<usize> {
    if b.group != StabilizerGroup::SU2 {
        return Err(Error::Unsupported(format!("quotient charts for {}", b.group)));
    }
    let w = witness(&b.intersection)?;
    let mut rng = stream_rng(seed, 0);
    let mut rank = 0;
    for _ in 0..n_samples.max(1) {
        let axis = unit_vector(&mut rng);
        let angle: f64 = rand::Rng::random_range(&mut rng, 0.0..std::f64::consts::TAU);
        let r = nalgebra::Matrix3::from_fn(|i, j| rotation_matrix3(axis, angle)[i][j]);
        if w.is_empty() {
            continue;
        }
        // column k: the generator e_k applied to every witness, stacked
        let mut m = DMatrix::<f64>::zeros(3 * w.len(), 3);
        for (i, p) in w.iter().enumerate() {
            let q = r * p;
            for k in 0..3 {
                let d = Vector3::ith(k, 1.0).cross(&q);
                for c in 0..3 {
                    m[(3 * i + c, k)] = d[c];
                }
            }
        }
        let r_here = m.svd(false, false).singular_values.iter().filter(|s| **s > 1e-9).count();
        rank = rank.max(r_here);
    }
    Ok(rank)
}
