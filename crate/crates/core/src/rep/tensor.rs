//! Tensor products of elementary irreps as direct integrals over the
//! Minkowski sum of their orbits.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{make_irrep, FiberSpace, Irrep, IrrepKind, StabilizerGroup};
use crate::error::Result;
use crate::minkowski::{orbit_sum_range, CausalClass, MinkowskiOrbit, OrbitSumRange, SamplerConfig};

/// Measure placed on the continuum parameter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureTag {
    #[default]
    Lebesgue,
    Custom(String),
}

impl fmt::Display for MeasureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureTag::Lebesgue => f.write_str("lebesgue"),
            MeasureTag::Custom(s) => write!(f, "custom:{s}"),
        }
    }
}

/// `∫⊕_{r ∈ (r_min, r_max)} (𝒪_r, F) dμ(r)`, the family of irreps over the
/// orbits of one causal class with fixed subgroup.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuumFamily {
    pub class: CausalClass,
    /// Open lower endpoint.
    pub r_min: f64,
    /// `None` for an unbounded range.
    pub r_max: Option<f64>,
    pub subgroup: StabilizerGroup,
    pub fiber: FiberSpace,
    pub measure: MeasureTag,
}

impl ContinuumFamily {
    /// The member irrep at radius `r`.
    pub fn member(&self, r: f64) -> Result<Irrep> {
        make_irrep(MinkowskiOrbit::new(self.class, r)?, self.subgroup.clone())
    }

    pub fn contains(&self, r: f64) -> bool {
        r > self.r_min && self.r_max.map_or(true, |m| r < m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectIntegralDecomposition {
    pub continuum_families: Vec<ContinuumFamily>,
    pub discrete_terms: Vec<Irrep>,
}

impl DirectIntegralDecomposition {
    /// Smallest base radius that occurs, and whether it is attained.
    pub fn radius_range(&self) -> RadiusRange {
        let mut lo = f64::INFINITY;
        let mut closed = false;
        let mut hi: Option<f64> = Some(f64::NEG_INFINITY);
        for f in &self.continuum_families {
            if f.r_min < lo {
                lo = f.r_min;
                closed = false;
            }
            hi = match (hi, f.r_max) {
                (Some(a), Some(b)) => Some(a.max(b)),
                _ => None,
            };
        }
        for d in &self.discrete_terms {
            let r = d.base.radius;
            if r < lo || (r == lo && !closed) {
                lo = r;
                closed = true;
            }
            hi = hi.map(|h| h.max(r));
        }
        RadiusRange { min: lo, min_attained: closed, max: hi }
    }
}

impl fmt::Display for DirectIntegralDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for c in &self.continuum_families {
            let upper = c.r_max.map_or_else(|| "inf".to_string(), |m| m.to_string());
            parts.push(format!(
                "integral over r in ({}, {upper}) of (M_r, {}) [{}]",
                c.r_min, c.fiber, c.measure
            ));
        }
        for d in &self.discrete_terms {
            parts.push(format!("E_{}", d.base.radius));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Range of base radii `[min, max]` (or `(min, max]`) of the summands.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusRange {
    pub min: f64,
    pub min_attained: bool,
    pub max: Option<f64>,
}

impl RadiusRange {
    pub fn point(r: f64) -> Self {
        Self {
            min: r,
            min_attained: true,
            max: Some(r),
        }
    }

    /// Radii of `u + v` with `u, v` future timelike (or zero) with radii in
    /// the two ranges: the reverse triangle inequality bounds the sum below
    /// by `a + b`, attained by collinear pairs, and there is no upper bound
    /// unless one of the factors is the zero orbit.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let bounded = |a: &Self, b: &Self| a.max == Some(0.0) && b.max.is_some();
        let max = if bounded(self, other) {
            other.max
        } else if bounded(other, self) {
            self.max
        } else {
            None
        };
        Self {
            min: self.min + other.min,
            min_attained: self.min_attained && other.min_attained,
            max,
        }
    }
}

/// Either a decomposition or a description of why none is available.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum TensorOutcome {
    Decomposition(DirectIntegralDecomposition),
    /// Outside the implemented domain; carries the sampled causal classes of
    /// sums of base points.
    NotImplemented { reason: String, sampled: OrbitSumRange },
}

impl TensorOutcome {
    pub fn decomposition(&self) -> Option<&DirectIntegralDecomposition> {
        match self {
            TensorOutcome::Decomposition(d) => Some(d),
            TensorOutcome::NotImplemented { .. } => None,
        }
    }
}

/// Samples used to describe unsupported products.
const HISTOGRAM_SAMPLES: usize = 4096;

/// `E_{r₁} ⊗ E_{r₂} = ∫⊕_{r > r₁+r₂} (M_r, S²) dr ⊕ E_{r₁+r₂}` for future
/// timelike elementary irreps, with `E_0` acting as the unit.
pub fn elementary_tensor(e1: &Irrep, e2: &Irrep) -> Result<TensorOutcome> {
    elementary_tensor_with(e1, e2, MeasureTag::default(), 0)
}

/// As [`elementary_tensor`], with an explicit continuum measure and the seed
/// used to sample unsupported pairs.
pub fn elementary_tensor_with(e1: &Irrep, e2: &Irrep, measure: MeasureTag, seed: u64) -> Result<TensorOutcome> {
    let elementary = |e: &Irrep| e.kind == IrrepKind::Elementary;
    let future = |e: &Irrep| e.base.class == CausalClass::TimelikeFuture;
    let zero = |e: &Irrep| e.base.class == CausalClass::Zero;
    if elementary(e1) && elementary(e2) {
        if zero(e1) || zero(e2) {
            let other = if zero(e1) { e2 } else { e1 };
            return Ok(TensorOutcome::Decomposition(DirectIntegralDecomposition {
                continuum_families: vec![],
                discrete_terms: vec![other.clone()],
            }));
        }
        if future(e1) && future(e2) {
            let r = e1.base.radius + e2.base.radius;
            let family = ContinuumFamily {
                class: CausalClass::TimelikeFuture,
                r_min: r,
                r_max: None,
                subgroup: StabilizerGroup::U1,
                fiber: FiberSpace::quotient(&StabilizerGroup::SU2, &StabilizerGroup::U1),
                measure,
            };
            return Ok(TensorOutcome::Decomposition(DirectIntegralDecomposition {
                continuum_families: vec![family],
                discrete_terms: vec![Irrep::elementary(r)?],
            }));
        }
    }
    let reason = format!(
        "tensor of {} over {} with {} over {} is not implemented",
        e1.kind, e1.base, e2.kind, e2.base
    );
    let sampled = orbit_sum_range(&e1.base, &e2.base, HISTOGRAM_SAMPLES, seed, &SamplerConfig::default())?;
    Ok(TensorOutcome::NotImplemented { reason, sampled })
}
