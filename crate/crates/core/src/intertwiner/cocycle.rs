//! The coherence condition on self-intertwiners of an elementary irrep:
//! a nowhere-vanishing field `n(g, x)` with
//! `n(g₁, x) · n(g₂, g₁x) = n(g₂g₁, x)` (first `g₁`, then `g₂`).

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{sample_point, FourVector, LorentzTransform, MinkowskiOrbit, SamplerConfig};
use crate::rep::{Irrep, IrrepKind};
use crate::rng::stream_rng;

type FieldFn = dyn Fn(&LorentzTransform, FourVector) -> f64 + Send + Sync;

/// A scalar field on (group element, orbit point) pairs.
#[derive(Clone)]
pub struct CocycleField {
    name: String,
    f: Arc<FieldFn>,
}

impl fmt::Debug for CocycleField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CocycleField({})", self.name)
    }
}

impl CocycleField {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&LorentzTransform, FourVector) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("constant {c}"), move |_, _| c)
    }

    /// `exp(a·(gx) + b·x + c)` with Minkowski pairings; a cocycle only when
    /// `a = −b` and `c = 0`.
    pub fn exponential(a: FourVector, b: FourVector, c: f64) -> Self {
        Self::new(format!("exp({a}|{b}|{c})"), move |g, x| (a.dot(g.act(x)) + b.dot(x) + c).exp())
    }

    /// A random positive field of [`Self::exponential`] form with
    /// coefficients of size `scale`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        let mut v = || FourVector::new(
            rng.random_range(-scale..scale),
            rng.random_range(-scale..scale),
            rng.random_range(-scale..scale),
            rng.random_range(-scale..scale),
        );
        let (a, b) = (v(), v());
        let c = rng.random_range(-scale..scale);
        Self::exponential(a, b, c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, g: &LorentzTransform, x: FourVector) -> f64 {
        (self.f)(g, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub n_triples: usize,
    /// Largest `|n(g₁,x) n(g₂,g₁x) − n(g₂g₁,x)| / max(1, |n(g₂g₁,x)|)`.
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Sampling ranges for [`cocycle_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleSampling {
    pub n_triples: usize,
    pub seed: u64,
    pub group_rapidity: f64,
    pub orbit: SamplerConfig,
}

impl Default for CocycleSampling {
    fn default() -> Self {
        Self {
            n_triples: 256,
            seed: 0,
            group_rapidity: 1.0,
            orbit: SamplerConfig { max_rapidity: 1.5 },
        }
    }
}

/// Evaluates the cocycle identity on sampled triples `(g₁, g₂, x)`.
pub fn cocycle_check(field: &CocycleField, orbit: &MinkowskiOrbit, sampling: &CocycleSampling, tol: f64) -> CocycleReport {
    let mut rng = stream_rng(sampling.seed, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..sampling.n_triples {
        let g1 = LorentzTransform::random(&mut rng, sampling.group_rapidity);
        let g2 = LorentzTransform::random(&mut rng, sampling.group_rapidity);
        let x = sample_point(orbit, &sampling.orbit, &mut rng);
        let lhs = field.value(&g1, x) * field.value(&g2, g1.act(x));
        let rhs = field.value(&g2.compose(&g1), x);
        let r = (lhs - rhs).abs() / rhs.abs().max(1.0);
        worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
    }
    CocycleReport {
        n_triples: sampling.n_triples,
        max_residual: worst,
        tolerance: tol,
        passed: worst <= tol,
    }
}

/// Polynomials of degree ≤ 2 on M⁴ without `t²` (on a hyperboloid `t²` is
/// a combination of the others plus a constant).
pub fn quadratic_basis(x: FourVector) -> Vec<f64> {
    let [t, a, b, c] = x.to_array();
    vec![1.0, t, a, b, c, t * a, t * b, t * c, a * b, a * c, b * c, a * a, b * b, c * c]
}

/// Dimension of the space of fields `n(x) = Σ c_k φ_k(x)` in the span of
/// [`quadratic_basis`] that are invariant under the Lorentz action on the
/// orbit, found as the numerical null space of `[φ_k(gx) − φ_k(x)]` over
/// sampled `(g, x)`.
pub fn invariant_field_dimension(orbit: &MinkowskiOrbit, n_samples: usize, seed: u64) -> Result<usize> {
    if n_samples == 0 {
        return Err(Error::InvalidInput("sample count must be ≥ 1".into()));
    }
    let k = quadratic_basis(FourVector::ZERO).len();
    let mut rng = stream_rng(seed, 0);
    let cfg = SamplerConfig { max_rapidity: 1.0 };
    let mut a = DMatrix::<f64>::zeros(n_samples.max(k), k);
    for row in 0..a.nrows() {
        let g = LorentzTransform::random(&mut rng, 1.0);
        let x = sample_point(orbit, &cfg, &mut rng);
        let (p, q) = (quadratic_basis(g.act(x)), quadratic_basis(x));
        for col in 0..k {
            a[(row, col)] = p[col] - q[col];
        }
    }
    let sv = a.svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    Ok(sv.iter().filter(|s| **s <= 1e-10 * top).count())
}

/// Self-intertwiners of an elementary irrep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementarySelfIntertwiners {
    /// Dimension of the invariant-field solution space (the constants).
    pub solution_dim: usize,
    /// The normalized representative singled out by the cocycle identity.
    pub normalized_constant: f64,
    /// The cocycle check of the normalized constant.
    pub report: CocycleReport,
}

pub fn elementary_self_intertwiners(e: &Irrep, seed: u64) -> Result<ElementarySelfIntertwiners> {
    if e.kind != IrrepKind::Elementary {
        return Err(Error::InvalidInput(format!("expected an elementary irrep, got {e}")));
    }
    let solution_dim = invariant_field_dimension(&e.base, 200, seed)?;
    // a constant c satisfies c·c = c only for c = 1
    let report = cocycle_check(
        &CocycleField::constant(1.0),
        &e.base,
        &CocycleSampling {
            seed,
            ..Default::default()
        },
        0.0,
    );
    Ok(ElementarySelfIntertwiners {
        solution_dim,
        normalized_constant: 1.0,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit() -> MinkowskiOrbit {
        MinkowskiOrbit::future(1.3).unwrap()
    }

    #[test]
    fn constants() {
        let s = CocycleSampling::default();
        let one = cocycle_check(&CocycleField::constant(1.0), &orbit(), &s, 0.0);
        assert!(one.passed && one.max_residual == 0.0);
        let two = cocycle_check(&CocycleField::constant(2.0), &orbit(), &s, 1e-9);
        assert!(!two.passed);
        assert_eq!(two.max_residual, 1.0);
    }

    #[test]
    fn coboundaries_pass_and_random_fields_fail() {
        let a = FourVector::new(0.2, -0.1, 0.3, 0.05);
        let cob = CocycleField::exponential(a, -a, 0.0);
        assert!(cocycle_check(&cob, &orbit(), &CocycleSampling::default(), 1e-9).passed);
        let mut rng = stream_rng(9, 0);
        for _ in 0..20 {
            let f = CocycleField::random(&mut rng, 0.5);
            let r = cocycle_check(&f, &orbit(), &CocycleSampling::default(), 1e-9);
            assert!(r.max_residual > 1e-3, "{} {}", f.name(), r.max_residual);
        }
    }

    #[test]
    fn only_constants_are_invariant() {
        assert_eq!(invariant_field_dimension(&orbit(), 200, 3).unwrap(), 1);
        let s = elementary_self_intertwiners(&Irrep::elementary(2.0).unwrap(), 1).unwrap();
        assert_eq!(s.solution_dim, 1);
        assert!(s.report.passed);
        let lie = crate::rep::make_irrep(orbit(), crate::rep::StabilizerGroup::U1).unwrap();
        assert!(elementary_self_intertwiners(&lie, 0).is_err());
    }
}
