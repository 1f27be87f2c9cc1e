//! Numerical check that the projection of an irrep's total space commutes
//! with the Lorentz action.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{FiberDescriptor, Irrep};
use crate::error::{Error, Result};
use crate::minkowski::{FourVector, LorentzTransform, Tolerances};
use crate::rng::stream_rng;

/// Coordinates on the total space `L ×_{G_𝒪} (G_𝒪/H) ≅ L/H` of an irrep.
pub trait BundleChart {
    type Point;

    fn sample(&self, irrep: &Irrep, rng: &mut ChaCha8Rng) -> Self::Point;
    fn act(&self, g: &LorentzTransform, p: &Self::Point) -> Self::Point;
    fn project(&self, irrep: &Irrep, p: &Self::Point) -> FourVector;

    /// How far `p` is from satisfying the fiber constraints (zero when the
    /// fiber has no extra structure to check).
    fn fiber_residual(&self, _irrep: &Irrep, _p: &Self::Point) -> f64 {
        0.0
    }
}

/// Points are frames `Λ ∈ L` (representatives of `ΛH`); `π(Λ) = Λx₀` for
/// the orbit base point `x₀`, and `L` acts by `Λ ↦ gΛ`. For sphere fibers
/// the fiber coordinate is the spacelike unit vector `Λe₃ ⟂ π(Λ)`.
#[derive(Clone, Copy, Debug)]
pub struct FrameChart {
    /// Rapidity bound for sampled frames.
    pub max_rapidity: f64,
}

impl Default for FrameChart {
    fn default() -> Self {
        Self { max_rapidity: 2.0 }
    }
}

impl BundleChart for FrameChart {
    type Point = LorentzTransform;

    fn sample(&self, _irrep: &Irrep, rng: &mut ChaCha8Rng) -> LorentzTransform {
        LorentzTransform::random(rng, self.max_rapidity)
    }

    fn act(&self, g: &LorentzTransform, p: &LorentzTransform) -> LorentzTransform {
        g.compose(p)
    }

    fn project(&self, irrep: &Irrep, p: &LorentzTransform) -> FourVector {
        p.act(irrep.base.base_point())
    }

    fn fiber_residual(&self, irrep: &Irrep, p: &LorentzTransform) -> f64 {
        if irrep.fiber.descriptor != FiberDescriptor::Sphere2 {
            return 0.0;
        }
        let e = p.act(FourVector::new(0.0, 0.0, 0.0, 1.0));
        let x = self.project(irrep, p);
        let scale = 1.0 + x.euclidean_norm_sq().sqrt() * e.euclidean_norm_sq().sqrt();
        ((e.interval() + 1.0).abs()).max(e.dot(x).abs() / scale)
    }
}

/// The frame chart with the action applied on the wrong side (`Λ ↦ Λg`).
/// Kept as a negative control: its projection is not equivariant.
#[derive(Clone, Copy, Debug, Default)]
pub struct RightActionChart(pub FrameChart);

impl BundleChart for RightActionChart {
    type Point = LorentzTransform;

    fn sample(&self, irrep: &Irrep, rng: &mut ChaCha8Rng) -> LorentzTransform {
        self.0.sample(irrep, rng)
    }

    fn act(&self, g: &LorentzTransform, p: &LorentzTransform) -> LorentzTransform {
        p.compose(g)
    }

    fn project(&self, irrep: &Irrep, p: &LorentzTransform) -> FourVector {
        self.0.project(irrep, p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub n_samples: usize,
    /// Largest `|π(g·p) − g·π(p)|`, relative to `1 + |g·π(p)|`.
    pub max_residual: f64,
    /// Largest fiber-constraint violation after acting.
    pub max_fiber_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks `π ∘ α_g = α_g ∘ π` with the shipped [`FrameChart`].
pub fn check_equivariance(irrep: &Irrep, n_samples: usize, seed: u64) -> Result<EquivarianceReport> {
    check_equivariance_with(irrep, &FrameChart::default(), n_samples, seed)
}

pub fn check_equivariance_with<C: BundleChart>(
    irrep: &Irrep,
    chart: &C,
    n_samples: usize,
    seed: u64,
) -> Result<EquivarianceReport> {
    if !irrep.kind.is_smooth() {
        return Err(Error::NonHausdorff);
    }
    if n_samples == 0 {
        return Err(Error::InvalidInput("sample count must be ≥ 1".into()));
    }
    let tol = Tolerances::default().num;
    let mut rng = stream_rng(seed, 0);
    let (mut worst, mut worst_fiber) = (0.0f64, 0.0f64);
    for _ in 0..n_samples {
        let p = chart.sample(irrep, &mut rng);
        let g = LorentzTransform::random(&mut rng, 2.0);
        let moved = chart.act(&g, &p);
        let upstairs = chart.project(irrep, &moved);
        let downstairs = g.act(chart.project(irrep, &p));
        let err = (upstairs - downstairs).euclidean_norm_sq().sqrt() / (1.0 + downstairs.euclidean_norm_sq().sqrt());
        worst = worst.max(err);
        worst_fiber = worst_fiber.max(chart.fiber_residual(irrep, &moved));
    }
    Ok(EquivarianceReport {
        n_samples,
        max_residual: worst,
        max_fiber_residual: worst_fiber,
        tolerance: tol,
        passed: worst <= tol && worst_fiber <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::MinkowskiOrbit;
    use crate::rep::{make_irrep, StabilizerGroup};

    #[test]
    fn shipped_chart_is_equivariant() {
        let e = Irrep::elementary(1.5).unwrap();
        assert!(check_equivariance(&e, 200, 1).unwrap().passed);
        let m = make_irrep(MinkowskiOrbit::future(2.0).unwrap(), StabilizerGroup::U1).unwrap();
        let rep = check_equivariance(&m, 200, 2).unwrap();
        assert!(rep.passed, "{rep:?}");
        let s = make_irrep(MinkowskiOrbit::spacelike(1.0).unwrap(), StabilizerGroup::SO2).unwrap();
        assert!(check_equivariance(&s, 100, 3).unwrap().passed);
    }

    #[test]
    fn broken_chart_fails() {
        let m = make_irrep(MinkowskiOrbit::future(2.0).unwrap(), StabilizerGroup::U1).unwrap();
        let rep = check_equivariance_with(&m, &RightActionChart::default(), 50, 4).unwrap();
        assert!(!rep.passed);
        assert!(rep.max_residual > 1e-3);
    }

    #[test]
    fn non_hausdorff_is_rejected() {
        let n = make_irrep(MinkowskiOrbit::future(1.0).unwrap(), StabilizerGroup::NonLie("q".into())).unwrap();
        assert_eq!(check_equivariance(&n, 10, 0), Err(Error::NonHausdorff));
    }
}
