//! The strict Poincaré 2-group: one object, Lorentz transformations as
//! 1-morphisms, and translations `x ∈ M⁴` as 2-morphisms from a Lorentz
//! transformation to itself.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{FourVector, LorentzTransform};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneMorphism {
    pub g: LorentzTransform,
}

impl OneMorphism {
    pub fn new(g: LorentzTransform) -> Self {
        Self { g }
    }

    pub fn identity() -> Self {
        Self::new(LorentzTransform::identity())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(self.g.compose(&other.g))
    }
}

/// A 2-cell `g ⇒ g` labelled by a translation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoMorphism {
    pub g: LorentzTransform,
    pub x: FourVector,
}

impl TwoMorphism {
    pub fn new(g: LorentzTransform, x: FourVector) -> Self {
        Self { g, x }
    }

    /// The identity 2-cell on `g`.
    pub fn identity_on(g: LorentzTransform) -> Self {
        Self::new(g, FourVector::ZERO)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.g.clone(), -self.x)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.g.approx_eq(&other.g, tol) && (self.x - other.x).euclidean_norm_sq().sqrt() <= tol
    }
}

/// Relative tolerance used to decide whether two 2-cells share a 1-cell.
const SAME_ONE_CELL_TOL: f64 = 1e-9;

/// Vertical composite `(g, a.x + b.x)`.
pub fn vcompose(a: &TwoMorphism, b: &TwoMorphism) -> Result<TwoMorphism> {
    if !a.g.approx_eq(&b.g, SAME_ONE_CELL_TOL) {
        return Err(Error::MismatchedOneMorphism);
    }
    Ok(TwoMorphism::new(a.g.clone(), a.x + b.x))
}

/// Horizontal composite `(g₁g₂, a.x + g₁·b.x)`.
pub fn hcompose(a: &TwoMorphism, b: &TwoMorphism) -> TwoMorphism {
    TwoMorphism::new(a.g.compose(&b.g), a.x + a.g.act(b.x))
}

pub fn whisker_left(g: &OneMorphism, b: &TwoMorphism) -> TwoMorphism {
    hcompose(&TwoMorphism::identity_on(g.g.clone()), b)
}

pub fn whisker_right(a: &TwoMorphism, g: &OneMorphism) -> TwoMorphism {
    hcompose(a, &TwoMorphism::identity_on(g.g.clone()))
}

/// A unitary character of the translations, `x ↦ exp(i⟨χ, x⟩)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Character {
    pub chi: FourVector,
}

impl Character {
    pub fn new(chi: FourVector) -> Result<Self> {
        if !chi.is_finite() {
            return Err(Error::InvalidInput("non-finite character".into()));
        }
        Ok(Self { chi })
    }

    /// `g·χ`, defined by `(g·χ)(x) = χ(g⁻¹x)`; with the Minkowski pairing
    /// this is the vector action.
    pub fn act(&self, g: &LorentzTransform) -> Self {
        Self { chi: g.act(self.chi) }
    }
}

/// `exp(i⟨χ, x⟩)` with the Minkowski pairing.
pub fn pair_character(chi: &Character, x: FourVector) -> Complex64 {
    Complex64::from_polar(1.0, chi.chi.dot(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use rand::Rng;

    fn rv<R: Rng>(rng: &mut R) -> FourVector {
        FourVector::new(
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
        )
    }

    fn close(a: FourVector, b: FourVector, tol: f64) -> bool {
        (a - b).euclidean_norm_sq().sqrt() <= tol * (1.0 + b.euclidean_norm_sq().sqrt())
    }

    #[test]
    fn vertical_examples() {
        let mut rng = stream_rng(1, 0);
        let g = LorentzTransform::random(&mut rng, 2.0);
        let x = rv(&mut rng);
        let a = TwoMorphism::new(g.clone(), x);
        assert_eq!(vcompose(&TwoMorphism::identity_on(g.clone()), &a).unwrap(), a);
        assert_eq!(vcompose(&a, &a.inverse()).unwrap().x, FourVector::ZERO);
        let b = TwoMorphism::new(g.clone(), rv(&mut rng));
        assert_eq!(vcompose(&a, &b).unwrap(), vcompose(&b, &a).unwrap());
        let other = TwoMorphism::new(LorentzTransform::random(&mut rng, 2.0), x);
        assert_eq!(vcompose(&a, &other), Err(Error::MismatchedOneMorphism));
    }

    #[test]
    fn horizontal_examples() {
        let mut rng = stream_rng(2, 0);
        let (g1, g2) = (LorentzTransform::random(&mut rng, 2.0), LorentzTransform::random(&mut rng, 2.0));
        let h = hcompose(&TwoMorphism::identity_on(g1.clone()), &TwoMorphism::identity_on(g2.clone()));
        assert_eq!(h.x, FourVector::ZERO);
        assert!(h.g.approx_eq(&g1.compose(&g2), 1e-12));
        let (x, y) = (rv(&mut rng), rv(&mut rng));
        let h = hcompose(
            &TwoMorphism::new(LorentzTransform::identity(), x),
            &TwoMorphism::new(g2.clone(), y),
        );
        assert!(close(h.x, x + y, 1e-12));
    }

    #[test]
    fn whiskers() {
        let mut rng = stream_rng(3, 0);
        let g = OneMorphism::new(LorentzTransform::random(&mut rng, 2.0));
        let b = TwoMorphism::new(LorentzTransform::random(&mut rng, 2.0), rv(&mut rng));
        assert!(whisker_left(&OneMorphism::identity(), &b).approx_eq(&b, 1e-12));
        assert!(whisker_right(&b, &OneMorphism::identity()).approx_eq(&b, 1e-12));
        let w = whisker_left(&g, &b);
        assert!(w.g.approx_eq(&g.g.compose(&b.g), 1e-12));
        assert!(close(w.x, g.g.act(b.x), 1e-12));
    }

    #[test]
    fn interchange_and_associativity() {
        let mut rng = stream_rng(4, 0);
        for _ in 0..1000 {
            let (g1, g2, g3) = (
                LorentzTransform::random(&mut rng, 1.5),
                LorentzTransform::random(&mut rng, 1.5),
                LorentzTransform::random(&mut rng, 1.5),
            );
            let a = TwoMorphism::new(g1.clone(), rv(&mut rng));
            let a2 = TwoMorphism::new(g1.clone(), rv(&mut rng));
            let b = TwoMorphism::new(g2.clone(), rv(&mut rng));
            let b2 = TwoMorphism::new(g2.clone(), rv(&mut rng));
            let lhs = hcompose(&vcompose(&a, &a2).unwrap(), &vcompose(&b, &b2).unwrap());
            let rhs = vcompose(&hcompose(&a, &b), &hcompose(&a2, &b2)).unwrap();
            assert!(lhs.g.approx_eq(&rhs.g, 1e-8) && close(lhs.x, rhs.x, 1e-8));

            let c = TwoMorphism::new(g3, rv(&mut rng));
            let l = hcompose(&hcompose(&a, &b), &c);
            let r = hcompose(&a, &hcompose(&b, &c));
            assert!(l.g.approx_eq(&r.g, 1e-8) && close(l.x, r.x, 1e-8));
        }
    }

    #[test]
    fn characters() {
        let mut rng = stream_rng(5, 0);
        let zero = Character::new(FourVector::ZERO).unwrap();
        for _ in 0..1000 {
            let chi = Character::new(rv(&mut rng)).unwrap();
            let (x, y) = (rv(&mut rng), rv(&mut rng));
            assert_eq!(pair_character(&zero, x), Complex64::new(1.0, 0.0));
            assert!((pair_character(&chi, x).norm() - 1.0).abs() < 1e-12);
            let sum = pair_character(&chi, x + y);
            let prod = pair_character(&chi, x) * pair_character(&chi, y);
            assert!((sum - prod).norm() < 1e-9);
            let g = LorentzTransform::random(&mut rng, 1.0);
            let lhs = pair_character(&chi, g.act(x));
            let rhs = pair_character(&chi.act(&g.inverse()), x);
            assert!((lhs - rhs).norm() < 1e-8);
        }
        assert!(Character::new(FourVector::new(f64::NAN, 0.0, 0.0, 0.0)).is_err());
    }
}
