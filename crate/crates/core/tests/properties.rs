use proptest::prelude::*;

use poinc_core::kirillov::su2_tensor_decompose;
use poinc_core::minkowski::{classify, random_lorentz, CausalClass};
use poinc_core::rep::{triangle_geometry, FiberGeometry};
use poinc_core::statesum::{triangle_status, TriangleStatus};
use poinc_core::two_group::{hcompose, vcompose, whisker_left, whisker_right, OneMorphism, TwoMorphism};
use poinc_core::FourVector;

fn four() -> impl Strategy<Value = FourVector> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(FourVector::from_array)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lorentz_preserves_interval(seed in any::<u64>(), v in four()) {
        let g = random_lorentz(seed);
        let w = g.act(v);
        let scale = w.euclidean_norm_sq().max(v.euclidean_norm_sq()).max(1.0);
        prop_assert!((w.interval() - v.interval()).abs() <= 1e-9 * scale);
    }

    #[test]
    fn timelike_class_is_invariant(seed in any::<u64>(), t in 1.0..3.0f64, x in prop::array::uniform3(-0.5..0.5f64)) {
        let v = FourVector::from_parts(t, x);
        let g = random_lorentz(seed);
        prop_assert_eq!(classify(g.act(v), 1e-9), CausalClass::TimelikeFuture);
    }

    #[test]
    fn whiskering_is_horizontal_with_identity(s1 in any::<u64>(), s2 in any::<u64>(), x in four()) {
        let (g, h) = (random_lorentz(s1), random_lorentz(s2));
        let a = TwoMorphism::new(g, x);
        let one = OneMorphism::new(h.clone());
        prop_assert!(whisker_right(&a, &one).approx_eq(&hcompose(&a, &TwoMorphism::identity_on(h.clone())), 1e-9));
        prop_assert!(whisker_left(&one, &a).approx_eq(&hcompose(&TwoMorphism::identity_on(h), &a), 1e-9));
    }

    #[test]
    fn vertical_inverse_is_identity(s in any::<u64>(), x in four()) {
        let a = TwoMorphism::new(random_lorentz(s), x);
        let id = vcompose(&a, &a.inverse()).unwrap();
        prop_assert!(id.approx_eq(&TwoMorphism::identity_on(a.g.clone()), 1e-9));
    }

    #[test]
    fn clebsch_gordan_dimension_count(a in 0u32..12, b in 0u32..12) {
        let parts = su2_tensor_decompose(a as f64 / 2.0, b as f64 / 2.0).unwrap();
        let total: u32 = parts.iter().map(|l| l.dim()).sum();
        prop_assert_eq!(total, (a + 1) * (b + 1));
    }

    #[test]
    fn triangle_status_is_symmetric(c in prop::array::uniform3(0.0..5.0f64)) {
        let s = triangle_status(c);
        prop_assert_eq!(s, triangle_status([c[2], c[0], c[1]]));
        prop_assert_eq!(s, triangle_status([c[1], c[0], c[2]]));
    }

    #[test]
    fn geometry_matches_reverse_triangle(r1 in 0.1..3.0f64, r2 in 0.1..3.0f64, d in -2.0..2.0f64) {
        let r = (r1 + r2 + d).max(0.05);
        let g = triangle_geometry(r1, r2, r).unwrap();
        if r < r1 + r2 - 1e-9 {
            prop_assert_eq!(g, FiberGeometry::Empty);
        } else {
            prop_assert!(!g.is_empty());
        }
    }
}

#[test]
fn degenerate_triangle_is_collinear() {
    assert_eq!(triangle_status([1.0, 2.0, 3.0]), TriangleStatus::Collinear);
    assert_eq!(triangle_status([0.0, 0.0, 0.0]), TriangleStatus::Collinear);
    assert_eq!(triangle_status([1.0, 1.0, 3.0]), TriangleStatus::Admissible);
    assert_eq!(triangle_status([1.0, 1.0, 1.0]), TriangleStatus::Violated);
}
