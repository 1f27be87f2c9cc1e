//! The two sides of `Hom(A, B ⊗ C) ≅ Hom(A ⊗ B*, C)` for elementary irreps.
//!
//! The left side reads off which summands of `B ⊗ C` sit over the orbit of
//! `A`. The right side works with `A ⊗ B*`, whose base points are
//! differences `u − v` of future vectors; its future timelike part has radii
//! in `(0, r_A − r_B]` by the reverse triangle inequality, and the condition
//! `r_C ∈ (0, r_A − r_B]` is solved for `r_A`.

use serde::{Deserialize, Serialize};

use super::tensor::RadiusRange;
use super::triangle::{triangle_geometry, FiberGeometry, COLLINEAR_TOL};
use super::{elementary_tensor, Irrep, IrrepKind};
use crate::error::{Error, Result};
use crate::minkowski::CausalClass;

/// Shape of the space of intertwiners for the given triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomStructure {
    Empty,
    Point,
    /// An S² of directions (the triangle fiber).
    Sphere2,
}

impl From<FiberGeometry> for HomStructure {
    fn from(g: FiberGeometry) -> Self {
        match g {
            FiberGeometry::Empty => HomStructure::Empty,
            FiberGeometry::Point { .. } => HomStructure::Point,
            FiberGeometry::Sphere { .. } => HomStructure::Sphere2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomSide {
    /// Radii of `A` for which the side is nonzero, with `B` and `C` fixed.
    pub a_range: RadiusRange,
    /// Structure at the actual radius of `A`.
    pub structure: HomStructure,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomDecomposition {
    pub lhs: HomSide,
    pub rhs: HomSide,
    /// Largest difference between the endpoints of the two ranges.
    pub range_mismatch: f64,
}

impl HomDecomposition {
    pub fn consistent(&self, tol: f64) -> bool {
        self.range_mismatch <= tol
            && self.lhs.a_range.min_attained == self.rhs.a_range.min_attained
            && self.lhs.structure == self.rhs.structure
    }
}

fn radius_of(i: &Irrep) -> Result<f64> {
    let ok_class = matches!(i.base.class, CausalClass::Zero | CausalClass::TimelikeFuture);
    if i.kind != IrrepKind::Elementary || !ok_class {
        return Err(Error::Unsupported(format!("hom decomposition for {i}")));
    }
    Ok(i.base.radius)
}

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= COLLINEAR_TOL * a.max(b).max(1.0)
}

fn point_if(cond: bool) -> HomStructure {
    if cond {
        HomStructure::Point
    } else {
        HomStructure::Empty
    }
}

/// Computes both sides independently and reports whether they agree.
pub fn hom_decomposition(a: &Irrep, b: &Irrep, c: &Irrep) -> Result<HomDecomposition> {
    let (ra, rb, rc) = (radius_of(a)?, radius_of(b)?, radius_of(c)?);

    let bc = elementary_tensor(b, c)?;
    let bc = bc
        .decomposition()
        .ok_or_else(|| Error::Unsupported("tensor outside the implemented domain".into()))?;
    let lhs_range = bc.radius_range();
    let lhs_structure = if rb == 0.0 || rc == 0.0 {
        point_if(same(ra, rb + rc))
    } else if ra == 0.0 {
        HomStructure::Empty
    } else {
        triangle_geometry(rb, rc, ra)?.into()
    };

    let (rhs_range, rhs_structure) = if rc == 0.0 {
        (RadiusRange::point(rb), point_if(same(ra, rb)))
    } else if rb == 0.0 {
        (RadiusRange::point(rc), point_if(same(ra, rc)))
    } else {
        // r_C ≤ r_A − r_B  ⟺  r_A ≥ r_C + r_B, equality for collinear pairs
        let range = RadiusRange {
            min: rc + rb,
            min_attained: true,
            max: None,
        };
        // in the rest frame of w ∈ 𝒪_C, v ∈ 𝒪_B with (v + w)² = r_A² has
        // v₀ = (r_A² − r_B² − r_C²) / 2r_C and |v⃗|² = v₀² − r_B²
        let structure = if same(ra, rb + rc) {
            HomStructure::Point
        } else if ra < rb + rc {
            HomStructure::Empty
        } else {
            let v0 = (ra * ra - rb * rb - rc * rc) / (2.0 * rc);
            if v0 > rb {
                HomStructure::Sphere2
            } else {
                HomStructure::Point
            }
        };
        (range, structure)
    };

    let max_gap = match (lhs_range.max, rhs_range.max) {
        (None, None) => 0.0,
        (Some(x), Some(y)) => (x - y).abs(),
        _ => f64::INFINITY,
    };
    Ok(HomDecomposition {
        lhs: HomSide {
            a_range: lhs_range,
            structure: lhs_structure,
        },
        rhs: HomSide {
            a_range: rhs_range,
            structure: rhs_structure,
        },
        range_mismatch: (lhs_range.min - rhs_range.min).abs().max(max_gap),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::MinkowskiOrbit;
    use crate::rep::{make_irrep, StabilizerGroup};

    fn e(r: f64) -> Irrep {
        Irrep::elementary(r).unwrap()
    }

    #[test]
    fn trivial_c_reduces_to_hom_a_b() {
        let h = hom_decomposition(&e(2.0), &e(2.0), &e(0.0)).unwrap();
        assert_eq!(h.lhs.structure, HomStructure::Point);
        assert!(h.consistent(1e-9));
        let h = hom_decomposition(&e(2.0), &e(1.0), &e(0.0)).unwrap();
        assert_eq!((h.lhs.structure, h.rhs.structure), (HomStructure::Empty, HomStructure::Empty));
    }

    #[test]
    fn generic_triples_agree() {
        for (ra, rb, rc, expect) in [
            (4.0, 1.0, 2.0, HomStructure::Sphere2),
            (3.0, 1.0, 2.0, HomStructure::Point),
            (2.5, 1.0, 2.0, HomStructure::Empty),
        ] {
            let h = hom_decomposition(&e(ra), &e(rb), &e(rc)).unwrap();
            assert!(h.consistent(1e-9), "{h:?}");
            assert_eq!(h.lhs.structure, expect);
            assert_eq!(h.lhs.a_range.min, rb + rc);
        }
    }

    #[test]
    fn outside_domain() {
        let lie = make_irrep(MinkowskiOrbit::future(1.0).unwrap(), StabilizerGroup::U1).unwrap();
        assert!(hom_decomposition(&lie, &e(1.0), &e(1.0)).is_err());
    }
}
