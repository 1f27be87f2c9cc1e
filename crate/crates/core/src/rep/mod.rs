//! Irreducible representations of the Poincaré 2-group as equivariant
//! fiberings `E → 𝒪 ⊂ M⁴` over Lorentz orbits, with fiber `G_𝒪 / H` for a
//! subgroup `H` of the orbit stabilizer.

mod equivariance;
mod hom;
mod tensor;
mod triangle;

pub use equivariance::{
    check_equivariance, check_equivariance_with, BundleChart, EquivarianceReport, FrameChart, RightActionChart,
};
pub use hom::{hom_decomposition, HomDecomposition, HomSide, HomStructure};
pub use tensor::{
    elementary_tensor, elementary_tensor_with, ContinuumFamily, DirectIntegralDecomposition, MeasureTag,
    RadiusRange, TensorOutcome,
};
pub use triangle::{
    classify_quadrilateral, quadrilateral_shape_space, triangle_fiber, triangle_geometry, FiberGeometry, Isotropy,
    QuadrilateralReport, QuadrilateralSample, TriangleFiber, COLLINEAR_TOL,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{CausalClass, MinkowskiOrbit};

/// Closed subgroups of the Lorentz group that occur as stabilizers or as
/// catalogued subgroups of stabilizers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilizerGroup {
    SL2C,
    SU2,
    SO21,
    E2,
    U1,
    SO2,
    CyclicZn(u32),
    Trivial,
    /// A subgroup that is not a Lie group; carries no structure.
    NonLie(String),
}

impl StabilizerGroup {
    pub fn cyclic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("cyclic subgroup needs n ≥ 2, got {n}")));
        }
        Ok(Self::CyclicZn(n))
    }

    /// Real dimension as a Lie group; `None` for non-Lie subgroups.
    pub fn dim(&self) -> Option<usize> {
        Some(match self {
            Self::SL2C => 6,
            Self::SU2 | Self::SO21 | Self::E2 => 3,
            Self::U1 | Self::SO2 => 1,
            Self::CyclicZn(_) | Self::Trivial => 0,
            Self::NonLie(_) => return None,
        })
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, Self::CyclicZn(_) | Self::Trivial)
    }

    /// Subgroups of `self` that the library can build irreps from
    /// (non-Lie subgroups are accepted separately).
    pub fn catalog(&self) -> Vec<CatalogEntry> {
        use CatalogEntry::{AnyCyclic, Group};
        match self {
            Self::SU2 => vec![Group(Self::SU2), Group(Self::U1), AnyCyclic, Group(Self::Trivial)],
            Self::SO21 => vec![Group(Self::SO21), Group(Self::SO2), AnyCyclic, Group(Self::Trivial)],
            Self::E2 => vec![Group(Self::E2), Group(Self::SO2), AnyCyclic, Group(Self::Trivial)],
            Self::SL2C => vec![
                Group(Self::SL2C),
                Group(Self::SU2),
                Group(Self::SO21),
                Group(Self::E2),
                Group(Self::U1),
                Group(Self::SO2),
                AnyCyclic,
                Group(Self::Trivial),
            ],
            Self::U1 | Self::SO2 => vec![Group(self.clone()), AnyCyclic, Group(Self::Trivial)],
            Self::CyclicZn(_) => vec![Group(self.clone()), Group(Self::Trivial)],
            Self::Trivial => vec![Group(Self::Trivial)],
            Self::NonLie(_) => vec![],
        }
    }

    /// Whether `h` is a catalogued subgroup of `self`.
    pub fn has_subgroup(&self, h: &StabilizerGroup) -> bool {
        if let (Self::CyclicZn(n), Self::CyclicZn(m)) = (self, h) {
            return *m >= 2 && n % m == 0;
        }
        self.catalog().iter().any(|c| match c {
            CatalogEntry::AnyCyclic => matches!(h, Self::CyclicZn(m) if *m >= 2),
            CatalogEntry::Group(g) => g == h,
        })
    }
}

/// One line of a subgroup catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    Group(StabilizerGroup),
    /// Every cyclic group `Z_n`, `n ≥ 2`.
    AnyCyclic,
}

impl fmt::Display for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SL2C => f.write_str("SL2C"),
            Self::SU2 => f.write_str("SU2"),
            Self::SO21 => f.write_str("SO21"),
            Self::E2 => f.write_str("E2"),
            Self::U1 => f.write_str("U1"),
            Self::SO2 => f.write_str("SO2"),
            Self::CyclicZn(n) => write!(f, "Z{n}"),
            Self::Trivial => f.write_str("Trivial"),
            Self::NonLie(name) => write!(f, "NonLie({name})"),
        }
    }
}

impl FromStr for StabilizerGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "sl2c" => Self::SL2C,
            "su2" => Self::SU2,
            "so21" => Self::SO21,
            "e2" => Self::E2,
            "u1" => Self::U1,
            "so2" => Self::SO2,
            "trivial" | "1" => Self::Trivial,
            _ => {
                if let Some(n) = lower.strip_prefix('z') {
                    let n: u32 = n
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad cyclic group {s:?}")))?;
                    Self::cyclic(n)?
                } else if let Some(name) = lower.strip_prefix("nonlie") {
                    Self::NonLie(name.trim_matches(|c| c == '(' || c == ')' || c == ':').to_string())
                } else {
                    return Err(Error::InvalidInput(format!("unknown subgroup {s:?}")));
                }
            }
        })
    }
}

/// Stabilizer of the standard base point of `o`.
pub fn orbit_stabilizer(o: &MinkowskiOrbit) -> StabilizerGroup {
    match o.class {
        CausalClass::Zero => StabilizerGroup::SL2C,
        CausalClass::TimelikeFuture | CausalClass::TimelikePast => StabilizerGroup::SU2,
        CausalClass::Spacelike => StabilizerGroup::SO21,
        CausalClass::NullFuture | CausalClass::NullPast => StabilizerGroup::E2,
    }
}

/// Geometric type of the fiber `G_𝒪 / H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiberDescriptor {
    Point,
    Sphere2,
    Sphere3,
    QuotientOf(StabilizerGroup, StabilizerGroup),
    Opaque,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSpace {
    pub descriptor: FiberDescriptor,
    /// `None` for opaque fibers.
    pub dim: Option<usize>,
}

impl FiberSpace {
    pub fn new(descriptor: FiberDescriptor) -> Self {
        let dim = match &descriptor {
            FiberDescriptor::Point => Some(0),
            FiberDescriptor::Sphere2 => Some(2),
            FiberDescriptor::Sphere3 => Some(3),
            FiberDescriptor::QuotientOf(g, h) => match (g.dim(), h.dim()) {
                (Some(a), Some(b)) => Some(a - b),
                _ => None,
            },
            FiberDescriptor::Opaque => None,
        };
        Self { descriptor, dim }
    }

    /// The fiber `G / H`, named when it is a point or a sphere.
    pub fn quotient(g: &StabilizerGroup, h: &StabilizerGroup) -> Self {
        use StabilizerGroup as S;
        let d = match (g, h) {
            (_, S::NonLie(_)) => FiberDescriptor::Opaque,
            _ if g == h => FiberDescriptor::Point,
            (S::SU2, S::U1) => FiberDescriptor::Sphere2,
            (S::SU2, S::Trivial) => FiberDescriptor::Sphere3,
            _ => FiberDescriptor::QuotientOf(g.clone(), h.clone()),
        };
        Self::new(d)
    }
}

impl fmt::Display for FiberSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.descriptor {
            FiberDescriptor::Point => f.write_str("point"),
            FiberDescriptor::Sphere2 => f.write_str("S2"),
            FiberDescriptor::Sphere3 => f.write_str("S3"),
            FiberDescriptor::QuotientOf(g, h) => write!(f, "{g}/{h}"),
            FiberDescriptor::Opaque => f.write_str("opaque"),
        }
    }
}

/// The four families of irreducible objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IrrepKind {
    /// `H` is the whole stabilizer; the total space is the orbit itself.
    Elementary,
    /// `H` is a proper Lie subgroup with positive dimension, or trivial.
    Lie,
    /// `H` is a nontrivial discrete subgroup.
    Crystallographic,
    /// `H` is not a Lie group.
    NonHausdorff,
}

impl IrrepKind {
    pub fn is_smooth(self) -> bool {
        self != IrrepKind::NonHausdorff
    }
}

impl fmt::Display for IrrepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrrepKind::Elementary => "elementary",
            IrrepKind::Lie => "lie",
            IrrepKind::Crystallographic => "crystallographic",
            IrrepKind::NonHausdorff => "non-hausdorff",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Irrep {
    pub base: MinkowskiOrbit,
    pub subgroup: StabilizerGroup,
    pub fiber: FiberSpace,
    pub kind: IrrepKind,
}

impl Irrep {
    /// The orbit stabilizer `G_𝒪`.
    pub fn stabilizer(&self) -> StabilizerGroup {
        orbit_stabilizer(&self.base)
    }

    /// `E_r`: the elementary irrep on the future hyperboloid of radius `r`,
    /// or on the origin when `r = 0`.
    pub fn elementary(r: f64) -> Result<Self> {
        let base = if r == 0.0 {
            MinkowskiOrbit::zero()
        } else {
            MinkowskiOrbit::future(r)?
        };
        make_irrep(base, orbit_stabilizer(&base))
    }

    /// Total dimension of the total space (orbit plus fiber) when known.
    pub fn total_dim(&self) -> Option<usize> {
        let orbit_dim = match self.base.class {
            CausalClass::Zero => 0,
            _ => 3,
        };
        self.fiber.dim.map(|d| d + orbit_dim)
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {} with H={} fiber {}", self.kind, self.base, self.subgroup, self.fiber)
    }
}

/// Builds the irrep of `base` attached to a subgroup of its stabilizer.
pub fn make_irrep(base: MinkowskiOrbit, subgroup: StabilizerGroup) -> Result<Irrep> {
    let g = orbit_stabilizer(&base);
    if let StabilizerGroup::CyclicZn(n) = subgroup {
        if n < 2 {
            return Err(Error::InvalidInput(format!("cyclic subgroup needs n ≥ 2, got {n}")));
        }
    }
    let non_lie = matches!(subgroup, StabilizerGroup::NonLie(_));
    if !non_lie && !g.has_subgroup(&subgroup) {
        return Err(Error::UncataloguedSubgroup {
            group: g.to_string(),
            subgroup: subgroup.to_string(),
        });
    }
    let fiber = FiberSpace::quotient(&g, &subgroup);
    let kind = kind_of(&g, &subgroup);
    Ok(Irrep {
        base,
        subgroup,
        fiber,
        kind,
    })
}

fn kind_of(g: &StabilizerGroup, h: &StabilizerGroup) -> IrrepKind {
    match h {
        StabilizerGroup::NonLie(_) => IrrepKind::NonHausdorff,
        _ if h == g => IrrepKind::Elementary,
        StabilizerGroup::CyclicZn(_) => IrrepKind::Crystallographic,
        _ => IrrepKind::Lie,
    }
}

/// Kind of an irrep, recomputed from its (stabilizer, subgroup) pair.
pub fn classify_irrep(i: &Irrep) -> IrrepKind {
    kind_of(&i.stabilizer(), &i.subgroup)
}

/// Reflection through the origin: the base orbit is reflected, the
/// stabilizer data are unchanged.
pub fn dual(i: &Irrep) -> Irrep {
    Irrep {
        base: i.base.reflected(),
        ..i.clone()
    }
}
