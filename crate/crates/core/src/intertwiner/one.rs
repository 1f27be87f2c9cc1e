//! 1-intertwiners as dimension tables on fiber products.
//!
//! Fibers are discretized by orbits of the icosahedral group `I ⊂ SO(3)`:
//! a point fiber is one node, `S²` is the 12 icosahedron vertices and `S³`
//! (the free `SU(2)`-orbit) is the 60 images of a generic point. A
//! 1-intertwiner `A → B` over a common base point is an `I`-invariant table
//! `n(a, b)` of Hilbert-space dimensions on node pairs. Its support splits
//! into `I`-orbits of pairs, and each orbit carries the stabilizer of a
//! representative as its isotropy group.

use std::fmt;
use std::sync::OnceLock;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_group::{generic_point, vertex, FiniteRotationGroup};
use crate::kirillov::SU2OrbitLabel;
use crate::rep::{FiberDescriptor, Irrep, IrrepKind, MeasureTag, StabilizerGroup};

const NODE_TOL: f64 = 1e-9;

fn group() -> &'static FiniteRotationGroup {
    static G: OnceLock<FiniteRotationGroup> = OnceLock::new();
    G.get_or_init(FiniteRotationGroup::icosahedral)
}

/// Tensor product of irreps, `factors[0] ⊗ factors[1] ⊗ …`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepObject {
    factors: Vec<Irrep>,
}

impl From<Irrep> for RepObject {
    fn from(i: Irrep) -> Self {
        Self { factors: vec![i] }
    }
}

impl RepObject {
    pub fn new(factors: Vec<Irrep>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("a representation object needs at least one factor".into()));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[Irrep] {
        &self.factors
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self { factors }
    }

    pub fn is_smooth(&self) -> bool {
        self.factors.iter().all(|f| f.kind.is_smooth())
    }

    /// Whether two objects sit over the same base orbits, factor by factor.
    pub fn same_base(&self, other: &Self) -> bool {
        self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| a.base.approx_eq(&b.base, NODE_TOL))
    }

    /// Nodes of the discretized fiber, as one unit vector (or zero) per factor.
    pub fn nodes(&self) -> Result<Vec<Vec<Vector3<f64>>>> {
        let per: Vec<Vec<Vector3<f64>>> = self.factors.iter().map(fiber_nodes).collect::<Result<_>>()?;
        let mut out = vec![Vec::new()];
        for nodes in &per {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    nodes.iter().map(move |n| {
                        let mut p = prefix.clone();
                        p.push(*n);
                        p
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

impl fmt::Display for RepObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|i| format!("({i})")).collect();
        f.write_str(&parts.join(" ⊗ "))
    }
}

/// Nodes of one fiber.
pub fn fiber_nodes(i: &Irrep) -> Result<Vec<Vector3<f64>>> {
    if i.kind == IrrepKind::NonHausdorff {
        return Err(Error::NonHausdorff);
    }
    match i.fiber.descriptor {
        FiberDescriptor::Point => Ok(vec![Vector3::zeros()]),
        FiberDescriptor::Sphere2 => Ok(group().orbit(&vertex())),
        FiberDescriptor::Sphere3 => Ok(group().orbit(&generic_point())),
        _ => Err(Error::Unsupported(format!("fiber discretization for {}", i.fiber))),
    }
}

/// `perm[g][a]`: index of the node `g·a`.
fn permutations(nodes: &[Vec<Vector3<f64>>]) -> Vec<Vec<usize>> {
    let g = group();
    (0..g.order())
        .map(|k| {
            nodes
                .iter()
                .map(|node| {
                    let image: Vec<Vector3<f64>> = node.iter().map(|v| g.act(k, v)).collect();
                    nodes
                        .iter()
                        .position(|m| m.iter().zip(&image).all(|(a, b)| (a - b).norm() < NODE_TOL))
                        .expect("node sets are closed under the group")
                })
                .collect()
        })
        .collect()
}

fn isotropy_of(order: usize) -> StabilizerGroup {
    match order {
        60 => StabilizerGroup::SU2,
        1 => StabilizerGroup::Trivial,
        _ => StabilizerGroup::U1,
    }
}

/// One `I`-orbit of node pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportComponent {
    pub pairs: Vec<(usize, usize)>,
    /// Continuum isotropy type of the pairs in the orbit: `SU2`, `U1` or `Trivial`.
    pub isotropy: StabilizerGroup,
}

/// Splits `{(a, b) : keep(a, b)}` into `I`-orbits.
fn orbit_decomposition(
    src_perm: &[Vec<usize>],
    tgt_perm: &[Vec<usize>],
    n_src: usize,
    n_tgt: usize,
    keep: impl Fn(usize, usize) -> bool,
) -> Vec<SupportComponent> {
    let mut seen = vec![false; n_src * n_tgt];
    let mut out = Vec::new();
    for a in 0..n_src {
        for b in 0..n_tgt {
            if seen[a * n_tgt + b] || !keep(a, b) {
                continue;
            }
            let mut pairs = Vec::new();
            let mut stab = 0;
            for (ps, pt) in src_perm.iter().zip(tgt_perm) {
                let (x, y) = (ps[a], pt[b]);
                if (x, y) == (a, b) {
                    stab += 1;
                }
                if !seen[x * n_tgt + y] {
                    seen[x * n_tgt + y] = true;
                    pairs.push((x, y));
                }
            }
            pairs.sort_unstable();
            out.push(SupportComponent {
                pairs,
                isotropy: isotropy_of(stab),
            });
        }
    }
    out
}

/// Hilbert-space dimensions on the support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HilbertDims {
    Uniform(u64),
    /// One entry per component of the full fiber product, in the order of
    /// [`OneIntertwiner::fiber_product_components`].
    PerComponent(Vec<u64>),
}

/// Representation label of an isotropy group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsotropyLabel {
    Trivial,
    U1Charge(i64),
    Su2Spin(SU2OrbitLabel),
}

/// The 2-cell filling the interchange square of a tensor product of
/// 1-intertwiners, as a scalar field on node pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum InterchangeChoice {
    Identity,
    Field(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneIntertwiner {
    pub source: RepObject,
    pub target: RepObject,
    /// Row-major `n_source × n_target` table of fiber dimensions.
    dims: Vec<u64>,
    n_source: usize,
    n_target: usize,
    pub support: Vec<SupportComponent>,
    pub measure: MeasureTag,
    pub weak_data: Option<Vec<IsotropyLabel>>,
    pub interchange: Option<InterchangeChoice>,
}

impl OneIntertwiner {
    /// The `I`-orbits of all node pairs over a common base point, or nothing
    /// when the bases differ.
    pub fn fiber_product_components(source: &RepObject, target: &RepObject) -> Result<Vec<SupportComponent>> {
        let (ns, nt) = (source.nodes()?, target.nodes()?);
        if !source.same_base(target) {
            return Ok(vec![]);
        }
        Ok(orbit_decomposition(&permutations(&ns), &permutations(&nt), ns.len(), nt.len(), |_, _| true))
    }

    /// A strong 1-intertwiner with the given dimensions on the fiber product.
    pub fn strong(source: RepObject, target: RepObject, dims: HilbertDims, measure: MeasureTag) -> Result<Self> {
        let (n_source, n_target) = (source.nodes()?.len(), target.nodes()?.len());
        let comps = Self::fiber_product_components(&source, &target)?;
        let per: Vec<u64> = match dims {
            HilbertDims::Uniform(d) => vec![d; comps.len()],
            HilbertDims::PerComponent(v) if v.len() == comps.len() => v,
            HilbertDims::PerComponent(v) => {
                return Err(Error::InvalidInput(format!("{} dimensions for {} components", v.len(), comps.len())))
            }
        };
        let mut table = vec![0; n_source * n_target];
        for (c, d) in comps.iter().zip(&per) {
            for &(a, b) in &c.pairs {
                table[a * n_target + b] = *d;
            }
        }
        Self::from_table(source, target, table, measure)
    }

    /// Builds from a dimension table, which must be `I`-invariant.
    pub fn from_table(source: RepObject, target: RepObject, dims: Vec<u64>, measure: MeasureTag) -> Result<Self> {
        let (ns, nt) = (source.nodes()?, target.nodes()?);
        if dims.len() != ns.len() * nt.len() {
            return Err(Error::InvalidInput(format!("table has {} entries, expected {}", dims.len(), ns.len() * nt.len())));
        }
        if !source.same_base(&target) && dims.iter().any(|&d| d != 0) {
            return Err(Error::InvalidInput("nonzero dimensions between different base orbits".into()));
        }
        let (ps, pt) = (permutations(&ns), permutations(&nt));
        let n_target = nt.len();
        for (p, q) in ps.iter().zip(&pt) {
            for a in 0..ns.len() {
                for b in 0..n_target {
                    if dims[a * n_target + b] != dims[p[a] * n_target + q[b]] {
                        return Err(Error::InvalidInput("dimension table is not invariant".into()));
                    }
                }
            }
        }
        let support = orbit_decomposition(&ps, &pt, ns.len(), n_target, |a, b| dims[a * n_target + b] != 0);
        Ok(Self {
            source,
            target,
            dims,
            n_source: ns.len(),
            n_target,
            support,
            measure,
            weak_data: None,
            interchange: None,
        })
    }

    pub fn zero(source: RepObject, target: RepObject) -> Result<Self> {
        let n = source.nodes()?.len() * target.nodes()?.len();
        Self::from_table(source, target, vec![0; n], MeasureTag::default())
    }

    /// The identity: one-dimensional on the diagonal.
    pub fn identity(obj: RepObject) -> Result<Self> {
        let n = obj.nodes()?.len();
        let table = (0..n * n).map(|k| u64::from(k / n == k % n)).collect();
        Self::from_table(obj.clone(), obj, table, MeasureTag::default())
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dim_at(&self, a: usize, b: usize) -> u64 {
        self.dims[a * self.n_target + b]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_source, self.n_target)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Dimension carried by each support component.
    pub fn component_dims(&self) -> Vec<u64> {
        self.support.iter().map(|c| self.dim_at(c.pairs[0].0, c.pairs[0].1)).collect()
    }

    /// Multiset of (orbit size, isotropy, dimension) over the support.
    pub fn support_signature(&self) -> Vec<(usize, StabilizerGroup, u64)> {
        let mut v: Vec<_> = self
            .support
            .iter()
            .zip(self.component_dims())
            .map(|(c, d)| (c.pairs.len(), c.isotropy.clone(), d))
            .collect();
        v.sort_by(|a, b| (a.0, a.1.to_string(), a.2).cmp(&(b.0, b.1.to_string(), b.2)));
        v
    }

    /// The dimension table weighted by the recorded interchange 2-cell.
    pub fn weighted_dims(&self) -> Vec<f64> {
        match &self.interchange {
            Some(InterchangeChoice::Field(phi)) => self.dims.iter().zip(phi).map(|(&d, p)| d as f64 * p).collect(),
            _ => self.dims.iter().map(|&d| d as f64).collect(),
        }
    }

    /// Attaches a representation of the isotropy group to every support
    /// component, making the intertwiner weak.
    pub fn promote_weak(mut self, labels: Vec<IsotropyLabel>) -> Result<Self> {
        if labels.len() != self.support.len() {
            return Err(Error::InvalidInput(format!("{} labels for {} components", labels.len(), self.support.len())));
        }
        for (c, l) in self.support.iter().zip(&labels) {
            let ok = matches!(
                (&c.isotropy, l),
                (_, IsotropyLabel::Trivial)
                    | (StabilizerGroup::U1, IsotropyLabel::U1Charge(_))
                    | (StabilizerGroup::SU2, IsotropyLabel::Su2Spin(_))
            );
            if !ok {
                return Err(Error::InvalidInput(format!("label {l:?} does not represent {}", c.isotropy)));
            }
        }
        self.weak_data = Some(labels);
        Ok(self)
    }
}

fn combine_measures(a: &MeasureTag, b: &MeasureTag) -> MeasureTag {
    if a == b {
        a.clone()
    } else {
        MeasureTag::Custom(format!("{a}*{b}"))
    }
}

/// `g ∘ f` for `f: A → B`, `g: B → C`: dimensions multiply along matched
/// pairs and sum over the middle fiber.
pub fn compose_1(f: &OneIntertwiner, g: &OneIntertwiner) -> Result<OneIntertwiner> {
    if f.target != g.source {
        return Err(Error::Mismatch(format!("target {} vs source {}", f.target, g.source)));
    }
    let (n, m, k) = (f.n_source, f.n_target, g.n_target);
    let mut table = vec![0u64; n * k];
    for a in 0..n {
        for b in 0..m {
            let x = f.dims[a * m + b];
            if x == 0 {
                continue;
            }
            for c in 0..k {
                table[a * k + c] += x * g.dims[b * k + c];
            }
        }
    }
    OneIntertwiner::from_table(f.source.clone(), g.target.clone(), table, combine_measures(&f.measure, &g.measure))
}

fn kron(a: &[u64], ar: usize, ac: usize, b: &[u64], br: usize, bc: usize) -> Vec<u64> {
    let cols = ac * bc;
    let mut out = vec![0; ar * br * cols];
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k) * cols + j * bc + l] = a[i * ac + j] * b[k * bc + l];
                }
            }
        }
    }
    out
}

/// `f ⊗ g` on product nodes, with the interchange 2-cell recorded.
pub fn tensor_1(f: &OneIntertwiner, g: &OneIntertwiner, choice: InterchangeChoice) -> Result<OneIntertwiner> {
    let table = kron(&f.dims, f.n_source, f.n_target, &g.dims, g.n_source, g.n_target);
    if let InterchangeChoice::Field(phi) = &choice {
        if phi.len() != table.len() || phi.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput("interchange field must be finite on every node pair".into()));
        }
    }
    let mut out = OneIntertwiner::from_table(
        f.source.tensor(&g.source),
        f.target.tensor(&g.target),
        table,
        combine_measures(&f.measure, &g.measure),
    )?;
    out.interchange = Some(choice);
    Ok(out)
}

/// Both whiskering orders of `f: X₁ → X₂` and `g: Y₁ → Y₂`, compared with
/// the tensor product built from `choice`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WhiskeringReport {
    /// `max |(f ⊗ 1)(1 ⊗ g) − (1 ⊗ g)(f ⊗ 1)|` on dimension tables.
    pub order_gap: u64,
    /// `max |φ·(1 ⊗ g)(f ⊗ 1) − (f ⊗_φ g)|`: the orders differ by the 2-cell.
    pub recorded_residual: f64,
}

pub fn whiskering_orders(f: &OneIntertwiner, g: &OneIntertwiner, choice: InterchangeChoice) -> Result<WhiskeringReport> {
    let (id_x1, id_x2) = (OneIntertwiner::identity(f.source.clone())?, OneIntertwiner::identity(f.target.clone())?);
    let (id_y1, id_y2) = (OneIntertwiner::identity(g.source.clone())?, OneIntertwiner::identity(g.target.clone())?);
    let first = compose_1(
        &tensor_1(f, &id_y1, InterchangeChoice::Identity)?,
        &tensor_1(&id_x2, g, InterchangeChoice::Identity)?,
    )?;
    let second = compose_1(
        &tensor_1(&id_x1, g, InterchangeChoice::Identity)?,
        &tensor_1(f, &id_y2, InterchangeChoice::Identity)?,
    )?;
    let order_gap = first.dims.iter().zip(&second.dims).map(|(a, b)| a.abs_diff(*b)).max().unwrap_or(0);
    let weak = tensor_1(f, g, choice.clone())?;
    let phi = |k: usize| match &choice {
        InterchangeChoice::Identity => 1.0,
        InterchangeChoice::Field(v) => v[k],
    };
    let recorded_residual = second
        .dims
        .iter()
        .enumerate()
        .zip(weak.weighted_dims())
        .map(|((k, &d), w)| (phi(k) * d as f64 - w).abs())
        .fold(0.0, f64::max);
    Ok(WhiskeringReport {
        order_gap,
        recorded_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::MinkowskiOrbit;
    use crate::rep::make_irrep;

    fn e(r: f64) -> RepObject {
        Irrep::elementary(r).unwrap().into()
    }

    fn m(r: f64) -> RepObject {
        make_irrep(MinkowskiOrbit::future(r).unwrap(), StabilizerGroup::U1).unwrap().into()
    }

    #[test]
    fn elementary_endomorphisms() {
        let i = OneIntertwiner::strong(e(2.0), e(2.0), HilbertDims::Uniform(1), MeasureTag::Lebesgue).unwrap();
        assert_eq!(i.support.len(), 1);
        assert_eq!(i.component_dims(), vec![1]);
        assert_eq!(i.support[0].isotropy, StabilizerGroup::SU2);
        assert_eq!(i, OneIntertwiner::identity(e(2.0)).unwrap());
    }

    #[test]
    fn sphere_fibers_split_by_relative_angle() {
        let comps = OneIntertwiner::fiber_product_components(&m(1.5), &m(1.5)).unwrap();
        let mut sizes: Vec<(usize, StabilizerGroup)> = comps.iter().map(|c| (c.pairs.len(), c.isotropy.clone())).collect();
        sizes.sort_by_key(|s| s.0);
        assert_eq!(
            sizes,
            vec![
                (12, StabilizerGroup::U1),
                (12, StabilizerGroup::U1),
                (60, StabilizerGroup::Trivial),
                (60, StabilizerGroup::Trivial)
            ]
        );
    }

    #[test]
    fn different_radii_give_zero() {
        let z = OneIntertwiner::strong(e(1.0), e(2.0), HilbertDims::Uniform(3), MeasureTag::Lebesgue).unwrap();
        assert!(z.is_zero() && z.support.is_empty());
    }

    #[test]
    fn composition_laws() {
        let f = OneIntertwiner::strong(m(1.0), m(1.0), HilbertDims::PerComponent(vec![1, 2, 0, 3]), MeasureTag::Lebesgue).unwrap();
        let g = OneIntertwiner::strong(m(1.0), m(1.0), HilbertDims::PerComponent(vec![0, 1, 1, 1]), MeasureTag::Lebesgue).unwrap();
        let id = OneIntertwiner::identity(m(1.0)).unwrap();
        assert_eq!(compose_1(&f, &id).unwrap().dims(), f.dims());
        assert_eq!(compose_1(&id, &f).unwrap().support_signature(), f.support_signature());
        let left = compose_1(&compose_1(&f, &g).unwrap(), &f).unwrap();
        let right = compose_1(&f, &compose_1(&g, &f).unwrap()).unwrap();
        assert_eq!(left.support_signature(), right.support_signature());
        let zero = OneIntertwiner::zero(m(1.0), m(1.0)).unwrap();
        assert!(compose_1(&f, &zero).unwrap().is_zero());
        assert!(compose_1(&f, &OneIntertwiner::identity(e(1.0)).unwrap()).is_err());
    }

    #[test]
    fn constants_multiply() {
        let a = OneIntertwiner::strong(e(1.0), e(1.0), HilbertDims::Uniform(2), MeasureTag::Lebesgue).unwrap();
        let b = OneIntertwiner::strong(e(1.0), e(1.0), HilbertDims::Uniform(3), MeasureTag::Lebesgue).unwrap();
        assert_eq!(compose_1(&a, &b).unwrap().component_dims(), vec![6]);
    }

    #[test]
    fn tensor_and_whiskering() {
        let f = OneIntertwiner::strong(m(1.0), m(1.0), HilbertDims::PerComponent(vec![1, 0, 2, 0]), MeasureTag::Lebesgue).unwrap();
        let g = OneIntertwiner::identity(e(2.0)).unwrap();
        let ids = tensor_1(
            &OneIntertwiner::identity(m(1.0)).unwrap(),
            &g,
            InterchangeChoice::Identity,
        )
        .unwrap();
        assert_eq!(ids.dims(), OneIntertwiner::identity(m(1.0).tensor(&e(2.0))).unwrap().dims());
        let n = f.dims().len() * g.dims().len();
        let phi: Vec<f64> = (0..n).map(|k| 1.0 + 0.01 * k as f64).collect();
        let r = whiskering_orders(&f, &g, InterchangeChoice::Field(phi)).unwrap();
        assert_eq!(r.order_gap, 0);
        assert_eq!(r.recorded_residual, 0.0);
    }

    #[test]
    fn weak_labels_follow_isotropy() {
        let f = OneIntertwiner::strong(m(1.0), m(1.0), HilbertDims::Uniform(1), MeasureTag::Lebesgue).unwrap();
        let labels: Vec<IsotropyLabel> = f
            .support
            .iter()
            .map(|c| match c.isotropy {
                StabilizerGroup::U1 => IsotropyLabel::U1Charge(2),
                _ => IsotropyLabel::Trivial,
            })
            .collect();
        assert!(f.clone().promote_weak(labels).unwrap().weak_data.is_some());
        let bad = vec![IsotropyLabel::Su2Spin(SU2OrbitLabel::from_spin(1.0).unwrap()); f.support.len()];
        assert!(f.promote_weak(bad).is_err());
    }
}
