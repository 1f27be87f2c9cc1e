//! The orbit method on the dual of a Lie algebra.
//!
//! Functions on 𝒢* carry the Kirillov–Poisson bracket
//! `[f₁, f₂](X) = Σ c^k_ij X_k ∂f₁/∂X_i ∂f₂/∂X_j`, the coordinate functions
//! generate the vector fields `v_i = Σ c^k_ij X_k ∂/∂X_j`, and every
//! coadjoint orbit carries `ω(v_i, v_j) = Σ c^k_ij X_k`.

mod sl2c;
mod tensor;

pub use sl2c::{
    orbit_invariants, orbit_label_from_invariants, real_coordinate_action, sl2c_adjoint_matrix, to_real_coordinates,
    OrbitLabelSL2C, Sl2cElement, CHART,
};
pub use tensor::{sl2c_tensor_decompose, su2_tensor_decompose, Sl2cTensorDescriptor, SU2OrbitLabel};

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::fibonacci_sphere;

/// A real Lie algebra given by structure constants `c^k_ij`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieAlgebraBasis {
    dim: usize,
    /// `c[k][i][j]` flattened as `k·dim² + i·dim + j`.
    c: Vec<f64>,
}

impl LieAlgebraBasis {
    /// Validates antisymmetry and the Jacobi identity within `tol`.
    pub fn new(dim: usize, c: Vec<f64>, tol: f64) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                c.len()
            )));
        }
        let basis = Self { dim, c };
        for k in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    if (basis.constant(k, i, j) + basis.constant(k, j, i)).abs() > tol {
                        return Err(Error::StructureConstants(format!("antisymmetry at c^{k}_{i}{j}")));
                    }
                }
            }
        }
        let jac = basis.jacobi_residual();
        if jac > tol {
            return Err(Error::StructureConstants(format!("the Jacobi identity (residual {jac:.3e})")));
        }
        Ok(basis)
    }

    /// su(2) with `c^k_ij = ε_ijk`.
    pub fn su2() -> Self {
        let mut c = vec![0.0; 27];
        for (i, j, k, s) in levi_civita() {
            c[k * 9 + i * 3 + j] = s;
        }
        Self { dim: 3, c }
    }

    /// sl(2,ℂ) as a 6-dimensional real algebra with rotations `J_1..J_3`
    /// (indices 0–2) and boosts `K_1..K_3` (indices 3–5):
    /// `[J_i, J_j] = ε_ijk J_k`, `[J_i, K_j] = ε_ijk K_k`, `[K_i, K_j] = −ε_ijk J_k`.
    pub fn sl2c() -> Self {
        let d = 6;
        let mut c = vec![0.0; d * d * d];
        let mut set = |k: usize, i: usize, j: usize, v: f64| c[k * d * d + i * d + j] = v;
        for (i, j, k, s) in levi_civita() {
            set(k, i, j, s);
            set(k + 3, i, j + 3, s);
            set(k + 3, i + 3, j, s);
            set(k, i + 3, j + 3, -s);
        }
        Self { dim: d, c }
    }

    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            c: vec![0.0; dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_ij`.
    pub fn constant(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[k * self.dim * self.dim + i * self.dim + j]
    }

    /// Lie bracket of two algebra elements given in this basis.
    pub fn bracket(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let d = self.dim;
        (0..d)
            .map(|k| {
                let mut s = 0.0;
                for i in 0..d {
                    for j in 0..d {
                        s += self.constant(k, i, j) * a[i] * b[j];
                    }
                }
                s
            })
            .collect()
    }

    /// Largest entry of `[[e_i, e_j], e_k] + cyclic`.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim;
        let e = |i: usize| {
            let mut v = vec![0.0; d];
            v[i] = 1.0;
            v
        };
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let t1 = self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
                    let t2 = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let t3 = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    for l in 0..d {
                        worst = worst.max((t1[l] + t2[l] + t3[l]).abs());
                    }
                }
            }
        }
        worst
    }

    fn check_point(&self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, algebra has dimension {}",
                p.len(),
                self.dim
            )));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        Ok(())
    }
}

fn levi_civita() -> [(usize, usize, usize, f64); 6] {
    [
        (0, 1, 2, 1.0),
        (1, 2, 0, 1.0),
        (2, 0, 1, 1.0),
        (1, 0, 2, -1.0),
        (2, 1, 0, -1.0),
        (0, 2, 1, -1.0),
    ]
}

/// A smooth function on 𝒢* known through its value and gradient.
pub trait Observable {
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
}

/// The coordinate function `X ↦ X_i`.
#[derive(Clone, Copy, Debug)]
pub struct Coordinate(pub usize);

impl Observable for Coordinate {
    fn value(&self, x: &[f64]) -> f64 {
        x[self.0]
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        g[self.0] = 1.0;
        g
    }
}

/// `X ↦ Σ a_i X_i`.
#[derive(Clone, Debug)]
pub struct Linear(pub Vec<f64>);

impl Observable for Linear {
    fn value(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    fn gradient(&self, _x: &[f64]) -> Vec<f64> {
        self.0.clone()
    }
}

/// An observable from a pair of closures.
pub struct FnObservable<V, G> {
    pub value: V,
    pub gradient: G,
}

impl<V, G> Observable for FnObservable<V, G>
where
    V: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    fn value(&self, x: &[f64]) -> f64 {
        (self.value)(x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (self.gradient)(x)
    }
}

/// Kirillov–Poisson bracket of two observables at `p`.
pub fn poisson_bracket(
    basis: &LieAlgebraBasis,
    f1: &dyn Observable,
    f2: &dyn Observable,
    p: &[f64],
) -> Result<f64> {
    basis.check_point(p)?;
    let (g1, g2) = (f1.gradient(p), f2.gradient(p));
    if g1.len() != basis.dim || g2.len() != basis.dim {
        return Err(Error::InvalidInput("gradient length does not match the algebra".into()));
    }
    let d = basis.dim;
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            let w = symplectic_unchecked(basis, i, j, p);
            s += w * g1[i] * g2[j];
        }
    }
    Ok(s)
}

/// Components of `v_i` at `p`: `(v_i)_j = Σ_k c^k_ij X_k`.
pub fn hamiltonian_vector_field(basis: &LieAlgebraBasis, i: usize, p: &[f64]) -> Result<Vec<f64>> {
    basis.check_point(p)?;
    if i >= basis.dim {
        return Err(Error::IndexOutOfRange { index: i, dim: basis.dim });
    }
    Ok((0..basis.dim).map(|j| symplectic_unchecked(basis, i, j, p)).collect())
}

/// `ω(v_i, v_j)` at `p`.
pub fn symplectic_eval(basis: &LieAlgebraBasis, i: usize, j: usize, p: &[f64]) -> Result<f64> {
    basis.check_point(p)?;
    for idx in [i, j] {
        if idx >= basis.dim {
            return Err(Error::IndexOutOfRange { index: idx, dim: basis.dim });
        }
    }
    Ok(symplectic_unchecked(basis, i, j, p))
}

fn symplectic_unchecked(basis: &LieAlgebraBasis, i: usize, j: usize, p: &[f64]) -> f64 {
    (0..basis.dim).map(|k| basis.constant(k, i, j) * p[k]).sum()
}

/// Result of integrating the orbit symplectic form over an su(2) sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxReport {
    pub j: f64,
    pub nodes: usize,
    /// `∫ ω` over the sphere of radius `j`, oriented by the outward normal.
    pub flux: f64,
    /// The same integral on half as many nodes.
    pub coarse_flux: f64,
    pub converged: bool,
}

/// Relative agreement required between the full and half-resolution fluxes.
pub const FLUX_CONVERGENCE_TOL: f64 = 1e-6;

/// Integrates `ω` over the coadjoint orbit of radius `j` in su(2)* ≅ ℝ³.
///
/// At every node the outward-oriented tangent frame `(e₁, e₂)` is written as
/// `e = Σ a_i v_i(X)` (minimum-norm solution) and `ω(e₁, e₂)` is evaluated
/// with [`symplectic_eval`]; the nodes are equal-area Fibonacci points.
pub fn su2_flux(j: f64, resolution: usize) -> Result<FluxReport> {
    if !(j > 0.0 && j.is_finite()) {
        return Err(Error::InvalidInput(format!("flux needs j > 0, got {j}")));
    }
    if resolution < 2 {
        return Err(Error::NotConverged(format!("resolution {resolution} is below 2 nodes")));
    }
    let basis = LieAlgebraBasis::su2();
    let flux = flux_at(&basis, j, resolution)?;
    let coarse_flux = flux_at(&basis, j, resolution / 2)?;
    let converged = (flux - coarse_flux).abs() <= FLUX_CONVERGENCE_TOL * flux.abs().max(f64::MIN_POSITIVE);
    Ok(FluxReport {
        j,
        nodes: resolution,
        flux,
        coarse_flux,
        converged,
    })
}

fn flux_at(basis: &LieAlgebraBasis, j: f64, n: usize) -> Result<f64> {
    let w = 4.0 * std::f64::consts::PI * j * j / n as f64;
    let mut total = 0.0;
    for node in fibonacci_sphere(n) {
        let normal = Vector3::from(node);
        let x: Vec<f64> = node.iter().map(|c| j * c).collect();
        let (e1, e2) = tangent_frame(&normal);
        let mut vf = Matrix3::zeros();
        for i in 0..3 {
            let v = hamiltonian_vector_field(basis, i, &x)?;
            for r in 0..3 {
                vf[(r, i)] = v[r];
            }
        }
        let pinv = vf
            .pseudo_inverse(1e-12 * j.max(1.0))
            .map_err(|e| Error::NotConverged(e.to_string()))?;
        let a = pinv * e1;
        let b = pinv * e2;
        let mut omega = 0.0;
        for i in 0..3 {
            for k in 0..3 {
                omega += a[i] * b[k] * symplectic_eval(basis, i, k, &x)?;
            }
        }
        total += w * omega;
    }
    Ok(total)
}

/// Orthonormal `(e₁, e₂)` with `e₁ × e₂ = n`.
fn tangent_frame(n: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let helper = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let e1 = (helper - n * n.dot(&helper)).normalize();
    let e2 = n.cross(&e1);
    (e1, e2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn shipped_algebras_satisfy_jacobi() {
        for b in [LieAlgebraBasis::su2(), LieAlgebraBasis::sl2c(), LieAlgebraBasis::abelian(4)] {
            assert!(b.jacobi_residual() < 1e-12);
            assert!(LieAlgebraBasis::new(b.dim(), b.c.clone(), 1e-12).is_ok());
        }
    }

    #[test]
    fn rejects_bad_structure_constants() {
        let mut c = LieAlgebraBasis::su2().c;
        c[2 * 9 + 1] = 0.5; // c^2_01 no longer antisymmetric
        assert!(matches!(
            LieAlgebraBasis::new(3, c, 1e-12),
            Err(Error::StructureConstants(_))
        ));
        // antisymmetric but not Jacobi: [e0,e1] = e0 + e1 in 3 dims with [e0,e2] = e1
        let mut c = vec![0.0; 27];
        let mut set = |k: usize, i: usize, j: usize, v: f64| {
            c[k * 9 + i * 3 + j] = v;
            c[k * 9 + j * 3 + i] = -v;
        };
        set(2, 0, 1, 1.0);
        set(0, 1, 2, 1.0);
        set(1, 0, 2, 1.0);
        set(1, 1, 2, 1.0);
        assert!(LieAlgebraBasis::new(3, c, 1e-12).is_err());
    }

    #[test]
    fn bracket_examples() {
        let su2 = LieAlgebraBasis::su2();
        let p = [0.2, -0.4, 0.9];
        let f = Linear(vec![1.0, 2.0, -1.0]);
        assert!(poisson_bracket(&su2, &f, &f, &p).unwrap().abs() < 1e-15);
        let b = poisson_bracket(&su2, &Coordinate(0), &Coordinate(1), &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(b, 1.0);
        let ab = LieAlgebraBasis::abelian(3);
        assert_eq!(poisson_bracket(&ab, &Coordinate(0), &f, &p).unwrap(), 0.0);
        assert!(poisson_bracket(&su2, &Coordinate(0), &Coordinate(1), &[1.0, 2.0]).is_err());
    }

    #[test]
    fn bracket_of_nonlinear_observables() {
        // Casimir |X|² Poisson-commutes with everything.
        let su2 = LieAlgebraBasis::su2();
        let casimir = FnObservable {
            value: |x: &[f64]| x.iter().map(|c| c * c).sum(),
            gradient: |x: &[f64]| x.iter().map(|c| 2.0 * c).collect(),
        };
        let p = [0.3, 1.1, -0.7];
        assert!((casimir.value(&p) - 1.79).abs() < 1e-15);
        for i in 0..3 {
            assert!(poisson_bracket(&su2, &casimir, &Coordinate(i), &p).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn vector_field_examples() {
        let su2 = LieAlgebraBasis::su2();
        assert_eq!(hamiltonian_vector_field(&su2, 1, &[0.0; 3]).unwrap(), vec![0.0; 3]);
        // (v_3)_j = ε_{3jk} X_k at X = (1,0,0): only j = 2 survives with ε_{321} = −1.
        let v = hamiltonian_vector_field(&su2, 2, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(v, vec![0.0, -1.0, 0.0]);
        assert_eq!(
            hamiltonian_vector_field(&LieAlgebraBasis::abelian(3), 0, &[1.0, 2.0, 3.0]).unwrap(),
            vec![0.0; 3]
        );
        assert!(matches!(
            hamiltonian_vector_field(&su2, 3, &[0.0; 3]),
            Err(Error::IndexOutOfRange { index: 3, dim: 3 })
        ));
    }

    #[test]
    fn symplectic_examples() {
        let su2 = LieAlgebraBasis::su2();
        let p = [0.0, 0.0, 2.5];
        assert_eq!(symplectic_eval(&su2, 1, 1, &p).unwrap(), 0.0);
        assert_eq!(symplectic_eval(&su2, 0, 1, &p).unwrap(), 2.5);
        assert_eq!(symplectic_eval(&su2, 1, 0, &p).unwrap(), -2.5);
    }

    #[test]
    fn flux_examples() {
        let half = su2_flux(0.5, 2000).unwrap();
        let one = su2_flux(1.0, 2000).unwrap();
        assert!(half.flux > 0.0 && half.converged);
        assert!((one.flux / half.flux - 2.0).abs() < 1e-4);
        // 4πj for the Kirillov form on the radius-j sphere
        assert!((one.flux - 4.0 * std::f64::consts::PI).abs() < 1e-9);
        assert!(su2_flux(0.0, 100).is_err());
        assert!(su2_flux(1.0, 1).is_err());
    }

    #[test]
    fn non_integral_ratio_is_not_an_integer() {
        let half = su2_flux(0.5, 1000).unwrap().flux;
        let r = su2_flux(0.8, 1000).unwrap().flux / half;
        assert!((r - r.round()).abs() > 1e-4);
    }

    proptest! {
        #[test]
        fn bracket_of_coordinates_is_symplectic_form(x in prop::array::uniform6(-3.0f64..3.0), i in 0usize..6, j in 0usize..6) {
            let b = LieAlgebraBasis::sl2c();
            let lhs = poisson_bracket(&b, &Coordinate(i), &Coordinate(j), &x).unwrap();
            let rhs = symplectic_eval(&b, i, j, &x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12);
            prop_assert!((rhs + symplectic_eval(&b, j, i, &x).unwrap()).abs() <= 1e-12);
        }
    }
}
