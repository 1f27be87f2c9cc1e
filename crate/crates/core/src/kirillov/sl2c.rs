//! Coadjoint orbits of SL(2,ℂ) on ℂ³ ≅ ℝ⁶.

use std::fmt;
use std::ops::Mul;

use nalgebra::{Matrix3, Matrix6, Vector3};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::unit_vector;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Linear chart `w = CHART · z` with `Σ w_k² = z₁² − 4 z₀ z₂`, the quadratic
/// form preserved by [`sl2c_adjoint_matrix`]. Real coordinates are
/// `(Re w, Im w)`, so `Σ w_k² = I1 + 2i·I2`.
pub const CHART: [[Complex64; 3]; 3] = [[ZERO, ONE, ZERO], [I, ZERO, I], [ONE, ZERO, Complex64::new(-1.0, 0.0)]];

fn chart() -> Matrix3<Complex64> {
    Matrix3::from_fn(|r, c| CHART[r][c])
}

/// `[[a, b], [c, d]]` with `ad − bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2cElement {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Sl2cElement {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64, tol: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - ONE).norm() > tol {
            return Err(Error::Determinant { re: det.re, im: det.im });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self {
            a: ONE,
            b: ZERO,
            c: ZERO,
            d: ONE,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// `U₁ · diag(e^{λ/2}, e^{−λ/2}) · U₂` with `U₁, U₂` Haar-random in SU(2),
    /// `Re λ` uniform in `[0, max_rapidity]` and `Im λ` uniform in `[0, 2π)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_rapidity: f64) -> Self {
        let eta = rng.random_range(0.0..=max_rapidity);
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let h = Complex64::new(eta, theta) / 2.0;
        let diag = Self {
            a: h.exp(),
            b: ZERO,
            c: ZERO,
            d: (-h).exp(),
        };
        random_su2(rng) * diag * random_su2(rng)
    }
}

fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Sl2cElement {
    // a unit quaternion from a uniform direction and a Haar-distributed angle
    let n = unit_vector(rng);
    let u: f64 = rng.random_range(0.0..1.0);
    let half = {
        // density ∝ sin²(ψ) on [0, π]; inverse CDF by bisection on ψ − sinψcosψ
        let target = u * std::f64::consts::PI;
        let (mut lo, mut hi) = (0.0f64, std::f64::consts::PI);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mid - mid.sin() * mid.cos() < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let (s, c) = half.sin_cos();
    let (x, y, z) = (s * n[0], s * n[1], s * n[2]);
    Sl2cElement {
        a: Complex64::new(c, z),
        b: Complex64::new(y, x),
        c: Complex64::new(-y, x),
        d: Complex64::new(c, -z),
    }
}

impl Mul for Sl2cElement {
    type Output = Sl2cElement;

    fn mul(self, o: Sl2cElement) -> Sl2cElement {
        Sl2cElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// The action of `[[a, b], [c, d]]` on ℂ³:
///
/// ```text
/// d²    cd       c²
/// 2bd   ad + bc  2ac
/// b²    ab       a²
/// ```
pub fn sl2c_adjoint_matrix(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    tol: f64,
) -> Result<Matrix3<Complex64>> {
    let g = Sl2cElement::new(a, b, c, d, tol)?;
    Ok(adjoint_unchecked(&g))
}

fn adjoint_unchecked(g: &Sl2cElement) -> Matrix3<Complex64> {
    let Sl2cElement { a, b, c, d } = *g;
    let two = Complex64::new(2.0, 0.0);
    Matrix3::new(
        d * d,
        c * d,
        c * c,
        two * b * d,
        a * d + b * c,
        two * a * c,
        b * b,
        a * b,
        a * a,
    )
}

/// The action of `g` on ℝ⁶ in the coordinates fixed by [`CHART`].
pub fn real_coordinate_action(g: &Sl2cElement) -> Matrix6<f64> {
    let a = chart();
    let a_inv = a.try_inverse().expect("chart is invertible");
    let w = a * adjoint_unchecked(g) * a_inv;
    let mut out = Matrix6::zeros();
    for r in 0..3 {
        for c in 0..3 {
            out[(r, c)] = w[(r, c)].re;
            out[(r, c + 3)] = -w[(r, c)].im;
            out[(r + 3, c)] = w[(r, c)].im;
            out[(r + 3, c + 3)] = w[(r, c)].re;
        }
    }
    out
}

/// `z ∈ ℂ³ ↦ (Re w, Im w)` with `w = CHART · z`.
pub fn to_real_coordinates(z: [Complex64; 3]) -> [f64; 6] {
    let w = chart() * Vector3::from(z);
    [w[0].re, w[1].re, w[2].re, w[0].im, w[1].im, w[2].im]
}

/// `(I1, I2) = (|x|² − |y|², x·y)` for `p = (x₀, x₁, x₂, y₀, y₁, y₂)`.
pub fn orbit_invariants(p: &[f64; 6]) -> (f64, f64) {
    let (x, y) = (&p[..3], &p[3..]);
    let i1 = x.iter().map(|v| v * v).sum::<f64>() - y.iter().map(|v| v * v).sum::<f64>();
    let i2 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (i1, i2)
}

/// Orbit label `(n, ρ)` with `n² − ρ² = I1` and `nρ = I2`, in the canonical
/// representative `n > 0`, or `n = 0` and `ρ ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitLabelSL2C {
    n: f64,
    rho: f64,
}

impl OrbitLabelSL2C {
    /// Canonicalizes `(n, ρ)` by an overall sign.
    pub fn new(n: f64, rho: f64) -> Result<Self> {
        if !(n.is_finite() && rho.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite label ({n}, {rho})")));
        }
        let flip = n < 0.0 || (n == 0.0 && rho < 0.0);
        let (n, rho) = if flip { (-n, -rho) } else { (n, rho) };
        // normalize signed zeros so equal labels compare equal
        Ok(Self { n: n + 0.0, rho: rho + 0.0 })
    }

    pub fn zero() -> Self {
        Self { n: 0.0, rho: 0.0 }
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn is_zero(&self) -> bool {
        self.n == 0.0 && self.rho == 0.0
    }

    pub fn invariants(&self) -> (f64, f64) {
        (self.n * self.n - self.rho * self.rho, self.n * self.rho)
    }
}

impl fmt::Display for OrbitLabelSL2C {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, rho={})", self.n, self.rho)
    }
}

/// Solves `(n + iρ)² = I1 + 2i·I2` and canonicalizes the root.
pub fn orbit_label_from_invariants(i1: f64, i2: f64) -> Result<OrbitLabelSL2C> {
    if !(i1.is_finite() && i2.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite invariants ({i1}, {i2})")));
    }
    let root = Complex64::new(i1, 2.0 * i2).sqrt();
    OrbitLabelSL2C::new(root.re, root.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use nalgebra::Vector6;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_acts_trivially() {
        let m = sl2c_adjoint_matrix(ONE, ZERO, ZERO, ONE, 1e-9).unwrap();
        assert_eq!(m, Matrix3::identity());
        assert!(matches!(
            sl2c_adjoint_matrix(c(2.0, 0.0), ZERO, ZERO, ONE, 1e-9),
            Err(Error::Determinant { .. })
        ));
    }

    #[test]
    fn adjoint_is_a_homomorphism() {
        let mut rng = stream_rng(11, 0);
        for _ in 0..50 {
            let g1 = Sl2cElement::random(&mut rng, 1.5);
            let g2 = Sl2cElement::random(&mut rng, 1.5);
            assert!((g1.det() - ONE).norm() < 1e-12);
            // oracle: plain product of the two displayed matrices
            let lhs = adjoint_unchecked(&g1) * adjoint_unchecked(&g2);
            let rhs = adjoint_unchecked(&(g1 * g2));
            assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm());
            let id = adjoint_unchecked(&g1) * adjoint_unchecked(&g1.inverse());
            assert!((id - Matrix3::identity()).norm() < 1e-8);
        }
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(orbit_invariants(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]), (1.0, 0.0));
        assert_eq!(orbit_invariants(&[0.0; 6]), (0.0, 0.0));
    }

    #[test]
    fn chart_carries_the_quadratic_form() {
        let z = [c(0.3, -1.0), c(0.7, 0.2), c(-0.4, 0.9)];
        let q = z[1] * z[1] - 4.0 * z[0] * z[2];
        let (i1, i2) = orbit_invariants(&to_real_coordinates(z));
        assert!((i1 - q.re).abs() < 1e-12 && (2.0 * i2 - q.im).abs() < 1e-12);
    }

    #[test]
    fn invariants_survive_the_real_action() {
        let mut rng = stream_rng(5, 1);
        for _ in 0..20 {
            let p: [f64; 6] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
            let g = Sl2cElement::random(&mut rng, 2.0);
            let q = real_coordinate_action(&g) * Vector6::from(p);
            let (a, b) = orbit_invariants(&p);
            let (a2, b2) = orbit_invariants(&q.into());
            let scale = q.norm_squared().max(1.0);
            assert!((a - a2).abs() <= 1e-8 * scale && (b - b2).abs() <= 1e-8 * scale);
        }
    }

    #[test]
    fn label_examples() {
        assert_eq!(orbit_label_from_invariants(1.0, 0.0).unwrap(), OrbitLabelSL2C::new(1.0, 0.0).unwrap());
        assert_eq!(orbit_label_from_invariants(-1.0, 0.0).unwrap(), OrbitLabelSL2C::new(0.0, 1.0).unwrap());
        assert!(orbit_label_from_invariants(0.0, 0.0).unwrap().is_zero());
        assert_eq!(OrbitLabelSL2C::new(-2.0, 3.0).unwrap(), OrbitLabelSL2C::new(2.0, -3.0).unwrap());
        assert_eq!(orbit_label_from_invariants(0.0, -0.0).unwrap(), OrbitLabelSL2C::zero());
    }

    #[test]
    fn label_round_trip() {
        let mut rng = stream_rng(3, 0);
        for _ in 0..1000 {
            let l = OrbitLabelSL2C::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)).unwrap();
            let (i1, i2) = l.invariants();
            let back = orbit_label_from_invariants(i1, i2).unwrap();
            assert!((back.n() - l.n()).abs() < 1e-9 && (back.rho() - l.rho()).abs() < 1e-9, "{l} -> {back}");
        }
    }
}
