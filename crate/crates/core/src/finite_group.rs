//! The icosahedral rotation group as a finite stand-in for SU(2) acting on
//! fibers. Orbits of points with stabilizers of order 60, 5 and 1 play the
//! roles of the point, the sphere of directions, and the full frame bundle.

use nalgebra::{Matrix3, Vector3};

/// Golden ratio.
pub const PHI: f64 = 1.618_033_988_749_895;

const MATCH_TOL: f64 = 1e-9;

/// A finite subgroup of SO(3) stored as its element list, identity first.
#[derive(Clone, Debug)]
pub struct FiniteRotationGroup {
    elements: Vec<Matrix3<f64>>,
}

impl FiniteRotationGroup {
    /// The closure of a generating set.
    pub fn generated_by(generators: &[Matrix3<f64>]) -> Self {
        let mut elements = vec![Matrix3::identity()];
        let mut frontier = vec![Matrix3::identity()];
        while let Some(h) = frontier.pop() {
            for g in generators {
                let p = g * h;
                if !elements.iter().any(|e| (e - p).abs().max() < MATCH_TOL) {
                    elements.push(p);
                    frontier.push(p);
                }
            }
        }
        Self { elements }
    }

    /// Rotation group of the icosahedron with vertices at the cyclic
    /// permutations of `(0, ±1, ±φ)`; order 60.
    pub fn icosahedral() -> Self {
        let axis = Vector3::new(0.0, 1.0, PHI).normalize();
        let five = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_unchecked(axis), 2.0 * std::f64::consts::PI / 5.0);
        // (x, y, z) ↦ (y, z, x)
        let cycle = Matrix3::new(0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0);
        Self::generated_by(&[*five.matrix(), cycle])
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Matrix3<f64> {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Matrix3<f64>] {
        &self.elements
    }

    pub fn act(&self, i: usize, v: &Vector3<f64>) -> Vector3<f64> {
        self.elements[i] * v
    }

    /// Distinct images of `v`, in order of first appearance.
    pub fn orbit(&self, v: &Vector3<f64>) -> Vec<Vector3<f64>> {
        let mut out: Vec<Vector3<f64>> = Vec::new();
        for g in &self.elements {
            let w = g * v;
            if !out.iter().any(|u| (u - w).norm() < MATCH_TOL * (1.0 + v.norm())) {
                out.push(w);
            }
        }
        out
    }

    /// Indices of the elements fixing `v`.
    pub fn stabilizer(&self, v: &Vector3<f64>) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| (self.elements[i] * v - v).norm() < MATCH_TOL * (1.0 + v.norm()))
            .collect()
    }
}

/// A vertex of the icosahedron (stabilizer of order 5).
pub fn vertex() -> Vector3<f64> {
    Vector3::new(0.0, 1.0, PHI).normalize()
}

/// A point with trivial stabilizer in the icosahedral group.
pub fn generic_point() -> Vector3<f64> {
    Vector3::new(0.213, 0.561, 0.8).normalize()
}
