//! Deterministic node sets with weights on the orbits used by the scalar
//! fields: round 2-spheres (spherical Fibonacci lattice), truncated
//! hyperboloid windows (rapidity × sphere product grids), finite sets, and
//! products of these.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Golden angle π(3 − √5).
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// Identifies a node set; two fields are composable only on equal specs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GridSpec {
    /// `n` Fibonacci nodes on the sphere of the given radius; `reflected`
    /// grids carry the antipodal images of the same nodes.
    Sphere { n: usize, radius: f64, reflected: bool },
    /// Midpoint rule in rapidity on `[0, max_rapidity]` times a Fibonacci
    /// sphere, on the future hyperboloid of the given radius.
    Hyperboloid {
        radius: f64,
        n_rapidity: usize,
        n_sphere: usize,
        max_rapidity: f64,
    },
    /// `n` abstract nodes of unit weight.
    Discrete { n: usize },
    Product(Box<GridSpec>, Box<GridSpec>),
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridSpec::Sphere { n, radius, reflected } => {
                write!(f, "sphere(n={n},r={radius}{})", if *reflected { ",reflected" } else { "" })
            }
            GridSpec::Hyperboloid {
                radius,
                n_rapidity,
                n_sphere,
                max_rapidity,
            } => write!(f, "hyperboloid(r={radius},{n_rapidity}x{n_sphere},max={max_rapidity})"),
            GridSpec::Discrete { n } => write!(f, "discrete(n={n})"),
            GridSpec::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// Nodes (flat coordinates, `dim` per node) and quadrature weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitGrid {
    spec: GridSpec,
    dim: usize,
    coords: Vec<f64>,
    weights: Vec<f64>,
}

/// Unit vectors of the spherical Fibonacci lattice with `n` nodes.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            let phi = GOLDEN_ANGLE * i as f64;
            let s = (1.0 - z * z).max(0.0).sqrt();
            [s * phi.cos(), s * phi.sin(), z]
        })
        .collect()
}

impl OrbitGrid {
    /// Sphere of radius `radius` with `n` equal-area nodes.
    pub fn sphere(n: usize, radius: f64) -> Result<Self> {
        if n == 0 || !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(format!("sphere grid needs n ≥ 1 and radius > 0 (n={n}, r={radius})")));
        }
        let coords = fibonacci_sphere(n).into_iter().flatten().map(|c| c * radius).collect();
        Ok(Self {
            spec: GridSpec::Sphere {
                n,
                radius,
                reflected: false,
            },
            dim: 3,
            coords,
            weights: vec![4.0 * PI * radius * radius / n as f64; n],
        })
    }

    /// Truncated window `{ rapidity ≤ max_rapidity }` of the future hyperboloid
    /// of the given radius with its invariant measure `r³ sinh²η dη dΩ`.
    pub fn hyperboloid(radius: f64, n_rapidity: usize, n_sphere: usize, max_rapidity: f64) -> Result<Self> {
        if n_rapidity == 0 || n_sphere == 0 || !(radius > 0.0) || !(max_rapidity > 0.0) {
            return Err(Error::InvalidInput("hyperboloid grid needs positive sizes, radius and cutoff".into()));
        }
        let h = max_rapidity / n_rapidity as f64;
        let dirs = fibonacci_sphere(n_sphere);
        let dw = 4.0 * PI / n_sphere as f64;
        let mut coords = Vec::with_capacity(4 * n_rapidity * n_sphere);
        let mut weights = Vec::with_capacity(n_rapidity * n_sphere);
        for k in 0..n_rapidity {
            let eta = (k as f64 + 0.5) * h;
            let (ch, sh) = (eta.cosh(), eta.sinh());
            for d in &dirs {
                coords.extend_from_slice(&[radius * ch, radius * sh * d[0], radius * sh * d[1], radius * sh * d[2]]);
                weights.push(radius.powi(3) * sh * sh * h * dw);
            }
        }
        Ok(Self {
            spec: GridSpec::Hyperboloid {
                radius,
                n_rapidity,
                n_sphere,
                max_rapidity,
            },
            dim: 4,
            coords,
            weights,
        })
    }

    /// `n` abstract nodes of unit weight with index coordinates.
    pub fn discrete(n: usize) -> Self {
        Self {
            spec: GridSpec::Discrete { n },
            dim: 1,
            coords: (0..n).map(|i| i as f64).collect(),
            weights: vec![1.0; n],
        }
    }

    /// Product grid; node `(i, j)` has index `i * b.len() + j`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let dim = a.dim + b.dim;
        let mut coords = Vec::with_capacity(dim * a.len() * b.len());
        let mut weights = Vec::with_capacity(a.len() * b.len());
        for i in 0..a.len() {
            for j in 0..b.len() {
                coords.extend_from_slice(a.point(i));
                coords.extend_from_slice(b.point(j));
                weights.push(a.weights[i] * b.weights[j]);
            }
        }
        Self {
            spec: GridSpec::Product(Box::new(a.spec.clone()), Box::new(b.spec.clone())),
            dim,
            coords,
            weights,
        }
    }

    /// Antipodal images of a sphere grid (same weights).
    pub fn reflected(&self) -> Result<Self> {
        match &self.spec {
            GridSpec::Sphere { n, radius, reflected } => Ok(Self {
                spec: GridSpec::Sphere {
                    n: *n,
                    radius: *radius,
                    reflected: !reflected,
                },
                dim: self.dim,
                coords: self.coords.iter().map(|c| -c).collect(),
                weights: self.weights.clone(),
            }),
            other => Err(Error::Unsupported(format!("reflection of {other} grids"))),
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Total weight of the grid: the quadrature volume of the window.
    pub fn volume(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `Σ wᵢ f(xᵢ)` in node order.
    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.points().zip(&self.weights).map(|(p, w)| w * f(p)).sum()
    }
}
