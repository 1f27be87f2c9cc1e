//! Computable pieces of the representation 2-category of the Poincaré
//! 2-group: Minkowski orbits, the Kirillov orbit method for su(2) and
//! sl(2,ℂ), irreps as equivariant fiberings over Minkowski orbits and their
//! tensor products, 1- and 2-intertwiners, and a regularized state sum over
//! triangulated 4-manifolds.
//!
//! Module map:
//!
//! * [`minkowski`]: vectors, Lorentz transforms, orbits, orbit sampling.
//! * [`kirillov`]: Poisson bracket, symplectic form, flux, sl(2,ℂ) orbit labels.
//! * [`two_group`]: the strict 2-group with Lorentz 1-cells and translation 2-cells.
//! * [`rep`]: irreps, tensor decompositions, triangle and quadrilateral fibers.
//! * [`intertwiner`]: bridges, cocycles, 1-intertwiners, 2-intertwiners.
//! * [`statesum`]: triangulations, labellings, 5j traces and the state sum.

pub mod error;
pub mod finite_group;
pub mod intertwiner;
pub mod kirillov;
pub mod minkowski;
pub mod quadrature;
pub mod rep;
pub mod rng;
pub mod statesum;
pub mod two_group;

pub use error::{Error, Result};
pub use minkowski::{CausalClass, FourVector, LorentzTransform, MinkowskiOrbit, SamplerConfig, Tolerances};
pub use rep::{DirectIntegralDecomposition, FiberSpace, Irrep, IrrepKind, StabilizerGroup};
pub use intertwiner::{OneIntertwiner, TwoIntertwiner};
pub use statesum::{AmplitudeConfig, Labelling, Triangulation};
