use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not a proper orthochronous Lorentz transform (residual {residual:.3e})")]
    NotLorentz { residual: f64 },

    #[error("determinant ad - bc = {re:.6}{im:+.6}i differs from 1")]
    Determinant { re: f64, im: f64 },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("{0} is not a half-integer")]
    NotHalfInteger(f64),

    #[error("structure constants violate {0}")]
    StructureConstants(String),

    #[error("mismatched 1-morphisms in vertical composition")]
    MismatchedOneMorphism,

    #[error("subgroup {subgroup} is not catalogued for stabilizer {group}")]
    UncataloguedSubgroup { group: String, subgroup: String },

    #[error("operation is not defined for non-Hausdorff irreps")]
    NonHausdorff,

    #[error("{0}")]
    Unsupported(String),

    #[error("composition mismatch: {0}")]
    Mismatch(String),

    #[error("fields live on different node sets; resample onto a common grid first")]
    ResampleRequired,

    #[error("quadrature did not converge: {0}")]
    NotConverged(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("not a pseudomanifold: tetrahedron {tetra:?} lies in {count} four-simplices")]
    NotPseudomanifold { tetra: [usize; 4], count: usize },

    #[error("missing labels: {0}")]
    MissingLabels(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
