//! Independence complexes of grid graphs: exact hard-particle counts,
//! matching-tree Morse matchings, and transfer-matrix spectra.

pub mod caps;
pub mod count;
pub mod error;
pub mod lattice;
pub mod morse;
pub mod spectral;
pub mod verifier;
pub mod vertex_set;

pub use caps::Caps;
pub use error::{Error, Result};
pub use lattice::{build_graph, FamilySpec, GridGraph, LatticePoint};
pub use vertex_set::VertexSet;

/// Gaussian integer `re + im·i`.
pub type GaussInt = num_complex::Complex<num_bigint::BigInt>;
/// Integer polynomial, ascending coefficients.
pub type IntPoly = spectral::Poly<num_bigint::BigInt>;
/// Polynomial with Gaussian-integer coefficients.
pub type GaussPoly = spectral::Poly<GaussInt>;
/// Dense Gaussian-integer matrix.
pub type GaussMatrix = spectral::Matrix<GaussInt>;
