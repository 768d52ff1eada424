//! qslab: a symbolic and numeric laboratory for the q-deformed symplectic
//! spheres S^7_q and S^4_q, the U_q(so(5)) symmetry action, chiral spinor
//! modules, a twisted Dirac operator and its real structure.
//!
//! Everything structural is verified exactly over the field Q(s), s = q^{1/2},
//! on degree truncations; numeric mode (a concrete 0 < q < 1) is used only for
//! Gram positivity and finite-section spectra.

pub mod claims;
pub mod dirac;
pub mod error;
pub mod haar;
pub mod lab;
pub mod linalg;
pub mod ncpoly;
pub mod preset;
pub mod qgroup;
pub mod scalar;
pub mod spheres;
pub mod spinors;

pub use error::QslabError;
pub use lab::Lab;
pub use ncpoly::{NCPoly, RewriteSystem, Word};
pub use scalar::{NumericScalar, ScalarQ};
pub use spinors::{Chirality, SpinorVec};
