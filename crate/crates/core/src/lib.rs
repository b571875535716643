//! Exact homological algebra over finite-dimensional commutative local
//! algebras: minimal free resolutions, syzygies and cosyzygies, transposes,
//! Ext, stable Hom and Tate cohomology, G-projectivity certification, and the
//! right/left approximation constructions, with a property-test runner.

pub mod algebra;
pub mod approx;
pub mod error;
pub mod field;
pub mod gtheory;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod report;
pub mod sequences;
pub mod stable;
pub mod verify;

pub use algebra::{LocalAlgebra, RingElement};
pub use error::{Error, Result};
pub use field::{FieldKind, Scalar};
pub use matrix::{Matrix, Subspace};
pub use module::{FinModule, FreeMatrix, HomSpace, ModuleHom};
