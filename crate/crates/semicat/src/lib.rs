//! Verification and computation toolkit for finitary k-linear semigroup
//! categories: exact validators for the category and tensor axioms,
//! unit-free adjunctions and duals, Day convolution with unit adjoining,
//! Perron-Frobenius decategorification, simple-transitivity analysis, and
//! module-category lifting.

pub mod field;
pub mod linalg;
pub mod par;

pub mod fincat;
pub mod semicat;
pub mod simplicity;

pub mod decat;
pub mod doc;
pub mod generate;
pub mod modlift;
pub mod presheaf;
pub mod unit;
pub mod rigidity;

pub use field::{FieldSpec, K};
pub use fincat::{CatPresentation, Fo, Mor};
pub use semicat::SemigroupData;
