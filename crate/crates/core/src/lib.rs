//! Exact weak Hopf algebras with weak group actions, their strictification,
//! module-category comparisons, ribbon transfer and an obstruction search.

pub mod action;
pub mod algebra;
pub mod document;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod module;
pub mod obstruction;
pub mod ribbon;
pub mod strict;
pub mod suite;
pub mod tensor;
pub mod verdict;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{Matrix, Vector};
