//! Minimal generating sets for the semi-invariants of a quiver in dimension
//! vector `(2, ..., 2)`: path combinatorics on the doubled quiver, exact
//! symbolic matrices, and a graded linear-algebra oracle that checks
//! decomposability.

pub mod enumerate;
pub mod error;
pub mod field;
pub mod quiver;
pub mod symalg;
pub mod treelike;
pub mod verify;

pub use error::{Error, Result};
pub use field::FieldSpec;
pub use quiver::{ArrowId, ArrowRef, Multidegree, PathWord, Quiver, VertexId};
