//! Exact computations with Novikov and pre-Novikov algebras, their
//! representations, bialgebras and Yang-Baxter solutions.

pub mod enumerate;
pub mod error;
pub mod io;
pub mod labels;
pub mod algebras;
pub mod bialgebra;
pub mod cli;
pub mod linalg;
pub mod matched;
pub mod render;
pub mod report;
pub mod representations;
pub mod scalar;
pub mod structure;
pub mod tensor;
pub mod yang_baxter;

pub use error::{Error, Result};
pub use labels::Identity;
pub use report::{BasisRef, Report, Violation};
pub use scalar::Scalar;
pub use structure::{apply_op, mult_matrix, placed_product, Side, StructureConstants};
pub use tensor::{dual_map, flip, permute3, DualMode, Element, LinMap, Perm3, SlotPattern, Tensor2, Tensor3};
