//! Algebras, bimodules, tensor products over an algebra and hom spaces.

#[allow(clippy::module_inception)]
mod algebra;
mod bimodule;
mod hom;
mod tensor;

pub use algebra::{matrix_unit, same_algebra, Algebra};
pub use bimodule::{left_linearity_failure, right_linearity_failure, Bimodule, ModuleMap};
pub use hom::{Dual, HomSpace, Linearity};
pub use tensor::{reassociate, reassociate_inverse, Tensor};

pub(crate) use algebra::unit_vector;
