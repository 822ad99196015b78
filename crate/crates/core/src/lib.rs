//! Finite-dimensional corings, comodules and firm rings over exact fields,
//! with decision procedures for Galois and comonadic-Galois comodules.

pub mod algebra;
pub mod coring;
pub mod error;
pub mod exactlin;
pub mod field;
pub mod firm;
pub mod galois;
pub mod report;

pub use error::{Error, Result};
pub use field::{FieldKind, Field, Fp, PrimeField, Rationals};
pub use report::{CheckOutcome, Status, ValidationReport, Witness};

pub type QMatrix = exactlin::Matrix<Rationals>;
pub type FpMatrix = exactlin::Matrix<PrimeField>;
