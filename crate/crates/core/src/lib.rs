//! Rees algebras, fiber cones, generic Bourbaki ideals and iterated Jacobian
//! duals of finitely generated graded modules over polynomial rings.

pub mod bourbaki;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod input;
pub mod jacdual;
pub mod matrix;
pub mod modpres;
pub mod polycore;
pub mod reescore;
pub mod verify;

pub use error::{Error, Result};
pub use field::FieldSpec;
