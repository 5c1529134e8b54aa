pub mod algebra;
pub mod braid;
pub mod constructions;
pub mod cover;
pub mod error;
pub mod format;
pub mod heegaard;
pub mod presentation;
pub mod surface;
pub mod tangle;
pub mod validate;

pub use error::{Error, Result};
