pub mod closure;
pub mod error;
pub mod groebner;
pub mod lattice;
pub mod poly;
pub mod polyhedra;
pub mod semigroup;
pub mod whitney;

pub use error::{Error, Result};
