//! Singer-cyclic triangle presentations of Ã₂ groups: finite fields, the
//! Singer difference set, enumeration of invariant presentations, exact
//! abelianization, and regression against published tables.

pub mod abelian;
pub mod arith;
pub mod error;
pub mod gf;
pub mod plane;
pub mod tripres;

pub use error::{Error, Result};
pub mod tables;
