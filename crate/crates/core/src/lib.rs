pub mod acceptance;
pub mod enriques;
pub mod fundcycle;
pub mod error;
pub mod gf2;
pub mod lattice;
pub mod par;
pub mod quadspace;
pub mod surface;
pub mod tables;
pub mod z4;

pub use error::{Error, Result};
