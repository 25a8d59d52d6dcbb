//! Exact construction of strict star products on semisimple coadjoint orbits,
//! with the deformation parameter kept symbolic.

pub mod algebra_core;
pub mod lie_structure;
pub mod enveloping;
pub mod twist;
pub mod starprod;
pub mod analysis;
pub mod cli;
pub mod error;

pub use error::{Error, Result};
