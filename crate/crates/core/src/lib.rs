pub mod applications;
pub mod bundles;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod index;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
