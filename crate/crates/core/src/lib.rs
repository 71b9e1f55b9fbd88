pub mod cones;
pub mod einstein;
pub mod error;
pub mod identities;
pub mod limitset;
pub mod linalg;
pub mod monodromy;
pub mod report;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{CycloReal, RatInterval};
