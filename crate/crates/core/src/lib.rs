// Index loops mirror the formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod fmod;
pub mod linalg;
pub mod quiver;
pub mod random;
pub mod strata;

pub use error::{Error, Result};
