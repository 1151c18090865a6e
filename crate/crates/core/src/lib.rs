//! Exact twisted cohomology of surface groups with determinant cocycles,
//! winding-number framings and volume forms on character varieties.

pub mod error;
pub mod cocycles;
pub mod laurent;
pub mod linalg;
pub mod mapping;
pub mod verify;
pub mod volume;
pub mod winding;
pub mod words;

pub use error::{Error, Result};
