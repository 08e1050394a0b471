//! Exact computations with templicial objects over finite-data monoidal
//! base categories.

pub mod cosmos;
pub mod error;
pub mod functors;
pub mod necklace;
pub mod quasicheck;
pub mod quiver;
pub mod simplexcat;
pub mod sset;
pub mod templicial;

pub use error::{Error, Result};
