//! Gegenbauer sequences at fixed points, gegenbadly approximable numbers and
//! spherical cap discrepancy.

pub mod cap;
pub mod certifier;
pub mod dd;
pub mod diophantine;
pub mod error;
pub mod gegenbauer;
pub mod order;
pub mod quadrature;
pub mod rng;
pub mod scaled;
pub mod stats;

pub use error::{Error, Result};
pub use order::OrderParam;
pub use scaled::ScaledValue;
