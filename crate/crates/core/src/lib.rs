//! Regularity defects of local ring homomorphisms, computed exactly on
//! polynomial presentations.
//!
//! A local ring is presented as `K[x_1..x_n]` localized at the origin modulo
//! relations without constant term. Everything first-order (embedding
//! dimension, `delta`, the regularity defect `rd`) is exact linear algebra on
//! linear parts; higher-order invariants (`mu`, `eps2`) use jets of bounded
//! order and report whether the value was stable under raising the order.

pub mod algebra;
pub mod error;
pub mod invariants;
pub mod presentation;
pub mod verify;

pub use error::{Error, Result};
