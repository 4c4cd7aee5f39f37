//! Presented local rings, ideals, local homomorphisms and diagrams.

mod diagram;
mod ideal;
mod map;
mod ring;

pub use diagram::{DiagramKind, DiagramShape, Orientation, Square, Triangle};
pub(crate) use ideal::linear_span;
pub use ideal::IdealPres;
pub use map::{
    adjoin_variables, compose, coordinate_change, maps_agree, monic_degree, monic_extension,
    quotient, LocalMapPres, Provenance,
};
pub use ring::{LocalRingPres, Ring, DEFAULT_TRUNC_DEGREE};
