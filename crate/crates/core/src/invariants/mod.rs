//! Numerical invariants and predicates of presented rings and maps.

mod diagram;
mod dim;
mod flat;
mod linear;
mod mu;
mod report;

pub use diagram::{base_change_square, square_rd, triangle_rd};
pub use dim::{cdim, computed_krull_dim, is_regular, krull_dim, Truth};
pub use flat::{fiber_ring, flatness_status, is_weakly_regular, DimensionWitness, FlatStatus, FlatWitness};
pub use linear::{
    delta, delta_phi, edim, fiber_edim, is_basically_regular, lin_space, linearized_map, rd,
    LinearizedMap,
};
pub use mu::{cotangent_ranks, eps2, minimal_presentation, mu, Stabilized};
pub use report::{InvariantReport, MapInvariants, RingInvariants};
