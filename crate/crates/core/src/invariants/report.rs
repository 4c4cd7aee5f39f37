use serde::Serialize;

use super::dim::{cdim, is_regular, krull_dim, Truth};
use super::flat::{fiber_ring, flatness_status, FlatStatus};
use super::linear::{delta, delta_phi, edim, rd};
use super::mu::{eps2, mu, Stabilized};
use crate::error::Result;
use crate::presentation::{IdealPres, LocalMapPres, Ring};

#[derive(Clone, Debug, Serialize)]
pub struct RingInvariants {
    pub edim: usize,
    pub dim: Option<usize>,
    pub cdim: Option<usize>,
    pub regular: Truth,
    pub mu_maximal: Stabilized,
    pub eps2: Stabilized,
}

impl RingInvariants {
    pub fn compute(ring: &Ring, degree: usize) -> Result<RingInvariants> {
        Ok(RingInvariants {
            edim: edim(ring),
            dim: krull_dim(ring),
            cdim: cdim(ring),
            regular: is_regular(ring),
            mu_maximal: mu(&IdealPres::maximal(ring.clone()), degree)?,
            eps2: eps2(ring, degree)?,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MapInvariants {
    pub rd: usize,
    pub delta_maximal: usize,
    pub delta_phi_maximal: usize,
    pub basically_regular: bool,
    pub flat: FlatStatus,
    pub weakly_regular: Truth,
}

/// Everything computable about a ring or a map; for a map the source,
/// target and closed fiber are reported as rings.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub rings: Vec<(String, RingInvariants)>,
    pub map: Option<MapInvariants>,
}

impl InvariantReport {
    pub fn for_ring(ring: &Ring, degree: usize) -> Result<InvariantReport> {
        Ok(InvariantReport {
            rings: vec![("ring".into(), RingInvariants::compute(ring, degree)?)],
            map: None,
        })
    }

    pub fn for_map(map: &LocalMapPres, degree: usize) -> Result<InvariantReport> {
        let fiber = fiber_ring(map)?;
        let rings = vec![
            ("source".into(), RingInvariants::compute(map.source(), degree)?),
            ("target".into(), RingInvariants::compute(map.target(), degree)?),
            ("fiber".into(), RingInvariants::compute(&fiber, degree)?),
        ];
        let m = IdealPres::maximal(map.source().clone());
        let rd = rd(map)?;
        let flat = flatness_status(map)?;
        let weakly_regular = flat.truth().and(rings[2].1.regular);
        Ok(InvariantReport {
            map: Some(MapInvariants {
                rd,
                delta_maximal: delta(&m),
                delta_phi_maximal: delta_phi(map, &m)?,
                basically_regular: rd == 0,
                flat,
                weakly_regular,
            }),
            rings,
        })
    }
}
