//! Structural flatness witnesses and the dimension obstruction.

use serde::Serialize;

use super::dim::{computed_krull_dim, is_regular, krull_dim, Truth};
use crate::algebra::Matrix;
use crate::error::Result;
use crate::presentation::{monic_degree, LocalMapPres, Provenance, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatWitness {
    Identity,
    VariableAdjunction,
    MonicExtension,
    CoordinateChange,
    Composite(Box<FlatWitness>, Box<FlatWitness>),
}

/// `dim B != dim A + dim B/mB`, which rules out flatness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionWitness {
    pub dim_source: usize,
    pub dim_target: usize,
    pub dim_fiber: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatStatus {
    Flat(FlatWitness),
    NotFlat(DimensionWitness),
    Unknown,
}

impl FlatStatus {
    pub fn truth(&self) -> Truth {
        match self {
            FlatStatus::Flat(_) => Truth::True,
            FlatStatus::NotFlat(_) => Truth::False,
            FlatStatus::Unknown => Truth::Unknown,
        }
    }
}

fn is_identity_images(map: &LocalMapPres) -> bool {
    map.images().iter().enumerate().all(|(i, g)| {
        let mut e = vec![0; g.nvars()];
        e[i] = 1;
        g.num_terms() == 1 && g.coefficient(&crate::algebra::Monomial::new(e)).is_one()
    })
}

/// Looks for a structural witness in the presentation data; composites are
/// flat when both factors are. Also returns the Krull dimension of the
/// closed fiber, which each witness determines.
fn structural_witness(map: &LocalMapPres) -> Option<(FlatWitness, usize)> {
    let (source, target) = (map.source(), map.target());
    let n = source.nvars();
    let lifted = || source.relations().iter().map(|r| r.extend_vars(target.nvars()));
    let identity_images = target.nvars() >= n && is_identity_images(map);
    if identity_images && source.same_presentation(target) {
        return Some((FlatWitness::Identity, 0));
    }
    let rels = target.relations();
    if identity_images
        && rels.len() == source.relations().len()
        && lifted().zip(rels).all(|(a, b)| &a == b)
    {
        return Some((FlatWitness::VariableAdjunction, target.nvars() - n));
    }
    if identity_images
        && target.nvars() == n + 1
        && rels.len() == source.relations().len() + 1
        && lifted().zip(rels).all(|(a, b)| &a == b)
        && monic_degree(rels.last().unwrap()).is_some()
    {
        return Some((FlatWitness::MonicExtension, 0));
    }
    if target.nvars() == n && rels.len() == source.relations().len() {
        let rows = map.images().iter().map(|g| g.linear_coefficients()).collect();
        if Matrix::from_rows(source.field(), n, rows).rank() == n
            && source
                .relations()
                .iter()
                .zip(rels)
                .all(|(g, t)| map.apply(g).map(|s| &s == t).unwrap_or(false))
        {
            return Some((FlatWitness::CoordinateChange, 0));
        }
    }
    if let Provenance::Composite(first, second) = map.provenance() {
        let (a, da) = structural_witness(first)?;
        let (b, db) = structural_witness(second)?;
        return Some((FlatWitness::Composite(Box::new(a), Box::new(b)), da + db));
    }
    None
}

pub fn flatness_status(map: &LocalMapPres) -> Result<FlatStatus> {
    if let Some((w, _)) = structural_witness(map) {
        return Ok(FlatStatus::Flat(w));
    }
    let fiber = map.closed_fiber()?;
    if let (Some(a), Some(b), Some(f)) =
        (krull_dim(map.source()), krull_dim(map.target()), krull_dim(&fiber))
    {
        if b != a + f {
            return Ok(FlatStatus::NotFlat(DimensionWitness {
                dim_source: a,
                dim_target: b,
                dim_fiber: f,
            }));
        }
    }
    Ok(FlatStatus::Unknown)
}

/// The closed fiber `B/mB`. When the presentation alone does not decide its
/// dimension but a flatness witness does, the dimension is recorded on it.
pub fn fiber_ring(map: &LocalMapPres) -> Result<Ring> {
    let fiber = map.closed_fiber()?;
    if computed_krull_dim(&fiber).is_some() {
        return Ok(fiber);
    }
    Ok(match structural_witness(map) {
        Some((_, d)) => (*fiber).clone().with_dim_override(d).into_ring(),
        None => fiber,
    })
}

/// Flat with regular closed fiber.
pub fn is_weakly_regular(map: &LocalMapPres) -> Result<Truth> {
    let flat = flatness_status(map)?.truth();
    let fiber = fiber_ring(map)?;
    Ok(flat.and(is_regular(&fiber)))
}
