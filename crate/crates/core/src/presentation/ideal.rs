use std::fmt;
use std::sync::Arc;

use super::ring::Ring;
use crate::algebra::{Poly, Subspace};
use crate::error::{Error, Result};

/// A proper ideal `I ⊆ m` of a presented ring, given by generators.
#[derive(Clone, Debug)]
pub struct IdealPres {
    ring: Ring,
    gens: Vec<Poly>,
}

impl IdealPres {
    pub fn new(ring: Ring, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            if g.field() != ring.field() {
                return Err(Error::FieldMismatch(ring.field(), g.field()));
            }
            if g.nvars() != ring.nvars() {
                return Err(Error::ArityMismatch { expected: ring.nvars(), found: g.nvars() });
            }
            if !g.has_zero_constant_term() {
                return Err(Error::NonzeroConstantTerm {
                    what: format!("ideal generator `{}`", ring.display_poly(g)),
                });
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealPres { ring, gens })
    }

    pub fn zero(ring: Ring) -> Self {
        IdealPres { ring, gens: Vec::new() }
    }

    /// The maximal ideal `m`.
    pub fn maximal(ring: Ring) -> Self {
        let gens = ring.gens();
        IdealPres { ring, gens }
    }

    /// `m^k`, for `k >= 1`.
    pub fn maximal_power(ring: Ring, k: u32) -> Self {
        assert!(k >= 1, "m^0 is not proper");
        let gens = ring.max_power_gens(k);
        IdealPres { ring, gens }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The same generators over another ring in the same variables, e.g.
    /// `J/I` over `A/I`.
    pub fn over(&self, ring: Ring) -> Result<IdealPres> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        IdealPres::new(ring, self.gens.clone())
    }

    /// `I + J`.
    pub fn sum(&self, other: &IdealPres) -> Result<IdealPres> {
        if !self.ring.same_presentation(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(IdealPres { ring: Arc::clone(&self.ring), gens })
    }

    /// Whether `I ⊆ m^2`. Exact: `g ∈ m^2 + I_A` iff the linear part of `g`
    /// lies in the span of the linear parts of the relations.
    pub fn contained_in_m2(&self) -> bool {
        let lin = linear_span(self.ring.relations(), self.ring.nvars(), self.ring.field());
        self.gens.iter().all(|g| lin.contains_dense(&g.linear_coefficients()))
    }
}

pub(crate) fn linear_span(
    polys: &[Poly],
    nvars: usize,
    field: crate::algebra::FieldSpec,
) -> Subspace {
    let mut s = Subspace::new(field, nvars);
    for p in polys {
        s.insert_dense(&p.linear_coefficients());
    }
    s
}

impl fmt::Display for IdealPres {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> =
            self.gens.iter().map(|g| self.ring.display_poly(g).to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::presentation::LocalRingPres;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn contained_in_m2_examples() {
        let a = LocalRingPres::regular(Q, &["x", "y"], 6).unwrap().into_ring();
        let (x, y) = (a.var(0), a.var(1));
        let i = IdealPres::new(a.clone(), vec![&x * &x, &x * &y]).unwrap();
        assert!(i.contained_in_m2());
        let i = IdealPres::new(a.clone(), vec![x.clone()]).unwrap();
        assert!(!i.contained_in_m2());

        let b = LocalRingPres::new(Q, a.vars().to_vec(), vec![&x - &(&y * &y)], 6)
            .unwrap()
            .into_ring();
        let i = IdealPres::new(b, vec![x.clone()]).unwrap();
        assert!(i.contained_in_m2());
    }

    #[test]
    fn generators_must_be_local() {
        let a = LocalRingPres::regular(Q, &["x"], 6).unwrap().into_ring();
        let bad = &a.var(0) + &Poly::one(Q, 1);
        assert!(matches!(IdealPres::new(a, vec![bad]), Err(Error::NonzeroConstantTerm { .. })));
    }
}
