use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{FieldSpec, JetContext, Monomial, Poly, Subspace};
use crate::error::{Error, Result};

/// Default truncation degree for jet computations.
pub const DEFAULT_TRUNC_DEGREE: usize = 6;

/// Shared handle to a validated ring presentation.
pub type Ring = Arc<LocalRingPres>;

/// `K[x_1..x_n]` localized at `(x_1..x_n)`, modulo relations that lie in
/// the maximal ideal.
#[derive(Clone, Debug)]
pub struct LocalRingPres {
    field: FieldSpec,
    vars: Vec<String>,
    relations: Vec<Poly>,
    trunc_degree: usize,
    dim_override: Option<usize>,
}

impl LocalRingPres {
    pub fn new(
        field: FieldSpec,
        vars: Vec<String>,
        relations: Vec<Poly>,
        trunc_degree: usize,
    ) -> Result<Self> {
        if trunc_degree < 2 {
            return Err(Error::InvalidTruncation(trunc_degree));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        let mut kept = Vec::with_capacity(relations.len());
        for r in relations {
            if r.field() != field {
                return Err(Error::FieldMismatch(field, r.field()));
            }
            if r.nvars() != vars.len() {
                return Err(Error::ArityMismatch { expected: vars.len(), found: r.nvars() });
            }
            if !r.has_zero_constant_term() {
                return Err(Error::NonzeroConstantTerm {
                    what: format!("relation `{}`", r.display(&vars)),
                });
            }
            if !r.is_zero() {
                kept.push(r);
            }
        }
        Ok(LocalRingPres { field, vars, relations: kept, trunc_degree, dim_override: None })
    }

    /// The regular ring `K[x_1..x_n]` localized at the origin.
    pub fn regular(field: FieldSpec, vars: &[&str], trunc_degree: usize) -> Result<Self> {
        Self::new(field, vars.iter().map(|s| s.to_string()).collect(), Vec::new(), trunc_degree)
    }

    /// Records an externally known Krull dimension.
    pub fn with_dim_override(mut self, dim: usize) -> Self {
        self.dim_override = Some(dim);
        self
    }

    pub fn with_trunc_degree(mut self, trunc_degree: usize) -> Result<Self> {
        if trunc_degree < 2 {
            return Err(Error::InvalidTruncation(trunc_degree));
        }
        self.trunc_degree = trunc_degree;
        Ok(self)
    }

    pub fn into_ring(self) -> Ring {
        Arc::new(self)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn trunc_degree(&self) -> usize {
        self.trunc_degree
    }

    pub fn dim_override(&self) -> Option<usize> {
        self.dim_override
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.field, self.nvars(), i)
    }

    pub fn gens(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.field, self.nvars())
    }

    /// All monomials of degree `k`, generators of `m^k` for `k >= 1`.
    pub fn max_power_gens(&self, k: u32) -> Vec<Poly> {
        Monomial::all_of_degree(self.nvars(), k)
            .into_iter()
            .map(|m| Poly::monomial(self.field, m, self.field.one()))
            .collect()
    }

    pub fn jet(&self, degree: usize) -> Result<JetContext> {
        JetContext::new(self.field, self.nvars(), degree)
    }

    /// The defining ideal plus `m^N`, as a subspace of jets.
    pub fn relation_span(&self, degree: usize) -> Result<(JetContext, Subspace)> {
        let ctx = self.jet(degree)?;
        let span = ctx.ideal_span(&self.relations)?;
        Ok((ctx, span))
    }

    /// Same field, variables and relations (truncation and dimension
    /// annotations are ignored).
    pub fn same_presentation(&self, other: &LocalRingPres) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field
                && self.vars == other.vars
                && self.relations == other.relations)
    }

    pub fn display_poly<'a>(&'a self, p: &'a Poly) -> crate::algebra::PolyDisplay<'a> {
        p.display(&self.vars)
    }
}

impl fmt::Display for LocalRingPres {
    /// Session-language form, e.g. `local QQ[x,y]/(x*y)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "local {}[{}]", self.field, self.vars.join(","))?;
        let rels: Vec<String> =
            self.relations.iter().map(|r| r.display(&self.vars).to_string()).collect();
        write!(f, "/({})", rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn make_ring_examples() {
        let a = LocalRingPres::regular(Q, &["x", "y"], 6).unwrap();
        assert_eq!(a.nvars(), 2);
        assert!(a.relations().is_empty());

        let x = Poly::var(Q, 2, 0);
        let y = Poly::var(Q, 2, 1);
        let node = LocalRingPres::new(Q, names(&["x", "y"]), vec![&x * &y], 6).unwrap();
        assert_eq!(node.to_string(), "local QQ[x,y]/(x*y)");

        let x1 = Poly::var(Q, 1, 0);
        let bad = &x1 + &Poly::one(Q, 1);
        assert!(matches!(
            LocalRingPres::new(Q, names(&["x"]), vec![bad], 6),
            Err(Error::NonzeroConstantTerm { .. })
        ));
        assert_eq!(
            LocalRingPres::new(Q, names(&["x", "x"]), vec![], 6).unwrap_err(),
            Error::DuplicateVariable("x".into())
        );
        assert_eq!(
            LocalRingPres::new(Q, names(&["x"]), vec![], 1).unwrap_err(),
            Error::InvalidTruncation(1)
        );
    }

    #[test]
    fn zero_relations_are_dropped() {
        let r = LocalRingPres::new(Q, names(&["x"]), vec![Poly::zero(Q, 1)], 6).unwrap();
        assert!(r.relations().is_empty());
    }
}
