//! Linear algebra in the jet algebra `K[x]/(x)^N`.
//!
//! Every computation that needs more than linear parts (ideal membership,
//! minimal numbers of generators, truncated elimination) happens here, on the
//! finite basis of monomials of degree `< N`.

use std::collections::HashMap;

use super::field::FieldSpec;
use super::poly::{Monomial, Poly};
use super::subspace::{SparseVec, Subspace};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct JetContext {
    field: FieldSpec,
    nvars: usize,
    degree: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    degree_start: Vec<usize>,
}

impl JetContext {
    /// Jets of order `< degree` in `nvars` variables.
    pub fn new(field: FieldSpec, nvars: usize, degree: usize) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidTruncation(degree));
        }
        let mut basis = Vec::new();
        let mut degree_start = Vec::with_capacity(degree + 1);
        for d in 0..degree {
            degree_start.push(basis.len());
            basis.extend(Monomial::all_of_degree(nvars, d as u32));
        }
        degree_start.push(basis.len());
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(JetContext { field, nvars, degree, basis, index, degree_start })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monomials of degree `< N`, ascending graded-lex.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis monomials of total degree `< bound`.
    pub fn monomials_below(&self, bound: usize) -> &[Monomial] {
        &self.basis[..self.degree_start[bound.min(self.degree)]]
    }

    pub fn to_sparse(&self, p: &Poly) -> SparseVec {
        let mut v: SparseVec = p
            .terms()
            .filter_map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone())))
            .collect();
        v.sort_unstable_by_key(|(i, _)| *i);
        v
    }

    pub fn from_sparse(&self, v: &[(usize, super::Scalar)]) -> Poly {
        Poly::from_terms(
            self.field,
            self.nvars,
            v.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())),
        )
    }

    /// `u * g` as a jet vector.
    pub fn shifted(&self, g: &Poly, u: &Monomial) -> SparseVec {
        let mut v: SparseVec = g
            .terms()
            .filter_map(|(m, c)| self.index.get(&m.mul(u)).map(|&i| (i, c.clone())))
            .collect();
        v.sort_unstable_by_key(|(i, _)| *i);
        v
    }

    /// Product with every term of degree `>= N` discarded.
    pub fn mul_trunc(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m1, c1) in p.terms() {
            if m1.degree() as usize >= self.degree {
                break;
            }
            for (m2, c2) in q.terms() {
                if (m1.degree() + m2.degree()) as usize >= self.degree {
                    break;
                }
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    /// `p(images)` modulo `(x)^N`, where `p` is in `images.len()` variables
    /// and the images live in this context's variables.
    pub fn substitute_trunc(&self, p: &Poly, images: &[Poly]) -> Result<Poly> {
        if images.len() != p.nvars() {
            return Err(Error::ArityMismatch { expected: p.nvars(), found: images.len() });
        }
        if let Some(index) = images.iter().position(|g| !g.has_zero_constant_term()) {
            return Err(Error::NonlocalImage { index });
        }
        let one = Poly::one(self.field, self.nvars);
        let mut powers: Vec<Vec<Poly>> =
            images.iter().map(|g| vec![one.clone(), g.truncate(self.degree)]).collect();
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in p.terms() {
            // images lie in the maximal ideal, so high-degree monomials vanish
            if m.degree() as usize >= self.degree {
                break;
            }
            let mut t = Poly::constant(self.field, self.nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = self.mul_trunc(&powers[i][powers[i].len() - 1], &images[i]);
                    powers[i].push(next);
                }
                t = self.mul_trunc(&t, &powers[i][e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Jet rows `u * g` for all monomials `u` with `deg u >= min_shift`
    /// whose product can survive truncation.
    pub fn multiples(&self, g: &Poly, min_shift: usize) -> Vec<SparseVec> {
        let Some(ord) = g.order() else { return Vec::new() };
        let ord = ord as usize;
        if ord >= self.degree {
            return Vec::new();
        }
        let start = self.degree_start[min_shift.min(self.degree)];
        let end = self.degree_start[self.degree - ord];
        if start >= end {
            return Vec::new();
        }
        self.basis[start..end].iter().map(|u| self.shifted(g, u)).collect()
    }

    /// The image of `(gens) + (x)^N` in the jet algebra.
    pub fn ideal_span(&self, gens: &[Poly]) -> Result<Subspace> {
        let mut span = Subspace::new(self.field, self.dim());
        for g in gens {
            if !g.has_zero_constant_term() {
                return Err(Error::NonzeroConstantTerm { what: "ideal generator".into() });
            }
            for row in self.multiples(g, 0) {
                span.insert(&row);
                if span.is_full() {
                    return Ok(span);
                }
            }
        }
        Ok(span)
    }

    /// Solves `g = 0` for variable `var` modulo `(x)^N`.
    ///
    /// Returns `h`, free of `var`, with `g(x_var = h) = 0` up to degree `N`.
    /// Iterates `x_var <- x_var - g/c` where `c` is the linear coefficient;
    /// each round fixes at least one more degree.
    pub fn implicit_eliminate(&self, g: &Poly, var: usize) -> Result<Poly> {
        let c = g.coefficient(&Monomial::var(self.nvars, var));
        let Some(c_inv) = c.inv() else {
            return Err(Error::NotEliminable { var });
        };
        if !g.has_zero_constant_term() {
            return Err(Error::NonzeroConstantTerm { what: "eliminated relation".into() });
        }
        let mut images: Vec<Poly> =
            (0..self.nvars).map(|i| Poly::var(self.field, self.nvars, i)).collect();
        let mut h = Poly::zero(self.field, self.nvars);
        for _ in 0..=self.degree {
            images[var] = h.clone();
            let residual = self.substitute_trunc(g, &images)?;
            if residual.is_zero() {
                return Ok(h);
            }
            h = (&h - &residual.scale(&c_inv)).truncate(self.degree);
        }
        Err(Error::InternalInconsistency(format!(
            "elimination of variable {var} did not converge below degree {}",
            self.degree
        )))
    }
}
