//! Sparse multivariate polynomials with graded-lexicographic term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// All monomials in `nvars` variables of total degree exactly `d`,
    /// in ascending graded-lex order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fill(&mut out, &mut cur, 0, d);
        out.sort();
        out
    }
}

fn fill(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(Monomial(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in 0..=left {
        cur[pos] = e;
        fill(out, cur, pos + 1, left - e);
    }
    cur[pos] = 0;
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// first variable, then the second, and so on.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over an exact field in a fixed number of variables.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Poly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, Monomial::one(nvars), c)
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let mut p = Poly::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms(
        field: FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, &c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(field: FieldSpec, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Poly::from_terms(
            field,
            n,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn has_zero_constant_term(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Lowest total degree of a term (`None` for zero).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Degree-one coefficients, read without any checks.
    pub fn linear_coefficients(&self) -> Vec<Scalar> {
        (0..self.nvars)
            .map(|i| self.coefficient(&Monomial::var(self.nvars, i)))
            .collect()
    }

    /// Class of the polynomial in `m/m^2`, as a coefficient vector.
    pub fn linear_part(&self) -> Result<Vec<Scalar>> {
        if !self.has_zero_constant_term() {
            return Err(Error::NonzeroConstantTerm { what: "polynomial".into() });
        }
        Ok(self.linear_coefficients())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, u: &Monomial) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.mul(u), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term of total degree `>= n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (m.degree() as usize) < n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact substitution `x_i -> images[i]`; the result lives in
    /// `target_nvars` variables.
    pub fn substitute(&self, images: &[Poly], target_nvars: usize) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: images.len() });
        }
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|g| vec![Poly::one(self.field, target_nvars), g.clone()])
            .collect();
        let mut out = Poly::zero(self.field, target_nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(self.field, target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Embeds into `nvars` variables by appending unused variables.
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        Poly {
            field: self.field,
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Deletes variable `var`, which must not occur.
    pub fn remove_var(&self, var: usize) -> Poly {
        debug_assert!(!self.involves(var));
        Poly {
            field: self.field,
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.remove(var);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-self.field.one())
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    /// Leading term first, e.g. `x^2*y - 1/2*x + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    let name = self.names.get(i).map(String::as_str).unwrap_or("?");
                    if *e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_order() {
        let x = Monomial::new(vec![1, 0]);
        let y = Monomial::new(vec![0, 1]);
        let xy = Monomial::new(vec![1, 1]);
        let y2 = Monomial::new(vec![0, 2]);
        assert!(y < x);
        assert!(x < y2);
        assert!(y2 < xy);
        assert_eq!(
            Monomial::all_of_degree(2, 2),
            vec![Monomial::new(vec![0, 2]), Monomial::new(vec![1, 1]), Monomial::new(vec![2, 0])]
        );
        assert_eq!(Monomial::all_of_degree(0, 0), vec![Monomial::new(vec![])]);
        assert!(Monomial::all_of_degree(0, 1).is_empty());
    }

    #[test]
    fn linear_part_examples() {
        let f = q();
        let x = Poly::var(f, 2, 0);
        let y = Poly::var(f, 2, 1);
        let p = &x + &(&y * &y);
        assert_eq!(p.linear_part().unwrap(), vec![f.one(), f.zero()]);
        assert_eq!((&x * &y).linear_part().unwrap(), vec![f.zero(), f.zero()]);
        let p = &x.scale(&f.from_i64(3)) - &y.scale(&f.from_i64(2));
        assert_eq!(p.linear_part().unwrap(), vec![f.from_i64(3), f.from_i64(-2)]);
        let p = &x + &Poly::one(f, 2);
        assert!(matches!(p.linear_part(), Err(Error::NonzeroConstantTerm { .. })));
    }

    #[test]
    fn substitution_and_display() {
        let f = q();
        let x = Poly::var(f, 2, 0);
        let y = Poly::var(f, 2, 1);
        let p = &x + &y;
        let u = Poly::var(f, 2, 0);
        let v = Poly::var(f, 2, 1);
        let img = [&u * &u, &u + &v];
        let r = p.substitute(&img, 2).unwrap();
        assert_eq!(r.display(&names(&["u", "v"])).to_string(), "u^2 + u + v");
        let r = (&x - &Poly::one(f, 2)).scale(&f.from_i64(2).inv().unwrap());
        assert_eq!(r.display(&names(&["x", "y"])).to_string(), "1/2*x - 1/2");
        assert_eq!(Poly::zero(f, 1).display(&names(&["x"])).to_string(), "0");
    }

    #[test]
    fn prime_field_display_uses_residues() {
        let f = FieldSpec::PrimeField(5);
        let x = Poly::var(f, 1, 0);
        let p = -&x;
        assert_eq!(p.display(&names(&["x"])).to_string(), "4*x");
    }

    #[test]
    fn order_and_degree() {
        let f = q();
        let x = Poly::var(f, 1, 0);
        let p = &(&x * &x) + &x.pow(3);
        assert_eq!(p.order(), Some(2));
        assert_eq!(p.degree(), Some(3));
        assert_eq!(Poly::zero(f, 1).order(), None);
        assert_eq!(p.truncate(3), &x * &x);
    }
}
