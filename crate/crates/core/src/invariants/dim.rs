//! Krull dimension on decidable classes of presentations.

use serde::Serialize;

use super::linear::edim;
use crate::algebra::{Monomial, Poly};
use crate::presentation::{linear_span, LocalRingPres};

/// A three-valued truth value; `Unknown` propagates and is never guessed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn known(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }

    pub fn is_true(self) -> bool {
        self == Truth::True
    }

    pub fn is_false(self) -> bool {
        self == Truth::False
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Unknown,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        }
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

impl From<Option<bool>> for Truth {
    fn from(b: Option<bool>) -> Truth {
        b.map_or(Truth::Unknown, Truth::from)
    }
}

/// Removes relations of the form `c*x_j + r` where `r` does not involve
/// `x_j`, substituting `x_j = -r/c` exactly. The result presents an
/// isomorphic local ring. Returns `(nvars, relations)`.
pub(crate) fn eliminate_exact_linear(nvars: usize, relations: &[Poly]) -> (usize, Vec<Poly>) {
    let mut n = nvars;
    let mut rels: Vec<Poly> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    while let Some((k, j)) = find_solvable(n, &rels) {
        let r = rels.remove(k);
        let xj = Monomial::var(n, j);
        let c = r.coefficient(&xj);
        let mut rest = r.clone();
        rest.add_term(xj, &-&c);
        let solved = rest.scale(&-&c.inv().expect("nonzero"));
        let images: Vec<Poly> = (0..n)
            .map(|i| if i == j { solved.clone() } else { Poly::var(r.field(), n, i) })
            .collect();
        rels = rels
            .iter()
            .map(|g| g.substitute(&images, n).expect("arity").remove_var(j))
            .filter(|g| !g.is_zero())
            .collect();
        n -= 1;
    }
    (n, rels)
}

/// A relation index and a variable occurring in it only as a linear term.
fn find_solvable(n: usize, rels: &[Poly]) -> Option<(usize, usize)> {
    rels.iter().enumerate().find_map(|(k, r)| {
        let lin = r.linear_coefficients();
        (0..n)
            .find(|&j| {
                let xj = Monomial::var(n, j);
                !lin[j].is_zero() && !r.terms().any(|(m, _)| m != &xj && m.exponents()[j] > 0)
            })
            .map(|j| (k, j))
    })
}

/// Smallest set of variables meeting the support of every monomial.
fn min_transversal(nvars: usize, monomials: &[&Monomial]) -> usize {
    let supports: Vec<u64> = monomials
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = nvars;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as usize;
        if size < best && supports.iter().all(|s| s & set != 0) {
            best = size;
        }
    }
    best
}

/// Krull dimension computed from the presentation alone, when the relations
/// fall in a decidable class after exact linear elimination.
pub fn computed_krull_dim(ring: &LocalRingPres) -> Option<usize> {
    let (n, rels) = eliminate_exact_linear(ring.nvars(), ring.relations());
    if rels.is_empty() {
        return Some(n);
    }
    if rels.len() == 1 {
        return Some(n - 1);
    }
    if linear_span(&rels, n, ring.field()).dim() == rels.len() {
        // linear parts independent: part of a regular system of parameters
        return Some(n - rels.len());
    }
    let monomials: Vec<&Monomial> =
        rels.iter().filter(|r| r.is_monomial()).map(|r| r.terms().next().unwrap().0).collect();
    if monomials.len() == rels.len() && n <= 20 {
        return Some(n - min_transversal(n, &monomials));
    }
    // a pure power of every variable among the relations: artinian
    if (0..n).all(|i| monomials.iter().any(|m| m.support().eq([i]))) {
        return Some(0);
    }
    None
}

/// Krull dimension: computed when decidable, else the recorded override.
pub fn krull_dim(ring: &LocalRingPres) -> Option<usize> {
    computed_krull_dim(ring).or(ring.dim_override())
}

/// `edim - dim`.
pub fn cdim(ring: &LocalRingPres) -> Option<usize> {
    krull_dim(ring).and_then(|d| edim(ring).checked_sub(d))
}

pub fn is_regular(ring: &LocalRingPres) -> Truth {
    krull_dim(ring).map(|d| d == edim(ring)).into()
}
