//! Minimal numbers of generators via jets, and the second deviation.

use serde::Serialize;

use crate::algebra::{FieldSpec, JetContext, Poly};
use crate::error::Result;
use crate::presentation::{IdealPres, LocalRingPres};

/// A value computed modulo `m^N`, flagged stable when the same value is
/// obtained modulo `m^(N+1)` and `m^(N+2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilized {
    pub value: usize,
    pub stable: bool,
    pub degree: usize,
}

impl Stabilized {
    fn from_values(degree: usize, values: [usize; 3]) -> Stabilized {
        Stabilized {
            value: values[0],
            stable: values[1] == values[0] && values[2] == values[0],
            degree,
        }
    }

    pub fn stable_value(&self) -> Option<usize> {
        self.stable.then_some(self.value)
    }
}

/// Number of `gens` independent modulo `m * (gens) + (relations)` in the jet
/// algebra of degree `degree`.
fn mu_at(
    field: FieldSpec,
    nvars: usize,
    relations: &[Poly],
    gens: &[Poly],
    degree: usize,
) -> Result<usize> {
    let ctx = JetContext::new(field, nvars, degree)?;
    let mut w = ctx.ideal_span(relations)?;
    for g in gens {
        for row in ctx.multiples(g, 1) {
            w.insert(&row);
        }
    }
    let vectors: Vec<_> = gens.iter().map(|g| ctx.to_sparse(g)).collect();
    Ok(w.rank_modulo(vectors.iter()))
}

/// Dimension of the span of each family of elements of `I` in `I/mI`.
pub fn cotangent_ranks(
    ideal: &IdealPres,
    families: &[Vec<Poly>],
    degree: usize,
) -> Result<Vec<Stabilized>> {
    let ring = ideal.ring();
    let mut values = vec![[0; 3]; families.len()];
    for k in 0..3 {
        let ctx = JetContext::new(ring.field(), ring.nvars(), degree + k)?;
        let mut w = ctx.ideal_span(ring.relations())?;
        for g in ideal.gens() {
            for row in ctx.multiples(g, 1) {
                w.insert(&row);
            }
        }
        for (family, v) in families.iter().zip(values.iter_mut()) {
            let vectors: Vec<_> = family.iter().map(|g| ctx.to_sparse(g)).collect();
            v[k] = w.rank_modulo(vectors.iter());
        }
    }
    Ok(values.into_iter().map(|v| Stabilized::from_values(degree, v)).collect())
}

/// `mu_A(I) = dim_K I/mI`, computed at `degree`, `degree+1`, `degree+2`.
pub fn mu(ideal: &IdealPres, degree: usize) -> Result<Stabilized> {
    let ring = ideal.ring();
    let mut values = [0; 3];
    for (k, v) in values.iter_mut().enumerate() {
        *v = mu_at(ring.field(), ring.nvars(), ring.relations(), ideal.gens(), degree + k)?;
    }
    Ok(Stabilized::from_values(degree, values))
}

/// Eliminates variables against relations with nonzero linear part until
/// every remaining relation lies in the square of the maximal ideal.
/// Relations are computed modulo `(x)^degree`. Returns `(nvars, relations)`.
pub fn minimal_presentation(ring: &LocalRingPres, degree: usize) -> Result<(usize, Vec<Poly>)> {
    let field = ring.field();
    let mut n = ring.nvars();
    let mut rels: Vec<Poly> =
        ring.relations().iter().map(|r| r.truncate(degree)).filter(|r| !r.is_zero()).collect();
    loop {
        let pivot = rels.iter().enumerate().find_map(|(k, r)| {
            r.linear_coefficients().iter().position(|c| !c.is_zero()).map(|j| (k, j))
        });
        let Some((k, j)) = pivot else { break };
        let ctx = JetContext::new(field, n, degree)?;
        let r = rels.remove(k);
        let h = ctx.implicit_eliminate(&r, j)?;
        let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(field, n, i)).collect();
        images[j] = h;
        let mut next = Vec::with_capacity(rels.len());
        for g in &rels {
            let s = ctx.substitute_trunc(g, &images)?;
            if !s.is_zero() {
                next.push(s.remove_var(j));
            }
        }
        rels = next;
        n -= 1;
    }
    Ok((n, rels))
}

/// The second deviation, as the number of relations in a minimal
/// presentation of the completion. Each truncation degree is minimized
/// separately so the stability flag covers the elimination too.
pub fn eps2(ring: &LocalRingPres, degree: usize) -> Result<Stabilized> {
    let mut values = [0; 3];
    for (k, v) in values.iter_mut().enumerate() {
        let d = degree + k;
        let (n, rels) = minimal_presentation(ring, d)?;
        *v = mu_at(ring.field(), n, &[], &rels, d)?;
    }
    let mut out = Stabilized::from_values(degree, values);
    // ε₂ >= cdim; a smaller value means a relation of order above the
    // truncation was lost.
    if super::dim::cdim(ring).is_some_and(|c| out.value < c) {
        out.stable = false;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ring(vars: &[&str], rels: impl Fn(&[Poly]) -> Vec<Poly>) -> LocalRingPres {
        let n = vars.len();
        let xs: Vec<Poly> = (0..n).map(|i| Poly::var(Q, n, i)).collect();
        LocalRingPres::new(Q, vars.iter().map(|s| s.to_string()).collect(), rels(&xs), 6).unwrap()
    }

    #[test]
    fn eps2_below_cdim_is_unstable() {
        // x^9 = 0 is invisible at degree 6..8, but dim 0 < edim 1
        let a = ring(&["x"], |x| vec![x[0].pow(9)]);
        let e = eps2(&a, 6).unwrap();
        assert_eq!((e.value, e.stable), (0, false));
        assert_eq!(eps2(&a, 10).unwrap().stable_value(), Some(1));
    }

    #[test]
    fn mu_examples() {
        let a = ring(&["x", "y"], |_| vec![]).into_ring();
        let m = mu(&IdealPres::maximal(a.clone()), 6).unwrap();
        assert_eq!((m.value, m.stable), (2, true));
        let (x, y) = (a.var(0), a.var(1));
        let i = IdealPres::new(a.clone(), vec![&x * &x, &x * &y]).unwrap();
        let m = mu(&i, 6).unwrap();
        assert_eq!((m.value, m.stable), (2, true));
        let m = mu(&IdealPres::zero(a), 6).unwrap();
        assert_eq!((m.value, m.stable), (0, true));
    }

    #[test]
    fn mu_sees_relations() {
        // in K[x,y]/(x - y^2), the ideal (x, y^2) is generated by y^2
        let a = ring(&["x", "y"], |x| vec![&x[0] - &(&x[1] * &x[1])]).into_ring();
        let i = IdealPres::new(a.clone(), vec![a.var(0), &a.var(1) * &a.var(1)]).unwrap();
        assert_eq!(mu(&i, 6).unwrap().value, 1);
        assert_eq!(mu(&IdealPres::maximal(a), 6).unwrap().value, 1);
    }

    #[test]
    fn eps2_examples() {
        let e = eps2(&ring(&["x", "y"], |_| vec![]), 6).unwrap();
        assert_eq!((e.value, e.stable), (0, true));
        let e = eps2(&ring(&["x", "y"], |x| vec![&x[0] * &x[0], &x[0] * &x[1]]), 6).unwrap();
        assert_eq!((e.value, e.stable), (2, true));
        let r = ring(&["x", "y"], |x| vec![&x[0] - &(&x[1] * &x[1]), &x[0] * &x[0]]);
        let e = eps2(&r, 6).unwrap();
        assert_eq!((e.value, e.stable), (1, true));
        let (n, rels) = minimal_presentation(&r, 6).unwrap();
        assert_eq!(n, 1);
        assert_eq!(rels, vec![Poly::var(Q, 1, 0).pow(4)]);
    }

    #[test]
    fn eps2_of_regular_after_implicit_elimination() {
        let r = ring(&["x", "y"], |x| vec![&(&x[0] - &x[1]) - &(&x[0] * &x[1])]);
        let e = eps2(&r, 6).unwrap();
        assert_eq!((e.value, e.stable), (0, true));
    }
}
