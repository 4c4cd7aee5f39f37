use std::sync::Arc;

use super::ideal::IdealPres;
use super::ring::{LocalRingPres, Ring};
use crate::algebra::{Matrix, Poly};
use crate::error::{Error, Result};

/// How a map was constructed. Structural flatness witnesses are read from
/// here and re-verified against the presentation data.
#[derive(Clone, Debug)]
pub enum Provenance {
    General,
    Identity,
    /// Canonical surjection `A -> A/I`.
    Surjection,
    /// `A -> A[y_1..y_k]`, `x -> x`, no new relations.
    VariableAdjunction,
    /// `A -> A[y]/(f)` with `f` monic in `y`.
    MonicExtension,
    /// `z -> sigma(z)` with invertible linear part, relations transported.
    CoordinateChange,
    /// `A/I -> B/J` induced by another map.
    Induced,
    /// `second ∘ first`.
    Composite(Arc<LocalMapPres>, Arc<LocalMapPres>),
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::General => "general",
            Provenance::Identity => "identity",
            Provenance::Surjection => "surjection",
            Provenance::VariableAdjunction => "variable-adjunction",
            Provenance::MonicExtension => "monic-extension",
            Provenance::CoordinateChange => "coordinate-change",
            Provenance::Induced => "induced",
            Provenance::Composite(..) => "composite",
        }
    }
}

/// A local homomorphism `A -> B` given by the images of the variables of `A`.
#[derive(Clone, Debug)]
pub struct LocalMapPres {
    source: Ring,
    target: Ring,
    images: Vec<Poly>,
    verified_degree: usize,
    provenance: Provenance,
}

impl LocalMapPres {
    /// Validates locality and that every source relation is sent into the
    /// target's defining ideal modulo `n^degree`.
    pub fn new(source: Ring, target: Ring, images: Vec<Poly>, degree: usize) -> Result<Self> {
        Self::build(source, target, images, degree, Provenance::General)
    }

    fn build(
        source: Ring,
        target: Ring,
        images: Vec<Poly>,
        degree: usize,
        provenance: Provenance,
    ) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        if degree < 2 {
            return Err(Error::InvalidTruncation(degree));
        }
        if images.len() != source.nvars() {
            return Err(Error::ArityMismatch { expected: source.nvars(), found: images.len() });
        }
        for (index, g) in images.iter().enumerate() {
            if g.field() != target.field() {
                return Err(Error::FieldMismatch(target.field(), g.field()));
            }
            if g.nvars() != target.nvars() {
                return Err(Error::ArityMismatch { expected: target.nvars(), found: g.nvars() });
            }
            if !g.has_zero_constant_term() {
                return Err(Error::NonlocalImage { index });
            }
        }
        check_well_defined(&source, &target, &images, degree)?;
        Ok(LocalMapPres { source, target, images, verified_degree: degree, provenance })
    }

    pub fn identity(ring: Ring) -> Self {
        let images = ring.gens();
        let degree = ring.trunc_degree();
        LocalMapPres {
            source: Arc::clone(&ring),
            target: ring,
            images,
            verified_degree: degree,
            provenance: Provenance::Identity,
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn verified_degree(&self) -> usize {
        self.verified_degree
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `φ(p)` computed exactly.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        p.substitute(&self.images, self.target.nvars())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LocalMapPres) -> Result<LocalMapPres> {
        compose(self, next)
    }

    /// The extended ideal `IB`.
    pub fn extend_ideal(&self, ideal: &IdealPres) -> Result<IdealPres> {
        if !ideal.ring().same_presentation(&self.source) {
            return Err(Error::RingMismatch);
        }
        let gens = ideal.gens().iter().map(|g| self.apply(g)).collect::<Result<Vec<_>>>()?;
        IdealPres::new(Arc::clone(&self.target), gens)
    }

    /// `mB`, generated by the images of the variables.
    pub fn fiber_ideal(&self) -> IdealPres {
        IdealPres::new(Arc::clone(&self.target), self.images.clone())
            .expect("images are validated local")
    }

    /// The closed fiber `B/mB`.
    pub fn closed_fiber(&self) -> Result<Ring> {
        Ok(quotient(&self.target, &self.fiber_ideal())?.0)
    }

    /// `φ_I : A/I -> B/IB`.
    pub fn induced(&self, ideal: &IdealPres) -> Result<LocalMapPres> {
        let extended = self.extend_ideal(ideal)?;
        let (target, _) = quotient(&self.target, &extended)?;
        self.induced_into(ideal, target)
    }

    /// The map `A/I -> target` with the same images, where `target` is a
    /// quotient of `B` containing `IB`; validated like any other map.
    pub fn induced_into(&self, ideal: &IdealPres, target: Ring) -> Result<LocalMapPres> {
        let (source, _) = quotient(&self.source, ideal)?;
        Self::build(source, target, self.images.clone(), self.verified_degree, Provenance::Induced)
    }

    /// Matrix of linear parts of the images (rows: source variables).
    pub fn linear_matrix(&self) -> Matrix {
        let rows = self.images.iter().map(|g| g.linear_coefficients()).collect();
        Matrix::from_rows(self.source.field(), self.target.nvars(), rows)
    }
}

/// Checks `g(images) ∈ I_B + n^degree` for every source relation `g`.
fn check_well_defined(
    source: &LocalRingPres,
    target: &LocalRingPres,
    images: &[Poly],
    degree: usize,
) -> Result<()> {
    let mut span = None;
    for g in source.relations() {
        let image = g.substitute(images, target.nvars())?;
        if image.is_zero() || is_multiple_of_relation(&image, target.relations()) {
            continue;
        }
        if span.is_none() {
            span = Some(target.relation_span(degree)?);
        }
        let (ctx, s) = span.as_ref().unwrap();
        if !s.contains(&ctx.to_sparse(&image)) {
            return Err(Error::NotWellDefinedAtDegree {
                degree,
                relation: source.display_poly(g).to_string(),
            });
        }
    }
    Ok(())
}

fn is_multiple_of_relation(p: &Poly, relations: &[Poly]) -> bool {
    let Some((m, c)) = p.terms().next_back() else { return true };
    relations.iter().any(|r| {
        let rc = r.coefficient(m);
        match rc.inv() {
            Some(inv) => &r.scale(&(c * &inv)) == p,
            None => false,
        }
    })
}

/// `A -> A/I` together with the quotient presentation.
pub fn quotient(ring: &Ring, ideal: &IdealPres) -> Result<(Ring, LocalMapPres)> {
    if !ideal.ring().same_presentation(ring) {
        return Err(Error::RingMismatch);
    }
    let mut relations: Vec<Poly> = ring.relations().to_vec();
    for g in ideal.gens() {
        if !relations.contains(g) {
            relations.push(g.clone());
        }
    }
    let quotient = if relations.len() == ring.relations().len() {
        Arc::clone(ring)
    } else {
        LocalRingPres::new(ring.field(), ring.vars().to_vec(), relations, ring.trunc_degree())?
            .into_ring()
    };
    let map = LocalMapPres {
        source: Arc::clone(ring),
        target: Arc::clone(&quotient),
        images: ring.gens(),
        verified_degree: ring.trunc_degree(),
        provenance: Provenance::Surjection,
    };
    Ok((quotient, map))
}

/// `ψ ∘ φ` for `φ: A -> B`, `ψ: B -> C`. Images are composed exactly.
pub fn compose(first: &LocalMapPres, second: &LocalMapPres) -> Result<LocalMapPres> {
    if !first.target.same_presentation(&second.source) {
        return Err(Error::CompositionMismatch(format!(
            "target {} differs from source {}",
            first.target, second.source
        )));
    }
    let images =
        first.images.iter().map(|g| second.apply(g)).collect::<Result<Vec<_>>>()?;
    let degree = first.verified_degree.min(second.verified_degree);
    LocalMapPres::build(
        Arc::clone(&first.source),
        Arc::clone(&second.target),
        images,
        degree,
        Provenance::Composite(Arc::new(first.clone()), Arc::new(second.clone())),
    )
}

/// `A -> A[y_1..y_k]` localized, sending each variable to itself.
pub fn adjoin_variables(ring: &Ring, names: &[String]) -> Result<(Ring, LocalMapPres)> {
    let n = ring.nvars() + names.len();
    let mut vars = ring.vars().to_vec();
    vars.extend(names.iter().cloned());
    let relations = ring.relations().iter().map(|r| r.extend_vars(n)).collect();
    let mut target = LocalRingPres::new(ring.field(), vars, relations, ring.trunc_degree())?;
    if let Some(d) = crate::invariants::krull_dim(ring) {
        target = target.with_dim_override(d + names.len());
    }
    let target = target.into_ring();
    let images = (0..ring.nvars()).map(|i| Poly::var(ring.field(), n, i)).collect();
    let map = LocalMapPres::build(
        Arc::clone(ring),
        target.clone(),
        images,
        ring.trunc_degree(),
        Provenance::VariableAdjunction,
    )?;
    Ok((target, map))
}

/// Returns the degree `d` if `f` is `y^d + (lower powers of y with
/// coefficients in the other variables)`, where `y` is the last variable.
pub fn monic_degree(f: &Poly) -> Option<u32> {
    let y = f.nvars().checked_sub(1)?;
    let d = f.terms().map(|(m, _)| m.exponents()[y]).max()?;
    if d == 0 {
        return None;
    }
    let mut top = f.terms().filter(|(m, _)| m.exponents()[y] == d);
    let (m, c) = top.next()?;
    let pure = m.exponents().iter().enumerate().all(|(i, &e)| if i == y { e == d } else { e == 0 });
    (top.next().is_none() && pure && c.is_one()).then_some(d)
}

/// `A -> A[y]/(f)` localized at the origin, with `f` monic in the new
/// variable `y` (the last variable of `f`). Finite free, hence flat.
pub fn monic_extension(ring: &Ring, name: &str, f: Poly) -> Result<(Ring, LocalMapPres)> {
    let n = ring.nvars() + 1;
    if f.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, found: f.nvars() });
    }
    if monic_degree(&f).is_none() {
        return Err(Error::InternalInconsistency("extension polynomial is not monic".into()));
    }
    let mut vars = ring.vars().to_vec();
    vars.push(name.to_string());
    let mut relations: Vec<Poly> = ring.relations().iter().map(|r| r.extend_vars(n)).collect();
    relations.push(f);
    let mut target = LocalRingPres::new(ring.field(), vars, relations, ring.trunc_degree())?;
    if let Some(d) = crate::invariants::krull_dim(ring) {
        target = target.with_dim_override(d);
    }
    let target = target.into_ring();
    let images = (0..ring.nvars()).map(|i| Poly::var(ring.field(), n, i)).collect();
    let map = LocalMapPres::build(
        Arc::clone(ring),
        target.clone(),
        images,
        ring.trunc_degree(),
        Provenance::MonicExtension,
    )?;
    Ok((target, map))
}

/// `B -> B'` with `z -> sigma(z)`, where `sigma` has invertible linear part
/// and `B'` carries the transported relations `sigma(g)`.
pub fn coordinate_change(ring: &Ring, sigma: Vec<Poly>) -> Result<(Ring, LocalMapPres)> {
    let n = ring.nvars();
    if sigma.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: sigma.len() });
    }
    let rows: Vec<_> = sigma.iter().map(|g| g.linear_coefficients()).collect();
    if Matrix::from_rows(ring.field(), n, rows).rank() != n {
        return Err(Error::InternalInconsistency(
            "coordinate change has singular linear part".into(),
        ));
    }
    let relations =
        ring.relations().iter().map(|g| g.substitute(&sigma, n)).collect::<Result<Vec<_>>>()?;
    let mut target =
        LocalRingPres::new(ring.field(), ring.vars().to_vec(), relations, ring.trunc_degree())?;
    if let Some(d) = crate::invariants::krull_dim(ring) {
        target = target.with_dim_override(d);
    }
    let target = target.into_ring();
    let map = LocalMapPres::build(
        Arc::clone(ring),
        target.clone(),
        sigma,
        ring.trunc_degree(),
        Provenance::CoordinateChange,
    )?;
    Ok((target, map))
}

/// Whether two maps with common endpoints agree modulo `I_D + n^degree`.
pub fn maps_agree(f: &LocalMapPres, g: &LocalMapPres, degree: usize) -> Result<bool> {
    if !f.source.same_presentation(&g.source) || !f.target.same_presentation(&g.target) {
        return Err(Error::CompositionMismatch("maps have different endpoints".into()));
    }
    let diffs: Vec<Poly> = f
        .images
        .iter()
        .zip(&g.images)
        .map(|(a, b)| a - b)
        .filter(|d| !d.is_zero())
        .collect();
    if diffs.is_empty() {
        return Ok(true);
    }
    let (ctx, span) = f.target.relation_span(degree)?;
    Ok(diffs.iter().all(|d| span.contains(&ctx.to_sparse(d))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ring(vars: &[&str], rels: impl Fn(&[Poly]) -> Vec<Poly>) -> Ring {
        let n = vars.len();
        let xs: Vec<Poly> = (0..n).map(|i| Poly::var(Q, n, i)).collect();
        LocalRingPres::new(Q, vars.iter().map(|s| s.to_string()).collect(), rels(&xs), 6)
            .unwrap()
            .into_ring()
    }

    #[test]
    fn make_map_examples() {
        let t = ring(&["t"], |_| vec![]);
        let y = ring(&["y"], |_| vec![]);
        let yv = y.var(0);
        assert!(LocalMapPres::new(t, y.clone(), vec![&yv * &yv], 6).is_ok());

        let a = ring(&["x"], |x| vec![&x[0] * &x[0]]);
        let err = LocalMapPres::new(a.clone(), y.clone(), vec![yv.clone()], 6).unwrap_err();
        assert!(matches!(err, Error::NotWellDefinedAtDegree { degree: 6, .. }));

        let b = ring(&["y"], |x| vec![&x[0] * &x[0]]);
        assert!(LocalMapPres::new(a, b, vec![yv.clone()], 6).is_ok());

        let nonlocal = &yv + &Poly::one(Q, 1);
        let t = ring(&["t"], |_| vec![]);
        assert!(matches!(
            LocalMapPres::new(t.clone(), y.clone(), vec![nonlocal], 6),
            Err(Error::NonlocalImage { index: 0 })
        ));
        assert!(matches!(
            LocalMapPres::new(t, y, vec![], 6),
            Err(Error::ArityMismatch { expected: 1, found: 0 })
        ));
    }

    #[test]
    fn well_definedness_uses_ideal_membership() {
        // x -> y is fine into y^2 = y^3 since y^2 ∈ (y^2 - y^3) locally
        let a = ring(&["x"], |x| vec![&x[0] * &x[0]]);
        let b = ring(&["y"], |x| vec![&(&x[0] * &x[0]) - &x[0].pow(3)]);
        assert!(LocalMapPres::new(a, b.clone(), vec![b.var(0)], 6).is_ok());
    }

    #[test]
    fn quotient_examples() {
        let a = ring(&["x", "y"], |_| vec![]);
        let i = IdealPres::new(a.clone(), vec![a.var(0)]).unwrap();
        let (q, pi) = quotient(&a, &i).unwrap();
        assert_eq!(q.relations(), &[a.var(0)]);
        assert_eq!(pi.images(), a.gens().as_slice());
        assert!(matches!(pi.provenance(), Provenance::Surjection));

        let j = IdealPres::new(a.clone(), vec![a.var(0), &a.var(1) * &a.var(1)]).unwrap();
        let (aj, _) = quotient(&a, &j).unwrap();
        let (aij, _) = quotient(&q, &j.over(q.clone()).unwrap()).unwrap();
        assert!(aij.same_presentation(&aj));
    }

    #[test]
    fn extend_ideal_and_fiber() {
        let t = ring(&["t"], |_| vec![]);
        let y = ring(&["y"], |_| vec![]);
        let yv = y.var(0);
        let f = LocalMapPres::new(t.clone(), y.clone(), vec![&yv * &yv], 6).unwrap();
        let ib = f.extend_ideal(&IdealPres::new(t.clone(), vec![t.var(0)]).unwrap()).unwrap();
        assert_eq!(ib.gens(), &[&yv * &yv]);
        assert!(f.extend_ideal(&IdealPres::zero(t.clone())).unwrap().is_zero());
        let fiber = f.closed_fiber().unwrap();
        assert_eq!(fiber.relations(), &[&yv * &yv]);

        let induced = f.induced(&IdealPres::maximal(t.clone())).unwrap();
        assert_eq!(induced.source().relations(), &[t.var(0)]);
        assert_eq!(induced.target().relations(), &[&yv * &yv]);
        let same = f.induced(&IdealPres::zero(t)).unwrap();
        assert!(same.source().same_presentation(f.source()));
        assert!(same.target().same_presentation(f.target()));
    }

    #[test]
    fn compose_examples() {
        let t = ring(&["t"], |_| vec![]);
        let y = ring(&["y"], |_| vec![]);
        let z = ring(&["z"], |_| vec![]);
        let yv = y.var(0);
        let f = LocalMapPres::new(t.clone(), y.clone(), vec![&yv * &yv], 6).unwrap();
        let g = LocalMapPres::new(y.clone(), z.clone(), vec![z.var(0)], 6).unwrap();
        let h = compose(&f, &g).unwrap();
        assert_eq!(h.images(), &[&z.var(0) * &z.var(0)]);
        let id = compose(&f, &LocalMapPres::identity(y.clone())).unwrap();
        assert_eq!(id.images(), f.images());
        assert!(matches!(compose(&f, &f), Err(Error::CompositionMismatch(_))));
    }

    #[test]
    fn flat_constructors() {
        let a = ring(&["x"], |x| vec![x[0].pow(3)]);
        let (b, adj) = adjoin_variables(&a, &["y".to_string()]).unwrap();
        assert_eq!(b.nvars(), 2);
        assert_eq!(b.dim_override(), Some(1));
        assert!(matches!(adj.provenance(), Provenance::VariableAdjunction));

        let f = &(&Poly::var(Q, 2, 1) * &Poly::var(Q, 2, 1)) - &Poly::var(Q, 2, 0);
        assert_eq!(monic_degree(&f), Some(2));
        let (c, ext) = monic_extension(&a, "y", f).unwrap();
        assert_eq!(c.relations().len(), 2);
        assert!(matches!(ext.provenance(), Provenance::MonicExtension));
        assert_eq!(monic_degree(&(&Poly::var(Q, 2, 0) * &Poly::var(Q, 2, 1))), None);

        let sigma = vec![&b.var(0) + &b.var(1), &b.var(1) + &(&b.var(0) * &b.var(0))];
        let (b2, cc) = coordinate_change(&b, sigma).unwrap();
        assert_eq!(b2.relations(), &[(&b.var(0) + &b.var(1)).pow(3)]);
        assert!(matches!(cc.provenance(), Provenance::CoordinateChange));
        assert!(coordinate_change(&b, vec![b.var(0), b.var(0)]).is_err());
    }
}
