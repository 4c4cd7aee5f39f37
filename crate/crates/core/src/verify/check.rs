//! One check per catalog statement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::catalog::{Shape, StatementId};
use super::gen::{quotient_square, Instance};
use crate::algebra::{Matrix, Poly, Scalar};
use crate::error::{Error, Result};
use crate::invariants::{
    base_change_square, cdim, cotangent_ranks, delta, delta_phi, edim, eps2,
    fiber_ring, flatness_status, is_regular, is_weakly_regular, krull_dim, lin_space, rd,
    square_rd, triangle_rd, FlatStatus, Truth,
};
use crate::presentation::{
    compose, quotient, DiagramShape, IdealPres, LocalMapPres, Orientation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    UnknownBlocked,
    UnstableMu,
    OutOfClass,
}

impl SkipReason {
    pub fn name(self) -> &'static str {
        match self {
            SkipReason::UnknownBlocked => "unknown-blocked",
            SkipReason::UnstableMu => "unstable-mu",
            SkipReason::OutOfClass => "out-of-class",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    /// `vacuous`: the hypothesis did not apply to the instance.
    Pass { vacuous: bool },
    Fail { details: String },
    Skipped { reason: SkipReason },
}

const PASS: Outcome = Outcome::Pass { vacuous: false };
const VACUOUS: Outcome = Outcome::Pass { vacuous: true };

fn skip(reason: SkipReason) -> Result<Outcome> {
    Ok(Outcome::Skipped { reason })
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Ok(Outcome::Fail { details: format!($($fmt)+) });
        }
    };
}

/// Runs the check for `id`. Errors raised by the library while checking
/// (including internal consistency checks) are reported as failures; a
/// wrong instance shape is an error.
pub fn check_statement(id: StatementId, instance: &Instance, sample_seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    match run(id, instance, &mut rng) {
        Err(e @ Error::ShapeMismatch { .. }) => Err(e),
        Err(e) => Ok(Outcome::Fail { details: format!("error while checking: {e}") }),
        Ok(o) => Ok(o),
    }
}

fn shape_error(id: StatementId, instance: &Instance) -> Error {
    Error::ShapeMismatch {
        expected: id.shape().name().to_string(),
        found: instance.shape().name().to_string(),
    }
}

fn pi(ideal: &IdealPres) -> Result<LocalMapPres> {
    Ok(quotient(ideal.ring(), ideal)?.1)
}

fn rd_pi(ideal: &IdealPres) -> Result<usize> {
    rd(&pi(ideal)?)
}

fn edim_quotient(ideal: &IdealPres) -> Result<usize> {
    Ok(edim(&quotient(ideal.ring(), ideal)?.0))
}

/// `φ_{I,J}: A/I -> B/J` for `J ⊇ IB`, as `π_{J/IB} ∘ φ_I`.
fn induced_pair(map: &LocalMapPres, i: &IdealPres, j: &IdealPres) -> Result<LocalMapPres> {
    let phi_i = map.induced(i)?;
    let pi = pi(&j.over(phi_i.target().clone())?)?;
    compose(&phi_i, &pi)
}

/// `edim(B/mB)` from the fiber presentation.
fn fiber_edim(map: &LocalMapPres) -> Result<usize> {
    Ok(edim(&*map.closed_fiber()?))
}

fn maximal(ring: &crate::presentation::Ring) -> IdealPres {
    IdealPres::maximal(ring.clone())
}

fn random_invertible(rng: &mut ChaCha8Rng, field: crate::algebra::FieldSpec, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| match field {
                        crate::algebra::FieldSpec::Rationals => field.from_i64(rng.gen_range(-3..=3)),
                        crate::algebra::FieldSpec::PrimeField(p) => {
                            field.from_i64(rng.gen_range(0..p as i64))
                        }
                    })
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(field, n, rows);
        if m.rank() == n {
            return m;
        }
    }
}

/// For the standard minimal basis of `m` and `samples` random changes of it,
/// whether the images are part of a minimal basis of `n`.
fn bases_extend(map: &LocalMapPres, rng: &mut ChaCha8Rng, samples: usize) -> Vec<bool> {
    let field = map.source().field();
    let basis = lin_space(map.source()).free_columns();
    let r = basis.len();
    let target_lin = lin_space(map.target());
    let images: Vec<Vec<Scalar>> =
        basis.iter().map(|&s| map.images()[s].linear_coefficients()).collect();
    let m = map.target().nvars();
    let mut out = Vec::with_capacity(samples + 1);
    for k in 0..=samples {
        let change = if k == 0 { Matrix::identity(field, r) } else { random_invertible(rng, field, r) };
        let vectors: Vec<_> = (0..r)
            .map(|i| {
                let mut v = vec![field.zero(); m];
                for (j, img) in images.iter().enumerate() {
                    let c = change.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    for (o, a) in v.iter_mut().zip(img) {
                        *o = &*o + &(c * a);
                    }
                }
                crate::algebra::sparse_from_dense(&v)
            })
            .collect();
        out.push(target_lin.rank_modulo(vectors.iter()) == r);
    }
    out
}

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (1u32..(1 << items.len()))
        .map(|mask| {
            items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect()
        })
        .collect()
}

/// All decidable values agree; `None` when fewer than `min_known` are decidable.
fn agree(values: &[Truth], min_known: usize) -> Option<bool> {
    let known: Vec<bool> = values.iter().filter_map(|t| t.known()).collect();
    if known.len() < min_known {
        return None;
    }
    Some(known.windows(2).all(|w| w[0] == w[1]))
}

fn run(id: StatementId, instance: &Instance, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    use StatementId as S;
    match (id, instance) {
        (S::Cor_rs_cor11, Instance::Ring { ring }) => cor_rs_cor11(ring),
        (S::Cor_br_cor4, Instance::RingWithIdeal { ideal, larger }) => cor_br_cor4(ideal, larger),
        (S::Cor_br_cor5, Instance::RingWithIdeal { ideal, .. }) => cor_br_cor5(ideal),
        (S::Cor_br_cor2, Instance::RingWithIdeal { ideal, larger }) => cor_br_cor2(ideal, larger),
        (
            _,
            Instance::Map { map, ideal, target_ideal, small_ideal, small_target_ideal },
        ) if id.shape() == Shape::Map || id == S::Thm_bwr_thm1 || id == S::Cor_weak_implies_basic => {
            let ideals = [ideal.clone(), small_ideal.clone(), maximal(map.source())];
            match id {
                S::Lem_br_lem0 => lem0(map, ideal, target_ideal),
                S::Lem_br_lem1 => lem1(map, &ideals),
                S::Lem_br_lem1_1 => lem1_1(map, &ideals),
                S::Prop_br_lem2 => prop_br_lem2(map),
                S::Cor_br_cor1 => cor_br_cor1(map),
                S::Lem_br_lem3 => lem3(map, &ideals),
                S::Lem_br_lem4 => lem4(map, rng),
                S::Thm_br_th1 => thm_br_th1(map, &ideals, rng),
                S::Cor_br_cor3 => cor_br_cor3(map, &ideals),
                S::Prop_rs_prop1 => prop_rs_prop1(map, ideal, target_ideal),
                S::Cor_rs_cor7 => cor_rs_cor7(map, small_ideal, small_target_ideal),
                S::Cor_rs_cor8 => cor_rs_cor8(map, small_ideal, small_target_ideal),
                S::Cor_rs_cor9 => cor_rs_cor9(map, small_ideal, small_target_ideal),
                S::Prop_rs_cor10 => prop_rs_cor10(map, small_ideal),
                S::Thm_bwr_thm1 => thm_bwr_thm1(map),
                S::Cor_weak_implies_basic => weak_implies_basic(map),
                _ => Err(shape_error(id, instance)),
            }
        }
        (S::Cor_weak_implies_basic, Instance::FlatFamily { map }) => weak_implies_basic(map),
        (S::Cor_brw_cor3, Instance::FlatFamily { map }) => brw_cor3(map),
        (S::Thm_bwr_thm1, Instance::FlatFamily { map }) => thm_bwr_thm1(map),
        (S::Thm_br_th1_eps2, Instance::FlatFamily { map }) => th1_eps2(map),
        (S::Rmk_square_sum | S::Thm_rs_thm1 | S::Cor_rs_cor2, _) => {
            let (squares, base) = match instance {
                Instance::QuotientSquare { square, base, .. } => (vec![square.clone()], base.clone()),
                Instance::ComposablePair { first, second, ideal } => {
                    (vec![degenerate_square(first, second)?, quotient_square(first, ideal)?], ideal.clone())
                }
                _ => return Err(shape_error(id, instance)),
            };
            for s in &squares {
                let o = match id {
                    S::Rmk_square_sum => square_sum(s)?,
                    S::Thm_rs_thm1 => rs_thm1(s, &base)?,
                    _ => rs_cor2(s, &base)?,
                };
                if o != PASS {
                    return Ok(o);
                }
            }
            Ok(PASS)
        }
        (S::Cor_rs_cor1, Instance::QuotientSquare { map, ideal, square, .. }) => {
            rs_cor1(map, ideal, square)
        }
        (S::Cor_rs_cor3, Instance::ComposablePair { first, second, ideal }) => {
            rs_cor3(first, second, ideal)
        }
        (S::Cor_rs_cor4, Instance::ComposablePair { first, second, .. }) => rs_cor4(first, second),
        (S::Cor_rs_cor6, Instance::ComposablePair { first, second, .. }) => rs_cor6(first, second),
        (S::Cor_rs_cor5, Instance::SurjectionTriangle { first, second }) => rs_cor5(first, second),
        _ => Err(shape_error(id, instance)),
    }
}

fn cor_rs_cor11(ring: &crate::presentation::Ring) -> Result<Outcome> {
    let Some(dim) = krull_dim(ring) else { return skip(SkipReason::UnknownBlocked) };
    if dim == 0 {
        return Ok(VACUOUS);
    }
    let pi = pi(&IdealPres::maximal_power(ring.clone(), 2))?;
    ensure!(rd(&pi)? == 0, "rd(π_m²) = {} on a ring of dimension {dim}", rd(&pi)?);
    let status = flatness_status(&pi)?;
    ensure!(matches!(status, FlatStatus::NotFlat(_)), "flatness of π_m² reported as {status:?}");
    Ok(PASS)
}

fn cor_br_cor4(i: &IdealPres, j: &IdealPres) -> Result<Outcome> {
    let (a_i, pi_i) = quotient(i.ring(), i)?;
    let j_mod_i = j.over(a_i)?;
    let (dj, di, dji) = (delta(j), delta(i), delta(&j_mod_i));
    ensure!(dj == di + dji, "δ(J) = {dj}, δ(I) = {di}, δ_(A/I)(J/I) = {dji}");
    let pi_ji = pi(&j_mod_i)?;
    let triangle = DiagramShape::triangle(pi_i.clone(), pi_ji.clone(), Orientation::Clockwise)?;
    let t = triangle.as_triangle().unwrap();
    let pi_j = pi(j)?;
    ensure!(
        t.composite.target().same_presentation(pi_j.target()),
        "(A/I)/(J/I) and A/J are presented differently"
    );
    let (r1, r2, r3) = (rd(&pi_i)?, rd(&pi_ji)?, rd(&pi_j)?);
    ensure!(r3 == r1 + r2, "rd(π_J) = {r3}, rd(π_I) = {r1}, rd(π_J/I) = {r2}");
    ensure!(triangle_rd(&triangle)? == 0, "triangle of quotients has nonzero defect");
    Ok(PASS)
}

fn cor_br_cor5(ideal: &IdealPres) -> Result<Outcome> {
    let ring = ideal.ring();
    let mut lin = lin_space(ring);
    let chosen: Vec<Poly> =
        ideal.gens().iter().filter(|g| lin.insert_dense(&g.linear_coefficients())).cloned().collect();
    let r = chosen.len();
    let a = IdealPres::new(ring.clone(), chosen)?;
    ensure!(delta(&a) == r, "δ of the chosen elements is {} not {r}", delta(&a));
    let (quot, _) = quotient(ring, &a)?;
    let rest = delta(&ideal.over(quot)?);
    ensure!(delta(ideal) == r + rest, "δ(I) = {}, r = {r}, δ(I/(a)) = {rest}", delta(ideal));
    Ok(if r == 0 { VACUOUS } else { PASS })
}

fn cor_br_cor2(i: &IdealPres, j: &IdealPres) -> Result<Outcome> {
    let ring = i.ring();
    let e = edim(ring);
    let m = maximal(ring);
    let m2 = IdealPres::maximal_power(ring.clone(), 2);
    for ideal in [i, j, &m, &m2] {
        let r = rd_pi(ideal)?;
        let eq = edim_quotient(ideal)?;
        ensure!(r + eq == e && r == delta(ideal), "rd(π_I) = {r}, edim(A) = {e}, edim(A/I) = {eq}, δ = {}", delta(ideal));
        let in_m2 = ideal.contained_in_m2();
        ensure!((r == 0) == (eq == e) && (r == 0) == in_m2, "rd(π_I) = {r} but I ⊆ m² is {in_m2}");
    }
    ensure!(rd_pi(&m)? == e, "rd(π_m) ≠ edim(A)");
    ensure!(rd_pi(&m2)? == 0, "rd(π_m²) ≠ 0");
    Ok(PASS)
}

fn lem0(map: &LocalMapPres, i: &IdealPres, j: &IdealPres) -> Result<Outcome> {
    let n = map.source().trunc_degree();
    let families = subsets(i.gens());
    let images: Vec<Vec<Poly>> = families
        .iter()
        .map(|f| f.iter().map(|g| map.apply(g)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let in_j = cotangent_ranks(j, &images, n)?;
    let in_i = cotangent_ranks(i, &families, n)?;
    let mut applied = false;
    let mut unstable = false;
    for ((fam, rj), ri) in families.iter().zip(&in_j).zip(&in_i) {
        match rj.stable_value() {
            Some(v) if v == fam.len() => match ri.stable_value() {
                Some(w) => {
                    applied = true;
                    ensure!(w == fam.len(), "images independent in J/nJ but rank {w} of {} in I/mI", fam.len());
                }
                None => unstable = true,
            },
            Some(_) => {}
            None => unstable = true,
        }
    }
    if applied {
        Ok(PASS)
    } else if unstable {
        skip(SkipReason::UnstableMu)
    } else {
        Ok(VACUOUS)
    }
}

fn lem1(map: &LocalMapPres, ideals: &[IdealPres]) -> Result<Outcome> {
    let r = rd(map)?;
    for ideal in ideals {
        let (d, dp) = (delta(ideal), delta_phi(map, ideal)?);
        ensure!(dp <= d && d - dp <= r, "δ = {d}, δ^φ = {dp}, rd = {r} for I = {ideal}");
    }
    Ok(PASS)
}

fn lem1_1(map: &LocalMapPres, ideals: &[IdealPres]) -> Result<Outcome> {
    let (ea, eb) = (edim(map.source()), edim(map.target()));
    for ideal in ideals {
        let ib = map.extend_ideal(ideal)?;
        let (d, dp) = (delta(ideal), delta_phi(map, ideal)?);
        let (eai, ebi) = (edim_quotient(ideal)?, edim_quotient(&ib)?);
        ensure!(d + eai == ea, "δ(I) = {d}, edim(A) = {ea}, edim(A/I) = {eai}");
        ensure!(dp + ebi == eb, "δ^φ(I) = {dp}, edim(B) = {eb}, edim(B/IB) = {ebi}");
    }
    Ok(PASS)
}

fn prop_br_lem2(map: &LocalMapPres) -> Result<Outcome> {
    let r = rd(map)?;
    let m = maximal(map.source());
    let by_delta = delta(&m) as i64 - delta_phi(map, &m)? as i64;
    let by_edim = (edim(map.source()) + fiber_edim(map)?) as i64 - edim(map.target()) as i64;
    ensure!(by_delta == r as i64 && by_edim == r as i64, "rd = {r}, δ route {by_delta}, edim route {by_edim}");
    if let FlatStatus::Flat(_) = flatness_status(map)? {
        if let Some(o) = eps2_identity(map, r)? {
            return Ok(o);
        }
    }
    Ok(PASS)
}

/// `rd = ε₂(A) + ε₂(B/mB) − ε₂(B)`; `None` when some value is unstable.
fn eps2_identity(map: &LocalMapPres, r: usize) -> Result<Option<Outcome>> {
    let n = map.source().trunc_degree();
    let fiber = map.closed_fiber()?;
    let (ea, eb, ef) = (eps2(map.source(), n)?, eps2(map.target(), n)?, eps2(&fiber, n)?);
    let (Some(ea), Some(eb), Some(ef)) = (ea.stable_value(), eb.stable_value(), ef.stable_value())
    else {
        return Ok(None);
    };
    let value = (ea + ef) as i64 - eb as i64;
    if value != r as i64 {
        return Ok(Some(Outcome::Fail {
            details: format!("rd = {r} but ε₂(A) = {ea}, ε₂(B/mB) = {ef}, ε₂(B) = {eb}"),
        }));
    }
    Ok(Some(PASS))
}

fn cor_br_cor1(map: &LocalMapPres) -> Result<Outcome> {
    if fiber_edim(map)? != 0 {
        return Ok(VACUOUS);
    }
    let (r, ea, eb) = (rd(map)?, edim(map.source()), edim(map.target()));
    ensure!(r as i64 == ea as i64 - eb as i64, "mB = n but rd = {r}, edim(A) = {ea}, edim(B) = {eb}");
    Ok(PASS)
}

fn lem3(map: &LocalMapPres, ideals: &[IdealPres]) -> Result<Outcome> {
    let field = map.source().field();
    let target_rows: Vec<Vec<Scalar>> =
        map.target().relations().iter().map(|r| r.linear_coefficients()).collect();
    let m = map.target().nvars();
    let base_rank = Matrix::from_rows(field, m, target_rows.clone()).rank();
    for ideal in ideals {
        let images: Vec<Vec<Scalar>> = ideal
            .gens()
            .iter()
            .map(|g| Ok(map.apply(g)?.linear_coefficients()))
            .collect::<Result<_>>()?;
        let mut longest = 0;
        for subset in subsets(&images) {
            let mut rows = target_rows.clone();
            rows.extend(subset.iter().cloned());
            if Matrix::from_rows(field, m, rows).rank() - base_rank == subset.len() {
                longest = longest.max(subset.len());
            }
        }
        let dp = delta_phi(map, ideal)?;
        ensure!(longest == dp, "longest extendable sequence {longest}, δ^φ = {dp} for I = {ideal}");
    }
    Ok(PASS)
}

fn lem4(map: &LocalMapPres, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let extends = bases_extend(map, rng, 25);
    if !extends.iter().any(|&e| e) {
        return Ok(VACUOUS);
    }
    ensure!(extends.iter().all(|&e| e), "some bases extend and others do not: {extends:?}");
    ensure!(rd(map)? == 0, "every sampled basis extends but rd = {}", rd(map)?);
    Ok(PASS)
}

fn thm_br_th1(map: &LocalMapPres, ideals: &[IdealPres], rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let source = map.source();
    let c1 = bases_extend(map, rng, 10).iter().all(|&e| e);
    let mut sampled: Vec<IdealPres> = ideals.to_vec();
    for x in source.gens() {
        sampled.push(IdealPres::new(source.clone(), vec![x])?);
    }
    let mut c2 = true;
    for ideal in &sampled {
        c2 &= delta(ideal) == delta_phi(map, ideal)?;
    }
    let c3 = rd(map)? == 0;
    let c4 = edim(map.target()) == edim(source) + fiber_edim(map)?;
    ensure!(c1 == c2 && c2 == c3 && c3 == c4, "conditions disagree: (1) {c1}, (2) {c2}, (3) {c3}, (4) {c4}");
    Ok(PASS)
}

fn cor_br_cor3(map: &LocalMapPres, ideals: &[IdealPres]) -> Result<Outcome> {
    let mut all_equal = true;
    for ideal in ideals {
        let (a, b) = (rd_pi(ideal)?, rd_pi(&map.extend_ideal(ideal)?)?);
        ensure!(a >= b, "rd(π_I) = {a} < rd(π_IB) = {b} for I = {ideal}");
        all_equal &= a == b;
    }
    let br = rd(map)? == 0;
    ensure!(br == all_equal, "basically regular is {br} but equality on all sampled ideals is {all_equal}");
    Ok(PASS)
}

fn prop_rs_prop1(map: &LocalMapPres, i: &IdealPres, j: &IdealPres) -> Result<Outcome> {
    let phi_i = map.induced(i)?;
    let pi_j_ib = pi(&j.over(phi_i.target().clone())?)?;
    let triangle = DiagramShape::triangle(phi_i.clone(), pi_j_ib.clone(), Orientation::Clockwise)?;
    let (quot_mb, _) = quotient(map.target(), &map.fiber_ideal())?;
    let pi_fiber = rd_pi(&j.over(quot_mb)?)?;
    let t = triangle_rd(&triangle)?;
    ensure!(t == pi_fiber as i64, "rd(T) = {t}, rd(π_(J+mB)/mB) = {pi_fiber}");
    let phi_ij = &triangle.as_triangle().unwrap().composite;
    let r_ij = rd(phi_ij)? as i64;
    let first = rd(&phi_i)? as i64 + rd(&pi_j_ib)? as i64 - pi_fiber as i64;
    let second = rd(map)? as i64 - (rd_pi(i)? as i64 - rd_pi(&map.extend_ideal(i)?)? as i64)
        + rd(&pi_j_ib)? as i64
        - pi_fiber as i64;
    ensure!(r_ij == first && r_ij == second, "rd(φ_I,J) = {r_ij}, formulas give {first} and {second}");
    Ok(PASS)
}

fn small_preconditions(map: &LocalMapPres, i: &IdealPres, j: &IdealPres) -> Result<bool> {
    let ib = map.extend_ideal(i)?;
    Ok(i.contained_in_m2() && j.contained_in_m2() && ib.gens().iter().all(|g| j.gens().contains(g)))
}

fn cor_rs_cor7(map: &LocalMapPres, i: &IdealPres, j: &IdealPres) -> Result<Outcome> {
    if !small_preconditions(map, i, j)? {
        return skip(SkipReason::OutOfClass);
    }
    let (a, b) = (rd(&induced_pair(map, i, j)?)?, rd(map)?);
    ensure!(a == b, "rd(φ_I,J) = {a}, rd(φ) = {b}");
    Ok(PASS)
}

fn cor_rs_cor8(map: &LocalMapPres, i: &IdealPres, j: &IdealPres) -> Result<Outcome> {
    if !small_preconditions(map, i, j)? {
        return skip(SkipReason::OutOfClass);
    }
    let r = rd(map)?;
    let induced = rd(&map.induced(i)?)?;
    ensure!(induced == r, "rd(φ_I) = {induced}, rd(φ) = {r}");
    let after = rd(&compose(map, &pi(j)?)?)?;
    ensure!(after == r, "rd(π_J ∘ φ) = {after}, rd(φ) = {r}");
    Ok(PASS)
}

fn cor_rs_cor9(map: &LocalMapPres, i: &IdealPres, j: &IdealPres) -> Result<Outcome> {
    if !small_preconditions(map, i, j)? {
        return skip(SkipReason::OutOfClass);
    }
    if rd(map)? != 0 {
        return Ok(VACUOUS);
    }
    ensure!(rd(&induced_pair(map, i, j)?)? == 0, "φ_I,J is not basically regular");
    ensure!(rd(&map.induced(i)?)? == 0, "φ_I is not basically regular");
    ensure!(rd(&compose(map, &pi(j)?)?)? == 0, "π_J ∘ φ is not basically regular");
    Ok(PASS)
}

fn prop_rs_cor10(map: &LocalMapPres, i: &IdealPres) -> Result<Outcome> {
    if rd(map)? != 0 {
        return Ok(VACUOUS);
    }
    if !i.contained_in_m2() {
        return skip(SkipReason::OutOfClass);
    }
    let target = map.target();
    let n2 = IdealPres::maximal_power(target.clone(), 2);
    let mb_proper = fiber_edim(map)? > 0;
    let mut applied = false;
    if mb_proper {
        let mut gens = map.extend_ideal(i)?.gens().to_vec();
        gens.extend(n2.gens().iter().cloned());
        let j = IdealPres::new(target.clone(), gens)?;
        let f = induced_pair(map, i, &j)?;
        ensure!(rd(&f)? == 0, "φ_I,n² is not basically regular");
        match is_regular(&*fiber_ring(&f)?) {
            Truth::True => ensure!(false, "closed fiber of φ_I,n² is regular"),
            Truth::False => applied = true,
            Truth::Unknown => return skip(SkipReason::UnknownBlocked),
        }
    }
    match krull_dim(map.source()) {
        Some(0) => {}
        Some(_) => {
            let g = compose(map, &pi(&n2)?)?;
            ensure!(rd(&g)? == 0, "π_n² ∘ φ is not basically regular");
            let status = flatness_status(&g)?;
            ensure!(matches!(status, FlatStatus::NotFlat(_)), "π_n² ∘ φ flatness reported as {status:?}");
            if mb_proper {
                ensure!(is_regular(&*fiber_ring(&g)?) == Truth::False, "fiber of π_n² ∘ φ is not shown non-regular");
            }
            applied = true;
        }
        None if !applied => return skip(SkipReason::UnknownBlocked),
        None => {}
    }
    Ok(if applied { PASS } else { VACUOUS })
}

fn weak_implies_basic(map: &LocalMapPres) -> Result<Outcome> {
    match is_weakly_regular(map)? {
        Truth::True => {
            ensure!(rd(map)? == 0, "weakly regular with rd = {}", rd(map)?);
            Ok(PASS)
        }
        Truth::False => Ok(VACUOUS),
        Truth::Unknown => skip(SkipReason::UnknownBlocked),
    }
}

fn brw_cor3(map: &LocalMapPres) -> Result<Outcome> {
    if !matches!(flatness_status(map)?, FlatStatus::Flat(_)) {
        return skip(SkipReason::OutOfClass);
    }
    let n = map.source().trunc_degree();
    let br = rd(map)? == 0;
    let (ea, eb) = (eps2(map.source(), n)?, eps2(map.target(), n)?);
    let c1: Truth = match (ea.stable_value(), eb.stable_value()) {
        (Some(a), Some(b)) => (br && a == b).into(),
        _ if !br => Truth::False,
        _ => Truth::Unknown,
    };
    let c2: Truth = match (cdim(map.source()), cdim(map.target())) {
        (Some(a), Some(b)) => (br && a == b).into(),
        _ if !br => Truth::False,
        _ => Truth::Unknown,
    };
    let c3 = is_weakly_regular(map)?;
    match agree(&[c1, c2, c3], 2) {
        Some(true) => Ok(PASS),
        Some(false) => Ok(Outcome::Fail { details: format!("conditions disagree: {c1:?}, {c2:?}, {c3:?}") }),
        None if ea.stable && eb.stable => skip(SkipReason::UnknownBlocked),
        None => skip(SkipReason::UnstableMu),
    }
}

fn thm_bwr_thm1(map: &LocalMapPres) -> Result<Outcome> {
    let fiber = fiber_ring(map)?;
    let (a, b) = (map.source(), map.target());
    let dims_add: Truth = match (krull_dim(a), krull_dim(b), krull_dim(&fiber)) {
        (Some(x), Some(y), Some(z)) => (y == x + z).into(),
        _ => Truth::Unknown,
    };
    let c1 = Truth::from(rd(map)? == 0).and(is_regular(b));
    let c2 = is_regular(a).and(is_regular(&fiber)).and(dims_add);
    let c3 = is_weakly_regular(map)?.and(is_regular(a));
    match agree(&[c1, c2, c3], 2) {
        Some(true) => Ok(PASS),
        Some(false) => Ok(Outcome::Fail { details: format!("conditions disagree: {c1:?}, {c2:?}, {c3:?}") }),
        None => skip(SkipReason::UnknownBlocked),
    }
}

fn th1_eps2(map: &LocalMapPres) -> Result<Outcome> {
    if !matches!(flatness_status(map)?, FlatStatus::Flat(_)) {
        return skip(SkipReason::OutOfClass);
    }
    match eps2_identity(map, rd(map)?)? {
        Some(o) => Ok(o),
        None => skip(SkipReason::UnstableMu),
    }
}

/// `(φ, ψ, id_A, ψ∘φ)`: the square whose defect is that of the triangle.
fn degenerate_square(first: &LocalMapPres, second: &LocalMapPres) -> Result<DiagramShape> {
    let composite = compose(first, second)?;
    let id = LocalMapPres::identity(first.source().clone());
    DiagramShape::square(first.clone(), second.clone(), id, composite, Orientation::Clockwise)
}

fn with_orientation(s: &DiagramShape, o: Orientation) -> DiagramShape {
    DiagramShape { kind: s.kind.clone(), orientation: o }
}

fn square_sum(s: &DiagramShape) -> Result<Outcome> {
    let sq = s.as_square().unwrap();
    let (t, r, l, b) = (rd(&sq.top)?, rd(&sq.right)?, rd(&sq.left)?, rd(&sq.bottom)?);
    for o in [Orientation::Clockwise, Orientation::Anticlockwise] {
        let oriented = with_orientation(s, o);
        let upper = DiagramShape::triangle(sq.top.clone(), sq.right.clone(), o)?;
        let lower = DiagramShape::triangle(sq.left.clone(), sq.bottom.clone(), o.opposite())?;
        let total = square_rd(&oriented)?;
        let sum = triangle_rd(&upper)? + triangle_rd(&lower)?;
        let direct = o.sign() * ((t + r) as i64 - (l + b) as i64);
        ensure!(total == sum && sum == direct, "{}: square {total}, triangles {sum}, edges {direct}", o.name());
    }
    Ok(PASS)
}

fn rs_thm1(s: &DiagramShape, base: &IdealPres) -> Result<Outcome> {
    let sq = s.as_square().unwrap();
    let a = sq.top.source();
    let s0 = square_rd(s)?;
    let s1 = square_rd(&base_change_square(s, base)?)?;
    let s2 = square_rd(&base_change_square(s, &maximal(a))?)?;
    let m = maximal(a);
    let psi_mb = sq.right.induced(&sq.top.extend_ideal(&m)?)?;
    let psi_mc = sq.bottom.induced(&sq.left.extend_ideal(&m)?)?;
    let s3 = rd(&psi_mb)? as i64 - rd(&psi_mc)? as i64;
    ensure!(s0 == s1 && s1 == s2 && s2 == s3, "rd(S) = {s0}, rd(S_I) = {s1}, rd(S_m) = {s2}, rd(ψ_mB) − rd(ψ'_mC) = {s3}");
    Ok(PASS)
}

fn rs_cor2(s: &DiagramShape, base: &IdealPres) -> Result<Outcome> {
    let sq = s.as_square().unwrap();
    let a = sq.top.source();
    let m = maximal(a);
    let c1 = square_rd(s)? == 0;
    let mut c2 = true;
    for ideal in [base.clone(), IdealPres::zero(a.clone()), m.clone()] {
        c2 &= square_rd(&base_change_square(s, &ideal)?)? == 0;
    }
    let c3 = square_rd(&base_change_square(s, &m)?)? == 0;
    let psi_mb = sq.right.induced(&sq.top.extend_ideal(&m)?)?;
    let psi_mc = sq.bottom.induced(&sq.left.extend_ideal(&m)?)?;
    let c4 = rd(&psi_mb)? == rd(&psi_mc)?;
    ensure!(c1 == c2 && c2 == c3 && c3 == c4, "conditions disagree: {c1}, {c2}, {c3}, {c4}");
    Ok(PASS)
}

fn rs_cor1(map: &LocalMapPres, ideal: &IdealPres, square: &DiagramShape) -> Result<Outcome> {
    ensure!(square_rd(square)? == 0, "quotient square has defect {}", square_rd(square)?);
    let r = rd(map)? as i64;
    let ri = rd(&map.induced(ideal)?)? as i64;
    let gap = rd_pi(ideal)? as i64 - rd_pi(&map.extend_ideal(ideal)?)? as i64;
    ensure!(ri == r - gap && ri <= r, "rd(φ_I) = {ri}, rd(φ) = {r}, rd(π_I) − rd(π_IB) = {gap}");
    Ok(PASS)
}

fn rs_cor3(first: &LocalMapPres, second: &LocalMapPres, ideal: &IdealPres) -> Result<Outcome> {
    let t = DiagramShape::triangle(first.clone(), second.clone(), Orientation::Clockwise)?;
    let t0 = triangle_rd(&t)?;
    let base = |i: &IdealPres| -> Result<i64> {
        let f = first.induced(i)?;
        let g = second.induced(&first.extend_ideal(i)?)?;
        triangle_rd(&DiagramShape::triangle(f, g, Orientation::Clockwise)?)
    };
    let m = maximal(first.source());
    let (t1, t2) = (base(ideal)?, base(&m)?);
    let t3 = rd(&second.induced(&first.extend_ideal(&m)?)?)? as i64;
    ensure!(t0 == t1 && t1 == t2 && t2 == t3, "rd(T) = {t0}, rd(T_I) = {t1}, rd(T_m) = {t2}, rd(ψ_mB) = {t3}");
    Ok(PASS)
}

fn rs_cor4(first: &LocalMapPres, second: &LocalMapPres) -> Result<Outcome> {
    let theta = compose(first, second)?;
    let (rf, rs, rt) = (rd(first)? as i64, rd(second)? as i64, rd(&theta)? as i64);
    let m = maximal(first.source());
    let mb = first.extend_ideal(&m)?;
    let mc = theta.extend_ideal(&m)?;
    let psi_mb = rd(&second.induced(&mb)?)? as i64;
    let (pb, pc) = (rd_pi(&mb)? as i64, rd_pi(&mc)? as i64);
    ensure!(rt == rf + rs - psi_mb, "rd(ψφ) = {rt}, rd φ = {rf}, rd ψ = {rs}, rd ψ_mB = {psi_mb}");
    ensure!(rt == rf + (pb - pc), "rd(ψφ) = {rt}, rd φ = {rf}, rd π_mB = {pb}, rd π_mC = {pc}");
    ensure!(rf <= rt && rt <= rf + rs, "bounds fail: {rf} ≤ {rt} ≤ {}", rf + rs);
    Ok(PASS)
}

fn rs_cor5(first: &LocalMapPres, second: &LocalMapPres) -> Result<Outcome> {
    if fiber_edim(first)? != 0 {
        return skip(SkipReason::OutOfClass);
    }
    let t = DiagramShape::triangle(first.clone(), second.clone(), Orientation::Clockwise)?;
    let composite = &t.as_triangle().unwrap().composite;
    let (rf, rs, rt) = (rd(first)?, rd(second)?, rd(composite)?);
    ensure!(rt == rf + rs, "rd(ψφ) = {rt}, rd φ = {rf}, rd ψ = {rs}");
    ensure!(triangle_rd(&t)? == 0, "triangle defect {}", triangle_rd(&t)?);
    Ok(PASS)
}

fn rs_cor6(first: &LocalMapPres, second: &LocalMapPres) -> Result<Outcome> {
    let theta = compose(first, second)?;
    let (rf, rs, rt) = (rd(first)?, rd(second)?, rd(&theta)?);
    let (bf, bs, bt) = (rf == 0, rs == 0, rt == 0);
    let m = maximal(first.source());
    let mb = first.extend_ideal(&m)?;
    let psi_mb = rd(&second.induced(&mb)?)?;
    let (pb, pc) = (rd_pi(&mb)?, rd_pi(&theta.extend_ideal(&m)?)?);
    let i = bt;
    let ii = bf && rs == psi_mb;
    let iii = bf && pb == pc;
    ensure!(i == ii && ii == iii, "part (1) disagrees: {i}, {ii}, {iii}");
    ensure!(bs == (psi_mb == 0 && rt == rf), "part (2): rd ψ = {rs}, rd ψ_mB = {psi_mb}, rd ψφ = {rt}, rd φ = {rf}");
    ensure!(!(bf && bs) || bt, "φ and ψ basically regular but ψφ is not");
    if fiber_edim(first)? == 0 {
        ensure!(!bt || (bf && bs), "mB = n and ψφ basically regular, but φ or ψ is not");
    }
    Ok(PASS)
}
