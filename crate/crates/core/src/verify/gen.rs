//! Random instances. Every map is well-defined by construction: the
//! target relations contain the exact images of the source relations.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::catalog::Shape;
use crate::algebra::{FieldSpec, Matrix, Monomial, Poly, Scalar};
use crate::error::{Error, Result};
use crate::presentation::{
    adjoin_variables, compose, coordinate_change, monic_extension, quotient, DiagramShape,
    IdealPres, LocalMapPres, LocalRingPres, Orientation, Ring,
};

/// Bounds for random generation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub field: FieldSpec,
    pub max_vars: usize,
    pub max_relations: usize,
    pub max_gen_degree: u32,
    pub max_ideal_gens: usize,
    pub trunc_degree: usize,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            field: FieldSpec::PrimeField(5),
            max_vars: 4,
            max_relations: 3,
            max_gen_degree: 3,
            max_ideal_gens: 3,
            trunc_degree: crate::presentation::DEFAULT_TRUNC_DEGREE,
            seed: 0,
        }
    }
}

/// Largest number of terms allowed in a generated relation.
const TERM_BUDGET: usize = 40;
const RETRIES: usize = 50;

#[derive(Clone, Debug)]
pub enum Instance {
    Ring {
        ring: Ring,
    },
    /// `I ⊆ J` ideals of `A`.
    RingWithIdeal {
        ideal: IdealPres,
        larger: IdealPres,
    },
    /// `φ: A -> B` with `I` over `A`, `J ⊇ IB` over `B`, and `I' ⊆ m^2`,
    /// `J' ⊆ n^2` with `I'B ⊆ J'`.
    Map {
        map: LocalMapPres,
        ideal: IdealPres,
        target_ideal: IdealPres,
        small_ideal: IdealPres,
        small_target_ideal: IdealPres,
    },
    ComposablePair {
        first: LocalMapPres,
        second: LocalMapPres,
        ideal: IdealPres,
    },
    /// The square `(φ, π_{IB}, π_I, φ_I)` and another ideal of `A`.
    QuotientSquare {
        map: LocalMapPres,
        ideal: IdealPres,
        square: DiagramShape,
        base: IdealPres,
    },
    FlatFamily {
        map: LocalMapPres,
    },
    SurjectionTriangle {
        first: LocalMapPres,
        second: LocalMapPres,
    },
}

impl Instance {
    pub fn shape(&self) -> Shape {
        match self {
            Instance::Ring { .. } => Shape::Ring,
            Instance::RingWithIdeal { .. } => Shape::RingWithIdeal,
            Instance::Map { .. } => Shape::Map,
            Instance::ComposablePair { .. } => Shape::ComposablePair,
            Instance::QuotientSquare { .. } => Shape::QuotientSquare,
            Instance::FlatFamily { .. } => Shape::FlatFamily,
            Instance::SurjectionTriangle { .. } => Shape::SurjectionTriangle,
        }
    }
}

pub struct Generator<'a> {
    params: &'a GenParams,
    rng: &'a mut ChaCha8Rng,
}

impl<'a> Generator<'a> {
    pub fn new(params: &'a GenParams, rng: &'a mut ChaCha8Rng) -> Self {
        Generator { params, rng }
    }

    fn field(&self) -> FieldSpec {
        self.params.field
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn coeff(&mut self) -> Scalar {
        let f = self.field();
        match f {
            FieldSpec::Rationals => {
                let v = *[-3i64, -2, -1, 1, 1, 1, 2, 3].choose(self.rng).unwrap();
                f.from_i64(v)
            }
            FieldSpec::PrimeField(p) => f.from_i64(self.rng.gen_range(1..p as i64)),
        }
    }

    fn monomial(&mut self, vars: &[usize], nvars: usize, degree: u32) -> Monomial {
        let mut e = vec![0u32; nvars];
        for _ in 0..degree {
            e[*vars.choose(self.rng).unwrap()] += 1;
        }
        Monomial::new(e)
    }

    /// Random nonzero polynomial in the variables `vars` with every term of
    /// degree in `min_order..=max_degree`.
    fn poly_in(&mut self, vars: &[usize], nvars: usize, min_order: u32, max_terms: usize) -> Poly {
        let max_degree = self.params.max_gen_degree.max(min_order);
        loop {
            let terms = self.rng.gen_range(1..=max_terms);
            let mut p = Poly::zero(self.field(), nvars);
            for _ in 0..terms {
                let d = self.rng.gen_range(min_order..=max_degree);
                let m = self.monomial(vars, nvars, d);
                let c = self.coeff();
                p.add_term(m, &c);
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    fn poly(&mut self, nvars: usize, min_order: u32, max_terms: usize) -> Poly {
        let vars: Vec<usize> = (0..nvars).collect();
        self.poly_in(&vars, nvars, min_order, max_terms)
    }

    /// Mostly monomial relations, so that Krull dimensions stay decidable.
    fn relation(&mut self, nvars: usize) -> Poly {
        let roll: f64 = self.rng.gen();
        if roll < 0.55 {
            self.poly(nvars, 2, 1)
        } else if roll < 0.75 && nvars >= 2 {
            // c*x_j + r(other variables): eliminable exactly
            let j = self.rng.gen_range(0..nvars);
            let others: Vec<usize> = (0..nvars).filter(|&i| i != j).collect();
            let mut r = self.poly_in(&others, nvars, 2, 2);
            let c = self.coeff();
            r.add_term(Monomial::var(nvars, j), &c);
            r
        } else {
            self.poly(nvars, 2, 3)
        }
    }

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn ring_with(&mut self, prefix: &str, nvars: usize, extra: Vec<Poly>) -> Result<Ring> {
        let count = if nvars == 0 { 0 } else { self.rng.gen_range(0..=self.params.max_relations) };
        let mut rels: Vec<Poly> = (0..count).map(|_| self.relation(nvars)).collect();
        for e in extra {
            if !e.is_zero() && !rels.contains(&e) {
                rels.push(e);
            }
        }
        Ok(LocalRingPres::new(self.field(), Self::names(prefix, nvars), rels, self.params.trunc_degree)?
            .into_ring())
    }

    fn nvars(&mut self, min: usize) -> usize {
        let max = self.params.max_vars.max(min);
        if min == 0 && self.chance(0.05) {
            return 0;
        }
        self.rng.gen_range(min.max(1)..=max)
    }

    pub fn ring(&mut self, prefix: &str) -> Result<Ring> {
        let n = self.nvars(0);
        self.ring_with(prefix, n, Vec::new())
    }

    /// Random ideal; generators have order at least `min_order`.
    pub fn ideal(&mut self, ring: &Ring, min_order: u32) -> Result<IdealPres> {
        let n = ring.nvars();
        if n == 0 {
            return Ok(IdealPres::zero(ring.clone()));
        }
        let count = self.rng.gen_range(1..=self.params.max_ideal_gens.max(1));
        let gens = (0..count)
            .map(|_| {
                if min_order == 1 && self.chance(0.4) {
                    // a generator with a linear term
                    let mut p = self.poly(n, 2, 1);
                    let j = self.rng.gen_range(0..n);
                    let c = self.coeff();
                    p.add_term(Monomial::var(n, j), &c);
                    p
                } else if self.chance(0.5) {
                    self.poly(n, min_order.max(1), 1)
                } else {
                    self.poly(n, min_order.max(1), 3)
                }
            })
            .collect();
        IdealPres::new(ring.clone(), gens)
    }

    /// `gens(base)` plus a few random generators of order `min_order`.
    fn enlarge(&mut self, base: &IdealPres, min_order: u32) -> Result<IdealPres> {
        let extra = self.ideal(base.ring(), min_order)?;
        let keep = self.rng.gen_range(0..=extra.gens().len());
        let mut gens = base.gens().to_vec();
        gens.extend(extra.gens()[..keep].iter().cloned());
        IdealPres::new(base.ring().clone(), gens)
    }

    fn image(&mut self, nvars: usize) -> Poly {
        if nvars == 0 {
            return Poly::zero(self.field(), 0);
        }
        let roll: f64 = self.rng.gen();
        if roll < 0.35 {
            let j = self.rng.gen_range(0..nvars);
            Poly::var(self.field(), nvars, j).scale(&self.coeff())
        } else if roll < 0.6 {
            self.poly(nvars, 2, 1)
        } else if roll < 0.85 {
            self.poly(nvars, 1, 2)
        } else {
            Poly::zero(self.field(), nvars)
        }
    }

    /// A random target and map out of `source`; with some probability the
    /// map sends the first variables onto the target variables, so `mB = n`.
    pub fn map_from(&mut self, source: &Ring, prefix: &str) -> Result<LocalMapPres> {
        for _ in 0..RETRIES {
            let onto = source.nvars() > 0 && self.chance(0.25);
            let nb = if onto { self.rng.gen_range(0..=source.nvars()) } else { self.nvars(0) };
            let mut images: Vec<Poly> = (0..source.nvars()).map(|_| self.image(nb)).collect();
            if onto {
                for (i, img) in images.iter_mut().enumerate().take(nb) {
                    let mut p = if self.chance(0.5) {
                        Poly::zero(self.field(), nb)
                    } else {
                        self.poly(nb, 2, 1)
                    };
                    p.add_term(Monomial::var(nb, i), &self.coeff());
                    *img = p;
                }
                images.shuffle(self.rng);
            }
            let mut extra = Vec::new();
            for g in source.relations() {
                extra.push(g.substitute(&images, nb)?);
            }
            if extra.iter().any(|e| e.num_terms() > TERM_BUDGET) {
                continue;
            }
            let target = self.ring_with(prefix, nb, extra)?;
            return LocalMapPres::new(source.clone(), target, images, self.params.trunc_degree);
        }
        Err(Error::GenerationExhausted(RETRIES))
    }

    fn map_instance(&mut self) -> Result<Instance> {
        let source = self.ring("x")?;
        let map = self.map_from(&source, "y")?;
        let ideal = self.ideal(&source, 1)?;
        let target_ideal = self.enlarge(&map.extend_ideal(&ideal)?, 1)?;
        let small_ideal = self.ideal(&source, 2)?;
        let small_target_ideal = self.enlarge(&map.extend_ideal(&small_ideal)?, 2)?;
        Ok(Instance::Map { map, ideal, target_ideal, small_ideal, small_target_ideal })
    }

    /// A random square-free linear automorphism plus quadratic terms.
    fn coordinate_change(&mut self, ring: &Ring) -> Result<(Ring, LocalMapPres)> {
        let n = ring.nvars();
        let f = self.field();
        let matrix = loop {
            let rows: Vec<Vec<Scalar>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j || self.chance(0.3) {
                                self.coeff()
                            } else {
                                f.zero()
                            }
                        })
                        .collect()
                })
                .collect();
            let m = Matrix::from_rows(f, n, rows);
            if m.rank() == n {
                break m;
            }
        };
        let sigma = (0..n)
            .map(|i| {
                let mut p = Poly::linear_form(f, matrix.row(i));
                if self.chance(0.3) {
                    p = &p + &self.poly(n, 2, 1);
                }
                p
            })
            .collect();
        coordinate_change(ring, sigma)
    }

    fn flat_family(&mut self) -> Result<Instance> {
        let max_a = self.params.max_vars.saturating_sub(1).max(1);
        for _ in 0..RETRIES {
            let na = self.rng.gen_range(1..=max_a);
            let source = self.ring_with("x", na, Vec::new())?;
            let room = self.params.max_vars.saturating_sub(na).max(1);
            let (b, first) = if self.chance(0.35) {
                let n = na + 1;
                let y = n - 1;
                let d = self.rng.gen_range(1..=self.params.max_gen_degree.max(1));
                let mut top = vec![0; n];
                top[y] = d;
                let mut f = Poly::monomial(self.field(), Monomial::new(top), self.field().one());
                let all: Vec<usize> = (0..n).collect();
                for _ in 0..self.rng.gen_range(0..=2) {
                    let t = self.poly_in(&all, n, 1, 1);
                    if t.terms().all(|(m, _)| m.exponents()[y] < d) {
                        f = &f + &t;
                    }
                }
                monic_extension(&source, "w1", f)?
            } else {
                let k = self.rng.gen_range(1..=room);
                adjoin_variables(&source, &Self::names("w", k))?
            };
            let map = if self.chance(0.5) && b.relations().iter().all(|r| r.num_terms() <= 6) {
                let (_, change) = self.coordinate_change(&b)?;
                if change.target().relations().iter().any(|r| r.num_terms() > TERM_BUDGET) {
                    first
                } else {
                    compose(&first, &change)?
                }
            } else {
                first
            };
            return Ok(Instance::FlatFamily { map });
        }
        Err(Error::GenerationExhausted(RETRIES))
    }

    /// Some variables onto scaled target variables, the rest onto random
    /// polynomials: surjective by construction.
    fn surjection_from(&mut self, source: &Ring) -> Result<LocalMapPres> {
        for _ in 0..RETRIES {
            let na = source.nvars();
            let nb = self.rng.gen_range(0..=na);
            let mut order: Vec<usize> = (0..na).collect();
            order.shuffle(self.rng);
            let mut images = vec![Poly::zero(self.field(), nb); na];
            for (k, &i) in order.iter().enumerate() {
                images[i] = if k < nb {
                    Poly::var(self.field(), nb, k).scale(&self.coeff())
                } else {
                    self.image(nb)
                };
            }
            let mut extra = Vec::new();
            for g in source.relations() {
                extra.push(g.substitute(&images, nb)?);
            }
            if extra.iter().any(|e| e.num_terms() > TERM_BUDGET) {
                continue;
            }
            let target = self.ring_with("y", nb, extra)?;
            return LocalMapPres::new(source.clone(), target, images, self.params.trunc_degree);
        }
        Err(Error::GenerationExhausted(RETRIES))
    }

    fn surjection_triangle(&mut self) -> Result<Instance> {
        let a = self.ring("x")?;
        let first = if self.chance(0.6) || a.nvars() == 0 {
            let i = self.ideal(&a, 1)?;
            quotient(&a, &i)?.1
        } else {
            self.surjection_from(&a)?
        };
        let second = self.map_from(first.target(), "z")?;
        Ok(Instance::SurjectionTriangle { first, second })
    }

    pub fn instance(&mut self, shape: Shape) -> Result<Instance> {
        match shape {
            Shape::Ring => Ok(Instance::Ring { ring: self.ring("x")? }),
            Shape::RingWithIdeal => {
                let ring = self.ring("x")?;
                let ideal = self.ideal(&ring, 1)?;
                let larger = self.enlarge(&ideal, 1)?;
                Ok(Instance::RingWithIdeal { ideal, larger })
            }
            Shape::Map => self.map_instance(),
            Shape::ComposablePair => {
                let a = self.ring("x")?;
                let first = self.map_from(&a, "y")?;
                let second = self.map_from(first.target(), "z")?;
                let ideal = self.ideal(&a, 1)?;
                Ok(Instance::ComposablePair { first, second, ideal })
            }
            Shape::QuotientSquare => {
                let a = self.ring("x")?;
                let map = self.map_from(&a, "y")?;
                let ideal = self.ideal(&a, 1)?;
                let base = self.ideal(&a, 1)?;
                let square = quotient_square(&map, &ideal)?;
                Ok(Instance::QuotientSquare { map, ideal, square, base })
            }
            Shape::FlatFamily => self.flat_family(),
            Shape::SurjectionTriangle => self.surjection_triangle(),
        }
    }
}

/// `(φ, π_{IB}, π_I, φ_I)`, clockwise.
pub fn quotient_square(map: &LocalMapPres, ideal: &IdealPres) -> Result<DiagramShape> {
    let (_, pi_i) = quotient(map.source(), ideal)?;
    let (_, pi_ib) = quotient(map.target(), &map.extend_ideal(ideal)?)?;
    let induced = map.induced(ideal)?;
    DiagramShape::square(map.clone(), pi_ib, pi_i, induced, Orientation::Clockwise)
}
