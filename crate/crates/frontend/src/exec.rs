//! Runs a parsed session against the algebra library.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use rdefect_core::algebra::{FieldSpec, Poly};
use rdefect_core::invariants::{
    cdim, delta, delta_phi, edim, eps2, fiber_edim, fiber_ring, flatness_status, is_regular,
    is_weakly_regular, krull_dim, linearized_map, mu, rd, square_rd, triangle_rd,
    InvariantReport, Stabilized, Truth,
};
use rdefect_core::presentation::{
    compose, quotient, DiagramKind, DiagramShape, IdealPres, LocalMapPres, LocalRingPres,
    Orientation as CoreOrientation, Ring, DEFAULT_TRUNC_DEGREE,
};

use crate::ast::{DiagramExpr, Expr, ExprNode, FieldName, IdealExpr, Orientation, Query, Session, SetOption, Stmt};
use crate::diag::{Diagnostic, ErrorKind};
use crate::report::{Entry, Failure, Report, ReportOptions, REPORT_VERSION};
use crate::span::{Name, Span};

/// Largest truncation degree accepted by `set trunc_degree`.
pub const MAX_TRUNC_DEGREE: usize = 40;
/// Bound on the number of monomials a jet computation may use.
const MAX_JET_MONOMIALS: u128 = 200_000;
/// Bound on the number of terms of an intermediate polynomial.
const MAX_TERMS: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub trunc_degree: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { trunc_degree: DEFAULT_TRUNC_DEGREE }
    }
}

#[derive(Clone, Debug)]
enum Binding {
    Ring(Ring),
    Ideal(IdealPres),
    Map(LocalMapPres),
    Diagram(DiagramShape),
}

pub fn field_spec(name: &FieldName) -> FieldSpec {
    match name {
        FieldName::Rationals => FieldSpec::Rationals,
        FieldName::Prime(p) => FieldSpec::prime(*p).expect("validated by the parser"),
    }
}

struct Executor {
    field: Option<FieldSpec>,
    trunc: usize,
    env: HashMap<String, Binding>,
    entries: Vec<Entry>,
    failures: Vec<Failure>,
}

fn algebra(span: Span) -> impl Fn(rdefect_core::Error) -> Diagnostic {
    move |e| Diagnostic::new(ErrorKind::Algebra(e), span)
}

fn binom(n: u128, k: u128) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        r = r.saturating_mul(n - i) / (i + 1);
        if r > MAX_JET_MONOMIALS * 64 {
            return r;
        }
    }
    r
}

pub fn execute(session: &Session, options: &Options) -> Result<Report, Diagnostic> {
    if options.trunc_degree < 2 || options.trunc_degree > MAX_TRUNC_DEGREE {
        return Err(Diagnostic::invalid(
            format!("truncation degree must lie in 2..={MAX_TRUNC_DEGREE}"),
            Span::default(),
        ));
    }
    let mut ex = Executor {
        field: None,
        trunc: options.trunc_degree,
        env: HashMap::new(),
        entries: Vec::new(),
        failures: Vec::new(),
    };
    for stmt in &session.stmts {
        ex.stmt(&stmt.node, stmt.span)?;
    }
    Ok(Report {
        version: REPORT_VERSION,
        options: ReportOptions {
            field: ex.field.map(|f| f.to_string()),
            trunc_degree: options.trunc_degree,
        },
        entries: ex.entries,
        failures: ex.failures,
    })
}

impl Executor {
    fn field(&self) -> FieldSpec {
        self.field.expect("field declared before use (parser invariant)")
    }

    fn get(&self, name: &Name) -> Result<&Binding, Diagnostic> {
        self.env
            .get(&name.node)
            .ok_or_else(|| Diagnostic::new(ErrorKind::UndeclaredName(name.node.clone()), name.span))
    }

    fn wrong(name: &Name, expected: &str, found: &Binding) -> Diagnostic {
        let found = match found {
            Binding::Ring(_) => "ring",
            Binding::Ideal(_) => "ideal",
            Binding::Map(_) => "map",
            Binding::Diagram(_) => "diagram",
        };
        Diagnostic::new(
            ErrorKind::WrongKind { name: name.node.clone(), expected: expected.into(), found: found.into() },
            name.span,
        )
    }

    fn ring(&self, name: &Name) -> Result<Ring, Diagnostic> {
        match self.get(name)? {
            Binding::Ring(r) => Ok(r.clone()),
            v => Err(Self::wrong(name, "ring", v)),
        }
    }

    fn ideal(&self, name: &Name) -> Result<IdealPres, Diagnostic> {
        match self.get(name)? {
            Binding::Ideal(i) => Ok(i.clone()),
            v => Err(Self::wrong(name, "ideal", v)),
        }
    }

    fn map(&self, name: &Name) -> Result<LocalMapPres, Diagnostic> {
        match self.get(name)? {
            Binding::Map(m) => Ok(m.clone()),
            v => Err(Self::wrong(name, "map", v)),
        }
    }

    fn bind(&mut self, name: &Name, v: Binding) {
        self.env.insert(name.node.clone(), v);
    }

    /// Rejects jet computations that would not fit in memory.
    fn guard_jets(&self, nvars: usize, span: Span) -> Result<(), Diagnostic> {
        let degree = self.trunc as u128 + 2;
        let n = nvars as u128;
        if binom(n + degree, n) > MAX_JET_MONOMIALS {
            return Err(Diagnostic::invalid(
                format!("{nvars} variables at truncation degree {} exceed the jet size limit", self.trunc),
                span,
            ));
        }
        Ok(())
    }

    fn stmt(&mut self, stmt: &Stmt, span: Span) -> Result<(), Diagnostic> {
        match stmt {
            Stmt::Field(f) => self.field = Some(field_spec(&f.node)),
            Stmt::Ring { name, vars, relations, .. } => {
                self.guard_jets(vars.len(), span)?;
                let names: Vec<String> = vars.iter().map(|v| v.node.clone()).collect();
                let rels =
                    relations.iter().map(|r| self.eval(r, &names)).collect::<Result<Vec<_>, _>>()?;
                let ring = LocalRingPres::new(self.field(), names, rels, self.trunc)
                    .map_err(algebra(span))?;
                self.bind(name, Binding::Ring(ring.into_ring()));
            }
            Stmt::Ideal { name, ideal } => {
                let value = match ideal {
                    IdealExpr::Gens { gens, ring } => {
                        let ring = self.ring(ring)?;
                        let polys = gens
                            .iter()
                            .map(|g| self.eval(g, ring.vars()))
                            .collect::<Result<Vec<_>, _>>()?;
                        IdealPres::new(ring, polys).map_err(algebra(span))?
                    }
                    IdealExpr::Maximal { power, ring } => {
                        let ring = self.ring(ring)?;
                        let n = ring.nvars() as u128;
                        let count = if n == 0 { 0 } else { binom(n + *power as u128 - 1, n - 1) };
                        if count > MAX_TERMS as u128 {
                            return Err(Diagnostic::invalid("too many generators", span));
                        }
                        IdealPres::maximal_power(ring, *power)
                    }
                    IdealExpr::Extend { ideal, map } => {
                        let (i, f) = (self.ideal(ideal)?, self.map(map)?);
                        f.extend_ideal(&i).map_err(algebra(span))?
                    }
                };
                self.bind(name, Binding::Ideal(value));
            }
            Stmt::Map { name, source, target, images } => {
                let (a, b) = (self.ring(source)?, self.ring(target)?);
                self.guard_jets(b.nvars(), span)?;
                let polys =
                    images.iter().map(|g| self.eval(g, b.vars())).collect::<Result<Vec<_>, _>>()?;
                let f = LocalMapPres::new(a, b, polys, self.trunc).map_err(algebra(span))?;
                self.bind(name, Binding::Map(f));
            }
            Stmt::Quotient { ring, map, source, ideal } => {
                let (a, i) = (self.ring(source)?, self.ideal(ideal)?);
                let i = i.over(a.clone()).map_err(algebra(ideal.span))?;
                let (q, p) = quotient(&a, &i).map_err(algebra(span))?;
                self.bind(ring, Binding::Ring(q));
                self.bind(map, Binding::Map(p));
            }
            Stmt::Compose { name, second, first } => {
                let (g, f) = (self.map(second)?, self.map(first)?);
                self.guard_jets(g.target().nvars(), span)?;
                let h = compose(&f, &g).map_err(algebra(span))?;
                self.bind(name, Binding::Map(h));
            }
            Stmt::Induced { name, map, ideal } => {
                let (f, i) = (self.map(map)?, self.ideal(ideal)?);
                let i = i.over(f.source().clone()).map_err(algebra(ideal.span))?;
                let g = f.induced(&i).map_err(algebra(span))?;
                self.bind(name, Binding::Map(g));
            }
            Stmt::Fiber { name, map } => {
                let f = self.map(map)?;
                let ring = fiber_ring(&f).map_err(algebra(span))?;
                self.bind(name, Binding::Ring(ring));
            }
            Stmt::Diagram { name, shape, orientation } => {
                let o = match orientation {
                    Orientation::Clockwise => CoreOrientation::Clockwise,
                    Orientation::Anticlockwise => CoreOrientation::Anticlockwise,
                };
                let d = match shape {
                    DiagramExpr::Triangle(a, b) => {
                        DiagramShape::triangle(self.map(a)?, self.map(b)?, o)
                    }
                    DiagramExpr::Square(t, r, l, b) => DiagramShape::square(
                        self.map(t)?,
                        self.map(r)?,
                        self.map(l)?,
                        self.map(b)?,
                        o,
                    ),
                }
                .map_err(algebra(span))?;
                self.bind(name, Binding::Diagram(d));
            }
            Stmt::Set(SetOption::TruncDegree(n)) => {
                let n_ = n.node as usize;
                if !(2..=MAX_TRUNC_DEGREE).contains(&n_) {
                    return Err(Diagnostic::invalid(
                        format!("truncation degree must lie in 2..={MAX_TRUNC_DEGREE}"),
                        n.span,
                    ));
                }
                self.trunc = n_;
            }
            Stmt::Set(SetOption::DimOverride(r, d)) => {
                let ring = self.ring(r)?;
                let ring = (*ring).clone().with_dim_override(d.node as usize).into_ring();
                self.bind(r, Binding::Ring(ring));
            }
            Stmt::Compute(q) => {
                let entry = self.compute(q, span)?;
                self.entries.push(entry);
            }
            Stmt::Check(q) => {
                let entry = self.check(q, span)?;
                if entry.verdict == Some(Value::Bool(false)) {
                    self.failures.push(Failure {
                        query: entry.query.clone(),
                        subject: entry.subject.clone(),
                        line: span.line,
                        column: span.column,
                    });
                }
                self.entries.push(entry);
            }
        }
        Ok(())
    }

    fn eval(&self, e: &ExprNode, vars: &[String]) -> Result<Poly, Diagnostic> {
        let field = self.field();
        let n = vars.len();
        let too_large = || Diagnostic::invalid("polynomial is too large", e.span);
        let mul = |a: &Poly, b: &Poly| -> Result<Poly, Diagnostic> {
            if a.num_terms().saturating_mul(b.num_terms()) > MAX_TERMS {
                return Err(too_large());
            }
            let p = a * b;
            if p.num_terms() > MAX_TERMS {
                return Err(too_large());
            }
            Ok(p)
        };
        Ok(match &e.node {
            Expr::Int(v) => Poly::constant(field, n, field.from_bigint(&BigInt::from(v.clone()))),
            Expr::Var(v) => match vars.iter().position(|w| w == v) {
                Some(i) => Poly::var(field, n, i),
                None => return Err(Diagnostic::new(ErrorKind::UndeclaredName(v.clone()), e.span)),
            },
            Expr::Neg(a) => -&self.eval(a, vars)?,
            Expr::Add(a, b) => &self.eval(a, vars)? + &self.eval(b, vars)?,
            Expr::Sub(a, b) => &self.eval(a, vars)? - &self.eval(b, vars)?,
            Expr::Mul(a, b) => mul(&self.eval(a, vars)?, &self.eval(b, vars)?)?,
            Expr::Div(a, d) => {
                let inv = field.from_bigint(&BigInt::from(d.node.clone())).inv().ok_or_else(|| {
                    Diagnostic::invalid(format!("{} is zero in {field}", d.node), d.span)
                })?;
                self.eval(a, vars)?.scale(&inv)
            }
            Expr::Pow(a, k) => {
                let base = self.eval(a, vars)?;
                if base.num_terms() <= 1 {
                    base.pow(*k)
                } else {
                    let (mut acc, mut sq, mut k) = (Poly::one(field, n), base, *k);
                    while k > 0 {
                        if k & 1 == 1 {
                            acc = mul(&acc, &sq)?;
                        }
                        k >>= 1;
                        if k > 0 {
                            sq = mul(&sq, &sq)?;
                        }
                    }
                    acc
                }
            }
        })
    }

    fn subject(q: &Query) -> String {
        q.args.iter().map(|a| a.node.as_str()).collect::<Vec<_>>().join(" ")
    }

    fn entry(q: &Query, value: Option<Value>, verdict: Option<Value>, caveats: Vec<String>) -> Entry {
        Entry { query: q.name.node.clone(), subject: Self::subject(q), value, verdict, caveats }
    }

    fn map_caveats(f: &LocalMapPres) -> Vec<String> {
        vec![format!("verified_degree={}", f.verified_degree())]
    }

    fn stabilized(s: Stabilized) -> (Value, Vec<String>) {
        let caveats = if s.stable { Vec::new() } else { vec!["unstable".to_string()] };
        (json!(s.value), caveats)
    }

    fn optional(v: Option<usize>) -> Value {
        v.map_or(json!("unknown"), |v| json!(v))
    }

    fn compute(&self, q: &Query, span: Span) -> Result<Entry, Diagnostic> {
        let err = algebra(span);
        let arg = |i: usize| &q.args[i];
        let (value, caveats) = match q.name.node.as_str() {
            "edim" => (json!(edim(&*self.ring(arg(0))?)), vec![]),
            "dim" => (Self::optional(krull_dim(&*self.ring(arg(0))?)), vec![]),
            "cdim" => (Self::optional(cdim(&*self.ring(arg(0))?)), vec![]),
            "eps2" => {
                let ring = self.ring(arg(0))?;
                self.guard_jets(ring.nvars(), span)?;
                Self::stabilized(eps2(&ring, self.trunc).map_err(err)?)
            }
            "mu" => {
                let i = self.ideal(arg(0))?;
                self.guard_jets(i.ring().nvars(), span)?;
                Self::stabilized(mu(&i, self.trunc).map_err(err)?)
            }
            "delta" => (json!(delta(&self.ideal(arg(0))?)), vec![]),
            "delta_phi" => {
                let f = self.map(arg(0))?;
                let i = self.ideal(arg(1))?.over(f.source().clone()).map_err(algebra(arg(1).span))?;
                (json!(delta_phi(&f, &i).map_err(err)?), Self::map_caveats(&f))
            }
            "rd" => match self.get(arg(0))? {
                Binding::Map(f) => (json!(rd(f).map_err(err)?), Self::map_caveats(f)),
                Binding::Diagram(d) => {
                    let v = match d.kind {
                        DiagramKind::Triangle(_) => triangle_rd(d),
                        DiagramKind::Square(_) => square_rd(d),
                    }
                    .map_err(err)?;
                    (json!(v), vec![])
                }
                v => return Err(Self::wrong(arg(0), "map or diagram", v)),
            },
            "fiber_edim" => {
                let f = self.map(arg(0))?;
                (json!(fiber_edim(&f)), Self::map_caveats(&f))
            }
            "linearized" => {
                let f = self.map(arg(0))?;
                let lin = linearized_map(&f).map_err(err)?;
                let rows: Vec<Vec<String>> =
                    lin.matrix.rows().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
                (json!({"matrix": rows, "rank": lin.rank, "nullity": lin.nullity}), Self::map_caveats(&f))
            }
            "flatness" => {
                let f = self.map(arg(0))?;
                let status = flatness_status(&f).map_err(err)?;
                (serde_json::to_value(status).unwrap(), vec![])
            }
            "report" => {
                let report = match self.get(arg(0))? {
                    Binding::Ring(r) => {
                        self.guard_jets(r.nvars(), span)?;
                        InvariantReport::for_ring(r, self.trunc)
                    }
                    Binding::Map(f) => {
                        self.guard_jets(f.source().nvars().max(f.target().nvars()), span)?;
                        InvariantReport::for_map(f, self.trunc)
                    }
                    v => return Err(Self::wrong(arg(0), "ring or map", v)),
                }
                .map_err(err)?;
                (serde_json::to_value(report).unwrap(), vec![])
            }
            other => unreachable!("query `{other}` accepted by the parser"),
        };
        Ok(Self::entry(q, Some(value), None, caveats))
    }

    fn check(&self, q: &Query, span: Span) -> Result<Entry, Diagnostic> {
        let err = algebra(span);
        let arg = &q.args[0];
        let truth = |t: Truth| match t.known() {
            Some(b) => json!(b),
            None => json!("unknown"),
        };
        let (verdict, caveats) = match q.name.node.as_str() {
            "basically_regular" => match self.get(arg)? {
                Binding::Map(f) => (json!(rd(f).map_err(err)? == 0), Self::map_caveats(f)),
                Binding::Diagram(d) => {
                    let v = match d.kind {
                        DiagramKind::Triangle(_) => triangle_rd(d),
                        DiagramKind::Square(_) => square_rd(d),
                    }
                    .map_err(err)?;
                    (json!(v == 0), vec![])
                }
                v => return Err(Self::wrong(arg, "map or diagram", v)),
            },
            "weakly_regular" => {
                let f = self.map(arg)?;
                (truth(is_weakly_regular(&f).map_err(err)?), Self::map_caveats(&f))
            }
            "flat" => {
                let f = self.map(arg)?;
                (truth(flatness_status(&f).map_err(err)?.truth()), Self::map_caveats(&f))
            }
            "regular" => (truth(is_regular(&*self.ring(arg)?)), vec![]),
            "contained_in_m2" => (json!(self.ideal(arg)?.contained_in_m2()), vec![]),
            other => unreachable!("predicate `{other}` accepted by the parser"),
        };
        Ok(Self::entry(q, None, Some(verdict), caveats))
    }
}
