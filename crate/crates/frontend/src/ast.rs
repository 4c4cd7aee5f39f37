//! Syntax tree of a session, and its canonical printed form.

use std::fmt;

use num_bigint::BigUint;

use crate::span::{Name, Node};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldName {
    Rationals,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigUint),
    Var(String),
    Neg(Box<ExprNode>),
    Add(Box<ExprNode>, Box<ExprNode>),
    Sub(Box<ExprNode>, Box<ExprNode>),
    Mul(Box<ExprNode>, Box<ExprNode>),
    /// Division by a nonzero integer literal.
    Div(Box<ExprNode>, Node<BigUint>),
    Pow(Box<ExprNode>, u32),
}

pub type ExprNode = Node<Expr>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    Gens { gens: Vec<ExprNode>, ring: Name },
    /// `maximal^k in A`; `k = 1` when omitted.
    Maximal { power: u32, ring: Name },
    /// `extend I along f`: the ideal `I B` of the target.
    Extend { ideal: Name, map: Name },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    Anticlockwise,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramExpr {
    Triangle(Name, Name),
    /// top, right, left, bottom
    Square(Name, Name, Name, Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub name: Name,
    pub args: Vec<Name>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetOption {
    TruncDegree(Node<u32>),
    DimOverride(Name, Node<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Field(Node<FieldName>),
    Ring { name: Name, field: Node<FieldName>, vars: Vec<Name>, relations: Vec<ExprNode> },
    Ideal { name: Name, ideal: IdealExpr },
    Map { name: Name, source: Name, target: Name, images: Vec<ExprNode> },
    /// `quotient Q, p = A / I;`
    Quotient { ring: Name, map: Name, source: Name, ideal: Name },
    /// `compose h = g . f;` declares `h = g ∘ f`.
    Compose { name: Name, second: Name, first: Name },
    /// `induced g = f mod I;` declares `f_I: A/I -> B/IB`.
    Induced { name: Name, map: Name, ideal: Name },
    /// `fiber F = f;` declares the closed fiber ring of `f`.
    Fiber { name: Name, map: Name },
    Diagram { name: Name, shape: DiagramExpr, orientation: Orientation },
    Compute(Query),
    Check(Query),
    Set(SetOption),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Session {
    pub stmts: Vec<Node<Stmt>>,
}

impl fmt::Display for FieldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldName::Rationals => f.write_str("QQ"),
            FieldName::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl Orientation {
    pub fn name(self) -> &'static str {
        match self {
            Orientation::Clockwise => "clockwise",
            Orientation::Anticlockwise => "anticlockwise",
        }
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Int(_) | Expr::Var(_) => 5,
    }
}

fn write_prec(f: &mut fmt::Formatter<'_>, e: &ExprNode, min: u8) -> fmt::Result {
    if prec(&e.node) < min {
        write!(f, "({})", e.node)
    } else {
        write!(f, "{}", e.node)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_prec(f, e, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_prec(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_prec(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_prec(f, a, 2)?;
                f.write_str("*")?;
                write_prec(f, b, 3)
            }
            Expr::Div(a, n) => {
                write_prec(f, a, 2)?;
                write!(f, "/{}", n.node)
            }
            Expr::Pow(a, e) => {
                write_prec(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

fn list<T: fmt::Display>(items: &[Node<T>]) -> String {
    items.iter().map(|i| i.node.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Field(name) => write!(f, "field {};", name.node),
            Stmt::Ring { name, field, vars, relations } => {
                write!(f, "ring {} = local {}[{}]", name.node, field.node, list(vars))?;
                if !relations.is_empty() {
                    write!(f, "/({})", list(relations))?;
                }
                f.write_str(";")
            }
            Stmt::Ideal { name, ideal } => {
                write!(f, "ideal {} = ", name.node)?;
                match ideal {
                    IdealExpr::Gens { gens, ring } => write!(f, "({}) in {}", list(gens), ring.node)?,
                    IdealExpr::Maximal { power: 1, ring } => write!(f, "maximal in {}", ring.node)?,
                    IdealExpr::Maximal { power, ring } => {
                        write!(f, "maximal^{power} in {}", ring.node)?
                    }
                    IdealExpr::Extend { ideal, map } => {
                        write!(f, "extend {} along {}", ideal.node, map.node)?
                    }
                }
                f.write_str(";")
            }
            Stmt::Map { name, source, target, images } => write!(
                f,
                "map {} : {} -> {} = [{}];",
                name.node,
                source.node,
                target.node,
                list(images)
            ),
            Stmt::Quotient { ring, map, source, ideal } => {
                write!(f, "quotient {}, {} = {} / {};", ring.node, map.node, source.node, ideal.node)
            }
            Stmt::Compose { name, second, first } => {
                write!(f, "compose {} = {} . {};", name.node, second.node, first.node)
            }
            Stmt::Induced { name, map, ideal } => {
                write!(f, "induced {} = {} mod {};", name.node, map.node, ideal.node)
            }
            Stmt::Fiber { name, map } => write!(f, "fiber {} = {};", name.node, map.node),
            Stmt::Diagram { name, shape, orientation } => {
                write!(f, "diagram {} = ", name.node)?;
                match shape {
                    DiagramExpr::Triangle(a, b) => write!(f, "triangle({}, {})", a.node, b.node)?,
                    DiagramExpr::Square(t, r, l, b) => {
                        write!(f, "square({}, {}, {}, {})", t.node, r.node, l.node, b.node)?
                    }
                }
                write!(f, " {};", orientation.name())
            }
            Stmt::Compute(q) | Stmt::Check(q) => {
                f.write_str(if matches!(self, Stmt::Compute(_)) { "compute " } else { "check " })?;
                f.write_str(&q.name.node)?;
                for a in &q.args {
                    write!(f, " {}", a.node)?;
                }
                f.write_str(";")
            }
            Stmt::Set(SetOption::TruncDegree(n)) => write!(f, "set trunc_degree {};", n.node),
            Stmt::Set(SetOption::DimOverride(r, d)) => {
                write!(f, "set dim_override {} {};", r.node, d.node)
            }
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{}", s.node)?;
        }
        Ok(())
    }
}
