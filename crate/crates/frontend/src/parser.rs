//! Recursive-descent parser with name resolution.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::ast::{DiagramExpr, Expr, ExprNode, FieldName, IdealExpr, Orientation, Query, Session, SetOption, Stmt};
use crate::diag::{Diagnostic, ErrorKind};
use crate::lexer::{tokenize, Tok, Token};
use crate::queries::lookup;
use crate::span::{Name, Node, Span};

/// Largest exponent accepted in a polynomial.
pub const MAX_EXPONENT: u32 = 1 << 16;

/// What a declared name refers to, as far as parsing needs to know.
#[derive(Clone, Debug)]
enum Entity {
    Ring { vars: Vec<String> },
    Ideal { vars: Vec<String> },
    Map { source_vars: Vec<String>, target_vars: Vec<String> },
    Diagram,
}

impl Entity {
    fn kind(&self) -> &'static str {
        match self {
            Entity::Ring { .. } => "ring",
            Entity::Ideal { .. } => "ideal",
            Entity::Map { .. } => "map",
            Entity::Diagram => "diagram",
        }
    }
}

pub fn parse_session(src: &str) -> Result<Session, Diagnostic> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, scope: HashMap::new(), field: None };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        stmts.push(p.stmt()?);
    }
    Ok(Session { stmts })
}

/// Like [`parse_session`], for input that may not be UTF-8.
pub fn parse_bytes(bytes: &[u8]) -> Result<Session, Diagnostic> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse_session(s),
        Err(e) => {
            let at = e.valid_up_to();
            let prefix = std::str::from_utf8(&bytes[..at]).unwrap_or_default();
            let line = prefix.matches('\n').count() + 1;
            let column = prefix.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(Diagnostic::invalid(
                "input is not valid UTF-8",
                Span { start: at, end: at + 1, line, column },
            ))
        }
    }
}

/// Parses a field name such as `QQ` or `GF(5)`.
pub fn parse_field(src: &str) -> Result<FieldName, Diagnostic> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, scope: HashMap::new(), field: None };
    let f = p.field_name()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(f.node)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    scope: HashMap<String, Entity>,
    field: Option<FieldName>,
}

fn syntax(expected: &[&str], found: &Token) -> Diagnostic {
    Diagnostic::new(
        ErrorKind::Syntax {
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.tok.to_string(),
        },
        found.span,
    )
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn token(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if *self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, Diagnostic> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(syntax(&[what], self.token()))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, Diagnostic> {
        if self.is_keyword(kw) {
            Ok(self.bump().span)
        } else {
            Err(syntax(&[&format!("`{kw}`")], self.token()))
        }
    }

    fn ident(&mut self) -> Result<Name, Diagnostic> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok(Node::new(s, self.bump().span)),
            _ => Err(syntax(&["a name"], self.token())),
        }
    }

    fn int<T: TryFrom<u64>>(&mut self, what: &str) -> Result<Node<T>, Diagnostic> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let span = self.bump().span;
                s.parse::<u64>()
                    .ok()
                    .and_then(|v| T::try_from(v).ok())
                    .map(|v| Node::new(v, span))
                    .ok_or_else(|| Diagnostic::invalid(format!("{what} `{s}` is out of range"), span))
            }
            _ => Err(syntax(&[what], self.token())),
        }
    }

    fn declare(&mut self, name: &Name, entity: Entity) -> Result<(), Diagnostic> {
        if self.scope.contains_key(&name.node) {
            return Err(Diagnostic::new(ErrorKind::Redeclaration(name.node.clone()), name.span));
        }
        self.scope.insert(name.node.clone(), entity);
        Ok(())
    }

    fn resolve(&self, name: &Name) -> Result<&Entity, Diagnostic> {
        self.scope
            .get(&name.node)
            .ok_or_else(|| Diagnostic::new(ErrorKind::UndeclaredName(name.node.clone()), name.span))
    }

    fn resolve_kind(&self, name: &Name, expected: &str) -> Result<&Entity, Diagnostic> {
        let e = self.resolve(name)?;
        if e.kind() != expected {
            return Err(Diagnostic::new(
                ErrorKind::WrongKind {
                    name: name.node.clone(),
                    expected: expected.into(),
                    found: e.kind().into(),
                },
                name.span,
            ));
        }
        Ok(e)
    }

    fn ring_vars(&self, name: &Name) -> Result<Vec<String>, Diagnostic> {
        match self.resolve_kind(name, "ring")? {
            Entity::Ring { vars } => Ok(vars.clone()),
            _ => unreachable!(),
        }
    }

    fn map_vars(&self, name: &Name) -> Result<(Vec<String>, Vec<String>), Diagnostic> {
        match self.resolve_kind(name, "map")? {
            Entity::Map { source_vars, target_vars } => Ok((source_vars.clone(), target_vars.clone())),
            _ => unreachable!(),
        }
    }

    fn ideal_vars(&self, name: &Name) -> Result<Vec<String>, Diagnostic> {
        match self.resolve_kind(name, "ideal")? {
            Entity::Ideal { vars } => Ok(vars.clone()),
            _ => unreachable!(),
        }
    }

    fn stmt(&mut self) -> Result<Node<Stmt>, Diagnostic> {
        let start = self.token().span;
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(syntax(&["a statement"], self.token())),
        };
        if kw != "field" && kw != "set" && self.field.is_none() {
            return Err(Diagnostic::invalid(
                format!("`{kw}` statement before the `field` declaration"),
                start,
            ));
        }
        self.bump();
        let stmt = match kw.as_str() {
            "field" => {
                let f = self.field_name()?;
                if self.field.is_some() {
                    return Err(Diagnostic::new(ErrorKind::Redeclaration("field".into()), start));
                }
                self.field = Some(f.node.clone());
                Stmt::Field(f)
            }
            "ring" => self.ring_decl()?,
            "ideal" => self.ideal_decl()?,
            "map" => self.map_decl()?,
            "quotient" => {
                let ring = self.ident()?;
                self.expect(Tok::Comma, "`,`")?;
                let map = self.ident()?;
                self.expect(Tok::Eq, "`=`")?;
                let source = self.ident()?;
                self.expect(Tok::Slash, "`/`")?;
                let ideal = self.ident()?;
                let vars = self.ring_vars(&source)?;
                if self.ideal_vars(&ideal)? != vars {
                    return Err(Diagnostic::invalid(
                        format!("`{}` is not an ideal of `{}`", ideal.node, source.node),
                        ideal.span,
                    ));
                }
                self.declare(&ring, Entity::Ring { vars: vars.clone() })?;
                self.declare(&map, Entity::Map { source_vars: vars.clone(), target_vars: vars })?;
                Stmt::Quotient { ring, map, source, ideal }
            }
            "compose" => {
                let name = self.ident()?;
                self.expect(Tok::Eq, "`=`")?;
                let second = self.ident()?;
                self.expect(Tok::Dot, "`.`")?;
                let first = self.ident()?;
                let (source_vars, _) = self.map_vars(&first)?;
                let (_, target_vars) = self.map_vars(&second)?;
                self.declare(&name, Entity::Map { source_vars, target_vars })?;
                Stmt::Compose { name, second, first }
            }
            "induced" => {
                let name = self.ident()?;
                self.expect(Tok::Eq, "`=`")?;
                let map = self.ident()?;
                self.keyword("mod")?;
                let ideal = self.ident()?;
                let vars = self.map_vars(&map)?;
                self.ideal_vars(&ideal)?;
                self.declare(&name, Entity::Map { source_vars: vars.0, target_vars: vars.1 })?;
                Stmt::Induced { name, map, ideal }
            }
            "fiber" => {
                let name = self.ident()?;
                self.expect(Tok::Eq, "`=`")?;
                let map = self.ident()?;
                let (_, vars) = self.map_vars(&map)?;
                self.declare(&name, Entity::Ring { vars })?;
                Stmt::Fiber { name, map }
            }
            "diagram" => self.diagram_decl()?,
            "compute" | "check" => {
                let q = self.query(kw == "check")?;
                if kw == "check" {
                    Stmt::Check(q)
                } else {
                    Stmt::Compute(q)
                }
            }
            "set" => self.set_option()?,
            _ => {
                return Err(syntax(&["a statement"], &self.tokens[self.pos - 1]));
            }
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(Node::new(stmt, start.to(self.prev_span())))
    }

    fn field_name(&mut self) -> Result<Node<FieldName>, Diagnostic> {
        let start = self.token().span;
        if self.is_keyword("QQ") {
            self.bump();
            return Ok(Node::new(FieldName::Rationals, start));
        }
        if !self.is_keyword("GF") {
            return Err(syntax(&["`QQ`", "`GF(p)`"], self.token()));
        }
        self.bump();
        self.expect(Tok::LParen, "`(`")?;
        let p: Node<u64> = self.int("a prime")?;
        self.expect(Tok::RParen, "`)`")?;
        if rdefect_core::algebra::FieldSpec::prime(p.node).is_err() {
            return Err(Diagnostic::invalid(format!("{} is not a supported prime", p.node), p.span));
        }
        Ok(Node::new(FieldName::Prime(p.node), start.to(self.prev_span())))
    }

    fn ring_decl(&mut self) -> Result<Stmt, Diagnostic> {
        let name = self.ident()?;
        self.expect(Tok::Eq, "`=`")?;
        self.keyword("local")?;
        let field = self.field_name()?;
        if Some(&field.node) != self.field.as_ref() {
            return Err(Diagnostic::invalid(
                format!("ring over {} in a session over {}", field.node, self.field.as_ref().unwrap()),
                field.span,
            ));
        }
        self.expect(Tok::LBracket, "`[`")?;
        let mut vars: Vec<Name> = Vec::new();
        if *self.peek() != Tok::RBracket {
            loop {
                let v = self.ident()?;
                if vars.iter().any(|w| w.node == v.node) {
                    return Err(Diagnostic::new(ErrorKind::Redeclaration(v.node.clone()), v.span));
                }
                vars.push(v);
                if !self.eat(Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket, "`]`")?;
        let names: Vec<String> = vars.iter().map(|v| v.node.clone()).collect();
        let mut relations = Vec::new();
        if self.eat(Tok::Slash) {
            self.expect(Tok::LParen, "`(`")?;
            relations = self.poly_list(Tok::RParen, Some(&names))?;
            self.expect(Tok::RParen, "`)`")?;
        }
        self.declare(&name, Entity::Ring { vars: names })?;
        Ok(Stmt::Ring { name, field, vars, relations })
    }

    fn ideal_decl(&mut self) -> Result<Stmt, Diagnostic> {
        let name = self.ident()?;
        self.expect(Tok::Eq, "`=`")?;
        let (ideal, vars) = if self.eat(Tok::LParen) {
            let gens = self.poly_list(Tok::RParen, None)?;
            self.expect(Tok::RParen, "`)`")?;
            self.keyword("in")?;
            let ring = self.ident()?;
            let vars = self.ring_vars(&ring)?;
            for g in &gens {
                check_vars(g, &vars)?;
            }
            (IdealExpr::Gens { gens, ring }, vars)
        } else if self.is_keyword("maximal") {
            self.bump();
            let mut power = 1;
            if self.eat(Tok::Caret) {
                let k: Node<u32> = self.int("an exponent")?;
                if k.node == 0 || k.node > MAX_EXPONENT {
                    return Err(Diagnostic::invalid("power of the maximal ideal must be positive", k.span));
                }
                power = k.node;
            }
            self.keyword("in")?;
            let ring = self.ident()?;
            let vars = self.ring_vars(&ring)?;
            (IdealExpr::Maximal { power, ring }, vars)
        } else if self.is_keyword("extend") {
            self.bump();
            let ideal = self.ident()?;
            self.keyword("along")?;
            let map = self.ident()?;
            let iv = self.ideal_vars(&ideal)?;
            let (sv, tv) = self.map_vars(&map)?;
            if iv != sv {
                return Err(Diagnostic::invalid(
                    format!("`{}` is not an ideal of the source of `{}`", ideal.node, map.node),
                    ideal.span,
                ));
            }
            (IdealExpr::Extend { ideal, map }, tv)
        } else {
            return Err(syntax(&["`(`", "`maximal`", "`extend`"], self.token()));
        };
        self.declare(&name, Entity::Ideal { vars })?;
        Ok(Stmt::Ideal { name, ideal })
    }

    fn map_decl(&mut self) -> Result<Stmt, Diagnostic> {
        let name = self.ident()?;
        self.expect(Tok::Colon, "`:`")?;
        let source = self.ident()?;
        self.expect(Tok::Arrow, "`->`")?;
        let target = self.ident()?;
        let source_vars = self.ring_vars(&source)?;
        let target_vars = self.ring_vars(&target)?;
        self.expect(Tok::Eq, "`=`")?;
        self.expect(Tok::LBracket, "`[`")?;
        let images = self.poly_list(Tok::RBracket, Some(&target_vars))?;
        self.expect(Tok::RBracket, "`]`")?;
        self.declare(&name, Entity::Map { source_vars, target_vars })?;
        Ok(Stmt::Map { name, source, target, images })
    }

    fn diagram_decl(&mut self) -> Result<Stmt, Diagnostic> {
        let name = self.ident()?;
        self.expect(Tok::Eq, "`=`")?;
        let kind = self.ident()?;
        let arity = match kind.node.as_str() {
            "triangle" => 2,
            "square" => 4,
            _ => return Err(syntax(&["`triangle`", "`square`"], &self.tokens[self.pos - 1])),
        };
        self.expect(Tok::LParen, "`(`")?;
        let mut edges = Vec::new();
        for i in 0..arity {
            if i > 0 {
                self.expect(Tok::Comma, "`,`")?;
            }
            let e = self.ident()?;
            self.map_vars(&e)?;
            edges.push(e);
        }
        self.expect(Tok::RParen, "`)`")?;
        let orientation = if self.is_keyword("clockwise") {
            self.bump();
            Orientation::Clockwise
        } else if self.is_keyword("anticlockwise") {
            self.bump();
            Orientation::Anticlockwise
        } else {
            Orientation::Clockwise
        };
        let mut it = edges.into_iter();
        let mut next = || it.next().unwrap();
        let shape = if arity == 2 {
            DiagramExpr::Triangle(next(), next())
        } else {
            DiagramExpr::Square(next(), next(), next(), next())
        };
        self.declare(&name, Entity::Diagram)?;
        Ok(Stmt::Diagram { name, shape, orientation })
    }

    fn query(&mut self, check: bool) -> Result<Query, Diagnostic> {
        let name = self.ident()?;
        let mut args = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            args.push(self.ident()?);
        }
        let Some(sig) = lookup(&name.node, check) else {
            let what = if check { "predicate" } else { "invariant" };
            return Err(Diagnostic::invalid(format!("unknown {what} `{}`", name.node), name.span));
        };
        if args.len() != sig.len() {
            let span = args.last().map_or(name.span, |a| name.span.to(a.span));
            return Err(Diagnostic::invalid(
                format!("`{}` takes {} argument(s), found {}", name.node, sig.len(), args.len()),
                span,
            ));
        }
        for (a, kind) in args.iter().zip(sig) {
            let e = self.resolve(a)?;
            if !kind.accepts(e.kind()) {
                return Err(Diagnostic::new(
                    ErrorKind::WrongKind {
                        name: a.node.clone(),
                        expected: kind.describe().into(),
                        found: e.kind().into(),
                    },
                    a.span,
                ));
            }
        }
        Ok(Query { name, args })
    }

    fn set_option(&mut self) -> Result<Stmt, Diagnostic> {
        let opt = self.ident()?;
        match opt.node.as_str() {
            "trunc_degree" => Ok(Stmt::Set(SetOption::TruncDegree(self.int("a degree")?))),
            "dim_override" => {
                if self.field.is_none() {
                    return Err(Diagnostic::invalid("`dim_override` before the `field` declaration", opt.span));
                }
                let ring = self.ident()?;
                self.ring_vars(&ring)?;
                Ok(Stmt::Set(SetOption::DimOverride(ring, self.int("a dimension")?)))
            }
            _ => Err(syntax(&["`trunc_degree`", "`dim_override`"], &self.tokens[self.pos - 1])),
        }
    }

    /// Comma-separated polynomials up to `close` (not consumed). Variables
    /// are checked against `vars` when given.
    fn poly_list(&mut self, close: Tok, vars: Option<&[String]>) -> Result<Vec<ExprNode>, Diagnostic> {
        let mut out = Vec::new();
        if *self.peek() == close {
            return Ok(out);
        }
        loop {
            let e = self.expr()?;
            if let Some(vars) = vars {
                check_vars(&e, vars)?;
            }
            out.push(e);
            if !self.eat(Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn expr(&mut self) -> Result<ExprNode, Diagnostic> {
        let mut lhs = self.term()?;
        loop {
            let add = match self.peek() {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            lhs = Node::new(if add { Expr::Add(a, b) } else { Expr::Sub(a, b) }, span);
        }
    }

    fn term(&mut self) -> Result<ExprNode, Diagnostic> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    let span = lhs.span.to(rhs.span);
                    lhs = Node::new(Expr::Mul(Box::new(lhs), Box::new(rhs)), span);
                }
                Tok::Slash => {
                    self.bump();
                    let d = match self.peek().clone() {
                        Tok::Int(s) => Node::new(s.parse::<BigUint>().unwrap(), self.bump().span),
                        _ => return Err(syntax(&["an integer divisor"], self.token())),
                    };
                    if d.node.is_zero() {
                        return Err(Diagnostic::invalid("division by zero", d.span));
                    }
                    let span = lhs.span.to(d.span);
                    lhs = Node::new(Expr::Div(Box::new(lhs), d), span);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprNode, Diagnostic> {
        if *self.peek() == Tok::Minus {
            let start = self.bump().span;
            let inner = self.factor()?;
            let span = start.to(inner.span);
            return Ok(Node::new(Expr::Neg(Box::new(inner)), span));
        }
        let base = self.atom()?;
        if self.eat(Tok::Caret) {
            let e: Node<u32> = self.int("an exponent")?;
            if e.node > MAX_EXPONENT {
                return Err(Diagnostic::invalid(format!("exponent above {MAX_EXPONENT}"), e.span));
            }
            let span = base.span.to(e.span);
            return Ok(Node::new(Expr::Pow(Box::new(base), e.node), span));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprNode, Diagnostic> {
        match self.peek().clone() {
            Tok::Int(s) => Ok(Node::new(Expr::Int(s.parse().unwrap()), self.bump().span)),
            Tok::Ident(s) => Ok(Node::new(Expr::Var(s), self.bump().span)),
            Tok::LParen => {
                let start = self.bump().span;
                let mut e = self.expr()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                e.span = start.to(end);
                Ok(e)
            }
            _ => Err(syntax(&["a polynomial"], self.token())),
        }
    }
}

fn check_vars(e: &ExprNode, vars: &[String]) -> Result<(), Diagnostic> {
    match &e.node {
        Expr::Int(_) => Ok(()),
        Expr::Var(v) if vars.contains(v) => Ok(()),
        Expr::Var(v) => Err(Diagnostic::new(ErrorKind::UndeclaredName(v.clone()), e.span)),
        Expr::Neg(a) | Expr::Div(a, _) | Expr::Pow(a, _) => check_vars(a, vars),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            check_vars(a, vars)?;
            check_vars(b, vars)
        }
    }
}

