use std::fmt;

use crate::span::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax { expected: Vec<String>, found: String },
    UndeclaredName(String),
    Redeclaration(String),
    WrongKind { name: String, expected: String, found: String },
    /// A well-formed statement with an invalid value (bad field, bad
    /// option value, wrong argument count, ...).
    Invalid(String),
    /// Raised by the algebra library while executing a statement.
    Algebra(rdefect_core::Error),
}

/// An error with the span of the offending input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: ErrorKind,
    pub span: Span,
}

impl Diagnostic {
    pub fn new(kind: ErrorKind, span: Span) -> Self {
        Diagnostic { kind, span }
    }

    pub fn invalid(msg: impl Into<String>, span: Span) -> Self {
        Diagnostic::new(ErrorKind::Invalid(msg.into()), span)
    }

    /// The message followed by the offending line with a caret marker.
    /// Diagnostics without a position (line 0) render as `path: message`.
    pub fn render(&self, source: &str, path: &str) -> String {
        if self.span.line == 0 {
            return format!("{path}: {self}\n");
        }
        let mut out = format!("{path}:{}:{}: {self}\n", self.span.line, self.span.column);
        if let Some(line) = source.lines().nth(self.span.line.saturating_sub(1)) {
            let width = source
                .get(self.span.start..self.span.end)
                .map_or(1, |s| s.chars().take_while(|&c| c != '\n').count().max(1));
            out.push_str(&format!("  | {line}\n  | {}{}\n", " ".repeat(self.span.column.saturating_sub(1)), "^".repeat(width)));
        }
        out
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ErrorKind::Syntax { expected, found } => {
                write!(f, "syntax error: found {found}")?;
                if !expected.is_empty() {
                    write!(f, ", expected {}", expected.join(" or "))?;
                }
                Ok(())
            }
            ErrorKind::UndeclaredName(n) => write!(f, "undeclared name `{n}`"),
            ErrorKind::Redeclaration(n) => write!(f, "`{n}` is already declared"),
            ErrorKind::WrongKind { name, expected, found } => {
                write!(f, "`{name}` is a {found}, expected a {expected}")
            }
            ErrorKind::Invalid(msg) => f.write_str(msg),
            ErrorKind::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Diagnostic {}
