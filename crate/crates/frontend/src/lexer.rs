use std::fmt;

use crate::diag::{Diagnostic, ErrorKind};
use crate::span::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Eq,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Dot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Int(s) => return write!(f, "`{s}`"),
            Tok::Arrow => "`->`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Colon => "`:`",
            Tok::Eq => "`=`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Caret => "`^`",
            Tok::Slash => "`/`",
            Tok::Dot => "`.`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Splits `src` into tokens. `#` starts a comment that runs to the end of
/// the line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut line_start) = (1, 0);
    let column = |pos: usize, line_start: usize| src[line_start..pos].chars().count() + 1;
    while let Some(&(pos, c)) = chars.peek() {
        let span_at = |end: usize, line: usize, line_start: usize| Span {
            start: pos,
            end,
            line,
            column: column(pos, line_start),
        };
        if c == '\n' {
            chars.next();
            line += 1;
            line_start = pos + 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = pos;
            while let Some(&(p, c)) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                end = p + c.len_utf8();
                chars.next();
            }
            out.push(Token {
                tok: Tok::Ident(src[pos..end].to_string()),
                span: span_at(end, line, line_start),
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(p, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = p + 1;
                chars.next();
            }
            out.push(Token {
                tok: Tok::Int(src[pos..end].to_string()),
                span: span_at(end, line, line_start),
            });
            continue;
        }
        chars.next();
        let tok = match c {
            '-' if chars.peek().is_some_and(|&(_, c)| c == '>') => {
                chars.next();
                Tok::Arrow
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            '=' => Tok::Eq,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '.' => Tok::Dot,
            _ => {
                return Err(Diagnostic::new(
                    ErrorKind::Syntax { expected: Vec::new(), found: format!("character {c:?}") },
                    span_at(pos + c.len_utf8(), line, line_start),
                ))
            }
        };
        let end = if tok == Tok::Arrow { pos + 2 } else { pos + 1 };
        out.push(Token { tok, span: span_at(end, line, line_start) });
    }
    let end = src.len();
    out.push(Token {
        tok: Tok::Eof,
        span: Span { start: end, end, line, column: column(end, line_start) },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = tokenize("map f : A -> B = [y^2]; # comment\n  x").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.tok).collect();
        assert_eq!(kinds[4], &Tok::Arrow);
        assert_eq!(kinds[10], &Tok::Int("2".into()));
        let x = &toks[toks.len() - 2];
        assert_eq!((x.span.line, x.span.column, x.span.start), (2, 3, 36));
    }

    #[test]
    fn bad_character() {
        let err = tokenize("ring A = @").unwrap_err();
        assert_eq!(err.span.column, 10);
    }
}
