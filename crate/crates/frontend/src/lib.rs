//! Session language for local ring presentations: parsing, printing and
//! execution against `rdefect-core`.
//!
//! ```text
//! field QQ;
//! ring A = local QQ[t];
//! ring B = local QQ[y];
//! map f : A -> B = [y^2];
//! compute rd f;
//! check basically_regular f;
//! ```

pub mod ast;
pub mod diag;
pub mod exec;
pub mod lexer;
pub mod parser;
pub mod queries;
pub mod report;
pub mod span;

pub use ast::Session;
pub use diag::{Diagnostic, ErrorKind};
pub use exec::{execute, Options};
pub use parser::{parse_bytes, parse_field, parse_session};
pub use report::Report;

/// Parses and executes `src`.
pub fn run_session(src: &str, options: &Options) -> Result<Report, Diagnostic> {
    execute(&parse_session(src)?, options)
}
