//! The `.sgs` text format.
//!
//! ```text
//! document   := component+
//! component  := "component" IDENT "{" states init var? label? op* "}"
//! states     := "states" ":" IDENT ("," IDENT)* ";"
//! init       := "init" ":" IDENT ";"
//! var        := "var" ":" IDENT ";"
//! label      := "label" ":" STRING ";"
//! op         := "op" IDENT ("[" STRING "]")? "{" "pre" ":" IDENT ("," IDENT)* ";" "post" ":" IDENT ";" "}"
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Keywords are only
//! reserved in the positions above, so a state may be called `init`.

mod lexer;
mod parser;
mod printer;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parser::{parse, parse_named};
pub use printer::{pretty_print, PrintError};

/// File extension for specification documents.
pub const FILE_EXTENSION: &str = "sgs";

/// 1-based position of a token in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize, length: usize) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceSpan {
            line,
            column,
            length: length.max(1),
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UnknownKeyword,
    DuplicateSection,
    MissingSection,
    BadIdentifier,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(span: SourceSpan, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            span,
            kind,
            message: message.into(),
        }
    }
}
