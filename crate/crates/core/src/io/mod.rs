//! Reading and writing games, trees and solver results.

mod pgsolver;
mod result;
mod tree_file;

pub use pgsolver::{parse_game, write_game, GameFile};
pub use result::{emit_text, format_trace, ResultDocument, StatsDocument};
pub use tree_file::parse_tree;

use thiserror::Error;

/// Environment variable that turns on lift tracing by default.
pub const TRACE_ENV: &str = "SPM_TRACE";

/// Whether [`TRACE_ENV`] asks for tracing: any value other than empty,
/// `0`, `false` or `off`.
pub fn trace_from_env() -> bool {
    std::env::var(TRACE_ENV).is_ok_and(|v| !matches!(v.trim(), "" | "0" | "false" | "off"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed text.
    Syntax,
    /// Well-formed text describing an invalid object.
    Semantic,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{}:{line}:{col}: {message}", match kind { ErrorKind::Syntax => "syntax error", ErrorKind::Semantic => "error" })]
pub struct ParseError {
    pub kind: ErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { kind: ErrorKind::Syntax, line, col, message: message.into() }
    }

    pub fn semantic(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { kind: ErrorKind::Semantic, line, col, message: message.into() }
    }
}
