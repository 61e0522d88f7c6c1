//! Plain-text file formats. Every writer emits LF line endings and a fixed
//! ordering, and every reader accepts exactly what its writer produces
//! (blank lines and `#` comments are skipped).

mod cert;
mod drawing;
mod graph;
mod rotation;

pub use cert::{read_certificate, write_certificate};
pub use drawing::{read_book, read_cylindrical, write_book, write_cylindrical};
pub use graph::{read_graph, write_graph};
pub use rotation::{read_rotation, write_rotation};

use std::str::FromStr;

use tcc_core::drawing::DrawingError;
use tcc_core::graph::GraphError;
use tcc_core::map::RotationListError;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Rotation(#[from] RotationListError),
}

/// Non-empty, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub(crate) fn parse<T: FromStr>(line: usize, word: &str) -> Result<T, FormatError> {
    word.parse()
        .map_err(|_| syntax(line, format!("cannot parse `{word}`")))
}

/// Whitespace-separated numbers.
pub(crate) fn parse_list<T: FromStr>(line: usize, words: &str) -> Result<Vec<T>, FormatError> {
    words.split_whitespace().map(|w| parse(line, w)).collect()
}

/// The rest of a line after `key:`.
pub(crate) fn after_key<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, FormatError> {
    text.strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| syntax(line, format!("expected `{key}:`")))
}
