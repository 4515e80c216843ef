//! Line-oriented text formats and the JSON batch report.
//!
//! Every file starts with a `format: 1` line. Blank lines are ignored and
//! `#` starts a comment running to the end of the line. Complex numbers are
//! written as two reals `re im`, each either `p/q`, an integer, or a
//! decimal literal; decimals are read exactly.

mod points;
mod report;
mod system;

pub use points::{parse_points, write_points, PointsFile};
pub use report::{AuditEntry, BatchReport, ExactValues, PointReport, ReportCounts, ReportMeta, ResidualEntry, REPORT_DIGITS};
pub use system::{parse_system, write_system};

use rug::Rational;

use crate::error::FormatError;
use crate::numeric::{parse_rational, ExactComplex};

pub const FORMAT_VERSION: u32 = 1;

/// A whitespace-separated token with its 1-based position.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

impl Token<'_> {
    pub fn error(&self, message: impl Into<String>) -> FormatError {
        FormatError::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    pub fn usize(&self) -> Result<usize, FormatError> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected a nonnegative integer, found `{}`", self.text)))
    }

    pub fn rational(&self) -> Result<Rational, FormatError> {
        parse_rational(self.text).map_err(|e| self.error(e.to_string()))
    }
}

/// Non-empty logical lines, each split into tokens.
pub(crate) struct Lines<'a> {
    lines: Vec<Vec<Token<'a>>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (j, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        tokens.push(Token {
                            text: &body[s..j],
                            line: i + 1,
                            column: body[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            if !tokens.is_empty() {
                lines.push(tokens);
            }
        }
        Lines {
            lines,
            pos: 0,
            last_line,
        }
    }

    pub fn next_line(&mut self, what: &str) -> Result<Vec<Token<'a>>, FormatError> {
        let line = self.lines.get(self.pos).cloned().ok_or_else(|| FormatError::Parse {
            line: self.last_line + 1,
            column: 1,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(line)
    }

    pub fn peek(&self) -> Option<&[Token<'a>]> {
        self.lines.get(self.pos).map(Vec::as_slice)
    }

    pub fn skip(&mut self) {
        self.pos += 1;
    }

    pub fn finish(&self) -> Result<(), FormatError> {
        match self.lines.get(self.pos) {
            Some(extra) => Err(extra[0].error("unexpected trailing content")),
            None => Ok(()),
        }
    }

    /// Reads the mandatory `format: 1` header.
    pub fn header(&mut self) -> Result<(), FormatError> {
        let line = self.next_line("a `format: 1` header")?;
        let ok = match line.as_slice() {
            [key, value] => key.text == "format:" && value.text == FORMAT_VERSION.to_string(),
            [single] => single.text == format!("format:{FORMAT_VERSION}"),
            _ => false,
        };
        if !ok {
            return Err(line[0].error(format!("expected `format: {FORMAT_VERSION}`")));
        }
        Ok(())
    }
}

/// Requires exactly `count` tokens on a line.
pub(crate) fn expect_len<'a>(line: &[Token<'a>], count: usize, what: &str) -> Result<(), FormatError> {
    if line.len() == count {
        return Ok(());
    }
    let at = line.get(count).or(line.last()).expect("lines are non-empty");
    Err(at.error(format!("expected {count} fields for {what}, found {}", line.len())))
}

pub(crate) fn complex(re: &Token<'_>, im: &Token<'_>) -> Result<ExactComplex, FormatError> {
    Ok(ExactComplex::new(re.rational()?, im.rational()?))
}
