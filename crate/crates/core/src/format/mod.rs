//! Text formats for models: `.bps`, `.bn`, `.bcn`, control-mode files,
//! explicit Boolean-mode files, `.rsys` and `.lba`.
//!
//! All formats are line based; `#` starts a comment running to the end of
//! the line.

mod bps;
mod lba;
mod network;
mod rsys;

pub use self::bps::{parse_bps, parse_quasimode, write_bps, write_quasimode, BpsFile};
pub use self::lba::{parse_lba, write_lba};
pub use self::network::{parse_bcn, parse_bn, parse_boolean_mode, parse_control_mode, write_bn};
pub use self::rsys::{parse_rsys, write_rsys};

use crate::error::{Error, Result};
use crate::symbols::{is_identifier, Alphabet, SymbolSet};

/// A non-blank line with comments removed.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
}

impl<'a> Line<'a> {
    /// Column (1-based) of a sub-slice of this line's text.
    pub fn column_of(&self, part: &str) -> usize {
        part.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }

    pub fn error(&self, part: &str, message: impl Into<String>) -> Error {
        Error::syntax(self.number, self.column_of(part), message)
    }

    /// `key: rest` with `key` trimmed and `rest` untrimmed on the left.
    pub fn split_key(&self) -> Option<(&'a str, &'a str)> {
        let (key, rest) = self.text.split_once(':')?;
        let key = key.trim();
        (!key.is_empty()).then_some((key, rest))
    }

    /// Wraps a syntax error raised while parsing `part` on its own.
    pub fn locate(&self, part: &str, e: Error) -> Error {
        e.at_line(self.number, self.column_of(part) - 1)
    }
}

pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let text = raw.split('#').next().unwrap_or("").trim_end();
        let trimmed = text.trim_start();
        (!trimmed.is_empty()).then(|| Line {
            number: k + 1,
            text,
        })
    })
}

/// Identifiers separated by whitespace.
pub(crate) fn parse_names(line: &Line, part: &str) -> Result<Vec<String>> {
    part.split_whitespace()
        .map(|w| {
            if is_identifier(w) {
                Ok(w.to_string())
            } else {
                Err(line.error(w, format!("`{w}` is not an identifier")))
            }
        })
        .collect()
}

/// `{a, b}` over `alphabet`; returns the set and the unparsed remainder.
pub(crate) fn parse_set<'a>(line: &Line, part: &'a str, alphabet: &Alphabet) -> Result<(SymbolSet, &'a str)> {
    let (names, rest) = parse_braced(line, part)?;
    let mut set = alphabet.empty_set();
    for name in names {
        let id = alphabet.get(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        set.insert(id);
    }
    Ok((set, rest))
}

/// `{a, b}` as raw names; returns them and the unparsed remainder.
pub(crate) fn parse_braced<'a>(line: &Line, part: &'a str) -> Result<(Vec<&'a str>, &'a str)> {
    let s = part.trim_start();
    let Some(body) = s.strip_prefix('{') else {
        return Err(line.error(s, "expected `{`"));
    };
    let Some(end) = body.find('}') else {
        return Err(line.error(s, "missing `}`"));
    };
    let inner = &body[..end];
    let mut names = Vec::new();
    if !inner.trim().is_empty() {
        for item in inner.split(',') {
            let name = item.trim();
            if !is_identifier(name) {
                let at = if name.is_empty() { item } else { name };
                return Err(line.error(at, format!("expected a symbol, found `{name}`")));
            }
            names.push(name);
        }
    }
    Ok((names, &body[end + 1..]))
}

pub(crate) fn expect_end(line: &Line, rest: &str) -> Result<()> {
    let rest = rest.trim_start();
    if rest.is_empty() {
        Ok(())
    } else {
        Err(line.error(rest, format!("unexpected `{rest}`")))
    }
}

pub(crate) fn format_set(alphabet: &Alphabet, set: &SymbolSet) -> String {
    alphabet.format_set(set)
}

/// Reports a section that must appear once.
pub(crate) fn duplicate(line: &Line, key: &str) -> Error {
    line.error(line.text.trim_start(), format!("duplicate `{key}` line"))
}

pub(crate) fn missing(what: &str) -> Error {
    Error::syntax(1, 1, format!("missing `{what}` line"))
}
