//! `.bps` files:
//!
//! ```text
//! alphabet: a b
//! rule r1: {a,b} -> {a} | 1
//! rule r2: {a} -> {} | !b
//! quasimode: maxparallel
//! ```
//!
//! Quasimodes: `maxparallel`, an explicit set `{ {r1,r2} {r2} }`,
//! `singleton(r1,r2)`, `powerset(r3,r4)`, `A x B` for the dotted product,
//! `A + B` for the union of families, and parentheses. A reference written
//! `!r` is required: the element is usable only when `r` is applicable.
//! Plain references are applied when applicable. Without a `quasimode` line
//! the system runs under maximal parallelism.

use std::collections::BTreeSet;

use super::{duplicate, format_set, lines, missing, parse_names, parse_set, Line};
use crate::bps::{Bps, Rule};
use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula};
use crate::mode::{dotted_product, ModeSpec, QuasiElement, QuasiMode, RuleRef};
use crate::symbols::{is_identifier, Alphabet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpsFile {
    pub bps: Bps,
    pub mode: ModeSpec,
}

pub fn parse_bps(text: &str) -> Result<BpsFile> {
    let mut alphabet: Option<Alphabet> = None;
    let mut rules = Vec::new();
    let mut quasimode: Option<(Line, &str)> = None;
    for line in lines(text) {
        let Some((key, rest)) = line.split_key() else {
            return Err(line.error(line.text.trim_start(), "expected `key: value`"));
        };
        if key == "alphabet" {
            if alphabet.is_some() {
                return Err(duplicate(&line, key));
            }
            alphabet = Some(Alphabet::new(parse_names(&line, rest)?)?);
        } else if key == "quasimode" {
            if quasimode.is_some() {
                return Err(duplicate(&line, key));
            }
            quasimode = Some((line, rest));
        } else if let Some(id) = key.strip_prefix("rule ") {
            let v = alphabet
                .as_ref()
                .ok_or_else(|| line.error(key, "`alphabet` must come before the rules"))?;
            rules.push(parse_rule(&line, id.trim(), rest, v)?);
        } else {
            return Err(line.error(key, format!("unknown key `{key}`")));
        }
    }
    let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
    let bps = Bps::new(alphabet, rules)?;
    let mode = match quasimode {
        None => ModeSpec::MaxParallel,
        Some((_, rest)) if rest.trim() == "maxparallel" => ModeSpec::MaxParallel,
        Some((line, rest)) => ModeSpec::FromQuasimode(parse_quasimode_at(&line, rest, &bps)?),
    };
    Ok(BpsFile { bps, mode })
}

fn parse_rule(line: &Line, id: &str, rest: &str, v: &Alphabet) -> Result<Rule> {
    if !is_identifier(id) {
        return Err(line.error(id, format!("`{id}` is not a valid rule id")));
    }
    let (lhs, rest) = parse_set(line, rest, v)?;
    let rest = rest.trim_start();
    let Some(rest) = rest.strip_prefix("->") else {
        return Err(line.error(rest, "expected `->`"));
    };
    let (rhs, rest) = parse_set(line, rest, v)?;
    let rest = rest.trim_start();
    let guard = if rest.is_empty() {
        Formula::Const(true)
    } else if let Some(g) = rest.strip_prefix('|') {
        parse_formula(g, v).map_err(|e| line.locate(g, e))?
    } else {
        return Err(line.error(rest, "expected `| guard`"));
    };
    Ok(Rule::new(id, lhs, rhs, guard))
}

/// Parses a quasimode expression over the rules of `bps`.
pub fn parse_quasimode(text: &str, bps: &Bps) -> Result<QuasiMode> {
    let line = Line { number: 1, text };
    parse_quasimode_at(&line, text, bps)
}

fn parse_quasimode_at(line: &Line, part: &str, bps: &Bps) -> Result<QuasiMode> {
    let tokens = tokenize(line, part)?;
    let mut p = QParser {
        line,
        tokens,
        pos: 0,
        bps,
        end: part.trim_end(),
    };
    let q = p.union()?;
    if let Some((_, at)) = p.peek() {
        return Err(line.error(at, format!("unexpected `{at}`")));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Punct(char),
    Ident,
}

fn tokenize<'a>(line: &Line, part: &'a str) -> Result<Vec<(Tok, &'a str)>> {
    let mut out = Vec::new();
    let mut rest = part;
    loop {
        rest = rest.trim_start();
        let Some(c) = rest.chars().next() else {
            return Ok(out);
        };
        if "{}(),!+".contains(c) {
            out.push((Tok::Punct(c), &rest[..1]));
            rest = &rest[1..];
        } else if c.is_ascii_alphabetic() || c == '_' {
            let end = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            out.push((Tok::Ident, &rest[..end]));
            rest = &rest[end..];
        } else {
            let len = c.len_utf8();
            return Err(line.error(&rest[..len], format!("unexpected character `{c}`")));
        }
    }
}

struct QParser<'a, 'l> {
    line: &'l Line<'l>,
    tokens: Vec<(Tok, &'a str)>,
    pos: usize,
    bps: &'a Bps,
    end: &'a str,
}

impl<'a> QParser<'a, '_> {
    fn peek(&self) -> Option<(Tok, &'a str)> {
        self.tokens.get(self.pos).cloned()
    }

    fn at_end_error(&self, msg: &str) -> Error {
        let col = self.line.column_of(self.end) + self.end.len();
        Error::syntax(self.line.number, col, msg)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some((Tok::Punct(d), _)) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some((_, at)) => Err(self.line.error(at, format!("expected `{c}`, found `{at}`"))),
            None => Err(self.at_end_error(&format!("expected `{c}`"))),
        }
    }

    fn union(&mut self) -> Result<QuasiMode> {
        let mut terms = vec![self.product()?];
        while let Some((Tok::Punct('+'), _)) = self.peek() {
            self.pos += 1;
            terms.push(self.product()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            QuasiMode::UnionOfFamilies(terms)
        })
    }

    fn product(&mut self) -> Result<QuasiMode> {
        let mut acc = self.factor()?;
        while let Some((Tok::Ident, "x")) = self.peek() {
            self.pos += 1;
            acc = dotted_product(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QuasiMode> {
        match self.peek() {
            Some((Tok::Punct('('), _)) => {
                self.pos += 1;
                let q = self.union()?;
                self.expect(')')?;
                Ok(q)
            }
            Some((Tok::Punct('{'), _)) => {
                self.pos += 1;
                let mut elements = BTreeSet::new();
                loop {
                    match self.peek() {
                        Some((Tok::Punct('}'), _)) => {
                            self.pos += 1;
                            return Ok(QuasiMode::Explicit(elements));
                        }
                        Some((Tok::Punct(','), _)) => self.pos += 1,
                        Some((Tok::Punct('{'), _)) => {
                            self.pos += 1;
                            let refs = self.refs('}')?;
                            elements.insert(QuasiElement::from_refs(refs));
                        }
                        Some((_, at)) => {
                            return Err(self.line.error(at, format!("expected a rule set, found `{at}`")))
                        }
                        None => return Err(self.at_end_error("missing `}`")),
                    }
                }
            }
            Some((Tok::Ident, name @ ("singleton" | "powerset"))) => {
                self.pos += 1;
                self.expect('(')?;
                let refs = self.refs(')')?;
                Ok(if name == "singleton" {
                    QuasiMode::Singleton(QuasiElement::from_refs(refs))
                } else {
                    QuasiMode::PowersetOf(refs.into_iter().collect())
                })
            }
            Some((_, at)) => Err(self.line.error(
                at,
                format!("expected `{{`, `(`, `singleton` or `powerset`, found `{at}`"),
            )),
            None => Err(self.at_end_error("expected a quasimode")),
        }
    }

    /// Comma-separated references up to and including `close`.
    fn refs(&mut self, close: char) -> Result<Vec<RuleRef>> {
        let mut out = Vec::new();
        if let Some((Tok::Punct(c), _)) = self.peek() {
            if c == close {
                self.pos += 1;
                return Ok(out);
            }
        }
        loop {
            let required = matches!(self.peek(), Some((Tok::Punct('!'), _)));
            if required {
                self.pos += 1;
            }
            match self.peek() {
                Some((Tok::Ident, id)) => {
                    self.pos += 1;
                    out.push(RuleRef {
                        rule: self.bps.rule_index(id)?,
                        required,
                    });
                }
                Some((_, at)) => return Err(self.line.error(at, format!("expected a rule id, found `{at}`"))),
                None => return Err(self.at_end_error("expected a rule id")),
            }
            match self.peek() {
                Some((Tok::Punct(','), _)) => self.pos += 1,
                Some((Tok::Punct(c), _)) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some((_, at)) => return Err(self.line.error(at, format!("expected `,` or `{close}`"))),
                None => return Err(self.at_end_error(&format!("missing `{close}`"))),
            }
        }
    }
}

fn write_refs(bps: &Bps, refs: &[RuleRef]) -> String {
    refs.iter()
        .map(|r| {
            let id = &bps.rule(r.rule).id;
            if r.required {
                format!("!{id}")
            } else {
                id.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn write_quasimode(q: &QuasiMode, bps: &Bps) -> String {
    match q {
        QuasiMode::Explicit(es) => {
            if es.is_empty() {
                return "{}".into();
            }
            let inner: Vec<String> = es
                .iter()
                .map(|e| format!("{{{}}}", write_refs(bps, &e.refs())))
                .collect();
            format!("{{ {} }}", inner.join(" "))
        }
        QuasiMode::Singleton(e) => format!("singleton({})", write_refs(bps, &e.refs())),
        QuasiMode::PowersetOf(rs) => {
            let refs: Vec<RuleRef> = rs.iter().copied().collect();
            format!("powerset({})", write_refs(bps, &refs))
        }
        QuasiMode::DottedProduct(a, b) => {
            let left = match **a {
                QuasiMode::UnionOfFamilies(_) => format!("({})", write_quasimode(a, bps)),
                _ => write_quasimode(a, bps),
            };
            let right = match **b {
                QuasiMode::UnionOfFamilies(_) | QuasiMode::DottedProduct(..) => {
                    format!("({})", write_quasimode(b, bps))
                }
                _ => write_quasimode(b, bps),
            };
            format!("{left} x {right}")
        }
        QuasiMode::UnionOfFamilies(fs) => fs
            .iter()
            .map(|f| match f {
                QuasiMode::UnionOfFamilies(_) => format!("({})", write_quasimode(f, bps)),
                _ => write_quasimode(f, bps),
            })
            .collect::<Vec<_>>()
            .join(" + "),
    }
}

pub fn write_bps(bps: &Bps, mode: &ModeSpec) -> String {
    let v = bps.alphabet();
    let mut out = format!("alphabet: {}\n", v.names().join(" "));
    for r in bps.rules() {
        out.push_str(&format!(
            "rule {}: {} -> {} | {}\n",
            r.id,
            format_set(v, &r.lhs),
            format_set(v, &r.rhs),
            r.guard.display(v)
        ));
    }
    match mode {
        ModeSpec::MaxParallel => out.push_str("quasimode: maxparallel\n"),
        ModeSpec::FromQuasimode(q) => out.push_str(&format!("quasimode: {}\n", write_quasimode(q, bps))),
    }
    out
}
