//! Propositional formulas over the symbols of an alphabet.
//!
//! Concrete syntax:
//!
//! ```text
//! expr   := term { "|" term }
//! term   := factor { "&" factor }
//! factor := "!" factor | "(" expr ")" | IDENT | "0" | "1"
//! ```
//!
//! Chains of the same operator parse into one flat n-ary node; a
//! parenthesized sub-expression always stays a separate node. Formulas are
//! never simplified, so the printed form follows the parsed structure.

use std::fmt;

use crate::error::{Error, Result};
use crate::symbols::{Alphabet, SymbolSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Const(bool),
    Var(usize),
    Not(Box<Formula>),
    /// At least two children.
    And(Vec<Formula>),
    /// At least two children.
    Or(Vec<Formula>),
}

impl Formula {
    pub fn var(id: usize) -> Formula {
        Formula::Var(id)
    }

    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction of `parts`: the constant 1 when empty, the part itself
    /// when there is only one.
    pub fn and_all(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::Const(true),
            1 => parts.pop().unwrap(),
            _ => Formula::And(parts),
        }
    }

    /// Disjunction of `parts`: the constant 0 when empty.
    pub fn or_all(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::Const(false),
            1 => parts.pop().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    /// Truth value with members of `w` set to 1 and every other symbol to 0.
    pub fn eval(&self, w: &SymbolSet) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Var(i) => w.contains(*i),
            Formula::Not(f) => !f.eval(w),
            Formula::And(fs) => fs.iter().all(|f| f.eval(w)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(w)),
        }
    }

    pub fn free_vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Formula::Const(_) => {}
            Formula::Var(i) => out.push(*i),
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.free_vars().last().copied()
    }

    /// Checks the structural invariants against an alphabet of `width` symbols.
    pub fn validate(&self, width: usize) -> Result<()> {
        match self {
            Formula::Const(_) => Ok(()),
            Formula::Var(i) if *i < width => Ok(()),
            Formula::Var(i) => Err(Error::Invalid(format!(
                "formula variable #{i} outside an alphabet of {width} symbols"
            ))),
            Formula::Not(f) => f.validate(width),
            Formula::And(fs) | Formula::Or(fs) => {
                if fs.len() < 2 {
                    return Err(Error::Invalid("n-ary connective with fewer than two operands".into()));
                }
                fs.iter().try_for_each(|f| f.validate(width))
            }
        }
    }

    /// Replaces variables by constants wherever `value` returns `Some`.
    pub fn substitute(&self, value: &impl Fn(usize) -> Option<bool>) -> Formula {
        match self {
            Formula::Const(b) => Formula::Const(*b),
            Formula::Var(i) => value(*i).map_or(Formula::Var(*i), Formula::Const),
            Formula::Not(f) => Formula::negate(f.substitute(value)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.substitute(value)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute(value)).collect()),
        }
    }

    /// Renames every variable `i` to `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Formula {
        match self {
            Formula::Const(b) => Formula::Const(*b),
            Formula::Var(i) => Formula::Var(map[*i]),
            Formula::Not(f) => Formula::negate(f.remap(map)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.remap(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.remap(map)).collect()),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            alphabet,
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

/// The formula satisfied by `W` iff `W ∩ universe = mu`: a conjunction of
/// the members of `mu` and the negations of `universe ∖ mu`, in index order.
pub fn exact_set_formula(mu: &SymbolSet, universe: &SymbolSet) -> Result<Formula> {
    if !mu.is_subset(universe) {
        return Err(Error::Invalid("set is not contained in its universe".into()));
    }
    Ok(Formula::and_all(exact_set_literals(mu, universe)))
}

pub(crate) fn exact_set_literals(mu: &SymbolSet, universe: &SymbolSet) -> Vec<Formula> {
    universe
        .iter()
        .map(|u| {
            if mu.contains(u) {
                Formula::Var(u)
            } else {
                Formula::negate(Formula::Var(u))
            }
        })
        .collect()
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    alphabet: &'a Alphabet,
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Or,
    And,
    Atom,
}

impl FormulaDisplay<'_> {
    /// `ctx` is the precedence of the enclosing operator, `None` at top level.
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula, ctx: Option<Prec>) -> fmt::Result {
        let (children, sep, own) = match node {
            Formula::Const(true) => return f.write_str("1"),
            Formula::Const(false) => return f.write_str("0"),
            Formula::Var(i) => return f.write_str(self.alphabet.name(*i)),
            Formula::Not(inner) => {
                f.write_str("!")?;
                return self.write(f, inner, Some(Prec::Atom));
            }
            Formula::And(fs) => (fs, " & ", Prec::And),
            Formula::Or(fs) => (fs, " | ", Prec::Or),
        };
        // A child of the same connective is parenthesized, otherwise it would
        // be flattened into its parent when reparsed.
        let paren = ctx.is_some_and(|c| c >= own);
        if paren {
            f.write_str("(")?;
        }
        for (k, child) in children.iter().enumerate() {
            if k > 0 {
                f.write_str(sep)?;
            }
            self.write(f, child, Some(own))?;
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, None)
    }
}

/// Parses `text` with identifiers resolved against `alphabet`.
pub fn parse_formula(text: &str, alphabet: &Alphabet) -> Result<Formula> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        alphabet,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(1, self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<Formula> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(Formula::or_all(parts))
    }

    fn term(&mut self) -> Result<Formula> {
        let mut parts = vec![self.factor()?];
        while self.peek() == Some('&') {
            self.pos += 1;
            parts.push(self.factor()?);
        }
        Ok(Formula::and_all(parts))
    }

    fn factor(&mut self) -> Result<Formula> {
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(Formula::negate(self.factor()?))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('0') => {
                self.pos += 1;
                Ok(Formula::Const(false))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Formula::Const(true))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|&(_, c)| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                self.alphabet
                    .get(&name)
                    .map(Formula::Var)
                    .ok_or(Error::UnknownSymbol(name))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of formula")),
        }
    }
}
