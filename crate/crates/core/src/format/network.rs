//! Boolean networks, Boolean control networks, Boolean modes and control
//! modes.
//!
//! ```text
//! vars: x y
//! fn x: !x & y
//! fn y: x & !y
//! ```
//!
//! A `.bcn` file adds either `controls: u1 u2` (update functions are then
//! over variables and controls) or `freeze: x y polarity=active`, which
//! generates freeze controls `u<x>_0`, `u<x>_1` for the listed variables.

use std::collections::{BTreeMap, BTreeSet};

use super::{duplicate, expect_end, lines, missing, parse_names, parse_set, Line};
use crate::bnet::{make_freeze_bcn, Bcn, BooleanMode, BoolNetwork, ControlMode, Polarity};
use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula};
use crate::symbols::Alphabet;

struct NetworkText<'a> {
    vars: Option<(Line<'a>, Vec<String>)>,
    controls: Option<(Line<'a>, Vec<String>)>,
    freeze: Option<(Line<'a>, &'a str)>,
    functions: Vec<(Line<'a>, &'a str, &'a str)>,
}

fn scan(text: &str, allow_controls: bool) -> Result<NetworkText<'_>> {
    let mut out = NetworkText {
        vars: None,
        controls: None,
        freeze: None,
        functions: Vec::new(),
    };
    for line in lines(text) {
        let Some((key, rest)) = line.split_key() else {
            return Err(line.error(line.text.trim_start(), "expected `key: value`"));
        };
        match key {
            "vars" if out.vars.is_none() => out.vars = Some((line, parse_names(&line, rest)?)),
            "controls" if allow_controls && out.controls.is_none() => {
                out.controls = Some((line, parse_names(&line, rest)?))
            }
            "freeze" if allow_controls && out.freeze.is_none() => out.freeze = Some((line, rest)),
            "vars" | "controls" | "freeze" if allow_controls || key == "vars" => {
                return Err(duplicate(&line, key))
            }
            _ => match key.strip_prefix("fn ") {
                Some(x) => out.functions.push((line, x.trim(), rest)),
                None => return Err(line.error(key, format!("unknown key `{key}`"))),
            },
        }
    }
    Ok(out)
}

/// Update formulas for every variable of `vars`, parsed over `alphabet`.
fn functions(scanned: &NetworkText, vars: &Alphabet, alphabet: &Alphabet) -> Result<Vec<Formula>> {
    let mut found: BTreeMap<usize, Formula> = BTreeMap::new();
    for (line, x, rest) in &scanned.functions {
        let id = vars.get(x).ok_or_else(|| line.error(x, format!("`{x}` is not a variable")))?;
        let f = parse_formula(rest, alphabet).map_err(|e| line.locate(rest, e))?;
        if found.insert(id, f).is_some() {
            return Err(line.error(x, format!("second update function for `{x}`")));
        }
    }
    (0..vars.len())
        .map(|x| {
            found
                .remove(&x)
                .ok_or_else(|| Error::Invalid(format!("no update function for `{}`", vars.name(x))))
        })
        .collect()
}

pub fn parse_bn(text: &str) -> Result<BoolNetwork> {
    let scanned = scan(text, false)?;
    let (_, names) = scanned.vars.as_ref().ok_or_else(|| missing("vars"))?;
    let vars = Alphabet::new(names.iter().cloned())?;
    let updates = functions(&scanned, &vars, &vars)?;
    BoolNetwork::new(vars, updates)
}

pub fn write_bn(f: &BoolNetwork) -> String {
    let v = f.vars();
    let mut out = format!("vars: {}\n", v.names().join(" "));
    for (x, g) in f.updates().iter().enumerate() {
        out.push_str(&format!("fn {}: {}\n", v.name(x), g.display(v)));
    }
    out
}

fn parse_polarity(line: &Line, word: &str) -> Result<Polarity> {
    match word {
        "active" => Ok(Polarity::ActiveHigh),
        "inactive" => Ok(Polarity::InactiveHigh),
        _ => Err(line.error(word, format!("polarity must be `active` or `inactive`, found `{word}`"))),
    }
}

/// Parses a `.bcn` file. `default_polarity` applies to a `freeze` line
/// without `polarity=`.
pub fn parse_bcn(text: &str, default_polarity: Option<Polarity>) -> Result<Bcn> {
    let scanned = scan(text, true)?;
    let (_, names) = scanned.vars.as_ref().ok_or_else(|| missing("vars"))?;
    let vars = Alphabet::new(names.iter().cloned())?;
    match (&scanned.controls, &scanned.freeze) {
        (Some(_), Some((line, _))) => Err(line.error(line.text.trim_start(), "`freeze` and `controls` cannot be combined")),
        (Some((_, cs)), None) => {
            let controls = Alphabet::new(cs.iter().cloned())?;
            let alphabet = vars.concat(&controls)?;
            let updates = functions(&scanned, &vars, &alphabet)?;
            Bcn::new(vars, controls, updates)
        }
        (None, Some((line, rest))) => {
            let mut controllable = Vec::new();
            let mut polarity = default_polarity;
            for word in rest.split_whitespace() {
                if let Some(p) = word.strip_prefix("polarity=") {
                    polarity = Some(parse_polarity(line, p)?);
                } else {
                    let x = vars
                        .get(word)
                        .ok_or_else(|| line.error(word, format!("`{word}` is not a variable")))?;
                    controllable.push(x);
                }
            }
            let polarity = polarity.ok_or_else(|| {
                line.error(line.text.trim_start(), "freeze controls need a polarity (polarity=active or polarity=inactive)")
            })?;
            let f = BoolNetwork::new(vars.clone(), functions(&scanned, &vars, &vars)?)?;
            make_freeze_bcn(&f, &controllable, polarity)
        }
        (None, None) => {
            let updates = functions(&scanned, &vars, &vars)?;
            Bcn::new(vars, Alphabet::default(), updates)
        }
    }
}

/// One subset of the variables per line, e.g. `{x, y}`; an optional leading
/// `mode:` line is ignored.
pub fn parse_boolean_mode(text: &str, vars: &Alphabet) -> Result<BooleanMode> {
    let mut sets = BTreeSet::new();
    for line in lines(text) {
        let t = line.text.trim_start();
        if t.starts_with("mode:") {
            continue;
        }
        let (s, rest) = parse_set(&line, t, vars)?;
        expect_end(&line, rest)?;
        sets.insert(s);
    }
    Ok(BooleanMode::Explicit(sets))
}

/// `mode: any|tcs|acs`, or `pairs:` followed by lines `{u1} -> {u1,u2}`.
pub fn parse_control_mode(text: &str, controls: &Alphabet) -> Result<ControlMode> {
    let mut mode: Option<ControlMode> = None;
    let mut pairs: Option<BTreeSet<_>> = None;
    for line in lines(text) {
        let t = line.text.trim_start();
        if let Some(pairs) = pairs.as_mut() {
            let (a, rest) = parse_set(&line, t, controls)?;
            let rest = rest.trim_start();
            let Some(rest) = rest.strip_prefix("->") else {
                return Err(line.error(rest, "expected `->`"));
            };
            let (b, rest) = parse_set(&line, rest, controls)?;
            expect_end(&line, rest)?;
            pairs.insert((a, b));
            continue;
        }
        match line.split_key() {
            Some(("mode", rest)) if mode.is_none() => {
                let word = rest.trim();
                mode = Some(match word {
                    "any" => ControlMode::Any,
                    "tcs" => ControlMode::Tcs,
                    "acs" => ControlMode::Acs,
                    _ => return Err(line.error(word, format!("unknown control mode `{word}`"))),
                });
            }
            Some(("pairs", rest)) if mode.is_none() => {
                expect_end(&line, rest)?;
                pairs = Some(BTreeSet::new());
            }
            _ => return Err(line.error(t, "expected `mode: any|tcs|acs` or `pairs:`")),
        }
    }
    match (mode, pairs) {
        (Some(m), None) => Ok(m),
        (None, Some(p)) => Ok(ControlMode::Explicit(p)),
        _ => Err(missing("mode")),
    }
}
