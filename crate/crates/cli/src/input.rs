//! Loading models and parsing state arguments.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

use boolp::bnet::{Bcn, BooleanMode, BoolNetwork, ControlMode, Polarity};
use boolp::format::{parse_bcn, parse_bn, parse_boolean_mode, parse_bps, parse_control_mode, parse_lba, parse_rsys, BpsFile};
use boolp::formula::parse_formula;
use boolp::lba::Lba;
use boolp::reach::TargetSpec;
use boolp::rsys::ReactionSystem;
use boolp::symbols::{Alphabet, SymbolSet};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parsed<T>(path: &Path, f: impl FnOnce(&str) -> boolp::Result<T>) -> Result<T> {
    let text = read(path)?;
    f(&text).with_context(|| format!("in {}", path.display()))
}

pub fn load_bps(path: &Path) -> Result<BpsFile> {
    parsed(path, parse_bps)
}

pub fn load_bn(path: &Path) -> Result<BoolNetwork> {
    parsed(path, parse_bn)
}

pub fn load_bcn(path: &Path, polarity: Option<Polarity>) -> Result<Bcn> {
    parsed(path, |t| parse_bcn(t, polarity))
}

pub fn load_rsys(path: &Path) -> Result<ReactionSystem> {
    parsed(path, parse_rsys)
}

pub fn load_lba(path: &Path) -> Result<Lba> {
    parsed(path, parse_lba)
}

/// `sync`, `async` or `explicit:<file>`.
pub fn boolean_mode(spec: &str, vars: &Alphabet) -> Result<BooleanMode> {
    match spec {
        "sync" => Ok(BooleanMode::Synchronous),
        "async" => Ok(BooleanMode::Asynchronous),
        _ => match spec.strip_prefix("explicit:") {
            Some(file) => parsed(Path::new(file), |t| parse_boolean_mode(t, vars)),
            None => bail!("unknown mode `{spec}` (expected sync, async or explicit:<file>)"),
        },
    }
}

/// `any`, `tcs`, `acs` or a control-mode file.
pub fn control_mode(spec: &str, controls: &Alphabet) -> Result<ControlMode> {
    match spec {
        "any" => Ok(ControlMode::Any),
        "tcs" => Ok(ControlMode::Tcs),
        "acs" => Ok(ControlMode::Acs),
        file => parsed(Path::new(file), |t| parse_control_mode(t, controls)),
    }
}

/// Bitstrings from a comma-separated list or `@file` (one per line).
pub fn states(spec: &str, alphabet: &Alphabet) -> Result<Vec<SymbolSet>> {
    let text;
    let items: Vec<&str> = match spec.strip_prefix('@') {
        Some(file) => {
            text = read(Path::new(file))?;
            text.lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .collect()
        }
        None => spec.split(',').map(str::trim).collect(),
    };
    if items.is_empty() {
        bail!("no states given in `{spec}`");
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for item in items {
        let s = alphabet.parse_bits(item)?;
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    Ok(out)
}

/// A set of states, or `formula:<text>` over `alphabet`.
pub fn target(spec: &str, alphabet: &Alphabet) -> Result<TargetSpec> {
    match spec.strip_prefix("formula:") {
        Some(text) => Ok(TargetSpec::Formula(
            parse_formula(text, alphabet).with_context(|| format!("in target formula `{text}`"))?,
        )),
        None => Ok(TargetSpec::States(states(spec, alphabet)?.into_iter().collect())),
    }
}
