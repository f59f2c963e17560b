//! Linear bounded automata:
//!
//! ```text
//! states: q0 q1 qb
//! tape: Zl B Zr a
//! input: a
//! output: a
//! markers: Zl B Zr
//! init: q0
//! final: q1
//! default: qr        # optional sink for undefined transitions
//! q0 a -> q0 B R
//! ```

use std::collections::BTreeMap;

use super::{lines, missing, parse_names, Line};
use crate::error::{Error, Result};
use crate::lba::{Lba, LbaSpec, Move, Transition};

fn single(line: &Line, rest: &str) -> Result<String> {
    let names = parse_names(line, rest)?;
    match names.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(line.error(rest.trim_start(), "expected exactly one name")),
    }
}

pub fn parse_lba(text: &str) -> Result<Lba> {
    let mut fields: BTreeMap<&str, (Line, &str)> = BTreeMap::new();
    let mut transitions = Vec::new();
    for line in lines(text) {
        let t = line.text.trim_start();
        if let Some((lhs, rhs)) = t.split_once("->") {
            let l: Vec<&str> = lhs.split_whitespace().collect();
            let r: Vec<&str> = rhs.split_whitespace().collect();
            let ([state, read], [next, write, dir]) = (l.as_slice(), r.as_slice()) else {
                return Err(line.error(t, "expected `state symbol -> state symbol L|R|S`"));
            };
            let dir = Move::parse(dir).ok_or_else(|| line.error(dir, format!("unknown move `{dir}`")))?;
            transitions.push(Transition {
                state: state.to_string(),
                read: read.to_string(),
                next: next.to_string(),
                write: write.to_string(),
                dir,
            });
            continue;
        }
        let Some((key, rest)) = line.split_key() else {
            return Err(line.error(t, "expected `key: value` or a transition"));
        };
        match key {
            "states" | "tape" | "input" | "output" | "markers" | "init" | "final" | "default" => {
                if fields.insert(key, (line, rest)).is_some() {
                    return Err(super::duplicate(&line, key));
                }
            }
            _ => return Err(line.error(key, format!("unknown key `{key}`"))),
        }
    }
    let names = |key: &str| -> Result<Vec<String>> {
        match fields.get(key) {
            Some((line, rest)) => parse_names(line, rest),
            None => Err(missing(key)),
        }
    };
    let one = |key: &str| -> Result<String> {
        match fields.get(key) {
            Some((line, rest)) => single(line, rest),
            None => Err(missing(key)),
        }
    };
    let markers = names("markers")?;
    let markers: [String; 3] = markers.try_into().map_err(|_| {
        let (line, rest) = &fields["markers"];
        line.error(rest.trim_start(), "expected three markers: left, blank, right")
    })?;
    let mut spec = LbaSpec {
        states: names("states")?,
        tape: names("tape")?,
        input: names("input")?,
        output: if fields.contains_key("output") { names("output")? } else { Vec::new() },
        markers,
        init: one("init")?,
        accept: one("final")?,
        transitions,
    };
    if fields.contains_key("default") {
        let sink = one("default")?;
        if !spec.states.contains(&sink) {
            return Err(Error::UnknownSymbol(sink));
        }
        spec.fill_missing(&sink);
    }
    Lba::new(&spec)
}

pub fn write_lba(m: &Lba) -> String {
    let q = m.states();
    let v = m.tape();
    let names = |set: &std::collections::BTreeSet<usize>| {
        set.iter().map(|&k| v.name(k)).collect::<Vec<_>>().join(" ")
    };
    let mut out = String::new();
    out.push_str(&format!("states: {}\n", q.names().join(" ")));
    out.push_str(&format!("tape: {}\n", v.names().join(" ")));
    out.push_str(&format!("input: {}\n", names(m.input_symbols())));
    out.push_str(&format!("output: {}\n", names(m.output_symbols())));
    let (l, b, r) = m.markers();
    out.push_str(&format!("markers: {} {} {}\n", v.name(l), v.name(b), v.name(r)));
    out.push_str(&format!("init: {}\n", q.name(m.init())));
    out.push_str(&format!("final: {}\n", q.name(m.accept())));
    for s in 0..q.len() {
        for c in 0..v.len() {
            let (p, w, d) = m.delta(s, c);
            out.push_str(&format!(
                "{} {} -> {} {} {}\n",
                q.name(s),
                v.name(c),
                q.name(p),
                v.name(w),
                d.as_str()
            ));
        }
    }
    out
}
