//! Reaction systems:
//!
//! ```text
//! species: a b c
//! reaction r1: {a} | {b} -> {c}
//! ```
//!
//! A reaction lists reactants, inhibitors and products.

use super::{duplicate, expect_end, format_set, lines, missing, parse_names, parse_set};
use crate::error::Result;
use crate::rsys::{Reaction, ReactionSystem};
use crate::symbols::{is_identifier, Alphabet};

pub fn parse_rsys(text: &str) -> Result<ReactionSystem> {
    let mut species: Option<Alphabet> = None;
    let mut reactions = Vec::new();
    for line in lines(text) {
        let Some((key, rest)) = line.split_key() else {
            return Err(line.error(line.text.trim_start(), "expected `key: value`"));
        };
        if key == "species" {
            if species.is_some() {
                return Err(duplicate(&line, key));
            }
            species = Some(Alphabet::new(parse_names(&line, rest)?)?);
        } else if let Some(id) = key.strip_prefix("reaction ") {
            let id = id.trim();
            if !is_identifier(id) {
                return Err(line.error(id, format!("`{id}` is not a valid reaction id")));
            }
            let s = species
                .as_ref()
                .ok_or_else(|| line.error(key, "`species` must come before the reactions"))?;
            let (reactants, rest) = parse_set(&line, rest, s)?;
            let rest = rest.trim_start();
            let Some(rest) = rest.strip_prefix('|') else {
                return Err(line.error(rest, "expected `|`"));
            };
            let (inhibitors, rest) = parse_set(&line, rest, s)?;
            let rest = rest.trim_start();
            let Some(rest) = rest.strip_prefix("->") else {
                return Err(line.error(rest, "expected `->`"));
            };
            let (products, rest) = parse_set(&line, rest, s)?;
            expect_end(&line, rest)?;
            reactions.push(Reaction {
                id: id.to_string(),
                reactants,
                inhibitors,
                products,
            });
        } else {
            return Err(line.error(key, format!("unknown key `{key}`")));
        }
    }
    ReactionSystem::new(species.ok_or_else(|| missing("species"))?, reactions)
}

pub fn write_rsys(rs: &ReactionSystem) -> String {
    let s = rs.species();
    let mut out = format!("species: {}\n", s.names().join(" "));
    for r in rs.reactions() {
        out.push_str(&format!(
            "reaction {}: {} | {} -> {}\n",
            r.id,
            format_set(s, &r.reactants),
            format_set(s, &r.inhibitors),
            format_set(s, &r.products)
        ));
    }
    out
}
