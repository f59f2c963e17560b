//! Reaction systems: reactions `(R, I, P)` over a species set, with the
//! result function `res(W) = ⋃ { P | R ⊆ W, I ∩ W = ∅ }`.

use crate::error::{Error, Result};
use crate::symbols::{Alphabet, SymbolSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reaction {
    pub id: String,
    pub reactants: SymbolSet,
    pub inhibitors: SymbolSet,
    pub products: SymbolSet,
}

impl Reaction {
    pub fn is_enabled(&self, w: &SymbolSet) -> bool {
        self.reactants.is_subset(w) && self.inhibitors.is_disjoint(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionSystem {
    species: Alphabet,
    reactions: Vec<Reaction>,
}

impl ReactionSystem {
    pub fn new(species: Alphabet, reactions: Vec<Reaction>) -> Result<ReactionSystem> {
        let width = species.len();
        let mut seen = std::collections::HashSet::new();
        for r in &reactions {
            if !crate::symbols::is_identifier(&r.id) {
                return Err(Error::Invalid(format!("`{}` is not a valid reaction id", r.id)));
            }
            if !seen.insert(r.id.as_str()) {
                return Err(Error::ConflictingRule(r.id.clone()));
            }
            if [&r.reactants, &r.inhibitors, &r.products]
                .iter()
                .any(|s| s.width() != width)
            {
                return Err(Error::Invalid(format!(
                    "reaction `{}` is not over the species",
                    r.id
                )));
            }
            if !r.reactants.is_disjoint(&r.inhibitors) {
                return Err(Error::Invalid(format!(
                    "reaction `{}` has a species that is both reactant and inhibitor",
                    r.id
                )));
            }
        }
        Ok(ReactionSystem { species, reactions })
    }

    pub fn species(&self) -> &Alphabet {
        &self.species
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn result(&self, w: &SymbolSet) -> SymbolSet {
        let mut out = SymbolSet::empty(self.species.len());
        for r in self.reactions.iter().filter(|r| r.is_enabled(w)) {
            out.union_with(&r.products);
        }
        out
    }
}
