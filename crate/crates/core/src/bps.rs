//! Boolean P systems: guarded set-rewriting rules `A → B | φ` over an
//! alphabet, their applicability and simultaneous application, and the
//! union of two systems.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::symbols::{Alphabet, SymbolSet};

/// Set of rules, as indices into [`Bps::rules`].
pub type RuleSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub id: String,
    pub lhs: SymbolSet,
    pub rhs: SymbolSet,
    pub guard: Formula,
}

impl Rule {
    pub fn new(id: impl Into<String>, lhs: SymbolSet, rhs: SymbolSet, guard: Formula) -> Rule {
        Rule {
            id: id.into(),
            lhs,
            rhs,
            guard,
        }
    }

    /// `A ⊆ W` and `φ(W) = 1`.
    pub fn is_applicable(&self, w: &SymbolSet) -> bool {
        self.lhs.is_subset(w) && self.guard.eval(w)
    }
}

/// A Boolean P system `(V, R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bps {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    by_id: HashMap<String, usize>,
}

impl Bps {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Bps> {
        let width = alphabet.len();
        let mut by_id = HashMap::new();
        for (k, rule) in rules.iter().enumerate() {
            if !crate::symbols::is_identifier(&rule.id) {
                return Err(Error::Invalid(format!("`{}` is not a valid rule id", rule.id)));
            }
            if by_id.insert(rule.id.clone(), k).is_some() {
                return Err(Error::ConflictingRule(rule.id.clone()));
            }
            if rule.lhs.width() != width || rule.rhs.width() != width {
                return Err(Error::Invalid(format!(
                    "rule `{}` is not over the system alphabet",
                    rule.id
                )));
            }
            rule.guard
                .validate(width)
                .map_err(|e| Error::Invalid(format!("guard of rule `{}`: {e}", rule.id)))?;
        }
        Ok(Bps {
            alphabet,
            rules,
            by_id,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, idx: usize) -> &Rule {
        &self.rules[idx]
    }

    pub fn rule_index(&self, id: &str) -> Result<usize> {
        self.by_id
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownRule(id.to_string()))
    }

    /// Indices of the rules individually applicable to `w`. `Appl(Π, W)` is
    /// the powerset of this set.
    pub fn applicable_rules(&self, w: &SymbolSet) -> RuleSet {
        self.rules
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_applicable(w))
            .map(|(k, _)| k)
            .collect()
    }

    /// `(W ∖ ⋃A) ∪ ⋃B`; every rule must be applicable to `w`.
    pub fn apply_rule_set(&self, w: &SymbolSet, rs: &RuleSet) -> Result<SymbolSet> {
        if let Some(&bad) = rs.iter().find(|&&k| !self.rules[k].is_applicable(w)) {
            return Err(Error::InapplicableRule(self.rules[bad].id.clone()));
        }
        Ok(self.apply_unchecked(w, rs))
    }

    pub(crate) fn apply_unchecked(&self, w: &SymbolSet, rs: &RuleSet) -> SymbolSet {
        let mut removed = SymbolSet::empty(w.width());
        let mut added = SymbolSet::empty(w.width());
        for &k in rs {
            removed.union_with(&self.rules[k].lhs);
            added.union_with(&self.rules[k].rhs);
        }
        let mut out = w.difference(&removed);
        out.union_with(&added);
        out
    }

    /// Resolves rule ids to a rule set.
    pub fn rule_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<RuleSet> {
        ids.iter().map(|id| self.rule_index(id.as_ref())).collect()
    }

    /// Sorted rule ids of a rule set; the canonical label of a step.
    pub fn rule_ids(&self, rs: &RuleSet) -> Vec<String> {
        let mut ids: Vec<String> = rs.iter().map(|&k| self.rules[k].id.clone()).collect();
        ids.sort();
        ids
    }

    /// Re-expresses a rule in a wider alphabet given the embedding of this
    /// system's symbols.
    fn embed_rule(rule: &Rule, map: &[usize], width: usize) -> Rule {
        Rule {
            id: rule.id.clone(),
            lhs: rule.lhs.embed(map, width),
            rhs: rule.rhs.embed(map, width),
            guard: rule.guard.remap(map),
        }
    }
}

/// `Π₁ ∪ Π₂ = (V₁ ∪ V₂, R₁ ∪ R₂)`. The alphabet is `V₁` followed by the new
/// symbols of `V₂`; rules keep the same order. A rule id present in both
/// systems must name the same rule (compared by symbol names).
pub fn union_bps(p1: &Bps, p2: &Bps) -> Result<Bps> {
    let alphabet = p1.alphabet.union(&p2.alphabet);
    let width = alphabet.len();
    let map1 = p1.alphabet.embedding(&alphabet)?;
    let map2 = p2.alphabet.embedding(&alphabet)?;
    let mut rules: Vec<Rule> = p1
        .rules
        .iter()
        .map(|r| Bps::embed_rule(r, &map1, width))
        .collect();
    for r in &p2.rules {
        let r = Bps::embed_rule(r, &map2, width);
        match p1.by_id.get(&r.id) {
            Some(&k) if rules[k] == r => {}
            Some(_) => return Err(Error::ConflictingRule(r.id)),
            None => rules.push(r),
        }
    }
    Bps::new(alphabet, rules)
}
