//! Modes and quasimodes of Boolean P systems.
//!
//! A quasimode is a set of rule-sets that advises which rules to apply. Each
//! element carries two kinds of rule references:
//!
//! - optional references, restricted per configuration to the applicable
//!   rules (the rules of `R_x` in a Boolean-network translation have
//!   complementary guards, so advising all of `R` only ever applies the
//!   applicable half);
//! - required references, which must all be applicable for the element to be
//!   usable at all (a set that is applied as a whole or not at all).
//!
//! At a configuration `W` with applicable rules `A`, the derived mode is
//! `{ req ∪ (opt ∩ A) | (opt, req) ∈ M̃, req ⊆ A }`. A quasimode whose
//! references are all required derives exactly `M̃ ∩ Appl(Π, W)`.

use std::collections::BTreeSet;

use crate::bps::{Bps, RuleSet};
use crate::error::{Error, Result};
use crate::symbols::SymbolSet;

/// Largest number of elements a symbolic family may expand to.
pub const MAX_EXPANSION: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleRef {
    pub rule: usize,
    pub required: bool,
}

impl RuleRef {
    pub fn optional(rule: usize) -> RuleRef {
        RuleRef {
            rule,
            required: false,
        }
    }

    pub fn required(rule: usize) -> RuleRef {
        RuleRef {
            rule,
            required: true,
        }
    }
}

/// One advised rule-set. A rule referenced both ways counts as required.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuasiElement {
    optional: RuleSet,
    required: RuleSet,
}

impl QuasiElement {
    pub fn new(optional: RuleSet, required: RuleSet) -> QuasiElement {
        let optional = optional.difference(&required).copied().collect();
        QuasiElement { optional, required }
    }

    pub fn from_refs<I: IntoIterator<Item = RuleRef>>(refs: I) -> QuasiElement {
        let mut optional = RuleSet::new();
        let mut required = RuleSet::new();
        for r in refs {
            if r.required {
                required.insert(r.rule);
            } else {
                optional.insert(r.rule);
            }
        }
        QuasiElement::new(optional, required)
    }

    /// Element whose rules are all optional.
    pub fn advising(rules: RuleSet) -> QuasiElement {
        QuasiElement::new(rules, RuleSet::new())
    }

    /// Element whose rules are all required.
    pub fn requiring(rules: RuleSet) -> QuasiElement {
        QuasiElement::new(RuleSet::new(), rules)
    }

    pub fn optional(&self) -> &RuleSet {
        &self.optional
    }

    pub fn required(&self) -> &RuleSet {
        &self.required
    }

    pub fn refs(&self) -> Vec<RuleRef> {
        let mut refs: Vec<RuleRef> = self
            .optional
            .iter()
            .map(|&r| RuleRef::optional(r))
            .chain(self.required.iter().map(|&r| RuleRef::required(r)))
            .collect();
        refs.sort_by_key(|r| r.rule);
        refs
    }

    pub fn rules(&self) -> RuleSet {
        self.optional.union(&self.required).copied().collect()
    }

    pub fn union(&self, other: &QuasiElement) -> QuasiElement {
        QuasiElement::new(
            self.optional.union(&other.optional).copied().collect(),
            self.required.union(&other.required).copied().collect(),
        )
    }

    /// The rule-set this element contributes at a configuration whose
    /// applicable rules are `applicable`, if any.
    pub fn restrict(&self, applicable: &RuleSet) -> Option<RuleSet> {
        if !self.required.is_subset(applicable) {
            return None;
        }
        let mut out: RuleSet = self.optional.intersection(applicable).copied().collect();
        out.extend(self.required.iter().copied());
        Some(out)
    }

    fn remap(&self, map: &[usize]) -> QuasiElement {
        QuasiElement::new(
            self.optional.iter().map(|&r| map[r]).collect(),
            self.required.iter().map(|&r| map[r]).collect(),
        )
    }
}

/// A quasimode, either explicit or as a symbolic family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiMode {
    Explicit(BTreeSet<QuasiElement>),
    Singleton(QuasiElement),
    /// Every subset of the referenced rules.
    PowersetOf(BTreeSet<RuleRef>),
    /// `A ×̇ B = { a ∪ b | a ∈ A, b ∈ B }`.
    DottedProduct(Box<QuasiMode>, Box<QuasiMode>),
    UnionOfFamilies(Vec<QuasiMode>),
}

impl QuasiMode {
    /// The empty quasimode; every configuration halts under it.
    pub fn empty() -> QuasiMode {
        QuasiMode::Explicit(BTreeSet::new())
    }

    /// Upper bound on the number of elements (saturating).
    pub fn size_bound(&self) -> usize {
        match self {
            QuasiMode::Explicit(es) => es.len(),
            QuasiMode::Singleton(_) => 1,
            QuasiMode::PowersetOf(rs) => {
                if rs.len() >= usize::BITS as usize - 1 {
                    usize::MAX
                } else {
                    1 << rs.len()
                }
            }
            QuasiMode::DottedProduct(a, b) => a.size_bound().saturating_mul(b.size_bound()),
            QuasiMode::UnionOfFamilies(fs) => fs
                .iter()
                .fold(0usize, |acc, f| acc.saturating_add(f.size_bound())),
        }
    }

    /// Explicit expansion of the denoted set of rule-sets.
    pub fn elements(&self) -> Result<BTreeSet<QuasiElement>> {
        let bound = self.size_bound();
        if bound > MAX_EXPANSION {
            return Err(Error::LimitExceeded {
                what: "quasimode",
                size: bound,
                limit: MAX_EXPANSION,
            });
        }
        Ok(self.expand())
    }

    fn expand(&self) -> BTreeSet<QuasiElement> {
        match self {
            QuasiMode::Explicit(es) => es.clone(),
            QuasiMode::Singleton(e) => BTreeSet::from([e.clone()]),
            QuasiMode::PowersetOf(refs) => {
                let refs: Vec<RuleRef> = refs.iter().copied().collect();
                (0..1usize << refs.len())
                    .map(|mask| {
                        QuasiElement::from_refs(
                            refs.iter()
                                .enumerate()
                                .filter(|(k, _)| mask & (1 << k) != 0)
                                .map(|(_, r)| *r),
                        )
                    })
                    .collect()
            }
            QuasiMode::DottedProduct(a, b) => {
                let (a, b) = (a.expand(), b.expand());
                a.iter()
                    .flat_map(|x| b.iter().map(move |y| x.union(y)))
                    .collect()
            }
            QuasiMode::UnionOfFamilies(fs) => fs.iter().flat_map(|f| f.expand()).collect(),
        }
    }

    /// Every rule index referenced anywhere in the family.
    pub fn referenced_rules(&self) -> RuleSet {
        match self {
            QuasiMode::Explicit(es) => es.iter().flat_map(|e| e.rules()).collect(),
            QuasiMode::Singleton(e) => e.rules(),
            QuasiMode::PowersetOf(rs) => rs.iter().map(|r| r.rule).collect(),
            QuasiMode::DottedProduct(a, b) => {
                a.referenced_rules().union(&b.referenced_rules()).copied().collect()
            }
            QuasiMode::UnionOfFamilies(fs) => fs.iter().flat_map(|f| f.referenced_rules()).collect(),
        }
    }

    pub fn validate(&self, p: &Bps) -> Result<()> {
        match self.referenced_rules().iter().find(|&&r| r >= p.rules().len()) {
            Some(r) => Err(Error::Invalid(format!(
                "quasimode references rule #{r}, the system has {} rules",
                p.rules().len()
            ))),
            None => Ok(()),
        }
    }

    /// Renames rule indices, e.g. after a union of systems.
    pub fn remap_rules(&self, map: &[usize]) -> QuasiMode {
        match self {
            QuasiMode::Explicit(es) => QuasiMode::Explicit(es.iter().map(|e| e.remap(map)).collect()),
            QuasiMode::Singleton(e) => QuasiMode::Singleton(e.remap(map)),
            QuasiMode::PowersetOf(rs) => QuasiMode::PowersetOf(
                rs.iter()
                    .map(|r| RuleRef {
                        rule: map[r.rule],
                        required: r.required,
                    })
                    .collect(),
            ),
            QuasiMode::DottedProduct(a, b) => dotted_product(a.remap_rules(map), b.remap_rules(map)),
            QuasiMode::UnionOfFamilies(fs) => {
                QuasiMode::UnionOfFamilies(fs.iter().map(|f| f.remap_rules(map)).collect())
            }
        }
    }
}

pub fn dotted_product(a: QuasiMode, b: QuasiMode) -> QuasiMode {
    QuasiMode::DottedProduct(Box::new(a), Box::new(b))
}

/// How a Boolean P system picks rule-sets at each configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModeSpec {
    /// Apply every applicable rule; halt when none is applicable.
    MaxParallel,
    FromQuasimode(QuasiMode),
}

/// The mode derived from `q` at `w`.
pub fn derive_mode(q: &QuasiMode, p: &Bps, w: &SymbolSet) -> Result<BTreeSet<RuleSet>> {
    let applicable = p.applicable_rules(w);
    Ok(q.elements()?
        .iter()
        .filter_map(|e| e.restrict(&applicable))
        .collect())
}

/// Successor configurations of `w`, each with the rule-set applied.
pub fn step(p: &Bps, m: &ModeSpec, w: &SymbolSet) -> Result<BTreeSet<(SymbolSet, RuleSet)>> {
    let dynamics = Dynamics::new(p, m)?;
    Ok(dynamics.successors(w).into_iter().collect())
}

/// A system together with a mode, with the quasimode expanded once so that
/// repeated stepping is cheap.
#[derive(Debug, Clone)]
pub struct Dynamics<'a> {
    bps: &'a Bps,
    elements: Option<Vec<QuasiElement>>,
    id_rank: Vec<usize>,
}

impl<'a> Dynamics<'a> {
    pub fn new(bps: &'a Bps, mode: &ModeSpec) -> Result<Dynamics<'a>> {
        let elements = match mode {
            ModeSpec::MaxParallel => None,
            ModeSpec::FromQuasimode(q) => {
                q.validate(bps)?;
                Some(q.elements()?.into_iter().collect())
            }
        };
        let mut order: Vec<usize> = (0..bps.rules().len()).collect();
        order.sort_by(|&a, &b| bps.rule(a).id.cmp(&bps.rule(b).id));
        let mut id_rank = vec![0; order.len()];
        for (rank, &k) in order.iter().enumerate() {
            id_rank[k] = rank;
        }
        Ok(Dynamics {
            bps,
            elements,
            id_rank,
        })
    }

    pub fn bps(&self) -> &'a Bps {
        self.bps
    }

    /// Rule-sets the mode allows at `w`.
    pub fn derived(&self, w: &SymbolSet) -> BTreeSet<RuleSet> {
        let applicable = self.bps.applicable_rules(w);
        match &self.elements {
            None if applicable.is_empty() => BTreeSet::new(),
            None => BTreeSet::from([applicable]),
            Some(es) => es.iter().filter_map(|e| e.restrict(&applicable)).collect(),
        }
    }

    pub fn is_halting(&self, w: &SymbolSet) -> bool {
        self.derived(w).is_empty()
    }

    /// Successors of `w` ordered by the sorted rule ids of the applied set,
    /// which fixes the tie-breaking of every search built on top.
    pub fn successors(&self, w: &SymbolSet) -> Vec<(SymbolSet, RuleSet)> {
        let mut out: Vec<(Vec<usize>, SymbolSet, RuleSet)> = self
            .derived(w)
            .into_iter()
            .map(|rs| {
                let next = self.bps.apply_unchecked(w, &rs);
                (self.label_key(&rs), next, rs)
            })
            .collect();
        out.sort();
        out.into_iter().map(|(_, s, rs)| (s, rs)).collect()
    }

    fn label_key(&self, rs: &RuleSet) -> Vec<usize> {
        let mut key: Vec<usize> = rs.iter().map(|&k| self.id_rank[k]).collect();
        key.sort_unstable();
        key
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bps::Rule;
    use crate::formula::{parse_formula, Formula};
    use crate::symbols::Alphabet;

    fn two_rule_system() -> Bps {
        let v = Alphabet::new(["a", "b"]).unwrap();
        Bps::new(
            v.clone(),
            vec![
                Rule::new(
                    "r1",
                    v.set_of(&["a", "b"]).unwrap(),
                    v.set_of(&["a"]).unwrap(),
                    Formula::Const(true),
                ),
                Rule::new(
                    "r2",
                    v.set_of(&["a"]).unwrap(),
                    v.empty_set(),
                    parse_formula("!b", &v).unwrap(),
                ),
            ],
        )
        .unwrap()
    }

    fn explicit(sets: &[(&[usize], &[usize])]) -> QuasiMode {
        QuasiMode::Explicit(
            sets.iter()
                .map(|(o, r)| {
                    QuasiElement::new(o.iter().copied().collect(), r.iter().copied().collect())
                })
                .collect(),
        )
    }

    fn rs(ids: &[usize]) -> RuleSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn empty_quasimode_derives_nothing() {
        let p = two_rule_system();
        for w in SymbolSet::all_subsets(2) {
            assert!(derive_mode(&QuasiMode::empty(), &p, &w).unwrap().is_empty());
            assert!(step(&p, &ModeSpec::FromQuasimode(QuasiMode::empty()), &w)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn strict_elements_filter_by_full_applicability() {
        // {{r1},{r2},{r1,r2}} with every reference required: only {r1}
        // survives at {a,b} because the guard of r2 fails.
        let p = two_rule_system();
        let q = explicit(&[(&[], &[0]), (&[], &[1]), (&[], &[0, 1])]);
        let ab = p.alphabet().full_set();
        assert_eq!(derive_mode(&q, &p, &ab).unwrap(), BTreeSet::from([rs(&[0])]));
    }

    #[test]
    fn optional_elements_are_restricted() {
        let p = two_rule_system();
        let q = explicit(&[(&[0], &[]), (&[1], &[]), (&[0, 1], &[])]);
        let ab = p.alphabet().full_set();
        assert_eq!(
            derive_mode(&q, &p, &ab).unwrap(),
            BTreeSet::from([rs(&[0]), rs(&[])])
        );
    }

    #[test]
    fn always_applicable_rules_always_derive_everything() {
        let v = Alphabet::new(["a", "b"]).unwrap();
        let rules = (0..3)
            .map(|k| Rule::new(format!("r{k}"), v.empty_set(), v.set_of(&["a"]).unwrap(), Formula::Const(true)))
            .collect();
        let p = Bps::new(v, rules).unwrap();
        let all = rs(&[0, 1, 2]);
        let q = QuasiMode::Singleton(QuasiElement::requiring(all.clone()));
        for w in SymbolSet::all_subsets(2) {
            assert_eq!(derive_mode(&q, &p, &w).unwrap(), BTreeSet::from([all.clone()]));
        }
    }

    #[test]
    fn max_parallel_example() {
        let p = two_rule_system();
        let ab = p.alphabet().full_set();
        let succ = step(&p, &ModeSpec::MaxParallel, &ab).unwrap();
        assert_eq!(
            succ,
            BTreeSet::from([(p.alphabet().set_of(&["a"]).unwrap(), rs(&[0]))])
        );
        // ∅ halts: nothing applicable
        assert!(step(&p, &ModeSpec::MaxParallel, &p.alphabet().empty_set())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn dotted_product_identity_and_definition() {
        let a = explicit(&[(&[1], &[]), (&[2], &[])]);
        let unit = QuasiMode::Singleton(QuasiElement::default());
        assert_eq!(
            dotted_product(unit, a.clone()).elements().unwrap(),
            a.elements().unwrap()
        );
        let r1 = explicit(&[(&[0], &[])]);
        assert_eq!(
            dotted_product(r1, a).elements().unwrap(),
            explicit(&[(&[0, 1], &[]), (&[0, 2], &[])]).elements().unwrap()
        );
    }

    #[test]
    fn singleton_times_powerset_contains_the_singleton_everywhere() {
        let fixed = rs(&[0, 1]);
        let q = dotted_product(
            QuasiMode::Singleton(QuasiElement::advising(fixed.clone())),
            QuasiMode::PowersetOf([2, 3, 4].into_iter().map(RuleRef::optional).collect()),
        );
        let es = q.elements().unwrap();
        assert_eq!(es.len(), 8);
        for e in &es {
            assert!(fixed.is_subset(e.optional()));
            assert!(e.optional().difference(&fixed).all(|r| (2..5).contains(r)));
        }
    }

    #[test]
    fn families_expand_to_their_explicit_form() {
        let pow = QuasiMode::PowersetOf([RuleRef::optional(0), RuleRef::required(1)].into());
        assert_eq!(
            pow.elements().unwrap(),
            explicit(&[(&[], &[]), (&[0], &[]), (&[], &[1]), (&[0], &[1])]).elements().unwrap()
        );
        let union = QuasiMode::UnionOfFamilies(vec![
            QuasiMode::Singleton(QuasiElement::advising(rs(&[0]))),
            explicit(&[(&[0], &[]), (&[1], &[])]),
        ]);
        assert_eq!(union.elements().unwrap().len(), 2);
        assert_eq!(union.size_bound(), 3);
        // a rule referenced both ways is required
        let e = QuasiElement::from_refs([RuleRef::optional(2), RuleRef::required(2)]);
        assert_eq!(e.required(), &rs(&[2]));
        assert!(e.optional().is_empty());
    }

    #[test]
    fn oversized_families_are_rejected() {
        let q = QuasiMode::PowersetOf((0..30).map(RuleRef::optional).collect());
        assert!(matches!(q.elements(), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn successors_are_ordered_by_rule_ids() {
        let v = Alphabet::new(["a"]).unwrap();
        let p = Bps::new(
            v.clone(),
            vec![
                Rule::new("zz", v.empty_set(), v.full_set(), Formula::Const(true)),
                Rule::new("aa", v.empty_set(), v.empty_set(), Formula::Const(true)),
            ],
        )
        .unwrap();
        let q = explicit(&[(&[0], &[]), (&[1], &[])]);
        let d = Dynamics::new(&p, &ModeSpec::FromQuasimode(q)).unwrap();
        let succ = d.successors(&v.empty_set());
        assert_eq!(succ[0].1, rs(&[1]));
        assert_eq!(succ[1].1, rs(&[0]));
    }
}
