//! Translations of Boolean networks, Boolean control networks, control modes
//! and reaction systems into Boolean P systems.

use std::collections::BTreeSet;

use crate::bnet::{Bcn, BooleanMode, BoolNetwork, Control};
use crate::bps::{union_bps, Bps, Rule, RuleSet};
use crate::error::{Error, Result};
use crate::formula::{exact_set_formula, Formula};
use crate::mode::{dotted_product, QuasiElement, QuasiMode, RuleRef};
use crate::rsys::ReactionSystem;
use crate::symbols::{Alphabet, SymbolSet};

pub fn set_rule_id(x: &str) -> String {
    format!("set_{x}")
}

pub fn clr_rule_id(x: &str) -> String {
    format!("clr_{x}")
}

/// `R_x = { ∅ → {x} | f_x, {x} → ∅ | ¬f_x }` for the first `updates.len()`
/// symbols of `alphabet`.
fn update_rules(alphabet: &Alphabet, updates: &[Formula]) -> Vec<Rule> {
    let width = alphabet.len();
    let mut rules = Vec::with_capacity(2 * updates.len());
    for (x, f) in updates.iter().enumerate() {
        let name = alphabet.name(x);
        let single = SymbolSet::from_indices(width, [x]);
        rules.push(Rule::new(set_rule_id(name), SymbolSet::empty(width), single.clone(), f.clone()));
        rules.push(Rule::new(clr_rule_id(name), single, SymbolSet::empty(width), Formula::negate(f.clone())));
    }
    rules
}

pub fn bn_to_bps(f: &BoolNetwork) -> Bps {
    Bps::new(f.vars().clone(), update_rules(f.vars(), f.updates()))
        .expect("translation of a valid network is valid")
}

/// `M̃ = { ⋃_{x∈m} R_x | m ∈ M }`, with every rule advised (applied when
/// applicable). `vars` are the variables the Boolean mode ranges over.
pub fn boolean_mode_to_quasimode(m: &BooleanMode, vars: &Alphabet, translation: &Bps) -> Result<QuasiMode> {
    m.validate(vars.len())?;
    let mut elements = BTreeSet::new();
    for subset in m.elements(vars.len()) {
        let mut rules = RuleSet::new();
        for x in subset.iter() {
            let name = vars.name(x);
            rules.insert(translation.rule_index(&set_rule_id(name))?);
            rules.insert(translation.rule_index(&clr_rule_id(name))?);
        }
        elements.insert(QuasiElement::advising(rules));
    }
    Ok(QuasiMode::Explicit(elements))
}

/// A system over `X ∪ U` simulating a controlled network, with its quasimode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeBps {
    pub bps: Bps,
    pub quasimode: QuasiMode,
    pub x_symbols: SymbolSet,
    pub u_symbols: SymbolSet,
}

impl CompositeBps {
    /// The configuration `s ∪ μ`.
    pub fn configuration(&self, s: &SymbolSet, mu: &Control) -> SymbolSet {
        let n = self.x_symbols.len();
        SymbolSet::from_indices(
            self.bps.alphabet().len(),
            s.iter().chain(mu.iter().map(|u| u + n)),
        )
    }

    /// The state and control parts of a configuration.
    pub fn split(&self, w: &SymbolSet) -> (SymbolSet, Control) {
        let xs: Vec<usize> = self.x_symbols.iter().collect();
        let us: Vec<usize> = self.u_symbols.iter().collect();
        (w.project(&xs), w.project(&us))
    }
}

/// `Π(F_U)` over `X ∪ U` together with `M̃` for the given Boolean mode.
fn bcn_update_part(b: &Bcn, m: &BooleanMode) -> Result<(Bps, QuasiMode)> {
    let p = Bps::new(b.alphabet().clone(), update_rules(b.alphabet(), b.updates()))?;
    let q = boolean_mode_to_quasimode(m, b.vars(), &p)?;
    Ok((p, q))
}

/// Adds `extra` (over `U`) to the update part and forms `M̃ ×̇ M̃_extra`.
fn compose(b: &Bcn, update: (Bps, QuasiMode), extra: (Bps, QuasiMode)) -> Result<CompositeBps> {
    let (p, q) = update;
    let (pu, qu) = extra;
    let bps = union_bps(&p, &pu)?;
    let map: Vec<usize> = pu
        .rules()
        .iter()
        .map(|r| bps.rule_index(&r.id))
        .collect::<Result<_>>()?;
    let n = b.n_vars();
    let width = bps.alphabet().len();
    debug_assert_eq!(bps.alphabet(), b.alphabet());
    Ok(CompositeBps {
        quasimode: dotted_product(q, qu.remap_rules(&map)),
        x_symbols: SymbolSet::from_indices(width, 0..n),
        u_symbols: SymbolSet::from_indices(width, n..width),
        bps,
    })
}

pub fn u_del_rule_id(u: &str) -> String {
    format!("u_del_{u}")
}

pub fn u_add_rule_id(u: &str) -> String {
    format!("u_add_{u}")
}

/// `Π_U = (U, R_U⁰ ∪ R_U¹)` with `M̃_U = {R_U⁰} ×̇ 2^{R_U¹}`: each step the
/// control part is replaced by an arbitrary subset of `U`.
pub fn free_control_part(controls: &Alphabet) -> (Bps, QuasiMode) {
    let width = controls.len();
    let mut rules = Vec::new();
    for (u, name) in controls.names().iter().enumerate() {
        let single = SymbolSet::from_indices(width, [u]);
        rules.push(Rule::new(u_del_rule_id(name), single, SymbolSet::empty(width), Formula::Const(true)));
    }
    for (u, name) in controls.names().iter().enumerate() {
        let single = SymbolSet::from_indices(width, [u]);
        rules.push(Rule::new(u_add_rule_id(name), SymbolSet::empty(width), single, Formula::Const(true)));
    }
    let p = Bps::new(controls.clone(), rules).expect("control rules are valid");
    let r0: RuleSet = (0..width).collect();
    let q = dotted_product(
        QuasiMode::Singleton(QuasiElement::advising(r0)),
        QuasiMode::PowersetOf((width..2 * width).map(RuleRef::optional).collect()),
    );
    (p, q)
}

/// `Π ∪ Π_U` under `M̃ ×̇ M̃_U`, simulating the controlled network with
/// controls changing freely.
pub fn bcn_to_composite(b: &Bcn, m: &BooleanMode) -> Result<CompositeBps> {
    compose(b, bcn_update_part(b, m)?, free_control_part(b.controls()))
}

/// Guard of the control-relation rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GuardStyle {
    /// `μ₁ → μ₂ | ⋀_{u∈μ₁} u ∧ ⋀_{u∉μ₁} ¬u`: fires only when the control part
    /// is exactly `μ₁`.
    #[default]
    ExactGuard,
    /// `μ₁ → μ₂ | 1`.
    ConstantGuard,
}

pub fn cm_rule_id(k: usize) -> String {
    format!("cm_{k}")
}

/// One rule `cm_k : μ₁ → μ₂` per relation pair, in pair order; the quasimode
/// has one required singleton per rule, so every step applies exactly one of
/// them.
pub fn control_mode_to_pu(
    pairs: &BTreeSet<(Control, Control)>,
    controls: &Alphabet,
    style: GuardStyle,
) -> Result<(Bps, QuasiMode)> {
    let universe = controls.full_set();
    let mut rules = Vec::with_capacity(pairs.len());
    for (k, (from, to)) in pairs.iter().enumerate() {
        if from.width() != universe.width() || to.width() != universe.width() {
            return Err(Error::Invalid("control pair over the wrong inputs".into()));
        }
        let guard = match style {
            GuardStyle::ExactGuard => exact_set_formula(from, &universe)?,
            GuardStyle::ConstantGuard => Formula::Const(true),
        };
        rules.push(Rule::new(cm_rule_id(k), from.clone(), to.clone(), guard));
    }
    let p = Bps::new(controls.clone(), rules)?;
    let q = QuasiMode::Explicit(
        (0..pairs.len())
            .map(|k| QuasiElement::requiring(RuleSet::from([k])))
            .collect(),
    );
    Ok((p, q))
}

/// `Π ∪ Π_U` with `Π_U` simulating the control relation.
pub fn bcn_to_seqcontrol_composite(
    b: &Bcn,
    m: &BooleanMode,
    pairs: &BTreeSet<(Control, Control)>,
    style: GuardStyle,
) -> Result<CompositeBps> {
    compose(
        b,
        bcn_update_part(b, m)?,
        control_mode_to_pu(pairs, b.controls(), style)?,
    )
}

pub fn reaction_rule_id(reaction: &str) -> String {
    format!("react_{reaction}")
}

pub fn decay_rule_id(species: &str) -> String {
    format!("decay_{species}")
}

pub const IDLE_RULE_ID: &str = "idle";

/// `∅ → P | ⋀R ∧ ⋀¬I` per reaction and `{x} → ∅ | 1` per species; one
/// maximally parallel step computes the result function. A final
/// `idle: ∅ → ∅ | 1` keeps the empty configuration from halting, so that
/// `∅` steps to `∅` when no reaction is enabled.
pub fn rs_to_bps(rs: &ReactionSystem) -> Bps {
    let s = rs.species();
    let width = s.len();
    let mut rules = Vec::new();
    for r in rs.reactions() {
        let lits = r
            .reactants
            .iter()
            .map(Formula::var)
            .chain(r.inhibitors.iter().map(|i| Formula::negate(Formula::var(i))))
            .collect();
        rules.push(Rule::new(
            reaction_rule_id(&r.id),
            SymbolSet::empty(width),
            r.products.clone(),
            Formula::and_all(lits),
        ));
    }
    for (x, name) in s.names().iter().enumerate() {
        rules.push(Rule::new(
            decay_rule_id(name),
            SymbolSet::from_indices(width, [x]),
            SymbolSet::empty(width),
            Formula::Const(true),
        ));
    }
    rules.push(Rule::new(
        IDLE_RULE_ID,
        SymbolSet::empty(width),
        SymbolSet::empty(width),
        Formula::Const(true),
    ));
    Bps::new(s.clone(), rules).expect("translation of a valid reaction system is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bnet::{make_freeze_bcn, Polarity};
    use crate::formula::parse_formula;
    use crate::mode::{Dynamics, ModeSpec};
    use crate::rsys::Reaction;

    fn swap_network() -> BoolNetwork {
        let x = Alphabet::new(["x", "y"]).unwrap();
        let f = vec![
            parse_formula("!x & y", &x).unwrap(),
            parse_formula("x & !y", &x).unwrap(),
        ];
        BoolNetwork::new(x, f).unwrap()
    }

    fn bits(s: &str) -> SymbolSet {
        SymbolSet::from_bitstring(s).unwrap()
    }

    #[test]
    fn rules_of_example_network() {
        let p = bn_to_bps(&swap_network());
        assert_eq!(p.rules().len(), 4);
        let set_x = p.rule(p.rule_index("set_x").unwrap());
        assert!(set_x.lhs.is_empty());
        assert_eq!(p.alphabet().format_set(&set_x.rhs), "{x}");
        assert_eq!(set_x.guard.to_text(p.alphabet()), "!x & y");
        let clr_x = p.rule(p.rule_index("clr_x").unwrap());
        assert_eq!(p.alphabet().format_set(&clr_x.lhs), "{x}");
        assert!(clr_x.rhs.is_empty());
        assert_eq!(clr_x.guard.to_text(p.alphabet()), "!(!x & y)");
    }

    #[test]
    fn mode_translation() {
        let f = swap_network();
        let p = bn_to_bps(&f);
        let all: RuleSet = (0..4).collect();
        assert_eq!(
            boolean_mode_to_quasimode(&BooleanMode::Synchronous, f.vars(), &p).unwrap(),
            QuasiMode::Explicit(BTreeSet::from([QuasiElement::advising(all)]))
        );
        let asyn = boolean_mode_to_quasimode(&BooleanMode::Asynchronous, f.vars(), &p).unwrap();
        assert_eq!(
            asyn,
            QuasiMode::Explicit(BTreeSet::from([
                QuasiElement::advising(RuleSet::from([0, 1])),
                QuasiElement::advising(RuleSet::from([2, 3])),
            ]))
        );
        let none = boolean_mode_to_quasimode(&BooleanMode::Explicit(BTreeSet::new()), f.vars(), &p).unwrap();
        assert_eq!(none, QuasiMode::empty());
    }

    #[test]
    fn constant_network_fills_in_one_step() {
        let x = Alphabet::new(["a", "b", "c"]).unwrap();
        let f = BoolNetwork::new(x.clone(), vec![Formula::Const(true); 3]).unwrap();
        let p = bn_to_bps(&f);
        let q = boolean_mode_to_quasimode(&BooleanMode::Synchronous, &x, &p).unwrap();
        let d = Dynamics::new(&p, &ModeSpec::FromQuasimode(q)).unwrap();
        let succ = d.successors(&x.empty_set());
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].0, x.full_set());
    }

    #[test]
    fn composite_without_controls_is_plain_translation() {
        let f = swap_network();
        let b = Bcn::new(f.vars().clone(), Alphabet::default(), f.updates().to_vec()).unwrap();
        let c = bcn_to_composite(&b, &BooleanMode::Synchronous).unwrap();
        assert_eq!(c.bps, bn_to_bps(&f));
        let plain = boolean_mode_to_quasimode(&BooleanMode::Synchronous, f.vars(), &c.bps).unwrap();
        assert_eq!(c.quasimode.elements().unwrap(), plain.elements().unwrap());
    }

    #[test]
    fn exact_guard_blocks_partial_control_match() {
        let x = Alphabet::new(["x1", "x2", "x3"]).unwrap();
        let f = BoolNetwork::new(x.clone(), vec![Formula::Const(false); 3]).unwrap();
        let b = make_freeze_bcn(&f, &[0, 1], Polarity::ActiveHigh).unwrap();
        let u = b.controls();
        let mu110 = u.set_of(&["ux1_1", "ux2_1"]).unwrap();
        let none = u.empty_set();
        let pairs = BTreeSet::from([(mu110.clone(), mu110.clone()), (mu110.clone(), none)]);
        let partial = u.set_of(&["ux1_1"]).unwrap();
        let (exact, _) = control_mode_to_pu(&pairs, u, GuardStyle::ExactGuard).unwrap();
        assert_eq!(exact.rules().len(), 2);
        assert!(exact.applicable_rules(&partial).is_empty());
        assert_eq!(exact.applicable_rules(&mu110).len(), 2);
        let (literal, _) = control_mode_to_pu(&pairs, u, GuardStyle::ConstantGuard).unwrap();
        // the literal guard fires on a strict superset of μ₁ and leaves
        // control parts outside the relation
        let extra = u.set_of(&["ux1_1", "ux2_1", "ux1_0"]).unwrap();
        let k = literal.rules().iter().position(|r| r.rhs.is_empty()).unwrap();
        let after = literal.apply_rule_set(&extra, &RuleSet::from([k])).unwrap();
        assert_eq!(after, u.set_of(&["ux1_0"]).unwrap());
        assert!(exact.applicable_rules(&extra).is_empty());
    }

    #[test]
    fn empty_relation_gives_no_rules() {
        let u = Alphabet::new(["u"]).unwrap();
        let (p, q) = control_mode_to_pu(&BTreeSet::new(), &u, GuardStyle::ExactGuard).unwrap();
        assert!(p.rules().is_empty());
        assert!(q.elements().unwrap().is_empty());
    }

    #[test]
    fn single_reaction_under_max_parallel() {
        let s = Alphabet::new(["a", "b", "c"]).unwrap();
        let rs = ReactionSystem::new(
            s.clone(),
            vec![Reaction {
                id: "r".into(),
                reactants: s.set_of(&["a"]).unwrap(),
                inhibitors: s.set_of(&["b"]).unwrap(),
                products: s.set_of(&["c"]).unwrap(),
            }],
        )
        .unwrap();
        let p = rs_to_bps(&rs);
        let d = Dynamics::new(&p, &ModeSpec::MaxParallel).unwrap();
        let succ = d.successors(&bits("100"));
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].0, bits("001"));
        assert_eq!(d.successors(&bits("110"))[0].0, bits("000"));
        // nothing enabled, nothing present: the idle rule still fires
        let idle = d.successors(&bits("000"));
        assert_eq!(idle.len(), 1);
        assert_eq!(idle[0].0, bits("000"));
    }
}
