//! Boolean networks, Boolean modes, Boolean control networks (BCN) with
//! freeze controls, and control modes.
//!
//! States are [`SymbolSet`]s over the variables `X`; controls are
//! [`SymbolSet`]s over the control inputs `U` (an input in the set is
//! assigned 1).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::formula::{exact_set_literals, Formula};
use crate::symbols::{Alphabet, SymbolSet};

/// A subset of the control inputs.
pub type Control = SymbolSet;

/// A Boolean network: one update formula per variable, over the variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolNetwork {
    vars: Alphabet,
    updates: Vec<Formula>,
}

impl BoolNetwork {
    pub fn new(vars: Alphabet, updates: Vec<Formula>) -> Result<BoolNetwork> {
        if updates.len() != vars.len() {
            return Err(Error::Invalid(format!(
                "{} variables but {} update functions",
                vars.len(),
                updates.len()
            )));
        }
        for (x, f) in updates.iter().enumerate() {
            f.validate(vars.len())
                .map_err(|e| Error::Invalid(format!("update of `{}`: {e}", vars.name(x))))?;
        }
        Ok(BoolNetwork { vars, updates })
    }

    pub fn vars(&self) -> &Alphabet {
        &self.vars
    }

    pub fn updates(&self) -> &[Formula] {
        &self.updates
    }

    pub fn update(&self, x: usize) -> &Formula {
        &self.updates[x]
    }

    /// Successors of `s` under `mode`: one per mode element, updating the
    /// variables of that element and keeping the others.
    pub fn step(&self, mode: &BooleanMode, s: &SymbolSet) -> BTreeSet<SymbolSet> {
        mode.elements(self.vars.len())
            .iter()
            .map(|m| update_vars(&self.updates, m, s, s))
            .collect()
    }
}

/// Sets each variable of `m` to its update evaluated at `eval_at`, starting
/// from `s`.
fn update_vars(updates: &[Formula], m: &SymbolSet, s: &SymbolSet, eval_at: &SymbolSet) -> SymbolSet {
    let mut next = s.clone();
    for x in m.iter() {
        next.set(x, updates[x].eval(eval_at));
    }
    next
}

pub fn bn_step(f: &BoolNetwork, m: &BooleanMode, s: &SymbolSet) -> BTreeSet<SymbolSet> {
    f.step(m, s)
}

/// Which variables are updated together in one step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BooleanMode {
    /// `{X}`
    Synchronous,
    /// `{{x} | x ∈ X}`
    Asynchronous,
    /// An explicit set of subsets of `X`.
    Explicit(BTreeSet<SymbolSet>),
}

impl BooleanMode {
    pub fn elements(&self, n_vars: usize) -> Vec<SymbolSet> {
        match self {
            BooleanMode::Synchronous => vec![SymbolSet::full(n_vars)],
            BooleanMode::Asynchronous => (0..n_vars)
                .map(|x| SymbolSet::from_indices(n_vars, [x]))
                .collect(),
            BooleanMode::Explicit(ms) => ms.iter().cloned().collect(),
        }
    }

    pub fn validate(&self, n_vars: usize) -> Result<()> {
        if let BooleanMode::Explicit(ms) = self {
            if ms.iter().any(|m| m.width() != n_vars) {
                return Err(Error::Invalid("Boolean mode element over the wrong variables".into()));
            }
        }
        Ok(())
    }
}

/// Encoding of freeze controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// `(f ∧ u⁰) ∨ ¬u¹`: an input set to 0 freezes (`u⁰` absent freezes to
    /// 0, `u¹` absent freezes to 1); the control with every input present
    /// leaves the network unchanged.
    InactiveHigh,
    /// `(f ∨ u¹) ∧ ¬u⁰`: a present input freezes (`u⁰` to 0, `u¹` to 1); the
    /// empty control leaves the network unchanged.
    ActiveHigh,
}

/// The two control inputs attached to one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreezePair {
    /// Name of the controlled variable.
    pub var: String,
    /// Index in `U` of the freeze-to-0 input.
    pub zero: usize,
    /// Index in `U` of the freeze-to-1 input.
    pub one: usize,
}

/// Control inputs of variable `x` as produced by [`make_freeze_bcn`].
pub fn freeze_input_names(x: &str) -> (String, String) {
    (format!("u{x}_0"), format!("u{x}_1"))
}

/// A Boolean control network, with its update functions expanded into
/// formulas over `X ∪ U` (variables first, then controls).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bcn {
    vars: Alphabet,
    controls: Alphabet,
    alphabet: Alphabet,
    updates: Vec<Formula>,
    polarity: Option<Polarity>,
}

impl Bcn {
    pub fn new(vars: Alphabet, controls: Alphabet, updates: Vec<Formula>) -> Result<Bcn> {
        let alphabet = vars
            .concat(&controls)
            .map_err(|_| Error::Invalid("variables and control inputs must be disjoint".into()))?;
        if updates.len() != vars.len() {
            return Err(Error::Invalid(format!(
                "{} variables but {} update functions",
                vars.len(),
                updates.len()
            )));
        }
        for (x, f) in updates.iter().enumerate() {
            f.validate(alphabet.len())
                .map_err(|e| Error::Invalid(format!("update of `{}`: {e}", vars.name(x))))?;
        }
        Ok(Bcn {
            vars,
            controls,
            alphabet,
            updates,
            polarity: None,
        })
    }

    /// Records the freeze polarity, enabling conflict detection.
    pub fn with_polarity(mut self, polarity: Polarity) -> Result<Bcn> {
        if self.freeze_pairs().is_none() {
            return Err(Error::Invalid(
                "a polarity needs freeze-structured control inputs".into(),
            ));
        }
        self.polarity = Some(polarity);
        Ok(self)
    }

    pub fn vars(&self) -> &Alphabet {
        &self.vars
    }

    pub fn controls(&self) -> &Alphabet {
        &self.controls
    }

    /// `X` followed by `U`.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn updates(&self) -> &[Formula] {
        &self.updates
    }

    pub fn polarity(&self) -> Option<Polarity> {
        self.polarity
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn n_controls(&self) -> usize {
        self.controls.len()
    }

    /// `s ∪ μ` as a configuration over `X ∪ U`.
    pub fn combine(&self, s: &SymbolSet, mu: &Control) -> SymbolSet {
        let n = self.n_vars();
        SymbolSet::from_indices(
            self.alphabet.len(),
            s.iter().chain(mu.iter().map(|u| u + n)),
        )
    }

    /// Splits a configuration over `X ∪ U` into its state and control parts.
    pub fn split(&self, w: &SymbolSet) -> (SymbolSet, Control) {
        let n = self.n_vars();
        let x_map: Vec<usize> = (0..n).collect();
        let u_map: Vec<usize> = (n..self.alphabet.len()).collect();
        (w.project(&x_map), w.project(&u_map))
    }

    /// Successors of `s` under the network selected by `mu`, evaluating the
    /// expanded formulas on `s ∪ μ`.
    pub fn successors(&self, mode: &BooleanMode, s: &SymbolSet, mu: &Control) -> BTreeSet<SymbolSet> {
        let at = self.combine(s, mu);
        mode.elements(self.n_vars())
            .iter()
            .map(|m| update_vars(&self.updates, m, s, &at))
            .collect()
    }

    /// Deterministic synchronous successor.
    pub fn sync_successor(&self, s: &SymbolSet, mu: &Control) -> SymbolSet {
        let at = self.combine(s, mu);
        update_vars(&self.updates, &SymbolSet::full(self.n_vars()), s, &at)
    }

    /// Pairs `(u_i⁰, u_i¹)` if every control input belongs to one, following
    /// the naming of [`freeze_input_names`]; `None` otherwise.
    pub fn freeze_pairs(&self) -> Option<Vec<FreezePair>> {
        let mut pairs: BTreeMap<String, (Option<usize>, Option<usize>)> = BTreeMap::new();
        for (k, name) in self.controls.names().iter().enumerate() {
            let body = name.strip_prefix('u')?;
            let (var, bit) = body.rsplit_once('_')?;
            let slot = pairs.entry(var.to_string()).or_default();
            match bit {
                "0" => slot.0 = Some(k),
                "1" => slot.1 = Some(k),
                _ => return None,
            }
        }
        let mut out: Vec<FreezePair> = pairs
            .into_iter()
            .map(|(var, (zero, one))| {
                Some(FreezePair {
                    var,
                    zero: zero?,
                    one: one?,
                })
            })
            .collect::<Option<_>>()?;
        out.sort_by_key(|p| p.zero.min(p.one));
        Some(out)
    }

    /// A control freezing some variable both ways: both inputs present under
    /// [`Polarity::ActiveHigh`], both absent under
    /// [`Polarity::InactiveHigh`]. Always false without a known polarity.
    pub fn is_conflicting(&self, mu: &Control) -> bool {
        let (Some(polarity), Some(pairs)) = (self.polarity, self.freeze_pairs()) else {
            return false;
        };
        pairs.iter().any(|p| {
            let (z, o) = (mu.contains(p.zero), mu.contains(p.one));
            match polarity {
                Polarity::ActiveHigh => z && o,
                Polarity::InactiveHigh => !z && !o,
            }
        })
    }

    /// Set of freeze-pair positions (in [`Bcn::freeze_pairs`] order) with
    /// at least one input present in `mu`.
    pub fn idx(&self, mu: &Control) -> Result<BTreeSet<usize>> {
        let pairs = self.require_freeze_pairs()?;
        Ok(pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| mu.contains(p.zero) || mu.contains(p.one))
            .map(|(i, _)| i)
            .collect())
    }

    fn require_freeze_pairs(&self) -> Result<Vec<FreezePair>> {
        self.freeze_pairs().ok_or_else(|| {
            Error::Invalid(
                "control inputs are not freeze-structured (expected pairs u<x>_0, u<x>_1)".into(),
            )
        })
    }

    /// Explicit pairs of the relation denoted by `cm`.
    pub fn control_mode_pairs(&self, cm: &ControlMode) -> Result<BTreeSet<(Control, Control)>> {
        let n_u = self.n_controls();
        if n_u >= 32 {
            return Err(Error::LimitExceeded {
                what: "control space",
                size: n_u,
                limit: 31,
            });
        }
        let all = || SymbolSet::all_subsets(n_u);
        match cm {
            ControlMode::Any => Ok(all().flat_map(|a| all().map(move |b| (a.clone(), b))).collect()),
            ControlMode::Tcs => {
                let pairs = self.require_freeze_pairs()?;
                let total: Vec<Control> = all()
                    .filter(|mu| pairs.iter().all(|p| mu.contains(p.zero) != mu.contains(p.one)))
                    .collect();
                Ok(total
                    .iter()
                    .flat_map(|a| total.iter().map(move |b| (a.clone(), b.clone())))
                    .collect())
            }
            ControlMode::Acs => {
                let mut out = BTreeSet::new();
                for a in all() {
                    let ia = self.idx(&a)?;
                    for b in all() {
                        if ia.is_subset(&self.idx(&b)?) {
                            out.insert((a.clone(), b));
                        }
                    }
                }
                Ok(out)
            }
            ControlMode::Explicit(pairs) => {
                if pairs.iter().any(|(a, b)| a.width() != n_u || b.width() != n_u) {
                    return Err(Error::Invalid("control pair over the wrong inputs".into()));
                }
                Ok(pairs.clone())
            }
        }
    }
}

/// A relation on controls constraining consecutive controls of a trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ControlMode {
    /// `2^U × 2^U`
    Any,
    /// Total control sequences: every controlled variable is frozen one way
    /// at every step.
    Tcs,
    /// Abiding control sequences: `idx(μ) ⊆ idx(ν)`.
    Acs,
    Explicit(BTreeSet<(Control, Control)>),
}

/// The network obtained by fixing the control inputs to `mu`.
pub fn bcn_apply(b: &Bcn, mu: &Control) -> BoolNetwork {
    let n = b.n_vars();
    let value = |i: usize| (i >= n).then(|| mu.contains(i - n));
    let updates = b.updates.iter().map(|f| f.substitute(&value)).collect();
    BoolNetwork {
        vars: b.vars.clone(),
        updates,
    }
}

pub fn bcn_trajectory_step(b: &Bcn, m: &BooleanMode, s: &SymbolSet, mu: &Control) -> BTreeSet<SymbolSet> {
    bn_step(&bcn_apply(b, mu), m, s)
}

/// Adds freeze controls `u<x>_0`, `u<x>_1` to each controllable variable.
pub fn make_freeze_bcn(f: &BoolNetwork, controllable: &[usize], polarity: Polarity) -> Result<Bcn> {
    let mut names = Vec::new();
    for &x in controllable {
        let (u0, u1) = freeze_input_names(f.vars.name(x));
        names.push(u0);
        names.push(u1);
    }
    let controls = Alphabet::new(names)?;
    let n = f.vars.len();
    let mut updates = f.updates.clone();
    for (k, &x) in controllable.iter().enumerate() {
        let u0 = Formula::Var(n + 2 * k);
        let u1 = Formula::Var(n + 2 * k + 1);
        let base = updates[x].clone();
        updates[x] = match polarity {
            Polarity::InactiveHigh => Formula::Or(vec![
                Formula::And(vec![base, u0]),
                Formula::negate(u1),
            ]),
            Polarity::ActiveHigh => Formula::And(vec![
                Formula::Or(vec![base, u1]),
                Formula::negate(u0),
            ]),
        };
    }
    Bcn::new(f.vars.clone(), controls, updates)?.with_polarity(polarity)
}

/// Builds the BCN whose update of `x` is `⋁_μ (μ-literals ∧ F(μ)_x)`, from a
/// network per control.
pub fn bcn_expand(map: &BTreeMap<Control, BoolNetwork>, controls: &Alphabet) -> Result<Bcn> {
    let n_u = controls.len();
    let expected = 1usize
        .checked_shl(n_u as u32)
        .ok_or_else(|| Error::Invalid("too many control inputs".into()))?;
    if map.len() != expected || map.keys().any(|mu| mu.width() != n_u) {
        return Err(Error::Invalid(format!(
            "a network is needed for each of the {expected} controls"
        )));
    }
    let first = map.values().next().expect("at least the empty control");
    let vars = first.vars.clone();
    if map.values().any(|f| f.vars != vars) {
        return Err(Error::Invalid("networks over different variables".into()));
    }
    let n = vars.len();
    let shift: Vec<usize> = (0..n_u).map(|u| u + n).collect();
    let universe = SymbolSet::full(n_u);
    let updates = (0..n)
        .map(|x| {
            if n_u == 0 {
                return first.updates[x].clone();
            }
            Formula::or_all(
                map.iter()
                    .map(|(mu, f)| {
                        let mut parts: Vec<Formula> = exact_set_literals(mu, &universe)
                            .iter()
                            .map(|l| l.remap(&shift))
                            .collect();
                        parts.push(f.updates[x].clone());
                        Formula::and_all(parts)
                    })
                    .collect(),
            )
        })
        .collect();
    Bcn::new(vars, controls.clone(), updates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    pub(crate) fn swap_network() -> BoolNetwork {
        let x = Alphabet::new(["x", "y"]).unwrap();
        let f = vec![
            parse_formula("!x & y", &x).unwrap(),
            parse_formula("x & !y", &x).unwrap(),
        ];
        BoolNetwork::new(x, f).unwrap()
    }

    pub(crate) fn three_gene() -> BoolNetwork {
        let x = Alphabet::new(["x1", "x2", "x3"]).unwrap();
        let f = vec![
            parse_formula("!x1 & x2 & x3 | x1 & !x2 & x3 | x1 & x2 & !x3", &x).unwrap(),
            parse_formula("!x2 & x3 | x1 & x2 & !x3", &x).unwrap(),
            parse_formula("x1 & x2 | x3", &x).unwrap(),
        ];
        BoolNetwork::new(x, f).unwrap()
    }

    fn bits(s: &str) -> SymbolSet {
        SymbolSet::from_bitstring(s).unwrap()
    }

    fn set_of(states: &[&str]) -> BTreeSet<SymbolSet> {
        states.iter().map(|s| bits(s)).collect()
    }

    #[test]
    fn swap_synchronous() {
        let f = swap_network();
        assert_eq!(f.step(&BooleanMode::Synchronous, &bits("01")), set_of(&["10"]));
        assert_eq!(f.step(&BooleanMode::Synchronous, &bits("11")), set_of(&["00"]));
        assert_eq!(f.step(&BooleanMode::Synchronous, &bits("00")), set_of(&["00"]));
    }

    #[test]
    fn swap_asynchronous() {
        let f = swap_network();
        assert_eq!(
            f.step(&BooleanMode::Asynchronous, &bits("11")),
            set_of(&["01", "10"])
        );
    }

    #[test]
    fn empty_update_set_stutters() {
        let f = swap_network();
        let mode = BooleanMode::Explicit(BTreeSet::from([SymbolSet::empty(2)]));
        for s in SymbolSet::all_subsets(2) {
            assert_eq!(f.step(&mode, &s), BTreeSet::from([s.clone()]));
        }
    }

    #[test]
    fn three_gene_synchronous_map() {
        let f = three_gene();
        let expected = [
            ("000", "000"),
            ("001", "011"),
            ("010", "000"),
            ("011", "101"),
            ("100", "000"),
            ("101", "111"),
            ("110", "111"),
            ("111", "001"),
        ];
        for (from, to) in expected {
            assert_eq!(f.step(&BooleanMode::Synchronous, &bits(from)), set_of(&[to]), "{from}");
        }
    }

    #[test]
    fn inactive_high_freeze_formulas() {
        let b = make_freeze_bcn(&swap_network(), &[0, 1], Polarity::InactiveHigh).unwrap();
        assert_eq!(b.controls().names(), ["ux_0", "ux_1", "uy_0", "uy_1"]);
        let expected = [
            "(!x & y) & ux_0 | !ux_1",
            "(x & !y) & uy_0 | !uy_1",
        ];
        for (f, text) in b.updates().iter().zip(expected) {
            assert_eq!(f, &parse_formula(text, b.alphabet()).unwrap());
        }
    }

    #[test]
    fn swap_knockout_controls() {
        let b = make_freeze_bcn(&swap_network(), &[0, 1], Polarity::InactiveHigh).unwrap();
        let u = b.controls();
        let mu1 = u.full_set();
        let mu2 = u.set_of(&["ux_1", "uy_0", "uy_1"]).unwrap();
        let mu3 = u.set_of(&["ux_0", "ux_1", "uy_0"]).unwrap();

        // μ1 freezes nothing: same truth table as the plain network
        let plain = swap_network();
        let f1 = bcn_apply(&b, &mu1);
        for s in SymbolSet::all_subsets(2) {
            assert_eq!(
                f1.step(&BooleanMode::Synchronous, &s),
                plain.step(&BooleanMode::Synchronous, &s)
            );
        }
        // μ2 freezes x to 0: 01 → 00 → 00
        let f2 = bcn_apply(&b, &mu2);
        for s in SymbolSet::all_subsets(2) {
            assert!(!f2.update(0).eval(&s));
        }
        assert_eq!(f2.step(&BooleanMode::Synchronous, &bits("01")), set_of(&["00"]));
        assert_eq!(f2.step(&BooleanMode::Synchronous, &bits("00")), set_of(&["00"]));
        // μ3 freezes y to 1: 00 → 01 → 11
        assert_eq!(
            bcn_trajectory_step(&b, &BooleanMode::Synchronous, &bits("00"), &mu3),
            set_of(&["01"])
        );
        assert_eq!(
            bcn_trajectory_step(&b, &BooleanMode::Synchronous, &bits("01"), &mu3),
            set_of(&["11"])
        );
    }

    #[test]
    fn active_high_three_gene_trajectory() {
        let b = make_freeze_bcn(&three_gene(), &[0, 1], Polarity::ActiveHigh).unwrap();
        let u = b.controls();
        let mu110 = u.set_of(&["ux1_1", "ux2_1"]).unwrap();
        let none = u.empty_set();
        let sync = BooleanMode::Synchronous;
        assert_eq!(bcn_trajectory_step(&b, &sync, &bits("000"), &mu110), set_of(&["110"]));
        assert_eq!(bcn_trajectory_step(&b, &sync, &bits("110"), &mu110), set_of(&["111"]));
        assert_eq!(bcn_trajectory_step(&b, &sync, &bits("111"), &none), set_of(&["001"]));
    }

    #[test]
    fn empty_control_space_is_identity() {
        let f = swap_network();
        let b = Bcn::new(f.vars().clone(), Alphabet::default(), f.updates().to_vec()).unwrap();
        assert_eq!(bcn_apply(&b, &SymbolSet::empty(0)), f);
    }

    #[test]
    fn freeze_targets_override_dynamics() {
        // ≤ 4 variables, every controllable variable, both polarities: when
        // exactly one freeze of x is active, x's next value is the target.
        let x = Alphabet::new(["a", "b", "c", "d"]).unwrap();
        let f = BoolNetwork::new(
            x.clone(),
            vec![
                parse_formula("b & !c | d", &x).unwrap(),
                parse_formula("!a", &x).unwrap(),
                parse_formula("a | b & d", &x).unwrap(),
                parse_formula("c", &x).unwrap(),
            ],
        )
        .unwrap();
        for polarity in [Polarity::InactiveHigh, Polarity::ActiveHigh] {
            let b = make_freeze_bcn(&f, &[0, 1, 2, 3], polarity).unwrap();
            for mu in SymbolSet::all_subsets(8) {
                for s in SymbolSet::all_subsets(4) {
                    let next = b.sync_successor(&s, &mu);
                    for (k, p) in b.freeze_pairs().unwrap().iter().enumerate() {
                        let (z, o) = (mu.contains(p.zero), mu.contains(p.one));
                        let target = match (polarity, z, o) {
                            (Polarity::ActiveHigh, true, false) => Some(false),
                            (Polarity::ActiveHigh, false, true) => Some(true),
                            (Polarity::InactiveHigh, false, true) => Some(false),
                            (Polarity::InactiveHigh, true, false) => Some(true),
                            _ => None,
                        };
                        if let Some(t) = target {
                            assert_eq!(next.contains(k), t);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conflicting_controls_depend_on_polarity() {
        let f = swap_network();
        let active = make_freeze_bcn(&f, &[0], Polarity::ActiveHigh).unwrap();
        let inactive = make_freeze_bcn(&f, &[0], Polarity::InactiveHigh).unwrap();
        assert!(active.is_conflicting(&bits("11")));
        assert!(!active.is_conflicting(&bits("00")));
        assert!(inactive.is_conflicting(&bits("00")));
        assert!(!inactive.is_conflicting(&bits("11")));
    }

    #[test]
    fn expand_with_no_controls_keeps_formulas() {
        let f = swap_network();
        let map = BTreeMap::from([(SymbolSet::empty(0), f.clone())]);
        let b = bcn_expand(&map, &Alphabet::default()).unwrap();
        assert_eq!(b.updates(), f.updates());
    }

    #[test]
    fn expand_one_control() {
        let x = Alphabet::new(["p", "q", "r"]).unwrap();
        let f0 = BoolNetwork::new(
            x.clone(),
            vec![
                parse_formula("q & r", &x).unwrap(),
                parse_formula("!p", &x).unwrap(),
                parse_formula("1", &x).unwrap(),
            ],
        )
        .unwrap();
        let f1 = BoolNetwork::new(
            x.clone(),
            vec![
                parse_formula("q | r", &x).unwrap(),
                parse_formula("p", &x).unwrap(),
                parse_formula("0", &x).unwrap(),
            ],
        )
        .unwrap();
        let u = Alphabet::new(["u"]).unwrap();
        let map = BTreeMap::from([(u.empty_set(), f0.clone()), (u.full_set(), f1.clone())]);
        let b = bcn_expand(&map, &u).unwrap();
        assert_eq!(b.updates()[0].to_text(b.alphabet()), "!u & (q & r) | u & (q | r)");
        // truth table over X ∪ U
        for w in SymbolSet::all_subsets(4) {
            let (s, mu) = b.split(&w);
            let f = if mu.contains(0) { &f1 } else { &f0 };
            for x in 0..3 {
                assert_eq!(b.updates()[x].eval(&w), f.update(x).eval(&s));
            }
        }
        assert!(bcn_expand(&BTreeMap::from([(u.empty_set(), f0)]), &u).is_err());
    }

    #[test]
    fn expanding_a_freeze_bcn_round_trips() {
        let b = make_freeze_bcn(&swap_network(), &[0, 1], Polarity::InactiveHigh).unwrap();
        let map: BTreeMap<Control, BoolNetwork> = SymbolSet::all_subsets(4)
            .map(|mu| (mu.clone(), bcn_apply(&b, &mu)))
            .collect();
        let e = bcn_expand(&map, b.controls()).unwrap();
        for w in SymbolSet::all_subsets(6) {
            for x in 0..2 {
                assert_eq!(e.updates()[x].eval(&w), b.updates()[x].eval(&w));
            }
        }
    }

    #[test]
    fn control_mode_pair_enumerations() {
        let f = swap_network();
        let one = Bcn::new(
            f.vars().clone(),
            Alphabet::new(["u"]).unwrap(),
            f.updates().to_vec(),
        )
        .unwrap();
        assert_eq!(one.control_mode_pairs(&ControlMode::Any).unwrap().len(), 4);
        assert!(one.control_mode_pairs(&ControlMode::Tcs).is_err());

        let b = make_freeze_bcn(&f, &[0], Polarity::ActiveHigh).unwrap();
        let tcs = b.control_mode_pairs(&ControlMode::Tcs).unwrap();
        let singles = [bits("10"), bits("01")];
        assert_eq!(tcs.len(), 4);
        assert!(tcs.iter().all(|(a, c)| singles.contains(a) && singles.contains(c)));

        let acs = b.control_mode_pairs(&ControlMode::Acs).unwrap();
        assert!(acs.contains(&(bits("00"), bits("10"))));
        assert!(!acs.contains(&(bits("10"), bits("00"))));
        assert!(acs.contains(&(bits("10"), bits("01"))));
    }

    #[test]
    fn freeze_pairs_are_inferred_from_names() {
        let f = swap_network();
        let u = Alphabet::new(["uy_1", "ux_0", "uy_0", "ux_1"]).unwrap();
        let b = Bcn::new(f.vars().clone(), u, f.updates().to_vec()).unwrap();
        let pairs = b.freeze_pairs().unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!((pairs[0].var.as_str(), pairs[0].zero, pairs[0].one), ("y", 2, 0));
        let odd = Bcn::new(f.vars().clone(), Alphabet::new(["ux_0"]).unwrap(), f.updates().to_vec()).unwrap();
        assert!(odd.freeze_pairs().is_none());
    }
}
