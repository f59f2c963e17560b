//! Brute-force oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use boolp::bnet::{make_freeze_bcn, Bcn, BooleanMode, BoolNetwork, Polarity};
use boolp::bps::{Bps, RuleSet};
use boolp::formula::parse_formula;
use boolp::mode::QuasiElement;
use boolp::rsys::ReactionSystem;
use boolp::symbols::{Alphabet, SymbolSet};

pub fn bits(s: &str) -> SymbolSet {
    SymbolSet::from_bitstring(s).unwrap()
}

pub fn set_of(states: &[&str]) -> BTreeSet<SymbolSet> {
    states.iter().map(|s| bits(s)).collect()
}

pub fn edges(pairs: &[(&str, &str)]) -> BTreeSet<(SymbolSet, SymbolSet)> {
    pairs.iter().map(|(a, b)| (bits(a), bits(b))).collect()
}

pub fn network(vars: &[&str], fns: &[&str]) -> BoolNetwork {
    let x = Alphabet::new(vars.iter().copied()).unwrap();
    let f = fns.iter().map(|t| parse_formula(t, &x).unwrap()).collect();
    BoolNetwork::new(x, f).unwrap()
}

/// `f_x = x̄ ∧ y`, `f_y = x ∧ ȳ`.
pub fn swap_network() -> BoolNetwork {
    network(&["x", "y"], &["!x & y", "x & !y"])
}

pub fn swap_knockouts() -> Bcn {
    make_freeze_bcn(&swap_network(), &[0, 1], Polarity::InactiveHigh).unwrap()
}

pub fn three_gene() -> BoolNetwork {
    network(
        &["x1", "x2", "x3"],
        &[
            "!x1 & x2 & x3 | x1 & !x2 & x3 | x1 & x2 & !x3",
            "!x2 & x3 | x1 & x2 & !x3",
            "x1 & x2 | x3",
        ],
    )
}

/// The three-gene network with knock-out/knock-in controls on `x1` and `x2`.
pub fn three_gene_frozen() -> Bcn {
    make_freeze_bcn(&three_gene(), &[0, 1], Polarity::ActiveHigh).unwrap()
}

/// Update sets of a Boolean mode, enumerated without the library.
pub fn mode_elements(m: &BooleanMode, n: usize) -> Vec<Vec<usize>> {
    match m {
        BooleanMode::Synchronous => vec![(0..n).collect()],
        BooleanMode::Asynchronous => (0..n).map(|i| vec![i]).collect(),
        BooleanMode::Explicit(sets) => sets.iter().map(|s| s.iter().collect()).collect(),
    }
}

/// Successors of `s`: for every update set, the variables in it take the
/// value of their update function, the others keep theirs.
pub fn bn_successors(f: &BoolNetwork, m: &BooleanMode, s: &SymbolSet) -> BTreeSet<SymbolSet> {
    let n = f.vars().len();
    mode_elements(m, n)
        .into_iter()
        .map(|upd| {
            let mut next = s.clone();
            for x in upd {
                next.set(x, f.update(x).eval(s));
            }
            next
        })
        .collect()
}

pub fn applicable(p: &Bps, w: &SymbolSet) -> RuleSet {
    p.rules()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.lhs.is_subset(w) && r.guard.eval(w))
        .map(|(k, _)| k)
        .collect()
}

/// Derived mode from quasimode elements: an element survives when its
/// required rules are applicable and contributes those plus its applicable
/// optional rules.
pub fn derived(elements: &BTreeSet<QuasiElement>, appl: &RuleSet) -> BTreeSet<RuleSet> {
    elements
        .iter()
        .filter(|e| e.required().is_subset(appl))
        .map(|e| e.required().union(&e.optional().intersection(appl).copied().collect()).copied().collect())
        .collect()
}

/// `(W ∖ ⋃ lhs) ∪ ⋃ rhs`.
pub fn apply(p: &Bps, w: &SymbolSet, rs: &RuleSet) -> SymbolSet {
    let mut removed = SymbolSet::empty(w.width());
    let mut added = SymbolSet::empty(w.width());
    for &k in rs {
        removed.union_with(&p.rule(k).lhs);
        added.union_with(&p.rule(k).rhs);
    }
    w.difference(&removed).union(&added)
}

/// Union of the products of the enabled reactions.
pub fn rs_result(rs: &ReactionSystem, w: &SymbolSet) -> SymbolSet {
    let mut out = SymbolSet::empty(w.width());
    for r in rs.reactions() {
        if r.reactants.is_subset(w) && r.inhibitors.is_disjoint(w) {
            out.union_with(&r.products);
        }
    }
    out
}

/// States reachable from `roots` in the relation `succ` (roots included).
pub fn closure<F>(roots: &[SymbolSet], succ: F) -> BTreeSet<SymbolSet>
where
    F: Fn(&SymbolSet) -> BTreeSet<SymbolSet>,
{
    let mut seen: BTreeSet<SymbolSet> = roots.iter().cloned().collect();
    let mut stack: Vec<SymbolSet> = roots.to_vec();
    while let Some(s) = stack.pop() {
        for t in succ(&s) {
            if seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    seen
}

pub const ERASER: &str = "\
states: q0 qk q1 qr
tape: Zl B Zr a b
input: a b
markers: Zl B Zr
init: q0
final: q1
default: qr
q0 a -> q0 B R
q0 b -> q0 B R
q0 Zr -> qk Zr L
qk B -> qk B L
qk Zl -> q1 Zl S
";

pub const PARITY: &str = "\
states: q0 qo qk q1 qr
tape: Zl B Zr a
input: a
markers: Zl B Zr
init: q0
final: q1
default: qr
q0 a -> qo B R
qo a -> q0 B R
q0 Zr -> qk Zr L
qk B -> qk B L
qk Zl -> q1 Zl S
";

/// Accepts `a*b*`, blanking the tape as it goes.
pub const A_STAR_B_STAR: &str = "\
states: qa qb qk q1 qr
tape: Zl B Zr a b
input: a b
output: a b
markers: Zl B Zr
init: qa
final: q1
default: qr
qa a -> qa B R
qa b -> qb B R
qa Zr -> qk Zr L
qb b -> qb B R
qb Zr -> qk Zr L
qk B -> qk B L
qk Zl -> q1 Zl S
";

/// Every word over `letters` of length at most `max`.
pub fn words(letters: &[char], max: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn is_a_star_b_star(w: &str) -> bool {
    !w.contains("ba")
}
