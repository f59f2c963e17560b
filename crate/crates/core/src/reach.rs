//! Reachability `(Π, M, S_α, S_ω)` by breadth-first search over
//! configurations, with shortest witnesses and state-graph export.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bps::{Bps, RuleSet};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::mode::{Dynamics, ModeSpec};
use crate::symbols::SymbolSet;

pub const DEFAULT_SYMBOL_LIMIT: usize = 22;

/// The target set `S_ω`, explicit or as a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpec {
    States(BTreeSet<SymbolSet>),
    Formula(Formula),
}

impl TargetSpec {
    pub fn contains(&self, w: &SymbolSet) -> bool {
        match self {
            TargetSpec::States(ss) => ss.contains(w),
            TargetSpec::Formula(f) => f.eval(w),
        }
    }

    fn validate(&self, width: usize) -> Result<()> {
        match self {
            TargetSpec::States(ss) if ss.iter().any(|s| s.width() != width) => {
                Err(Error::Invalid("target state over the wrong alphabet".into()))
            }
            TargetSpec::Formula(f) => f.validate(width),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachProblem {
    pub bps: Bps,
    pub mode: ModeSpec,
    pub starts: Vec<SymbolSet>,
    pub target: TargetSpec,
}

/// Which witnesses to compute once a start state fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessPolicy {
    /// Search every start state.
    #[default]
    All,
    /// Stop at the first start state that cannot reach the target.
    First,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub symbol_limit: usize,
    pub witnesses: WitnessPolicy,
    /// Count a target state only when it is halting (its derived mode is
    /// empty), instead of whenever it is visited.
    pub halting_target: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symbol_limit: DEFAULT_SYMBOL_LIMIT,
            witnesses: WitnessPolicy::All,
            halting_target: false,
        }
    }
}

/// An evolution from `start`; `steps` holds the applied rule-set and the
/// resulting configuration. When `reached` is false the steps are empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub start: SymbolSet,
    pub steps: Vec<(RuleSet, SymbolSet)>,
    pub reached: bool,
}

impl Witness {
    pub fn last(&self) -> &SymbolSet {
        self.steps.last().map_or(&self.start, |(_, s)| s)
    }

    /// Re-executes the witness: each rule-set must belong to the derived mode
    /// and produce the recorded configuration, and the last configuration
    /// must be a target.
    pub fn replay(&self, dynamics: &Dynamics, target: &TargetSpec, halting_target: bool) -> Result<()> {
        if !self.reached {
            return Ok(());
        }
        let bps = dynamics.bps();
        let mut w = self.start.clone();
        for (i, (rs, next)) in self.steps.iter().enumerate() {
            if !dynamics.derived(&w).contains(rs) {
                return Err(Error::Invalid(format!(
                    "witness step {}: {{{}}} is not in the mode",
                    i + 1,
                    bps.rule_ids(rs).join(",")
                )));
            }
            let got = bps.apply_rule_set(&w, rs)?;
            if &got != next {
                return Err(Error::Invalid(format!(
                    "witness step {}: expected {}, got {}",
                    i + 1,
                    next.to_bitstring(),
                    got.to_bitstring()
                )));
            }
            w = got;
        }
        if !target.contains(&w) || (halting_target && !dynamics.is_halting(&w)) {
            return Err(Error::Invalid("witness does not end in the target".into()));
        }
        Ok(())
    }

    pub fn to_record(&self, bps: &Bps) -> WitnessRecord {
        WitnessRecord {
            start: self.start.to_bitstring(),
            steps: self
                .steps
                .iter()
                .map(|(rs, s)| StepRecord {
                    rules: bps.rule_ids(rs),
                    state: s.to_bitstring(),
                })
                .collect(),
            reached: self.reached,
        }
    }
}

/// JSON shape of a witness: `{ start, steps: [{rules, state}], reached }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub start: String,
    pub steps: Vec<StepRecord>,
    pub reached: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub rules: Vec<String>,
    pub state: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachResult {
    pub answer: bool,
    /// One per searched start state, in input order.
    pub witnesses: Vec<Witness>,
}

pub(crate) fn check_symbol_limit(width: usize, limit: usize) -> Result<()> {
    if width > limit {
        return Err(Error::TooManySymbols {
            symbols: width,
            limit,
        });
    }
    Ok(())
}

pub fn solve_reach(p: &ReachProblem, opts: &SearchOptions) -> Result<ReachResult> {
    let width = p.bps.alphabet().len();
    check_symbol_limit(width, opts.symbol_limit)?;
    if p.starts.iter().any(|s| s.width() != width) {
        return Err(Error::Invalid("start state over the wrong alphabet".into()));
    }
    p.target.validate(width)?;
    let dynamics = Dynamics::new(&p.bps, &p.mode)?;
    let is_target =
        |w: &SymbolSet| p.target.contains(w) && (!opts.halting_target || dynamics.is_halting(w));
    let witnesses: Vec<Witness> = match opts.witnesses {
        WitnessPolicy::All => p
            .starts
            .par_iter()
            .map(|s| search(&dynamics, s, &is_target))
            .collect(),
        WitnessPolicy::First => {
            let mut out = Vec::new();
            for s in &p.starts {
                let w = search(&dynamics, s, &is_target);
                let failed = !w.reached;
                out.push(w);
                if failed {
                    break;
                }
            }
            out
        }
    };
    Ok(ReachResult {
        answer: witnesses.iter().all(|w| w.reached) && witnesses.len() == p.starts.len(),
        witnesses,
    })
}

/// Breadth-first search from `start`. Successors are explored in the order
/// given by [`Dynamics::successors`], so the witness is the shortest one and,
/// among those, the least by its sequence of rule-id labels.
fn search(dynamics: &Dynamics, start: &SymbolSet, is_target: &(impl Fn(&SymbolSet) -> bool + Sync)) -> Witness {
    if is_target(start) {
        return Witness {
            start: start.clone(),
            steps: Vec::new(),
            reached: true,
        };
    }
    let mut parent: HashMap<SymbolSet, Option<(SymbolSet, RuleSet)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(w) = queue.pop_front() {
        for (next, rs) in dynamics.successors(&w) {
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((w.clone(), rs)));
            if is_target(&next) {
                return Witness {
                    start: start.clone(),
                    steps: unwind(&parent, next),
                    reached: true,
                };
            }
            queue.push_back(next);
        }
    }
    Witness {
        start: start.clone(),
        steps: Vec::new(),
        reached: false,
    }
}

fn unwind(parent: &HashMap<SymbolSet, Option<(SymbolSet, RuleSet)>>, end: SymbolSet) -> Vec<(RuleSet, SymbolSet)> {
    let mut steps = Vec::new();
    let mut cur = end;
    while let Some(Some((prev, rs))) = parent.get(&cur) {
        steps.push((rs.clone(), cur));
        cur = prev.clone();
    }
    steps.reverse();
    steps
}

/// Configurations reachable from `roots` (roots included).
pub fn reachable_states(dynamics: &Dynamics, roots: &[SymbolSet]) -> BTreeSet<SymbolSet> {
    let mut seen: BTreeSet<SymbolSet> = roots.iter().cloned().collect();
    let mut queue: VecDeque<SymbolSet> = roots.iter().cloned().collect();
    while let Some(w) = queue.pop_front() {
        for (next, _) in dynamics.successors(&w) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// The reachable part of a transition system, edges labeled by rule-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateGraph {
    pub nodes: Vec<SymbolSet>,
    pub edges: Vec<(SymbolSet, SymbolSet, RuleSet)>,
}

impl StateGraph {
    /// Edges without labels.
    pub fn transitions(&self) -> BTreeSet<(SymbolSet, SymbolSet)> {
        self.edges.iter().map(|(a, b, _)| (a.clone(), b.clone())).collect()
    }

    /// DOT rendering; node labels are bitstrings, edge labels comma-joined
    /// rule ids (`{}` for the empty set).
    pub fn to_dot(&self, bps: &Bps) -> String {
        let mut out = String::from("digraph states {\n");
        for n in &self.nodes {
            let _ = writeln!(out, "  \"{}\";", n.to_bitstring());
        }
        for (a, b, rs) in &self.edges {
            let label = if rs.is_empty() {
                "{}".to_string()
            } else {
                bps.rule_ids(rs).join(",")
            };
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                a.to_bitstring(),
                b.to_bitstring(),
                label
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn export_state_graph(p: &Bps, m: &ModeSpec, roots: &[SymbolSet], symbol_limit: usize) -> Result<StateGraph> {
    let width = p.alphabet().len();
    check_symbol_limit(width, symbol_limit)?;
    if roots.iter().any(|s| s.width() != width) {
        return Err(Error::Invalid("root state over the wrong alphabet".into()));
    }
    let dynamics = Dynamics::new(p, m)?;
    let nodes: Vec<SymbolSet> = reachable_states(&dynamics, roots).into_iter().collect();
    let edges = nodes
        .iter()
        .flat_map(|w| {
            dynamics
                .successors(w)
                .into_iter()
                .map(move |(next, rs)| (w.clone(), next, rs))
        })
        .collect();
    Ok(StateGraph { nodes, edges })
}
