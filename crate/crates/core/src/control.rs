//! Control problems on Boolean control networks: CoFaSe (synchronous, the
//! control may change freely at every step) and SeqControl (explicit mode
//! and control relation), solved by breadth-first search, plus a cross-check
//! through the composite Boolean P system.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::bnet::{bcn_trajectory_step, Bcn, BooleanMode, Control, ControlMode};
use crate::error::{Error, Result};
use crate::formula::{exact_set_formula, Formula};
use crate::mode::{Dynamics, ModeSpec};
use crate::reach::{solve_reach, ReachProblem, SearchOptions, TargetSpec, WitnessPolicy};
use crate::symbols::SymbolSet;
use crate::translate::{bcn_to_seqcontrol_composite, GuardStyle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControlOptions {
    pub var_limit: usize,
    pub control_limit: usize,
    /// Admit controls freezing a variable both ways.
    pub allow_conflicting: bool,
    pub witnesses: WitnessPolicy,
}

impl Default for ControlOptions {
    fn default() -> Self {
        ControlOptions {
            var_limit: 20,
            control_limit: 12,
            allow_conflicting: false,
            witnesses: WitnessPolicy::All,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofaseProblem {
    pub bcn: Bcn,
    pub starts: Vec<SymbolSet>,
    /// Over the variables only.
    pub target: TargetSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqControlProblem {
    pub bcn: Bcn,
    pub mode: BooleanMode,
    pub control_mode: ControlMode,
    pub starts: Vec<SymbolSet>,
    /// Over the variables only.
    pub target: TargetSpec,
}

/// A controlled trajectory: each step records the control applied and the
/// state it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlWitness {
    pub start: SymbolSet,
    pub steps: Vec<(Control, SymbolSet)>,
    pub reached: bool,
}

/// A maximal run of steps under one control, with the visited states
/// (the first being the state the control starts from).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub control: Control,
    pub states: Vec<SymbolSet>,
}

impl ControlWitness {
    pub fn last(&self) -> &SymbolSet {
        self.steps.last().map_or(&self.start, |(_, s)| s)
    }

    /// Splits the trajectory wherever the control changes.
    pub fn segments(&self) -> Vec<Segment> {
        let mut out: Vec<Segment> = Vec::new();
        let mut prev = self.start.clone();
        for (mu, s) in &self.steps {
            match out.last_mut() {
                Some(seg) if &seg.control == mu => seg.states.push(s.clone()),
                _ => out.push(Segment {
                    control: mu.clone(),
                    states: vec![prev.clone(), s.clone()],
                }),
            }
            prev = s.clone();
        }
        out
    }

    /// Re-executes the witness through [`bcn_trajectory_step`] and checks
    /// that consecutive controls, and each control with some successor, are
    /// in the relation.
    pub fn replay(&self, bcn: &Bcn, mode: &BooleanMode, relation: &ControlRelation, target: &TargetSpec) -> Result<()> {
        if !self.reached {
            return Ok(());
        }
        let mut s = self.start.clone();
        for (i, (mu, next)) in self.steps.iter().enumerate() {
            if !bcn_trajectory_step(bcn, mode, &s, mu).contains(next) {
                return Err(Error::Invalid(format!(
                    "control witness step {}: {} is not a successor of {}",
                    i + 1,
                    next.to_bitstring(),
                    s.to_bitstring()
                )));
            }
            if !relation.is_allowed(mu) || relation.successors(mu).is_empty() {
                return Err(Error::Invalid(format!(
                    "control witness step {}: control {} is not admissible",
                    i + 1,
                    mu.to_bitstring()
                )));
            }
            if let Some((nu, _)) = self.steps.get(i + 1) {
                if !relation.contains(mu, nu) {
                    return Err(Error::Invalid(format!(
                        "control witness step {}: ({}, {}) is not in the control relation",
                        i + 1,
                        mu.to_bitstring(),
                        nu.to_bitstring()
                    )));
                }
            }
            s = next.clone();
        }
        if !target.contains(&s) {
            return Err(Error::Invalid("control witness does not end in the target".into()));
        }
        Ok(())
    }

    pub fn to_record(&self) -> ControlWitnessRecord {
        ControlWitnessRecord {
            start: self.start.to_bitstring(),
            steps: self
                .steps
                .iter()
                .map(|(mu, s)| ControlStepRecord {
                    control: mu.to_bitstring(),
                    state: s.to_bitstring(),
                })
                .collect(),
            reached: self.reached,
        }
    }
}

/// JSON shape: `{ start, steps: [{control, state}], reached }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ControlWitnessRecord {
    pub start: String,
    pub steps: Vec<ControlStepRecord>,
    pub reached: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ControlStepRecord {
    pub control: String,
    pub state: String,
}

/// Configurations `s ∪ μ` of a composite evolution assembled from control
/// segments: consecutive segments must share their joint state, which
/// already carries the next segment's control (it is the control the next
/// step will use).
pub fn glue_segments(segments: &[Segment]) -> Result<Vec<(SymbolSet, Control)>> {
    let mut out = Vec::new();
    for (k, seg) in segments.iter().enumerate() {
        if seg.states.is_empty() {
            return Err(Error::Invalid("empty segment".into()));
        }
        if let Some(prev) = k.checked_sub(1).map(|p| &segments[p]) {
            if prev.states.last() != seg.states.first() {
                return Err(Error::Invalid(format!(
                    "segment {} does not start where segment {} ends",
                    k + 1,
                    k
                )));
            }
        }
        let last = k + 1 == segments.len();
        let keep = if last { seg.states.len() } else { seg.states.len() - 1 };
        out.extend(seg.states[..keep].iter().map(|s| (s.clone(), seg.control.clone())));
    }
    Ok(out)
}

/// A control relation restricted to admissible controls, queried by
/// successor.
#[derive(Debug, Clone)]
pub struct ControlRelation {
    kind: RelationKind,
    domain: Vec<Control>,
    explicit: HashMap<Control, Vec<Control>>,
    idx: HashMap<Control, BTreeSet<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RelationKind {
    Any,
    Tcs,
    Acs,
    Explicit,
}

impl ControlRelation {
    /// `bcn`'s controls under `cm`, without conflicting controls unless
    /// `allow_conflicting`.
    pub fn new(bcn: &Bcn, cm: &ControlMode, allow_conflicting: bool) -> Result<ControlRelation> {
        let n_u = bcn.n_controls();
        let admissible = |mu: &Control| allow_conflicting || !bcn.is_conflicting(mu);
        let all = || SymbolSet::all_subsets(n_u).filter(admissible);
        let mut idx = HashMap::new();
        let mut explicit = HashMap::new();
        let (kind, domain) = match cm {
            ControlMode::Any => (RelationKind::Any, all().collect()),
            ControlMode::Tcs => {
                let pairs = bcn.freeze_pairs().ok_or_else(not_freeze)?;
                let total = all()
                    .filter(|mu| pairs.iter().all(|p| mu.contains(p.zero) != mu.contains(p.one)))
                    .collect();
                (RelationKind::Tcs, total)
            }
            ControlMode::Acs => {
                let domain: Vec<Control> = all().collect();
                for mu in &domain {
                    idx.insert(mu.clone(), bcn.idx(mu)?);
                }
                (RelationKind::Acs, domain)
            }
            ControlMode::Explicit(pairs) => {
                for (a, b) in pairs {
                    if a.width() != n_u || b.width() != n_u {
                        return Err(Error::Invalid("control pair over the wrong inputs".into()));
                    }
                    if admissible(a) && admissible(b) {
                        explicit.entry(a.clone()).or_insert_with(Vec::new).push(b.clone());
                    }
                }
                let mut domain: BTreeSet<Control> = BTreeSet::new();
                for (a, bs) in &explicit {
                    domain.insert(a.clone());
                    domain.extend(bs.iter().cloned());
                }
                (RelationKind::Explicit, domain.into_iter().collect())
            }
        };
        Ok(ControlRelation {
            kind,
            domain,
            explicit,
            idx,
        })
    }

    /// Controls occurring in the relation.
    pub fn domain(&self) -> &[Control] {
        &self.domain
    }

    pub fn is_allowed(&self, mu: &Control) -> bool {
        self.domain.binary_search(mu).is_ok()
    }

    /// `{ ν | (μ, ν) ∈ R }` in ascending order.
    pub fn successors(&self, mu: &Control) -> Vec<Control> {
        if !self.is_allowed(mu) {
            return Vec::new();
        }
        match self.kind {
            RelationKind::Any | RelationKind::Tcs => self.domain.clone(),
            RelationKind::Acs => {
                let from = &self.idx[mu];
                self.domain
                    .iter()
                    .filter(|nu| from.is_subset(&self.idx[*nu]))
                    .cloned()
                    .collect()
            }
            RelationKind::Explicit => {
                let mut out = self.explicit.get(mu).cloned().unwrap_or_default();
                out.sort();
                out
            }
        }
    }

    pub fn contains(&self, mu: &Control, nu: &Control) -> bool {
        self.successors(mu).contains(nu)
    }

    /// Controls that may start a trajectory: left elements of some pair.
    pub fn initial_controls(&self) -> Vec<Control> {
        self.domain
            .iter()
            .filter(|mu| !self.successors(mu).is_empty())
            .cloned()
            .collect()
    }

    /// Explicit pairs, for building the composite system.
    pub fn pairs(&self) -> BTreeSet<(Control, Control)> {
        self.domain
            .iter()
            .flat_map(|mu| self.successors(mu).into_iter().map(move |nu| (mu.clone(), nu)))
            .collect()
    }
}

fn not_freeze() -> Error {
    Error::Invalid("control inputs are not freeze-structured (expected pairs u<x>_0, u<x>_1)".into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlResult {
    pub answer: bool,
    /// One per searched start state, in input order.
    pub witnesses: Vec<ControlWitness>,
    /// Set when the answer is decided by the shape of the relation alone.
    pub diagnostic: Option<String>,
}

fn check_limits(bcn: &Bcn, starts: &[SymbolSet], target: &TargetSpec, opts: &ControlOptions) -> Result<()> {
    if bcn.n_vars() > opts.var_limit {
        return Err(Error::LimitExceeded {
            what: "variable set",
            size: bcn.n_vars(),
            limit: opts.var_limit,
        });
    }
    if bcn.n_controls() > opts.control_limit {
        return Err(Error::LimitExceeded {
            what: "control input set",
            size: bcn.n_controls(),
            limit: opts.control_limit,
        });
    }
    if starts.iter().any(|s| s.width() != bcn.n_vars()) {
        return Err(Error::Invalid("start state over the wrong variables".into()));
    }
    match target {
        TargetSpec::States(ss) if ss.iter().any(|s| s.width() != bcn.n_vars()) => {
            Err(Error::Invalid("target state over the wrong variables".into()))
        }
        TargetSpec::Formula(f) => f.validate(bcn.n_vars()),
        _ => Ok(()),
    }
}

fn run_starts<F>(starts: &[SymbolSet], policy: WitnessPolicy, search: F) -> Vec<ControlWitness>
where
    F: Fn(&SymbolSet) -> ControlWitness + Sync,
{
    match policy {
        WitnessPolicy::All => starts.par_iter().map(&search).collect(),
        WitnessPolicy::First => {
            let mut out = Vec::new();
            for s in starts {
                let w = search(s);
                let failed = !w.reached;
                out.push(w);
                if failed {
                    break;
                }
            }
            out
        }
    }
}

fn reached_immediately(start: &SymbolSet) -> ControlWitness {
    ControlWitness {
        start: start.clone(),
        steps: Vec::new(),
        reached: true,
    }
}

fn unreached(start: &SymbolSet) -> ControlWitness {
    ControlWitness {
        start: start.clone(),
        steps: Vec::new(),
        reached: false,
    }
}

/// Synchronous search over states with every admissible control available at
/// every step; each edge uses the least control producing it.
pub fn solve_cofase(p: &CofaseProblem, opts: &ControlOptions) -> Result<ControlResult> {
    check_limits(&p.bcn, &p.starts, &p.target, opts)?;
    let controls: Vec<Control> = SymbolSet::all_subsets(p.bcn.n_controls())
        .filter(|mu| opts.allow_conflicting || !p.bcn.is_conflicting(mu))
        .collect();
    let search = |start: &SymbolSet| {
        if p.target.contains(start) {
            return reached_immediately(start);
        }
        let mut parent: HashMap<SymbolSet, Option<(SymbolSet, Control)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(s) = queue.pop_front() {
            for mu in &controls {
                let next = p.bcn.sync_successor(&s, mu);
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((s.clone(), mu.clone())));
                if p.target.contains(&next) {
                    let mut steps = Vec::new();
                    let mut cur = next;
                    while let Some(Some((prev, mu))) = parent.get(&cur) {
                        steps.push((mu.clone(), cur.clone()));
                        cur = prev.clone();
                    }
                    steps.reverse();
                    return ControlWitness {
                        start: start.clone(),
                        steps,
                        reached: true,
                    };
                }
                queue.push_back(next);
            }
        }
        unreached(start)
    };
    let witnesses = run_starts(&p.starts, opts.witnesses, search);
    Ok(ControlResult {
        answer: witnesses.len() == p.starts.len() && witnesses.iter().all(|w| w.reached),
        witnesses,
        diagnostic: None,
    })
}

type ProductNode = (SymbolSet, Control);

/// Search over product states `(s, μ)` where `μ` is the control governing
/// the next step; `(s, μ) → (s', ν)` for `s'` a successor of `s` under `μ`
/// and `(μ, ν)` in the relation.
pub fn solve_seqcontrol(p: &SeqControlProblem, opts: &ControlOptions) -> Result<ControlResult> {
    check_limits(&p.bcn, &p.starts, &p.target, opts)?;
    p.mode.validate(p.bcn.n_vars())?;
    let relation = ControlRelation::new(&p.bcn, &p.control_mode, opts.allow_conflicting)?;
    let initial = relation.initial_controls();
    let succ: HashMap<Control, Vec<Control>> = relation
        .domain()
        .iter()
        .map(|mu| (mu.clone(), relation.successors(mu)))
        .collect();
    let search = |start: &SymbolSet| {
        if p.target.contains(start) {
            return reached_immediately(start);
        }
        let mut parent: HashMap<ProductNode, Option<ProductNode>> = HashMap::new();
        let mut queue = VecDeque::new();
        for mu in &initial {
            let node = (start.clone(), mu.clone());
            parent.insert(node.clone(), None);
            queue.push_back(node);
        }
        while let Some((s, mu)) = queue.pop_front() {
            let nexts = &succ[&mu];
            if nexts.is_empty() {
                continue;
            }
            for s2 in p.bcn.successors(&p.mode, &s, &mu) {
                if p.target.contains(&s2) {
                    let mut steps = vec![(mu.clone(), s2)];
                    let mut cur = (s.clone(), mu.clone());
                    while let Some(Some(prev)) = parent.get(&cur) {
                        steps.push((prev.1.clone(), cur.0.clone()));
                        cur = prev.clone();
                    }
                    steps.reverse();
                    return ControlWitness {
                        start: start.clone(),
                        steps,
                        reached: true,
                    };
                }
                for nu in nexts {
                    let node = (s2.clone(), nu.clone());
                    if parent.contains_key(&node) {
                        continue;
                    }
                    parent.insert(node.clone(), Some((s.clone(), mu.clone())));
                    queue.push_back(node);
                }
            }
        }
        unreached(start)
    };
    let witnesses = run_starts(&p.starts, opts.witnesses, search);
    let answer = witnesses.len() == p.starts.len() && witnesses.iter().all(|w| w.reached);
    let diagnostic = (initial.is_empty() && !answer)
        .then(|| "the control relation has no pairs, so no control can ever be applied".to_string());
    Ok(ControlResult {
        answer,
        witnesses,
        diagnostic,
    })
}

/// Outcome of solving a SeqControl problem both directly and through the
/// composite Boolean P system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub direct: bool,
    pub composite: bool,
    /// Per start state: (direct, composite).
    pub per_start: Vec<(bool, bool)>,
    /// Number of composite witnesses replayed successfully.
    pub replayed: usize,
}

impl CrosscheckReport {
    pub fn agree(&self) -> bool {
        self.direct == self.composite && self.per_start.iter().all(|(a, b)| a == b)
    }
}

/// `S_ω` over `X` as a formula over `X ∪ U` constraining the state part only.
fn lift_target(target: &TargetSpec, n_vars: usize, width: usize) -> Result<Formula> {
    match target {
        TargetSpec::Formula(f) => Ok(f.clone()),
        TargetSpec::States(ss) => {
            let map: Vec<usize> = (0..n_vars).collect();
            let universe = SymbolSet::from_indices(width, 0..n_vars);
            Ok(Formula::or_all(
                ss.iter()
                    .map(|t| exact_set_formula(&t.embed(&map, width), &universe))
                    .collect::<Result<_>>()?,
            ))
        }
    }
}

/// Solves `p` directly and as reachability in `Π ∪ Π_U` from every `s ∪ μ₀`
/// (`μ₀` a left element of the relation) to configurations whose state part
/// is a target, then compares.
pub fn crosscheck_via_composite(
    p: &SeqControlProblem,
    opts: &ControlOptions,
    style: GuardStyle,
    search: &SearchOptions,
) -> Result<CrosscheckReport> {
    let direct = solve_seqcontrol(
        p,
        &ControlOptions {
            witnesses: WitnessPolicy::All,
            ..*opts
        },
    )?;
    let relation = ControlRelation::new(&p.bcn, &p.control_mode, opts.allow_conflicting)?;
    let composite = bcn_to_seqcontrol_composite(&p.bcn, &p.mode, &relation.pairs(), style)?;
    let width = composite.bps.alphabet().len();
    let target = TargetSpec::Formula(lift_target(&p.target, p.bcn.n_vars(), width)?);
    let mode = ModeSpec::FromQuasimode(composite.quasimode.clone());
    let dynamics = Dynamics::new(&composite.bps, &mode)?;
    let initial = relation.initial_controls();
    let mut per_start = Vec::new();
    let mut replayed = 0;
    for (s, w) in p.starts.iter().zip(&direct.witnesses) {
        let reached = if p.target.contains(s) {
            true
        } else {
            let lifted = initial.iter().map(|mu| composite.configuration(s, mu));
            let mut any = false;
            for start in lifted {
                let problem = ReachProblem {
                    bps: composite.bps.clone(),
                    mode: mode.clone(),
                    starts: vec![start],
                    target: target.clone(),
                };
                let r = solve_reach(&problem, search)?;
                for wit in &r.witnesses {
                    wit.replay(&dynamics, &target, search.halting_target)?;
                    replayed += 1;
                }
                if r.answer {
                    any = true;
                    break;
                }
            }
            any
        };
        per_start.push((w.reached, reached));
    }
    Ok(CrosscheckReport {
        direct: direct.answer,
        composite: per_start.iter().all(|(_, c)| *c),
        per_start,
        replayed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bnet::{make_freeze_bcn, BoolNetwork, Polarity};
    use crate::formula::parse_formula;
    use crate::symbols::Alphabet;

    fn bits(s: &str) -> SymbolSet {
        SymbolSet::from_bitstring(s).unwrap()
    }

    fn swap_knockouts() -> Bcn {
        let x = Alphabet::new(["x", "y"]).unwrap();
        let f = BoolNetwork::new(
            x.clone(),
            vec![
                parse_formula("!x & y", &x).unwrap(),
                parse_formula("x & !y", &x).unwrap(),
            ],
        )
        .unwrap();
        make_freeze_bcn(&f, &[0, 1], Polarity::InactiveHigh).unwrap()
    }

    fn states(ss: &[&str]) -> TargetSpec {
        TargetSpec::States(ss.iter().map(|s| bits(s)).collect())
    }

    #[test]
    fn cofase_swap_knockouts() {
        let b = swap_knockouts();
        let p = CofaseProblem {
            bcn: b.clone(),
            starts: vec![bits("01")],
            target: states(&["11"]),
        };
        let r = solve_cofase(&p, &ControlOptions::default()).unwrap();
        assert!(r.answer);
        let rel = ControlRelation::new(&b, &ControlMode::Any, false).unwrap();
        r.witnesses[0]
            .replay(&b, &BooleanMode::Synchronous, &rel, &p.target)
            .unwrap();
    }

    #[test]
    fn start_in_target_needs_no_control() {
        let b = swap_knockouts();
        let p = SeqControlProblem {
            bcn: b,
            mode: BooleanMode::Synchronous,
            control_mode: ControlMode::Explicit(BTreeSet::new()),
            starts: vec![bits("01")],
            target: states(&["01"]),
        };
        let r = solve_seqcontrol(&p, &ControlOptions::default()).unwrap();
        assert!(r.answer);
        assert!(r.witnesses[0].steps.is_empty());
        let other = SeqControlProblem {
            target: states(&["11"]),
            ..p
        };
        let r = solve_seqcontrol(&other, &ControlOptions::default()).unwrap();
        assert!(!r.answer);
        assert!(r.diagnostic.is_some());
    }

    #[test]
    fn segments_and_glue() {
        let u = swap_knockouts();
        let mu1 = u.controls().full_set();
        let mu2 = u.controls().set_of(&["ux_1", "uy_0", "uy_1"]).unwrap();
        let w = ControlWitness {
            start: bits("01"),
            steps: vec![
                (mu1.clone(), bits("10")),
                (mu1.clone(), bits("01")),
                (mu2.clone(), bits("00")),
            ],
            reached: true,
        };
        let segs = w.segments();
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].states, vec![bits("01"), bits("10"), bits("01")]);
        assert_eq!(segs[1].states, vec![bits("01"), bits("00")]);
        let glued = glue_segments(&segs).unwrap();
        assert_eq!(
            glued,
            vec![
                (bits("01"), mu1.clone()),
                (bits("10"), mu1),
                (bits("01"), mu2.clone()),
                (bits("00"), mu2),
            ]
        );
        let broken = [segs[1].clone(), segs[0].clone()];
        assert!(glue_segments(&broken).is_err());
    }

    #[test]
    fn conflicting_controls_are_excluded_by_default() {
        let b = swap_knockouts();
        let rel = ControlRelation::new(&b, &ControlMode::Any, false).unwrap();
        assert_eq!(rel.domain().len(), 9);
        let all = ControlRelation::new(&b, &ControlMode::Any, true).unwrap();
        assert_eq!(all.domain().len(), 16);
    }

    #[test]
    fn lifted_target_constrains_state_part_only() {
        let f = lift_target(&states(&["10"]), 2, 4).unwrap();
        for w in SymbolSet::all_subsets(4) {
            assert_eq!(f.eval(&w), w.contains(0) && !w.contains(1));
        }
    }
}
