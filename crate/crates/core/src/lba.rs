//! Deterministic linear bounded automata: simulation and the translation of
//! acceptance into Boolean P system reachability.

use std::collections::{BTreeSet, HashSet};

use crate::bps::{Bps, Rule, RuleSet};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::mode::{ModeSpec, QuasiElement, QuasiMode};
use crate::reach::{ReachProblem, TargetSpec};
use crate::symbols::{Alphabet, SymbolSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
    S,
}

impl Move {
    pub fn parse(s: &str) -> Option<Move> {
        match s {
            "L" => Some(Move::L),
            "R" => Some(Move::R),
            "S" => Some(Move::S),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Move::L => "L",
            Move::R => "R",
            Move::S => "S",
        }
    }
}

/// `δ(state, read) = (next, write, move)`, by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub state: String,
    pub read: String,
    pub next: String,
    pub write: String,
    pub dir: Move,
}

/// An automaton as written, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LbaSpec {
    pub states: Vec<String>,
    pub tape: Vec<String>,
    pub input: Vec<String>,
    pub output: Vec<String>,
    /// Left marker, blank, right marker.
    pub markers: [String; 3],
    pub init: String,
    pub accept: String,
    pub transitions: Vec<Transition>,
}

impl LbaSpec {
    /// Sends every undefined `(state, symbol)` to `sink` without moving or
    /// writing.
    pub fn fill_missing(&mut self, sink: &str) {
        let defined: HashSet<(String, String)> = self
            .transitions
            .iter()
            .map(|t| (t.state.clone(), t.read.clone()))
            .collect();
        for q in &self.states {
            for v in &self.tape {
                if !defined.contains(&(q.clone(), v.clone())) {
                    self.transitions.push(Transition {
                        state: q.clone(),
                        read: v.clone(),
                        next: sink.to_string(),
                        write: v.clone(),
                        dir: Move::S,
                    });
                }
            }
        }
    }
}

/// A validated deterministic LBA with a total transition function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lba {
    states: Alphabet,
    tape: Alphabet,
    input: BTreeSet<usize>,
    output: BTreeSet<usize>,
    delta: Vec<(usize, usize, Move)>,
    init: usize,
    accept: usize,
    left: usize,
    blank: usize,
    right: usize,
}

/// `Z_l u q a̲ v Z_r`: cell 0 holds `Z_l`, cell `n+1` holds `Z_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LbaConfig {
    pub tape: Vec<usize>,
    pub head: usize,
    pub state: usize,
}

impl Lba {
    pub fn new(spec: &LbaSpec) -> Result<Lba> {
        let states = Alphabet::new(spec.states.iter().cloned())?;
        let tape = Alphabet::new(spec.tape.iter().cloned())?;
        let [left, blank, right] = [0, 1, 2].map(|k| tape.lookup(&spec.markers[k]));
        let (left, blank, right) = (left?, blank?, right?);
        if left == blank || left == right || blank == right {
            return Err(Error::Invalid("the three markers must be distinct".into()));
        }
        let markers = [left, blank, right];
        let sub_alphabet = |names: &[String], what: &str| -> Result<BTreeSet<usize>> {
            names
                .iter()
                .map(|n| {
                    let v = tape.lookup(n)?;
                    if markers.contains(&v) {
                        return Err(Error::Invalid(format!("{what} symbol `{n}` is a marker")));
                    }
                    Ok(v)
                })
                .collect()
        };
        let input = sub_alphabet(&spec.input, "input")?;
        let output = sub_alphabet(&spec.output, "output")?;
        let nv = tape.len();
        let mut delta: Vec<Option<(usize, usize, Move)>> = vec![None; states.len() * nv];
        for t in &spec.transitions {
            let q = states.lookup(&t.state)?;
            let v = tape.lookup(&t.read)?;
            let p = states.lookup(&t.next)?;
            let w = tape.lookup(&t.write)?;
            let ok = if v == left {
                w == left && t.dir != Move::L
            } else if v == right {
                w == right && t.dir != Move::R
            } else {
                w != left && w != right
            };
            if !ok {
                return Err(Error::Invalid(format!(
                    "transition {} {} -> {} {} {} breaks the boundary markers",
                    t.state,
                    t.read,
                    t.next,
                    t.write,
                    t.dir.as_str()
                )));
            }
            let slot = &mut delta[q * nv + v];
            if slot.is_some() {
                return Err(Error::Invalid(format!(
                    "two transitions for state `{}` reading `{}`",
                    t.state, t.read
                )));
            }
            *slot = Some((p, w, t.dir));
        }
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(k, d)| {
                d.ok_or_else(|| {
                    Error::Invalid(format!(
                        "no transition for state `{}` reading `{}`",
                        states.name(k / nv),
                        tape.name(k % nv)
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Lba {
            init: states.lookup(&spec.init)?,
            accept: states.lookup(&spec.accept)?,
            states,
            tape,
            input,
            output,
            delta,
            left,
            blank,
            right,
        })
    }

    pub fn states(&self) -> &Alphabet {
        &self.states
    }

    pub fn tape(&self) -> &Alphabet {
        &self.tape
    }

    pub fn input_symbols(&self) -> &BTreeSet<usize> {
        &self.input
    }

    pub fn output_symbols(&self) -> &BTreeSet<usize> {
        &self.output
    }

    /// Left marker, blank, right marker.
    pub fn markers(&self) -> (usize, usize, usize) {
        (self.left, self.blank, self.right)
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn delta(&self, q: usize, v: usize) -> (usize, usize, Move) {
        self.delta[q * self.tape.len() + v]
    }

    /// Parses a word given as whitespace-separated symbols, or, written
    /// without spaces, as one symbol per character.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let tokens: Vec<String> = if text.split_whitespace().count() > 1 {
            text.split_whitespace().map(str::to_string).collect()
        } else {
            text.trim().chars().map(String::from).collect()
        };
        let word = tokens
            .iter()
            .map(|t| self.tape.lookup(t))
            .collect::<Result<Vec<_>>>()?;
        self.check_word(&word)?;
        Ok(word)
    }

    fn check_word(&self, x: &[usize]) -> Result<()> {
        match x.iter().find(|v| !self.input.contains(v)) {
            Some(&v) => Err(Error::Invalid(format!(
                "`{}` is not an input symbol",
                self.tape.name(v)
            ))),
            None => Ok(()),
        }
    }

    /// `Z_l q₀ x Z_r`.
    pub fn initial_config(&self, x: &[usize]) -> LbaConfig {
        let mut tape = Vec::with_capacity(x.len() + 2);
        tape.push(self.left);
        tape.extend_from_slice(x);
        tape.push(self.right);
        LbaConfig {
            tape,
            head: 1,
            state: self.init,
        }
    }

    /// `Z_l q₁ B…B Z_r`.
    pub fn is_accepting(&self, c: &LbaConfig) -> bool {
        c.state == self.accept
            && c.head == 0
            && c.tape[1..c.tape.len() - 1].iter().all(|&v| v == self.blank)
    }
}

pub fn lba_step(m: &Lba, c: &LbaConfig) -> Result<LbaConfig> {
    let last = c.tape.len().checked_sub(1).filter(|&l| l >= 1);
    let Some(last) = last else {
        return Err(Error::Invalid("tape has no boundary markers".into()));
    };
    if c.head > last || c.tape[0] != m.left || c.tape[last] != m.right || c.state >= m.states.len() {
        return Err(Error::Invalid("malformed configuration".into()));
    }
    let (p, w, dir) = m.delta(c.state, c.tape[c.head]);
    let mut next = c.clone();
    next.tape[c.head] = w;
    next.state = p;
    next.head = match dir {
        Move::L => c.head - 1,
        Move::R => c.head + 1,
        Move::S => c.head,
    };
    Ok(next)
}

/// Runs from `Z_l q₀ x Z_r`; accepts on the configuration `Z_l q₁ B…B Z_r`,
/// rejects once a configuration repeats.
pub fn lba_accepts(m: &Lba, x: &[usize]) -> Result<bool> {
    m.check_word(x)?;
    let mut c = m.initial_config(x);
    let mut seen = HashSet::new();
    loop {
        if m.is_accepting(&c) {
            return Ok(true);
        }
        if !seen.insert(c.clone()) {
            return Ok(false);
        }
        c = lba_step(m, &c)?;
    }
}

/// Symbol layout of the translated system for inputs of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LbaLayout {
    pub n: usize,
    pub n_tape: usize,
    pub n_states: usize,
}

impl LbaLayout {
    pub fn of(m: &Lba, n: usize) -> LbaLayout {
        LbaLayout {
            n,
            n_tape: m.tape.len(),
            n_states: m.states.len(),
        }
    }

    pub fn width(&self) -> usize {
        (self.n + 2) * (self.n_tape + self.n_states)
    }

    /// `A_{v,j}`
    pub fn cell(&self, v: usize, j: usize) -> usize {
        j * self.n_tape + v
    }

    /// `C_{q,j}`
    pub fn control(&self, q: usize, j: usize) -> usize {
        (self.n + 2) * self.n_tape + j * self.n_states + q
    }

    pub fn encode(&self, c: &LbaConfig) -> SymbolSet {
        let mut w = SymbolSet::from_indices(
            self.width(),
            c.tape.iter().enumerate().map(|(j, &v)| self.cell(v, j)),
        );
        w.insert(self.control(c.state, c.head));
        w
    }

    /// Inverse of [`LbaLayout::encode`]; fails unless the configuration has
    /// exactly one `C` symbol and exactly one `A` symbol per cell.
    pub fn decode(&self, w: &SymbolSet) -> Result<LbaConfig> {
        let mut tape = vec![None; self.n + 2];
        let mut head = None;
        for i in w.iter() {
            if i < (self.n + 2) * self.n_tape {
                let (j, v) = (i / self.n_tape, i % self.n_tape);
                if tape[j].replace(v).is_some() {
                    return Err(Error::Invalid(format!("two symbols in cell {j}")));
                }
            } else {
                let k = i - (self.n + 2) * self.n_tape;
                if head.replace((k % self.n_states, k / self.n_states)).is_some() {
                    return Err(Error::Invalid("two head symbols".into()));
                }
            }
        }
        let (state, head) = head.ok_or_else(|| Error::Invalid("no head symbol".into()))?;
        let tape = tape
            .into_iter()
            .enumerate()
            .map(|(j, v)| v.ok_or_else(|| Error::Invalid(format!("empty cell {j}"))))
            .collect::<Result<_>>()?;
        Ok(LbaConfig { tape, head, state })
    }
}

/// The reachability instance whose answer is whether `m` accepts `x`: one
/// rule `d<q>_<v>_<j> : {A_{v,j}, C_{q,j}} → {A_{w,j}, C_{p,j±1}} | 1` per
/// instruction and tape position, quasimode `{R}`, start `s_x` and the single
/// accepting configuration as target.
pub fn lba_to_bps(m: &Lba, x: &[usize]) -> Result<ReachProblem> {
    m.check_word(x)?;
    let n = x.len();
    let layout = LbaLayout::of(m, n);
    let mut names = Vec::with_capacity(layout.width());
    for j in 0..n + 2 {
        for v in m.tape.names() {
            names.push(format!("A_{v}_{j}"));
        }
    }
    for j in 0..n + 2 {
        for q in m.states.names() {
            names.push(format!("C_{q}_{j}"));
        }
    }
    let alphabet = Alphabet::new(names)?;
    let width = alphabet.len();
    let mut rules = Vec::new();
    for q in 0..m.states.len() {
        for v in 0..m.tape.len() {
            let (p, w, dir) = m.delta(q, v);
            let positions = match dir {
                Move::R => 0..n + 1,
                Move::S => 0..n + 2,
                Move::L => 1..n + 2,
            };
            for j in positions {
                let j2 = match dir {
                    Move::R => j + 1,
                    Move::S => j,
                    Move::L => j - 1,
                };
                rules.push(Rule::new(
                    format!("d{q}_{v}_{j}"),
                    SymbolSet::from_indices(width, [layout.cell(v, j), layout.control(q, j)]),
                    SymbolSet::from_indices(width, [layout.cell(w, j), layout.control(p, j2)]),
                    Formula::Const(true),
                ));
            }
        }
    }
    let all: RuleSet = (0..rules.len()).collect();
    let bps = Bps::new(alphabet, rules)?;
    let start = layout.encode(&m.initial_config(x));
    let mut accepting = vec![m.blank; n + 2];
    accepting[0] = m.left;
    accepting[n + 1] = m.right;
    let target = layout.encode(&LbaConfig {
        tape: accepting,
        head: 0,
        state: m.accept,
    });
    Ok(ReachProblem {
        bps,
        mode: ModeSpec::FromQuasimode(QuasiMode::Explicit(BTreeSet::from([QuasiElement::advising(all)]))),
        starts: vec![start],
        target: TargetSpec::States(BTreeSet::from([target])),
    })
}
