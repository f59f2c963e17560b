//! Seeded random instances for property tests and self-checks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bnet::{make_freeze_bcn, Bcn, BooleanMode, BoolNetwork, Control, ControlMode, Polarity};
use crate::bps::{Bps, Rule};
use crate::formula::Formula;
use crate::mode::{QuasiElement, QuasiMode};
use crate::rsys::{Reaction, ReactionSystem};
use crate::symbols::{Alphabet, SymbolSet};

pub type GenRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_b001;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The seed in `BOOLP_SEED`, or [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("BOOLP_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Symbols `prefix0`, `prefix1`, ...
pub fn names(prefix: &str, n: usize) -> Alphabet {
    Alphabet::new((0..n).map(|i| format!("{prefix}{i}"))).expect("generated names are valid")
}

pub fn subset(rng: &mut GenRng, width: usize, p: f64) -> SymbolSet {
    SymbolSet::from_indices(width, (0..width).filter(|_| rng.gen_bool(p)))
}

pub fn formula(rng: &mut GenRng, width: usize, depth: usize) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        if width == 0 || rng.gen_bool(0.1) {
            return Formula::Const(rng.gen());
        }
        return Formula::Var(rng.gen_range(0..width));
    }
    match rng.gen_range(0..3) {
        0 => Formula::negate(formula(rng, width, depth - 1)),
        k => {
            let n = rng.gen_range(2..=3);
            let parts = (0..n).map(|_| formula(rng, width, depth - 1)).collect();
            if k == 1 {
                Formula::And(parts)
            } else {
                Formula::Or(parts)
            }
        }
    }
}

pub fn bool_network(rng: &mut GenRng, n_vars: usize) -> BoolNetwork {
    let vars = names("x", n_vars);
    let updates = (0..n_vars).map(|_| formula(rng, n_vars, 3)).collect();
    BoolNetwork::new(vars, updates).expect("generated network is valid")
}

pub fn boolean_mode(rng: &mut GenRng, n_vars: usize) -> BooleanMode {
    match rng.gen_range(0..4) {
        0 => BooleanMode::Synchronous,
        1 => BooleanMode::Asynchronous,
        _ => {
            let k = rng.gen_range(0..=4);
            BooleanMode::Explicit((0..k).map(|_| subset(rng, n_vars, 0.5)).collect())
        }
    }
}

/// Rules `<prefix>0..` over `alphabet`.
pub fn bps(rng: &mut GenRng, alphabet: &Alphabet, n_rules: usize, prefix: &str) -> Bps {
    let width = alphabet.len();
    let rules = (0..n_rules)
        .map(|k| {
            Rule::new(
                format!("{prefix}{k}"),
                subset(rng, width, 0.3),
                subset(rng, width, 0.3),
                formula(rng, width, 2),
            )
        })
        .collect();
    Bps::new(alphabet.clone(), rules).expect("generated system is valid")
}

/// An explicit quasimode over rules `0..n_rules`; each reference is required
/// with probability `p_required`.
pub fn quasimode(rng: &mut GenRng, n_rules: usize, max_elements: usize, p_required: f64) -> QuasiMode {
    let k = rng.gen_range(0..=max_elements);
    let elements = (0..k)
        .map(|_| {
            let rules = subset(rng, n_rules, 0.4);
            let (req, opt): (Vec<usize>, Vec<usize>) = rules.iter().partition(|_| rng.gen_bool(p_required));
            QuasiElement::new(opt.into_iter().collect(), req.into_iter().collect())
        })
        .collect();
    QuasiMode::Explicit(elements)
}

pub fn reaction_system(rng: &mut GenRng, n_species: usize, n_reactions: usize) -> ReactionSystem {
    let species = names("s", n_species);
    let reactions = (0..n_reactions)
        .map(|k| {
            let reactants = subset(rng, n_species, 0.35);
            let inhibitors = subset(rng, n_species, 0.25).difference(&reactants);
            Reaction {
                id: format!("r{k}"),
                reactants,
                inhibitors,
                products: subset(rng, n_species, 0.4),
            }
        })
        .collect();
    ReactionSystem::new(species, reactions).expect("generated reaction system is valid")
}

/// A random network with freeze controls on `n_controlled` random variables.
pub fn freeze_bcn(rng: &mut GenRng, n_vars: usize, n_controlled: usize) -> Bcn {
    let f = bool_network(rng, n_vars);
    let mut vars: Vec<usize> = (0..n_vars).collect();
    vars.shuffle(rng);
    vars.truncate(n_controlled.min(n_vars));
    vars.sort_unstable();
    let polarity = if rng.gen() {
        Polarity::ActiveHigh
    } else {
        Polarity::InactiveHigh
    };
    make_freeze_bcn(&f, &vars, polarity).expect("generated controls are valid")
}

/// A random control network with unstructured inputs.
pub fn bcn(rng: &mut GenRng, n_vars: usize, n_controls: usize) -> Bcn {
    let vars = names("x", n_vars);
    let controls = names("c", n_controls);
    let updates = (0..n_vars).map(|_| formula(rng, n_vars + n_controls, 3)).collect();
    Bcn::new(vars, controls, updates).expect("generated network is valid")
}

pub fn control_relation(rng: &mut GenRng, n_controls: usize, max_pairs: usize) -> ControlMode {
    let k = rng.gen_range(0..=max_pairs);
    let pairs: BTreeSet<(Control, Control)> = (0..k)
        .map(|_| (subset(rng, n_controls, 0.5), subset(rng, n_controls, 0.5)))
        .collect();
    ControlMode::Explicit(pairs)
}

pub fn states(rng: &mut GenRng, width: usize, max: usize) -> Vec<SymbolSet> {
    let k = rng.gen_range(1..=max);
    let set: BTreeSet<SymbolSet> = (0..k).map(|_| subset(rng, width, 0.5)).collect();
    set.into_iter().collect()
}
