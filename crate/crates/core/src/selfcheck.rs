//! Randomized agreement checks between independent routes through the
//! library, for a given seed.

use std::collections::BTreeSet;

use crate::bnet::{BooleanMode, ControlMode};
use crate::control::{
    crosscheck_via_composite, solve_cofase, solve_seqcontrol, CofaseProblem, ControlOptions,
    ControlRelation, SeqControlProblem,
};
use crate::error::Result;
use crate::gen;
use crate::mode::{Dynamics, ModeSpec};
use crate::reach::{SearchOptions, TargetSpec};
use crate::symbols::SymbolSet;
use crate::translate::{bn_to_bps, boolean_mode_to_quasimode, GuardStyle};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SelfcheckReport {
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `count` instances of each check.
pub fn run(seed: u64, count: usize) -> Result<SelfcheckReport> {
    let mut rng = gen::rng(seed);
    let mut report = SelfcheckReport::default();
    for i in 0..count {
        // network vs translated system
        let n = rand::Rng::gen_range(&mut rng, 1..=4);
        let f = gen::bool_network(&mut rng, n);
        let m = gen::boolean_mode(&mut rng, n);
        let p = bn_to_bps(&f);
        let q = boolean_mode_to_quasimode(&m, f.vars(), &p)?;
        let d = Dynamics::new(&p, &ModeSpec::FromQuasimode(q))?;
        for s in SymbolSet::all_subsets(n) {
            let direct = f.step(&m, &s);
            let translated: BTreeSet<SymbolSet> = d.successors(&s).into_iter().map(|(w, _)| w).collect();
            if direct != translated {
                report
                    .failures
                    .push(format!("instance {i}: translated network differs at {}", s.to_bitstring()));
            }
        }
        report.instances += 1;

        // direct product search vs composite reachability
        let nx = rand::Rng::gen_range(&mut rng, 1..=3);
        let nc = rand::Rng::gen_range(&mut rng, 0..=2);
        let b = gen::freeze_bcn(&mut rng, nx, nc);
        let cm = gen::control_relation(&mut rng, b.n_controls(), 6);
        let problem = SeqControlProblem {
            bcn: b.clone(),
            mode: gen::boolean_mode(&mut rng, nx),
            control_mode: cm,
            starts: gen::states(&mut rng, nx, 3),
            target: TargetSpec::States(gen::states(&mut rng, nx, 2).into_iter().collect()),
        };
        let opts = ControlOptions::default();
        let report_i = crosscheck_via_composite(&problem, &opts, GuardStyle::ExactGuard, &SearchOptions::default())?;
        if !report_i.agree() {
            report.failures.push(format!(
                "instance {i}: direct search says {}, composite reachability says {}",
                report_i.direct, report_i.composite
            ));
        }
        let direct = solve_seqcontrol(&problem, &opts)?;
        let relation = ControlRelation::new(&problem.bcn, &problem.control_mode, false)?;
        for w in &direct.witnesses {
            if let Err(e) = w.replay(&problem.bcn, &problem.mode, &relation, &problem.target) {
                report.failures.push(format!("instance {i}: {e}"));
            }
        }
        report.instances += 1;

        // CoFaSe vs SeqControl with the full relation
        let cofase = CofaseProblem {
            bcn: b.clone(),
            starts: problem.starts.clone(),
            target: problem.target.clone(),
        };
        let full = SeqControlProblem {
            mode: BooleanMode::Synchronous,
            control_mode: ControlMode::Any,
            ..problem
        };
        let a = solve_cofase(&cofase, &opts)?.answer;
        let c = solve_seqcontrol(&full, &opts)?.answer;
        if a != c {
            report
                .failures
                .push(format!("instance {i}: CoFaSe says {a}, SeqControl with any relation says {c}"));
        }
        report.instances += 1;
    }
    Ok(report)
}
