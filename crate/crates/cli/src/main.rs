//! `boolp`: reachability and controllability for Boolean P systems and the
//! models that translate into them.
//!
//! Exit status: 0 when the answer is yes (reachable, controllable, accepted,
//! self-check passed), 1 when it is no, 2 on any error.

mod input;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use boolp::bnet::{Bcn, Polarity};
use boolp::bps::Bps;
use boolp::control::{
    crosscheck_via_composite, solve_cofase, solve_seqcontrol, CofaseProblem, ControlOptions, ControlRelation,
    ControlResult, SeqControlProblem,
};
use boolp::format::write_bps;
use boolp::lba::{lba_accepts, lba_step, lba_to_bps, Lba, LbaConfig};
use boolp::mode::ModeSpec;
use boolp::reach::{
    export_state_graph, solve_reach, ReachProblem, ReachResult, SearchOptions, TargetSpec, WitnessPolicy,
    DEFAULT_SYMBOL_LIMIT,
};
use boolp::symbols::{Alphabet, SymbolSet};
use boolp::translate::{
    bcn_to_composite, bcn_to_seqcontrol_composite, bn_to_bps, boolean_mode_to_quasimode, rs_to_bps, GuardStyle,
};

#[derive(Parser)]
#[command(name = "boolp", version, about = "Reachability and sequential controllability for Boolean P systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether every start configuration of a .bps system reaches the target.
    Reach(ReachArgs),
    /// CoFaSe: synchronous control where the control may change at every step.
    Cofase(CofaseArgs),
    /// SeqControl: explicit Boolean mode and control relation.
    Seqcontrol(SeqControlArgs),
    /// Emit the reachable transition graph.
    Graph(GraphArgs),
    /// Translate a model into a Boolean P system (.bps).
    #[command(subcommand)]
    Translate(TranslateCommand),
    /// Linear bounded automata.
    #[command(subcommand)]
    Lba(LbaCommand),
    /// Randomized agreement checks between independent solver routes.
    Selfcheck(SelfcheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessArg {
    All,
    First,
}

impl From<WitnessArg> for WitnessPolicy {
    fn from(w: WitnessArg) -> Self {
        match w {
            WitnessArg::All => WitnessPolicy::All,
            WitnessArg::First => WitnessPolicy::First,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolarityArg {
    Active,
    Inactive,
}

impl From<PolarityArg> for Polarity {
    fn from(p: PolarityArg) -> Self {
        match p {
            PolarityArg::Active => Polarity::ActiveHigh,
            PolarityArg::Inactive => Polarity::InactiveHigh,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GuardArg {
    Exact,
    Constant,
}

impl From<GuardArg> for GuardStyle {
    fn from(g: GuardArg) -> Self {
        match g {
            GuardArg::Exact => GuardStyle::ExactGuard,
            GuardArg::Constant => GuardStyle::ConstantGuard,
        }
    }
}

#[derive(Args)]
struct Query {
    /// Start states: bitstring, comma-separated bitstrings, or @file.
    #[arg(long)]
    from: String,
    /// Target: bitstring(s), @file, or formula:<formula>.
    #[arg(long)]
    to: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// `first` stops at the first start state that fails.
    #[arg(long, value_enum, default_value = "all")]
    witness: WitnessArg,
}

#[derive(Args)]
struct ReachArgs {
    #[arg(long)]
    bps: PathBuf,
    #[command(flatten)]
    query: Query,
    #[arg(long, default_value_t = DEFAULT_SYMBOL_LIMIT)]
    limit_symbols: usize,
    /// Only count target configurations that halt.
    #[arg(long)]
    halting: bool,
}

#[derive(Args)]
struct ControlArgs {
    #[arg(long)]
    bcn: PathBuf,
    /// Polarity for `freeze:` lines that do not set one.
    #[arg(long, value_enum)]
    polarity: Option<PolarityArg>,
    /// Admit controls that freeze a variable to both values.
    #[arg(long)]
    allow_conflicting: bool,
    #[command(flatten)]
    query: Query,
}

#[derive(Args)]
struct CofaseArgs {
    #[command(flatten)]
    control: ControlArgs,
}

#[derive(Args)]
struct SeqControlArgs {
    #[command(flatten)]
    control: ControlArgs,
    /// sync, async or explicit:<file>.
    #[arg(long, default_value = "sync")]
    mode: String,
    /// any, tcs, acs, or a control-mode file.
    #[arg(long, default_value = "any")]
    control_mode: String,
    /// Also solve through the composite Boolean P system and compare.
    #[arg(long)]
    crosscheck: bool,
    #[arg(long, value_enum, default_value = "exact")]
    guard_style: GuardArg,
    #[arg(long, default_value_t = DEFAULT_SYMBOL_LIMIT)]
    limit_symbols: usize,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, conflicts_with = "bn", required_unless_present = "bn")]
    bps: Option<PathBuf>,
    /// A Boolean network, translated under --mode.
    #[arg(long)]
    bn: Option<PathBuf>,
    #[arg(long, default_value = "sync")]
    mode: String,
    /// Roots; all configurations by default.
    #[arg(long)]
    from: Option<String>,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_SYMBOL_LIMIT)]
    limit_symbols: usize,
}

#[derive(Subcommand)]
enum TranslateCommand {
    /// Boolean network under a Boolean mode.
    Bn {
        #[arg(long)]
        bn: PathBuf,
        #[arg(long, default_value = "sync")]
        mode: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boolean control network; with --control-mode the control part follows
    /// the relation, otherwise controls change freely.
    Bcn {
        #[arg(long)]
        bcn: PathBuf,
        #[arg(long, value_enum)]
        polarity: Option<PolarityArg>,
        #[arg(long, default_value = "sync")]
        mode: String,
        #[arg(long)]
        control_mode: Option<String>,
        #[arg(long, value_enum, default_value = "exact")]
        guard_style: GuardArg,
        #[arg(long)]
        allow_conflicting: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reaction system, run under maximal parallelism.
    Rs {
        #[arg(long)]
        rsys: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// LBA on an input word; writes <out>.bps, <out>.from and <out>.to.
    Lba {
        #[arg(long)]
        lba: PathBuf,
        #[arg(long)]
        input: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum LbaCommand {
    /// Simulate the automaton on a word.
    Run {
        #[arg(long)]
        lba: PathBuf,
        #[arg(long)]
        input: String,
        /// Print every configuration.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Args)]
struct SelfcheckArgs {
    #[arg(long, default_value_t = boolp::gen::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    count: usize,
}

/// Buffered output and the yes/no verdict.
struct Outcome {
    out: String,
    answer: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(o) => {
            print!("{}", o.out);
            if o.answer {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Reach(a) => reach(a),
        Command::Cofase(a) => cofase(a),
        Command::Seqcontrol(a) => seqcontrol(a),
        Command::Graph(a) => graph(a),
        Command::Translate(t) => translate(t),
        Command::Lba(LbaCommand::Run { lba, input, trace }) => lba_run(&lba, &input, trace),
        Command::Selfcheck(a) => selfcheck(a),
    }
}

fn no_dot(f: Format) -> Result<()> {
    if f == Format::Dot {
        bail!("--format dot is only available for `graph`");
    }
    Ok(())
}

fn json_line(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize"))
}

fn reach(a: ReachArgs) -> Result<Outcome> {
    no_dot(a.query.format)?;
    let file = input::load_bps(&a.bps)?;
    let alphabet = file.bps.alphabet();
    let p = ReachProblem {
        starts: input::states(&a.query.from, alphabet)?,
        target: input::target(&a.query.to, alphabet)?,
        bps: file.bps.clone(),
        mode: file.mode,
    };
    let opts = SearchOptions {
        symbol_limit: a.limit_symbols,
        witnesses: a.query.witness.into(),
        halting_target: a.halting,
    };
    let r = solve_reach(&p, &opts)?;
    Ok(Outcome {
        out: render_reach(&p.bps, &r, a.query.format),
        answer: r.answer,
    })
}

fn render_reach(bps: &Bps, r: &ReachResult, format: Format) -> String {
    if format == Format::Json {
        let ws: Vec<_> = r.witnesses.iter().map(|w| w.to_record(bps)).collect();
        return json_line(&json!({ "answer": r.answer, "witnesses": ws }));
    }
    let mut out = format!("reachable: {}\n", r.answer);
    for w in &r.witnesses {
        if !w.reached {
            let _ = writeln!(out, "start {}: target not reached", w.start.to_bitstring());
            continue;
        }
        let _ = writeln!(out, "start {}: reached in {}", w.start.to_bitstring(), steps(w.steps.len()));
        for (rs, s) in &w.steps {
            let _ = writeln!(out, "  {{{}}} -> {}", bps.rule_ids(rs).join(","), s.to_bitstring());
        }
    }
    out
}

fn steps(n: usize) -> String {
    if n == 1 {
        "1 step".into()
    } else {
        format!("{n} steps")
    }
}

fn control_options(c: &ControlArgs) -> ControlOptions {
    ControlOptions {
        allow_conflicting: c.allow_conflicting,
        witnesses: c.query.witness.into(),
        ..ControlOptions::default()
    }
}

fn load_control(c: &ControlArgs) -> Result<(Bcn, Vec<SymbolSet>, TargetSpec)> {
    no_dot(c.query.format)?;
    let b = input::load_bcn(&c.bcn, c.polarity.map(Into::into))?;
    let starts = input::states(&c.query.from, b.vars())?;
    let target = input::target(&c.query.to, b.vars())?;
    Ok((b, starts, target))
}

fn cofase(a: CofaseArgs) -> Result<Outcome> {
    let (bcn, starts, target) = load_control(&a.control)?;
    let p = CofaseProblem { bcn, starts, target };
    let r = solve_cofase(&p, &control_options(&a.control))?;
    Ok(Outcome {
        out: render_control(p.bcn.controls(), &r, None, a.control.query.format),
        answer: r.answer,
    })
}

fn seqcontrol(a: SeqControlArgs) -> Result<Outcome> {
    let (bcn, starts, target) = load_control(&a.control)?;
    let p = SeqControlProblem {
        mode: input::boolean_mode(&a.mode, bcn.vars())?,
        control_mode: input::control_mode(&a.control_mode, bcn.controls())?,
        bcn,
        starts,
        target,
    };
    let opts = control_options(&a.control);
    let r = solve_seqcontrol(&p, &opts)?;
    let check = if a.crosscheck {
        let search = SearchOptions {
            symbol_limit: a.limit_symbols,
            ..SearchOptions::default()
        };
        let report = crosscheck_via_composite(&p, &opts, a.guard_style.into(), &search)?;
        if !report.agree() {
            bail!(
                "direct search ({}) and composite reachability ({}) disagree",
                report.direct,
                report.composite
            );
        }
        Some(report)
    } else {
        None
    };
    let check = check.map(|c| (c.composite, c.replayed));
    Ok(Outcome {
        out: render_control(p.bcn.controls(), &r, check, a.control.query.format),
        answer: r.answer,
    })
}

fn render_control(controls: &Alphabet, r: &ControlResult, check: Option<(bool, usize)>, format: Format) -> String {
    if format == Format::Json {
        let ws: Vec<_> = r.witnesses.iter().map(|w| w.to_record()).collect();
        let mut v = json!({ "answer": r.answer, "witnesses": ws });
        if let Some(d) = &r.diagnostic {
            v["diagnostic"] = json!(d);
        }
        if let Some((composite, replayed)) = check {
            v["crosscheck"] = json!({ "composite": composite, "agree": true, "replayed": replayed });
        }
        return json_line(&v);
    }
    let mut out = format!("controllable: {}\n", r.answer);
    if let Some(d) = &r.diagnostic {
        let _ = writeln!(out, "note: {d}");
    }
    if let Some((composite, replayed)) = check {
        let _ = writeln!(
            out,
            "composite reachability: {composite} (agrees; {replayed} witnesses replayed)"
        );
    }
    for w in &r.witnesses {
        if !w.reached {
            let _ = writeln!(out, "start {}: target not reached", w.start.to_bitstring());
            continue;
        }
        let _ = writeln!(out, "start {}: reached in {}", w.start.to_bitstring(), steps(w.steps.len()));
        for (mu, s) in &w.steps {
            let _ = writeln!(out, "  {} -> {}", controls.format_set(mu), s.to_bitstring());
        }
    }
    out
}

fn graph(a: GraphArgs) -> Result<Outcome> {
    let (bps, mode) = match (&a.bps, &a.bn) {
        (Some(path), _) => {
            let f = input::load_bps(path)?;
            (f.bps, f.mode)
        }
        (None, Some(path)) => {
            let f = input::load_bn(path)?;
            let m = input::boolean_mode(&a.mode, f.vars())?;
            let p = bn_to_bps(&f);
            let q = boolean_mode_to_quasimode(&m, f.vars(), &p)?;
            (p, ModeSpec::FromQuasimode(q))
        }
        (None, None) => bail!("one of --bps or --bn is required"),
    };
    let width = bps.alphabet().len();
    let roots = match &a.from {
        Some(spec) => input::states(spec, bps.alphabet())?,
        None => {
            if width > a.limit_symbols {
                bail!(boolp::Error::TooManySymbols {
                    symbols: width,
                    limit: a.limit_symbols
                });
            }
            SymbolSet::all_subsets(width).collect()
        }
    };
    let g = export_state_graph(&bps, &mode, &roots, a.limit_symbols)?;
    let out = match a.format {
        Format::Dot => g.to_dot(&bps),
        Format::Json => {
            let edges: Vec<_> = g
                .edges
                .iter()
                .map(|(s, t, rs)| json!({ "from": s.to_bitstring(), "to": t.to_bitstring(), "rules": bps.rule_ids(rs) }))
                .collect();
            let nodes: Vec<_> = g.nodes.iter().map(SymbolSet::to_bitstring).collect();
            json_line(&json!({ "nodes": nodes, "edges": edges }))
        }
        Format::Text => {
            let mut out = String::new();
            for (s, t, rs) in &g.edges {
                let _ = writeln!(out, "{} -> {} {{{}}}", s.to_bitstring(), t.to_bitstring(), bps.rule_ids(rs).join(","));
            }
            out
        }
    };
    Ok(Outcome { out, answer: true })
}

/// Writes to `out` when given, otherwise returns the text for stdout.
fn emit(text: String, out: Option<&Path>) -> Result<String> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn translate(t: TranslateCommand) -> Result<Outcome> {
    let out = match t {
        TranslateCommand::Bn { bn, mode, out } => {
            let f = input::load_bn(&bn)?;
            let m = input::boolean_mode(&mode, f.vars())?;
            let p = bn_to_bps(&f);
            let q = boolean_mode_to_quasimode(&m, f.vars(), &p)?;
            emit(write_bps(&p, &ModeSpec::FromQuasimode(q)), out.as_deref())?
        }
        TranslateCommand::Bcn {
            bcn,
            polarity,
            mode,
            control_mode,
            guard_style,
            allow_conflicting,
            out,
        } => {
            let b = input::load_bcn(&bcn, polarity.map(Into::into))?;
            let m = input::boolean_mode(&mode, b.vars())?;
            let c = match control_mode {
                Some(spec) => {
                    let cm = input::control_mode(&spec, b.controls())?;
                    let relation = ControlRelation::new(&b, &cm, allow_conflicting)?;
                    bcn_to_seqcontrol_composite(&b, &m, &relation.pairs(), guard_style.into())?
                }
                None => bcn_to_composite(&b, &m)?,
            };
            emit(write_bps(&c.bps, &ModeSpec::FromQuasimode(c.quasimode)), out.as_deref())?
        }
        TranslateCommand::Rs { rsys, out } => {
            let rs = input::load_rsys(&rsys)?;
            emit(write_bps(&rs_to_bps(&rs), &ModeSpec::MaxParallel), out.as_deref())?
        }
        TranslateCommand::Lba { lba, input: word, out } => {
            let m = input::load_lba(&lba)?;
            let x = m.parse_word(&word)?;
            let p = lba_to_bps(&m, &x)?;
            let TargetSpec::States(targets) = &p.target else {
                unreachable!("the LBA reduction has an explicit target")
            };
            let lines = |ss: &mut dyn Iterator<Item = &SymbolSet>| -> String {
                ss.map(|s| format!("{}\n", s.to_bitstring())).collect()
            };
            let with_ext = |ext: &str| {
                let mut name = out.as_os_str().to_owned();
                name.push(ext);
                PathBuf::from(name)
            };
            emit(write_bps(&p.bps, &p.mode), Some(&with_ext(".bps")))?;
            emit(lines(&mut p.starts.iter()), Some(&with_ext(".from")))?;
            emit(lines(&mut targets.iter()), Some(&with_ext(".to")))?;
            String::new()
        }
    };
    Ok(Outcome { out, answer: true })
}

fn show_config(m: &Lba, c: &LbaConfig) -> String {
    let cells: Vec<String> = c
        .tape
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let sym = m.tape().name(v);
            if j == c.head {
                format!("{}[{}]", m.states().name(c.state), sym)
            } else {
                sym.to_string()
            }
        })
        .collect();
    cells.join(" ")
}

fn lba_run(path: &Path, word: &str, trace: bool) -> Result<Outcome> {
    let m = input::load_lba(path)?;
    let x = m.parse_word(word)?;
    let accepted = lba_accepts(&m, &x)?;
    let mut out = String::new();
    if trace {
        let mut c = m.initial_config(&x);
        let mut seen = HashSet::new();
        loop {
            let _ = writeln!(out, "{}", show_config(&m, &c));
            if m.is_accepting(&c) || !seen.insert(c.clone()) {
                break;
            }
            c = lba_step(&m, &c)?;
        }
    }
    out.push_str(if accepted { "accept\n" } else { "reject\n" });
    Ok(Outcome { out, answer: accepted })
}

fn selfcheck(a: SelfcheckArgs) -> Result<Outcome> {
    let r = boolp::selfcheck::run(a.seed, a.count)?;
    let mut out = format!("seed {}: {} instances checked\n", a.seed, r.instances);
    for f in &r.failures {
        let _ = writeln!(out, "FAIL {f}");
    }
    out.push_str(if r.passed() { "all routes agree\n" } else { "disagreements found\n" });
    Ok(Outcome {
        out,
        answer: r.passed(),
    })
}
