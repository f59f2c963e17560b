use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use boolp::format::{parse_bps, write_bps};

fn model(name: &str) -> String {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name);
    root.to_str().unwrap().to_string()
}

fn boolp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn three_gene_trajectory_needs_three_steps() {
    let bcn = model("three-gene.bcn");
    let o = boolp(&[
        "seqcontrol", "--bcn", &bcn, "--mode", "sync", "--control-mode", "any", "--from", "000", "--to", "001",
        "--format", "json",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["answer"], true);
    let steps = v["witnesses"][0]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    assert_eq!(steps[0]["state"], "110");
    assert_eq!(steps[2]["state"], "001");
}

#[test]
fn three_gene_control_relations() {
    let bcn = model("three-gene-freeze.bcn");
    let keep = model("three-gene-keep.cm");
    let o = boolp(&[
        "seqcontrol", "--bcn", &bcn, "--control-mode", &keep, "--from", "000", "--to", "001", "--crosscheck",
        "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["crosscheck"]["agree"], true);

    let dir = tempfile::tempdir().unwrap();
    let stuck = dir.path().join("stuck.cm");
    std::fs::write(&stuck, "pairs:\n{ux1_1, ux2_1} -> {ux1_1, ux2_1}\n{} -> {ux1_1, ux2_1}\n{} -> {}\n").unwrap();
    let o = boolp(&[
        "seqcontrol", "--bcn", &bcn, "--control-mode", stuck.to_str().unwrap(), "--from", "000", "--to", "001",
        "--crosscheck",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("controllable: false"));
}

#[test]
fn empty_quasimode_reaches_only_its_starts() {
    let bps = model("empty-qm.bps");
    assert_eq!(code(&boolp(&["reach", "--bps", &bps, "--from", "01", "--to", "01"])), 0);
    assert_eq!(code(&boolp(&["reach", "--bps", &bps, "--from", "01,10", "--to", "01"])), 1);
    assert_eq!(code(&boolp(&["reach", "--bps", &bps, "--from", "01", "--to", "formula:b & !a"])), 0);
}

#[test]
fn cofase_swap_knockouts() {
    let o = boolp(&["cofase", "--bcn", &model("swap-knockout.bcn"), "--from", "01", "--to", "11", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["witnesses"][0]["reached"], true);
}

#[test]
fn translated_lba_agrees_with_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("astarbstar.lba", ["", "ab", "aab", "ba", "abab", "abb"]),
        ("parity.lba", ["", "a", "aa", "aaa", "aaaa", "aaaaa"]),
        ("eraser.lba", ["", "b", "ab", "bba", "abab", "ba"]),
    ];
    for (machine, words) in cases {
        let lba = model(machine);
        for word in words {
            let out: PathBuf = dir.path().join(format!("{}-{word}", machine.trim_end_matches(".lba")));
            let prefix = out.to_str().unwrap();
            let t = boolp(&["translate", "lba", "--lba", &lba, "--input", word, "--out", prefix]);
            assert_eq!(code(&t), 0, "{}", String::from_utf8_lossy(&t.stderr));
            let reach = boolp(&[
                "reach",
                "--bps",
                &format!("{prefix}.bps"),
                "--from",
                &format!("@{prefix}.from"),
                "--to",
                &format!("@{prefix}.to"),
                "--limit-symbols",
                "1000",
            ]);
            let run = boolp(&["lba", "run", "--lba", &lba, "--input", word]);
            assert!(code(&run) <= 1);
            assert_eq!(code(&reach), code(&run), "{machine} on {word:?}");
        }
    }
}

#[test]
fn emitted_systems_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.bps");
    let out_s = out.to_str().unwrap();
    let runs: Vec<Vec<String>> = vec![
        vec!["translate".into(), "bn".into(), "--bn".into(), model("swap.bn"), "--mode".into(), "async".into()],
        vec!["translate".into(), "bcn".into(), "--bcn".into(), model("swap-knockout.bcn")],
        vec![
            "translate".into(),
            "bcn".into(),
            "--bcn".into(),
            model("three-gene-freeze.bcn"),
            "--control-mode".into(),
            model("three-gene-keep.cm"),
        ],
        vec!["translate".into(), "rs".into(), "--rsys".into(), model("toggle.rsys")],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = boolp(&args);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        let file = parse_bps(&text).unwrap();
        assert_eq!(write_bps(&file.bps, &file.mode), text);

        let mut to_file = args.clone();
        to_file.extend(["--out", out_s]);
        assert_eq!(code(&boolp(&to_file)), 0);
        assert_eq!(std::fs::read_to_string(&out).unwrap(), text);
    }
}

#[test]
fn figure_2_graph() {
    let o = boolp(&["graph", "--bn", &model("swap.bn"), "--mode", "sync", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let mut edges: Vec<(String, String)> = v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["from"].as_str().unwrap().into(), e["to"].as_str().unwrap().into()))
        .collect();
    edges.sort();
    let expected = [("00", "00"), ("01", "10"), ("10", "01"), ("11", "00")];
    assert_eq!(edges, expected.map(|(a, b)| (a.to_string(), b.to_string())));

    let dot = stdout(&boolp(&["graph", "--bps", &model("two-rule.bps")]));
    assert!(dot.starts_with("digraph states {"));
    assert!(dot.contains("\"11\" -> \"10\" [label=\"r1\"];"));
}

#[test]
fn identical_invocations_give_identical_output() {
    let runs: Vec<Vec<String>> = vec![
        vec!["reach".into(), "--bps".into(), model("two-rule.bps"), "--from".into(), "11,10,01".into(), "--to".into(), "00".into()],
        vec![
            "seqcontrol".into(),
            "--bcn".into(),
            model("three-gene-freeze.bcn"),
            "--control-mode".into(),
            "acs".into(),
            "--from".into(),
            "000,010,100".into(),
            "--to".into(),
            "formula:x3".into(),
            "--format".into(),
            "json".into(),
        ],
        vec!["graph".into(), "--bn".into(), model("swap.bn"), "--mode".into(), "async".into()],
        vec!["selfcheck".into(), "--seed".into(), "7".into(), "--count".into(), "5".into()],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = boolp(&args);
        let b = boolp(&args);
        assert!(code(&a) <= 1);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.bps");
    std::fs::write(&bad, "alphabet: a\nrule r1: {a} -> {} | a &\n").unwrap();
    let o = boolp(&["reach", "--bps", bad.to_str().unwrap(), "--from", "1", "--to", "0"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("2:"), "{err}");

    let two_rule = model("two-rule.bps");
    assert_eq!(code(&boolp(&["reach", "--bps", &two_rule, "--from", "111", "--to", "00"])), 2);
    assert_eq!(code(&boolp(&["reach", "--bps", "no/such.bps", "--from", "1", "--to", "0"])), 2);
    assert_eq!(code(&boolp(&["reach", "--bps", &two_rule, "--from", "11", "--to", "00", "--format", "dot"])), 2);
    assert_eq!(code(&boolp(&["reach", "--bps", &two_rule])), 2);
    // freeze controls without a polarity
    let bcn = dir.path().join("f.bcn");
    std::fs::write(&bcn, "vars: x\nfn x: x\nfreeze: x\n").unwrap();
    let bcn = bcn.to_str().unwrap();
    assert_eq!(code(&boolp(&["cofase", "--bcn", bcn, "--from", "0", "--to", "1"])), 2);
    assert_eq!(code(&boolp(&["cofase", "--bcn", bcn, "--polarity", "active", "--from", "0", "--to", "1"])), 0);
}
