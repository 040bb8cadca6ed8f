use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qudit-match"))
        .args(args)
        .env_remove("QUDIT_MATCH_SUPPORT_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn match_finds_single_offset() {
    let o = run(&["match", "10111010", "11101"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["top"], 2);
    assert_eq!(v["verified"], true);
    assert_eq!(v["cost_report"]["t"], 0);
}

#[test]
fn match_trivial_and_no_match() {
    let o = run(&["match", "0000", "0000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["top"], 0);
    let o = run(&["match", "00000000", "11111"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verified"], false);
}

#[test]
fn match_overrides_and_ascii() {
    let v = json(&run(&["match", "0101010101", "0101", "--iterations", "0"]));
    assert_eq!(v["iterations"], 0);
    let v = json(&run(&[
        "match",
        "0101010101",
        "0101",
        "--expected-matches",
        "4",
    ]));
    assert_eq!(v["iterations"], 0);
    let o = run(&["match", "--ascii", "AB", "B"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["top"], 8);
}

#[test]
fn malformed_input_is_usage_error() {
    assert_eq!(run(&["match", "0120", "1"]).status.code(), Some(64));
    assert_eq!(run(&["match", "01", "011"]).status.code(), Some(64));
    assert_eq!(run(&["match", "01"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        run(&["match", "01", "1", "--bogus"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&[]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_exit_code() {
    let o = Command::new(env!("CARGO_BIN_EXE_qudit-match"))
        .args(["match", "10111010", "11101"])
        .env("QUDIT_MATCH_SUPPORT_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(
        run(&["match", "10111010", "11101", "--support-budget", "2"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn decompose_prints_dump_and_cost() {
    let o = run(&["decompose", "fredkin-qutrit"]);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    let gates: Vec<&str> = out
        .lines()
        .skip(2)
        .take_while(|l| !l.starts_with('{'))
        .collect();
    assert_eq!(gates.len(), 5);
    let cost: Value = serde_json::from_str(&out[out.find('{').unwrap()..]).unwrap();
    assert_eq!(cost["cost"]["cnot"], 2);
    assert_eq!(cost["cost"]["ternary"], 3);
    assert_eq!(run(&["decompose", "toffoli"]).status.code(), Some(64));
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "mct", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["gates"], 13);
    assert_eq!(v["report"]["equivalent"], true);
    let v = json(&run(&["verify", "toffoli-ct"]));
    assert_eq!(v["report"]["inputs_checked"], 8);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_dumped_circuit_file() {
    let dir = tempdir();
    let good = dir.join("good.txt");
    let dump = run(&["decompose", "toffoli-qutrit"]).stdout;
    let text = String::from_utf8(dump).unwrap();
    let circuit: String = text
        .lines()
        .take_while(|l| !l.starts_with('{'))
        .map(|l| format!("{l}\n"))
        .collect();
    std::fs::write(&good, &circuit).unwrap();
    assert_eq!(
        run(&[
            "verify",
            "toffoli-qutrit",
            "--circuit",
            good.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    let bad = dir.join("bad.txt");
    let broken: String = circuit
        .lines()
        .take(circuit.lines().count() - 1)
        .map(|l| format!("{l}\n"))
        .collect();
    std::fs::write(&bad, broken).unwrap();
    assert_eq!(
        run(&[
            "verify",
            "toffoli-qutrit",
            "--circuit",
            bad.to_str().unwrap()
        ])
        .status
        .code(),
        Some(1)
    );
    let junk = dir.join("junk.txt");
    std::fs::write(&junk, "dims 2 2 2\nnot a gate\n").unwrap();
    assert_eq!(
        run(&[
            "verify",
            "toffoli-qutrit",
            "--circuit",
            junk.to_str().unwrap()
        ])
        .status
        .code(),
        Some(64)
    );
}

#[test]
fn cost_examples() {
    let o = run(&["cost", "8", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["formula"]["this_work"]["t"], 0.0);
    assert_eq!(v["t_zero"], true);
    assert_eq!(run(&["cost", "8", "9"]).status.code(), Some(64));
}

#[test]
fn noise_sweep_csv() {
    let o = run(&[
        "noise",
        "--eps-min",
        "0",
        "--eps-max",
        "0.05",
        "--steps",
        "50",
        "--mode",
        "uniform",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "epsilon,p_proposed,p_baseline,mode");
    assert_eq!(lines.len(), 51);
    let col = |i: usize| -> Vec<f64> {
        lines[1..]
            .iter()
            .map(|l| l.split(',').nth(i).unwrap().parse().unwrap())
            .collect()
    };
    for c in [col(1), col(2)] {
        assert!(c.windows(2).all(|w| w[1] <= w[0]));
    }
    assert!(o.stderr.is_empty());
    let o = run(&["noise", "--steps", "4", "--mode", "dimension-penalty"]);
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("less reliable"));
    assert_eq!(run(&["noise", "--eps-max", "1.5"]).status.code(), Some(64));
    assert_eq!(run(&["noise", "--mode", "loud"]).status.code(), Some(64));
}

#[test]
fn out_flag_writes_file_and_output_is_deterministic() {
    let dir = tempdir();
    let path = dir.join("report.json");
    let o = run(&[
        "match",
        "10111010",
        "11101",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, run(&["match", "10111010", "11101"]).stdout);
    assert_eq!(
        run(&["cost", "16", "7"]).stdout,
        run(&["cost", "16", "7"]).stdout
    );
}

fn tempdir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!(
        "qudit-match-cli-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&d).unwrap();
    d
}
