use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const SHALLOW: &str = "\
qubits 3
H 0
H 1
H 2
CZ 0 1
CZ 0 2
S 1
S 2
H 0
H 1
H 2
M z1= +ZII
M z2= +IZI
M z3= +IIZ
";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ctxstab"));
    c.env_remove("CTXSTAB_SEED");
    c
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ctxstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Outcome strings per shot from text-format model records.
fn outcome_strings(text: &str, backend: &str) -> BTreeMap<u64, String> {
    let mut shots: BTreeMap<u64, String> = BTreeMap::new();
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f[1] == backend {
            shots
                .entry(f[0].parse().unwrap())
                .or_default()
                .push_str(f[4]);
        }
    }
    shots
}

#[test]
fn shallow_outputs_are_solutions_with_equal_frequency() {
    let path = write_temp("shallow.circ", SHALLOW);
    let o = run(&[
        "run",
        path.to_str().unwrap(),
        "--shots",
        "4000",
        "--seed",
        "7",
    ]);
    assert!(o.status.success());
    let shots = outcome_strings(&stdout(&o), "model");
    assert_eq!(shots.len(), 4000);
    let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
    for z in shots.values() {
        *counts.entry(z.as_str()).or_default() += 1;
    }
    assert_eq!(
        counts.keys().copied().collect::<Vec<_>>(),
        ["001", "010", "100", "111"]
    );
    for (z, n) in counts {
        let f = f64::from(n) / 4000.0;
        assert!((f - 0.25).abs() <= 0.03, "{z}: {f}");
    }
}

#[test]
fn empty_circuit_has_no_records() {
    let path = write_temp("empty.circ", "qubits 2\n# nothing\n");
    let o = run(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with('#')));
}

#[test]
fn both_backends_agree() {
    let path = write_temp("shallow-both.circ", SHALLOW);
    let o = run(&[
        "run",
        path.to_str().unwrap(),
        "--shots",
        "4000",
        "--seed",
        "11",
        "--backend",
        "both",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let compares: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("# compare"))
        .collect();
    assert_eq!(compares.len(), 3);
    for line in compares {
        let delta: f64 = line
            .split_whitespace()
            .find_map(|f| f.strip_prefix("delta="))
            .unwrap()
            .parse()
            .unwrap();
        assert!(delta.abs() < 0.05, "{line}");
    }
    assert_eq!(outcome_strings(&text, "oracle").len(), 4000);
}

#[test]
fn parse_errors_exit_1_with_position() {
    let path = write_temp("bad.circ", "qubits 2\nM iXY\n");
    let o = run(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2, column 3"), "{err}");

    let o = run(&["run", "/nonexistent/circuit.circ"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_width_cap_is_an_execution_error() {
    let wide = format!("qubits 13\nM {}\n", "Z".repeat(13));
    let path = write_temp("wide.circ", &wide);
    let o = run(&["run", path.to_str().unwrap(), "--backend", "oracle"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reads_standard_input() {
    let mut child = bin()
        .args(["run", "-", "--seed", "1", "--shots", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"qubits 1\nM +Z\nM -Z\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let shots = outcome_strings(&stdout(&o), "model");
    assert!(shots.values().all(|z| z == "01"));
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let path = write_temp("shallow-repeat.circ", SHALLOW);
    let p = path.to_str().unwrap();
    for extra in [
        &[][..],
        &["--trace"][..],
        &["--format", "jsonl", "--backend", "both"][..],
    ] {
        let mut args = vec!["run", p, "--shots", "50", "--seed", "99"];
        args.extend_from_slice(extra);
        let (a, b) = (run(&args), run(&args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{extra:?}");
    }
    let env_a = bin()
        .args(["run", p, "--shots", "20"])
        .env("CTXSTAB_SEED", "5")
        .output()
        .unwrap();
    let flag = run(&["run", p, "--shots", "20", "--seed", "5"]);
    assert_eq!(env_a.stdout, flag.stdout);
}

#[test]
fn jsonl_records_parse() {
    let path = write_temp("shallow-json.circ", SHALLOW);
    let o = run(&[
        "run",
        path.to_str().unwrap(),
        "--shots",
        "5",
        "--seed",
        "3",
        "--format",
        "jsonl",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let records: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 15);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["shot"], (i / 3) as u64);
        assert_eq!(r["backend"], "model");
        assert!(r["outcome"] == 0 || r["outcome"] == 1);
    }
    assert_eq!(records[0]["label"], "z1");
    assert_eq!(records[0]["observable"], "ZII");
}

#[test]
fn trace_shows_brace_notation() {
    let path = write_temp("pm.circ", "qubits 2\nM ZZ\nM XX\nM YY\n");
    let o = run(&["run", path.to_str().unwrap(), "--trace", "--seed", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# trace 0 start"));
    assert!(text.contains("# trace 0 M ZZ B v=0"));
    let last = text.lines().rfind(|l| l.contains("M YY C")).unwrap();
    assert!(
        last.trim_end().ends_with('}') && last.contains(";"),
        "{last}"
    );
}

#[test]
fn demos_pass_for_every_seed_tried() {
    for seed in ["0", "1", "17", "123456789"] {
        for name in ["pm-square", "ghz", "shallow"] {
            let o = run(&["demo", name, "--seed", seed]);
            assert_eq!(o.status.code(), Some(0), "{name} {seed}");
            assert!(stdout(&o).ends_with("result PASS\n"));
        }
        let pm = stdout(&run(&["demo", "pm-square", "--seed", seed]));
        assert!(pm.contains("parity 1 expected 1 ok"));
        let ghz = stdout(&run(&["demo", "ghz", "--seed", seed]));
        assert!(ghz.contains("sequence YII IYI IIX"));
    }
    assert_eq!(run(&["demo", "nope"]).status.code(), Some(1));
}

#[test]
fn stats_reports_context_bits() {
    let o = run(&["stats", "100"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "context_bits 40200"));
    let o = run(&["stats", "1"]);
    assert!(stdout(&o).lines().any(|l| l == "context_bits 6"));
    assert_eq!(run(&["stats", "0"]).status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest", "--steps", "300", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS context homomorphism"));
}

#[test]
fn zero_shots_is_rejected() {
    let path = write_temp("z.circ", "qubits 1\n");
    assert_eq!(
        run(&["run", path.to_str().unwrap(), "--shots", "0"])
            .status
            .code(),
        Some(1)
    );
}
