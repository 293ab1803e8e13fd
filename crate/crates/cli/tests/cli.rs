use std::path::PathBuf;
use std::process::{Command, Output};

use relq_cli::network_io::{load_network, parse_network, save_network};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn relq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relq"))
        .args(args)
        .env_remove("RELQ_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn machine_runs_are_byte_identical() {
    let net = fixture("not.json");
    let args = [
        "machine",
        "--network",
        &net,
        "--trials",
        "10000",
        "--seed",
        "7",
    ];
    let a = relq(&args);
    let b = relq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = relq(&[
        "machine",
        "--network",
        &net,
        "--trials",
        "10000",
        "--seed",
        "8",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn env_seed_overrides_the_flag() {
    let flag = relq(&["simon", "--n", "3", "--trials", "5", "--seed", "7"]);
    let env = Command::new(env!("CARGO_BIN_EXE_relq"))
        .args(["simon", "--n", "3", "--trials", "5", "--seed", "99"])
        .env("RELQ_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_relq"))
        .args(["deutsch"])
        .env("RELQ_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn grover_two_bits_one_query() {
    let out = relq(&["grover", "--n", "2", "--k", "01", "--trials", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["answer"], "01");
    assert_eq!(v["queries"], 1);
    assert!((v["success_probability"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn rule50_deutsch_passes_with_ratio_one() {
    let out = relq(&["rule50", "--problem", "deutsch"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["reports"][0]["measured"], 1.0);
    assert_eq!(v["reports"][0]["verdict"], "pass");
}

#[test]
fn a_failing_verdict_exits_one() {
    let out = relq(&[
        "rule50",
        "--problem",
        "grover",
        "--sizes",
        "4",
        "--trials",
        "100",
        "--ratio-lo",
        "50",
        "--ratio-hi",
        "60",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["reports"][0]["verdict"], "fail");
}

#[test]
fn usage_and_io_errors_exit_two() {
    assert_eq!(relq(&["grover", "--n", "two"]).status.code(), Some(2));
    assert_eq!(relq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        relq(&["grover", "--n", "2", "--k", "011"]).status.code(),
        Some(2)
    );
    assert_eq!(
        relq(&["rule50", "--problem", "shor"]).status.code(),
        Some(2)
    );
    let missing = relq(&["machine", "--network", "/nonexistent/net.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn jammed_network_is_named_and_exits_one() {
    let out = relq(&["machine", "--network", &fixture("jammed.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("jammed") && err.contains("`jammed`"), "{err}");
}

#[test]
fn schema_errors_carry_a_json_path() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"variables":["a","b","c"],"gates":[[{"var":"a"},{"var":"b"},{"var":"c"}]],"masses":{"0":[1,1]}}"#,
            "masses[0]",
        ),
        (
            r#"{"variables":["a","b","c"],"gates":[[{"var":"a"},{"var":"b"},{"var":"z"}]]}"#,
            "gates[0][2].var",
        ),
        (
            r#"{"variables":["a","b"],"gates":[[{"var":"a"},{"var":"b"}]]}"#,
            "gates[0]",
        ),
        (
            r#"{"variables":["a","b","c"],"gates":[[{"var":"a"},{"var":"b"},{"var":"c"}]],"q_mass":"x"}"#,
            "q_mass",
        ),
    ];
    for (i, (text, path)) in cases.iter().enumerate() {
        let file = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&file, text).unwrap();
        let out = relq(&["machine", "--network", file.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2));
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(path), "{path}: {err}");
    }
}

#[test]
fn out_flag_writes_what_stdout_would_show() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("deutsch.json");
    let written = relq(&["deutsch", "--out", file.to_str().unwrap()]);
    assert!(written.status.success());
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&file).unwrap(), relq(&["deutsch"]).stdout);
}

#[test]
fn save_and_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "not.json",
        "not_2to1.json",
        "chain.json",
        "x3sat.json",
        "twelve.json",
    ] {
        let spec = load_network(fixture(name).as_ref()).unwrap();
        let copy = dir.path().join(name);
        save_network(&copy, &spec).unwrap();
        assert_eq!(load_network(&copy).unwrap(), spec, "{name}");
    }
    let unnamed = parse_network(
        r#"{"variables":["a","b","c"],"gates":[[{"var":"a"},{"var":"b"},{"var":"c"}]]}"#,
        "stem",
    )
    .unwrap();
    assert_eq!(unnamed.network().name(), "stem");
    assert_eq!(unnamed.part_masses(), &[[1.0; 3]]);
}

#[test]
fn csv_numbers_keep_enough_digits() {
    let out = relq(&[
        "not-machine",
        "--mx",
        "1",
        "--my",
        "2",
        "--trials",
        "1000",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut floats = 0;
    for field in text.lines().skip(1).flat_map(|l| l.split(',')) {
        if let Some((mantissa, _)) = field.split_once('e') {
            if mantissa.parse::<f64>().is_ok() {
                let digits = mantissa.chars().filter(|c| c.is_ascii_digit()).count();
                assert!(digits >= 12, "{field}");
                floats += 1;
            }
        }
    }
    assert!(floats > 0, "{text}");
    assert!(
        text.contains("6.6666666666666674e-1") || text.contains("6.6666666666666663e-1"),
        "{text}"
    );
}

#[test]
fn every_subcommand_is_deterministic() {
    let net = fixture("chain.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["deutsch", "--extended", "--trials", "20"],
        vec!["grover", "--n", "4", "--trials", "20"],
        vec!["grover", "--n", "3", "--extended", "--trials", "20"],
        vec!["grover", "--n", "2", "--row-game", "--trials", "20"],
        vec!["simon", "--n", "4", "--trials", "20"],
        vec!["simon", "--n", "2", "--extended", "--trials", "20"],
        vec![
            "machine",
            "--network",
            &net,
            "--trials",
            "500",
            "--format",
            "csv",
        ],
        vec!["not-machine", "--trials", "100"],
        vec![
            "rule50",
            "--problem",
            "simon",
            "--sizes",
            "2,3",
            "--trials",
            "200",
        ],
        vec!["backdate", "--n", "3"],
    ];
    for args in runs {
        let a = relq(&args);
        assert!(
            a.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, relq(&args).stdout, "{args:?}");
    }
}
