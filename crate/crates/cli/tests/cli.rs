use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn hprime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hprime"))
        .args(args)
        .env_remove("HPRIME_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hprime-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn combinatorics_passes() {
    let out = hprime(&["verify", "combinatorics"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("== lemma33 =="));
    assert!(text.contains("== eprime =="));
    assert!(text.ends_with("overall: PASS\n"));
}

#[test]
fn trivial_instance_passes_every_suite() {
    let out = hprime(&["--instance", "trivial", "--order", "3", "run"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn unknown_suite_is_rejected() {
    assert_eq!(hprime(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(hprime(&["run", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn invalid_order_is_rejected() {
    let out = hprime(&["--order", "1", "verify", "lemma33"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order"));
}

#[test]
fn order_can_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hprime"))
        .args(["dump", "R"])
        .env("HPRIME_ORDER", "2")
        .output()
        .unwrap();
    assert!(stdout(&out).starts_with("1⊗1 + h·(E⊗F + 1/4·H⊗H)\n"));
}

#[test]
fn dumps() {
    let out = hprime(&["--instance", "trivial", "--order", "3", "dump", "R"]);
    assert!(stdout(&out).starts_with("1⊗1\n"));
    let out = hprime(&["--order", "2", "dump", "R"]);
    assert!(stdout(&out).starts_with("1⊗1 + h·(E⊗F + 1/4·H⊗H)\n"));
    let out = hprime(&[
        "--order", "3", "dump", "delta", "--n", "2", "--sample", "hE",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("h^2·1/2·E⊗H\n"), "{text}");
    assert!(text.contains("F^0 H^0 E^1 | F^0 H^1 E^0 : 1/2*h^2"));
    let out = hprime(&["dump", "delta", "--sample", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(hprime(&["dump", "S"]).status.code(), Some(2));
}

#[test]
fn braid_round_trip_returns_the_input() {
    let input = scratch("pairs.txt");
    fs::write(&input, "[a]\nE | F : 1\n[b]\nH | 1 : h\n").unwrap();
    let path = input.to_str().unwrap();
    let out = hprime(&["--order", "3", "braid", "--word", "1,-1", "--input", path]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[a]\nE⊗F\n\n[b]\nh·H⊗1\n\n");
    let out = hprime(&["--order", "3", "braid", "--word", "2", "--input", path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_is_reproducible() {
    let first = scratch("first.json");
    let second = scratch("second.json");
    for path in [&first, &second] {
        let out = hprime(&[
            "--order",
            "3",
            "--json",
            path.to_str().unwrap(),
            "verify",
            "lemma31",
            "hprime",
        ]);
        assert!(out.status.success());
    }
    let a = fs::read_to_string(&first).unwrap();
    assert_eq!(a, fs::read_to_string(&second).unwrap());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["overall"], true);
    assert_eq!(v["config"]["order"], 3);
    assert_eq!(v["suites"][0]["suite"], "lemma31");
    assert_eq!(v["suites"][1]["suite"], "hprime");
    assert!(v["suites"][0].get("seconds").is_none());
}

#[test]
fn sample_file_overrides_defaults() {
    let samples = scratch("samples.txt");
    fs::write(&samples, "[hE]\nE : h\n[bad]\nE : 1\n").unwrap();
    let out = hprime(&[
        "--order",
        "3",
        "--samples",
        samples.to_str().unwrap(),
        "--json",
        "-",
        "verify",
        "hprime",
    ]);
    // bare E is not in H', so the suite fails
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["overall"], false);
    let missing = hprime(&["--samples", "/nonexistent/file", "verify", "hprime"]);
    assert_eq!(missing.status.code(), Some(2));
}
