use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_penta-geom")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn origin_is_inside() {
    let out = run(&["check", "--point", "0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "inside");
    assert_eq!(v["verdicts"]["c4"], "inside");
}

#[test]
fn exterior_point_gets_a_level_set_witness() {
    let out = run(&["witness", "--point", "2,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["witness"]["kind"], "PsiLevelSet");
    let z = v["witness"]["z"].as_array().unwrap();
    let omega = v["witness"]["omega"].as_array().unwrap();
    assert!(z[0].as_f64().unwrap().abs() < 1e-6 && z[1].as_f64().unwrap().abs() < 1e-6);
    assert!((omega[0].as_f64().unwrap() - 2.0).abs() < 1e-6);
}

#[test]
fn suite_writes_a_passing_report() {
    let path = scratch("automorphism-group.json");
    let out = run(&[
        "suite", "--name", "automorphism-group", "--n", "10000", "--seed", "42", "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema"], "penta-geom/1");
    assert_eq!(report["suite"], "automorphism-group");
    assert_eq!(report["pass"], true);
    assert_eq!(report["seed"], 42);
    assert_eq!(report["counts"]["failures"], 0);
}

#[test]
fn same_seed_gives_the_same_report() {
    let (a, b) = (scratch("orbit-a.json"), scratch("orbit-b.json"));
    for (p, threads) in [(&a, "1"), (&b, "3")] {
        let out = run(&[
            "suite", "--name", "orbit-of-zero", "--n", "500", "--seed", "9", "--threads", threads, "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn failing_suite_exits_one() {
    let out = run(&["suite", "--name", "phi-cconvex", "--n", "50"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[FAIL] phi-cconvex"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["check", "--point", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "--name", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sample_prints_csv() {
    let out = run(&["sample", "--strategy", "boundary-part1", "--n", "3", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "aRe,aIm,sRe,sIm,pRe,pIm,class");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 7 && l.ends_with("part1")));
}

#[test]
fn automorphism_inverse_parameters() {
    let out = run(&[
        "auto", "invert", "--omega", "0.6,0.8", "--eta", "0,1", "--alpha", "0.3,-0.2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let num = |x: &Value| x.as_f64().unwrap();
    // ω' = ω̄, η' = η̄, α' = −ηα
    assert_eq!((num(&v["omega"][0]), num(&v["omega"][1])), (0.6, -0.8));
    assert_eq!((num(&v["nu"]["eta"][0]), num(&v["nu"]["eta"][1])), (0.0, -1.0));
    assert!((num(&v["nu"]["alpha"][0]) + 0.2).abs() < 1e-15);
    assert!((num(&v["nu"]["alpha"][1]) + 0.3).abs() < 1e-15);
}
