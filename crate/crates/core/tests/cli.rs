use netcube::cli::run_from;
use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_from(std::iter::once("netcube").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("netcube-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn complex_of_nstar() {
    let (code, out, _) = run(&["complex", "nstar"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("8 vertices, 32 edges, 24 squares; special: yes"), "{out}");
}

#[test]
fn complex_of_a_single_transition() {
    let p = scratch("one.net", "place p\nplace q\ntransition t pre {p} post {q}\ninitial {p}\n");
    let (code, out, _) = run(&["complex", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("2 vertices, 1 edges, 0 squares; special: yes"), "{out}");
}

#[test]
fn z_fails_the_specialness_check() {
    let (code, out, _) = run(&["complex", "z"]);
    assert_eq!(code, 1);
    assert!(out.contains("special: no"), "{out}");
    assert!(out.contains("self-osculates"), "{out}");
}

#[test]
fn bad_input_exits_with_two() {
    let p = scratch("bad.net", "place p\ntransition a pre {p} post\n");
    let (code, _, err) = run(&["complex", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["complex", "/nonexistent/file.net"]).0, 2);
    assert_eq!(run(&["examples", "nosuch"]).0, 2);
    assert_eq!(run(&["unfold", "nstar", "--budget", "10"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn unfold_cross_check() {
    let (code, out, _) = run(&["--depth", "5", "unfold", "nstar", "--cross-check"]);
    assert_eq!(code, 0);
    assert!(out.contains("isomorphic: yes"), "{out}");
    let (code, out, _) = run(&["--depth", "0", "unfold", "z"]);
    assert_eq!(code, 0);
    assert!(out.contains("1 vertices"), "{out}");
}

#[test]
fn events_of_the_conflict_net() {
    let (code, out, _) = run(&["--format", "json", "events", "conflict"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["schema_version"], 1);
    assert_eq!(j["events"].as_array().unwrap().len(), 2);
}

#[test]
fn hair_verification() {
    let p = scratch("single.cx", "vertex v\n");
    let (code, out, _) = run(&["--depth", "2", "hair", p.to_str().unwrap(), "--verify"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("edge hair_v v v' color h"), "{out}");
    let (code, out, _) = run(&["--depth", "4", "hair", "nstar", "--verify"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains(": no"), "{out}");
}

#[test]
fn examples_round_trip_through_files() {
    let (code, list, _) = run(&["examples"]);
    assert_eq!(code, 0);
    for name in ["nstar", "z", "zprime", "grid", "ray", "tree", "conflict"] {
        assert!(list.contains(name), "{list}");
    }
    let dir = std::env::temp_dir().join(format!("netcube-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("zp.cx");
    assert_eq!(run(&["examples", "zprime", "-o", p.to_str().unwrap()]).0, 0);
    let (code, out, _) = run(&["complex", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("8 vertices, 32 edges, 24 squares; special: yes"), "{out}");
}

#[test]
fn analyze_the_ray() {
    let (code, out, _) = run(&["--depth", "6", "--format", "json", "analyze", "ray"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(j["levels"].as_array().unwrap().iter().all(|l| l["max_diameter"] == 0));
}

#[test]
fn dot_output() {
    let (code, out, _) = run(&["--format", "dot", "complex", "nstar"]);
    assert_eq!(code, 0);
    assert!(out.trim_start().starts_with("graph") || out.trim_start().starts_with("digraph"), "{out}");
}

#[test]
fn binary_runs_a_criterion() {
    let out = Command::new(env!("CARGO_BIN_EXE_netcube")).args(["selftest", "--criterion", "1"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("[PASS]  1."), "{text}");
}
