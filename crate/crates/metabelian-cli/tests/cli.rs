use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metabelian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn bs2_file() -> String {
    let dir = std::env::temp_dir().join(format!("metabelian-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bs2.json");
    std::fs::write(
        &path,
        r#"{"module_generators": ["a"], "free_generators": ["t"], "relators": ["t*a*t^-1*a^-2"],
            "lambda": {"centralizer": ["2*t"], "co_centralizer": ["2*t^-1"]}}"#,
    )
    .unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn solve_from_file() {
    let p = bs2_file();
    let v = json(&["solve", "-p", &p, "-w", "t*a*t^-1*a^-2"]);
    assert_eq!(v["identity"], true);
    let v = json(&["solve", "-p", &p, "-w", "a*t"]);
    assert_eq!(v["identity"], false);
}

#[test]
fn norm_growth_csv() {
    let out = run(&["norm-growth", "-f", "1+t", "-n", "5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,norm\n1,2\n2,4\n3,8\n4,16\n5,32\n");
}

#[test]
fn constants_of_bs2() {
    let v = json(&["constants", "-p", &bs2_file()]);
    assert_eq!(v["C"], "1");
    assert_eq!(v["D"], "1");
    assert_eq!(v["r0"], "0.5");
    assert_eq!(v["R"], "undefined");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["area", "-p", "bs:2", "-w", "a"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "-p", "bs:2", "-w", "a *"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "-p", "no-such-preset", "-w", "a"]).status.code(), Some(2));
    assert_eq!(run(&["groebner", "-p", "bs:2", "--steps", "1"]).status.code(), Some(3));
}

#[test]
fn profile_is_reproducible() {
    let args = ["profile", "-p", "bs:2", "-n", "4", "--samples", "4", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("n,max_witnessed,max_cert_size,bound\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn preset_round_trip() {
    let v = json(&["preset", "lamplighter:3"]);
    assert_eq!(v["preset"], "lamplighter:3");
    let v = json(&["member", "-p", "lamplighter:3", "-e", "3*a"]);
    assert_eq!(v["member"], true);
    let v = json(&["nf", "-p", "lamplighter:3", "-e", "4*a"]);
    assert_eq!(v["normal_form"], "a");
}

#[test]
fn oracle_and_module_dehn() {
    let v = json(&["oracle", "-p", "bs:2", "-e", "(t^2 - 4)*a", "--gens", "(t - 2)*a", "--budget", "3,4,6"]);
    assert_eq!(v["min_size"], 3);
    let v = json(&["oracle", "-p", "bs:2", "-e", "a", "--gens", "2*a"]);
    assert_eq!(v["conclusive"], false);
    let out = run(&["module-dehn", "-p", "lamplighter:2", "-n", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().last(), Some("4,4,2"));
}

#[test]
fn relative_area_of_commutator() {
    let v = json(&["rel-area", "-p", "zwrz", "-w", "[a, a^t]"]);
    // Sorting a⁻¹, a^{-t}, a, a^t takes three commutations at norm 1.
    assert_eq!(v["witnessed"], "3");
}
