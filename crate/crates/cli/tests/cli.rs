use std::process::{Command, Output};

use serde_json::Value;
use switchenum::graph::{graph6_encode, Graph};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_switchenum"))
        .args(args)
        .env_remove("SWITCHENUM_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn methods_lists_the_seven_named_methods() {
    let v = json(&["methods"]);
    let rows = v.as_array().unwrap();
    let names: Vec<&str> = rows.iter().map(|r| r["method"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 7);
    for want in ["GM4", "AH6", "GM6", "WQH6", "FANO", "GM8", "WQH8"] {
        assert!(names.contains(&want), "{want}");
    }
    let gm4 = rows.iter().find(|r| r["method"] == "GM4").unwrap();
    assert_eq!(gm4["respecting_vectors"], 8);
    assert_eq!(gm4["coefficient"], "1/3");
}

#[test]
fn census_counts_and_guard() {
    let v = json(&[
        "census",
        "--method",
        "GM4",
        "--order",
        "7",
        "--threads",
        "1",
    ]);
    assert_eq!(v["report"]["count"], 40);
    assert_eq!(v["fraction_decimal"], "0.038");
    let out = run(&["census", "--method", "GM4", "--order", "11"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["census", "--method", "GM4", "--order", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["census", "--method", "nope", "--order", "7"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_pair_reports_all_three_relations() {
    let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
    let c4k1 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    let v = json(&["verify-pair", &graph6_encode(&star), &graph6_encode(&c4k1)]);
    assert_eq!(v["isomorphic"], false);
    assert_eq!(v["cospectral"], true);
    assert_eq!(v["generalized_cospectral"], false);

    let v = json(&["verify-pair", "F?LR?", "F?LS_"]);
    assert_eq!(v["isomorphic"], false);
    assert_eq!(v["generalized_cospectral"], true);
}

#[test]
fn check_finds_instances_and_mates() {
    let v = json(&["check", "F?LR?", "--method", "GM4"]);
    assert!(v["mates"].as_u64().unwrap() >= 1);
    let c5 = graph6_encode(&Graph::cycle(5));
    let v = json(&["check", &c5, "--method", "GM4"]);
    assert_eq!(v["instances"].as_array().unwrap().len(), 0);
    let out = run(&["check", "not-a-graph!", "--method", "GM4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn formula_and_overlap_reports() {
    let v = json(&["formula", "--method", "GM4", "--order", "10"]);
    let text = v.to_string();
    assert!(text.contains("13631488"), "{text}");
    let v = json(&[
        "overlap",
        "--methods",
        "GM4,GM6,GM8",
        "--order",
        "8",
        "--threads",
        "1",
    ]);
    assert_eq!(v["union"], 1054);
}

#[test]
fn appendix_default_case() {
    let v = json(&["appendix"]);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["fixing_isomorphism_exists"], false);
}

#[test]
fn json_file_output() {
    let dir = std::env::temp_dir().join(format!("switchenum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gcount.json");
    let out = run(&["gcount", "7", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.to_string().contains("1044"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_and_version_exit_cleanly() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
}
