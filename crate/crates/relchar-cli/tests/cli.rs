//! End-to-end tests of the binary: exit codes, report shapes, determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_relchar"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.as_mut().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relchar"))
        .args(args)
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

const INTERVAL_DOC: &str = r#"
complex M { vertices 2 simplices [0,1] }
complex A { vertices 2 simplices [0] [1] }
map rho { source A target M vertex_map [0,1] }
task { command compute theory rel_cs degrees 1..3 }
"#;

const POINT_DOC: &str = "complex P { vertices 1 simplices [0] }\n";

const DEGREE_TWO_DOC: &str = r#"
complex M { vertices 3 simplices [0,1] [1,2] [0,2] }
complex A { vertices 6 simplices [0,1] [1,2] [2,3] [3,4] [4,5] [0,5] }
map rho { source A target M vertex_map [0,1,2,0,1,2] }
"#;

const EMPTY_SOURCE_DOC: &str = r#"
complex M { vertices 3 simplices [0,1] [1,2] [0,2] }
complex A { vertices 0 }
map rho { source A target M vertex_map [] }
"#;

#[test]
fn compute_interval_degree_two_is_circle_group() {
    let out = run_with_stdin(&["compute", "-"], INTERVAL_DOC);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree 2: (Q/Z)^1"), "got:\n{}", text);
    assert!(text.contains("degree 3: 0"), "got:\n{}", text);
}

#[test]
fn compute_point_cs_degree_one() {
    let out = run_with_stdin(&["compute", "-", "--theory", "cs", "--degrees", "1"], POINT_DOC);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree 1: (Q/Z)^1"), "got:\n{}", text);
}

#[test]
fn hs_with_empty_source_matches_absolute() {
    let hs = run_with_stdin(
        &["compute", "-", "--theory", "hs", "--degrees", "1..3"],
        EMPTY_SOURCE_DOC,
    );
    let cs = run_with_stdin(
        &["compute", "-", "--theory", "cs", "--space", "M", "--degrees", "1..3"],
        EMPTY_SOURCE_DOC,
    );
    assert!(hs.status.success() && cs.status.success());
    let strip = |raw: Vec<u8>| -> Vec<String> {
        String::from_utf8(raw)
            .unwrap()
            .lines()
            .filter(|l| l.starts_with("degree"))
            .map(str::to_string)
            .collect()
    };
    assert_eq!(strip(hs.stdout), strip(cs.stdout));
}

#[test]
fn check_thm3_disk_exits_zero() {
    let doc = r#"
complex M { vertices 7 simplices [0,1,2] [0,2,3] [0,3,4] [0,4,5] [0,5,6] [0,1,6] }
complex A { vertices 6 simplices [0,1] [1,2] [2,3] [3,4] [4,5] [0,5] }
map rho { source A target M vertex_map [1,2,3,4,5,6] }
"#;
    let out = run_with_stdin(&["check", "-", "--check", "thm3", "--degrees", "2"], doc);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: PASS"));
}

#[test]
fn check_lemma1_degree_two_map() {
    let out =
        run_with_stdin(&["check", "-", "--check", "lemma1", "--degrees", "1..2"], DEGREE_TWO_DOC);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("omega has integer periods: PASS"), "got:\n{}", text);
}

#[test]
fn check_phi_kernel_interval() {
    let out =
        run_with_stdin(&["check", "-", "--check", "phi_kernel", "--degrees", "2"], INTERVAL_DOC);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("kernel inside coboundaries: PASS"), "got:\n{}", text);
    assert!(text.contains("coboundaries inside kernel: PASS"), "got:\n{}", text);
}

#[test]
fn parse_error_exit_code_and_position() {
    let out = run_with_stdin(&["compute", "-", "--theory", "cs"], "complex M { vertices }");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1:"), "diagnostic with position, got: {}", err);
}

#[test]
fn invalid_simplicial_data_exit_code() {
    let doc = "complex M { vertices 2 simplices [0,5] }\ntask { command compute theory cs }\n";
    let out = run_with_stdin(&["compute", "-"], doc);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_demo_is_rejected() {
    let out = run(&["demo", "nonexistent"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn demo_disk_table_rows() {
    let out = run(&["demo", "disk_table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n=2 k=3: computed (Q/Z)^1 | reference (Q/Z)^1 | MATCH"), "got:\n{}", text);
    assert!(text.contains("n=2 k=4: computed 0 | reference 0 | MATCH"), "got:\n{}", text);
}

#[test]
fn demo_holonomy_values() {
    let out = run(&["demo", "holonomy"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("stage 2 radial cycle: 1/3"), "got:\n{}", text);
    assert!(text.contains("stage 2 outer boundary: 0"), "got:\n{}", text);
}

#[test]
fn homology_and_cone_cohomology_theories() {
    let out = run_with_stdin(
        &["compute", "-", "--theory", "homology", "--space", "M", "--degrees", "1"],
        DEGREE_TWO_DOC,
    );
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("degree 1: Z^1"));

    let out = run_with_stdin(
        &["compute", "-", "--theory", "cone_cohomology", "--degrees", "2"],
        DEGREE_TWO_DOC,
    );
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("degree 2: Z/2"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = run_with_stdin(&["compute", "-"], INTERVAL_DOC);
    let b = run_with_stdin(&["compute", "-"], INTERVAL_DOC);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["demo", "holonomy"]);
    let d = run(&["demo", "holonomy"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn json_report_mirrors_text() {
    let text = run_with_stdin(&["compute", "-"], INTERVAL_DOC);
    let json = run_with_stdin(&["compute", "-", "--format", "json"], INTERVAL_DOC);
    assert!(json.status.success());
    let parsed: serde_json::Value =
        serde_json::from_slice(&json.stdout).expect("valid JSON report");
    assert_eq!(parsed["command"], "compute");
    assert_eq!(parsed["theory"], "rel_cs");
    let results = parsed["results"].as_array().unwrap();
    let text_lines = String::from_utf8(text.stdout).unwrap();
    for r in results {
        let line = format!("degree {}: {}", r["degree"], r["decomposition"].as_str().unwrap());
        assert!(text_lines.contains(&line), "line '{}' missing from text report", line);
    }
}

#[test]
fn check_exit_code_contract() {
    // every named check verifies a true statement, so valid inputs exit 0;
    // the failure path (exit 1) is exercised at the library level through
    // the corrupted-map negative control
    let ok = run_with_stdin(&["check", "-", "--check", "thm3", "--degrees", "2"], INTERVAL_DOC);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run_with_stdin(&["check", "-", "--check", "bogus"], INTERVAL_DOC);
    assert_eq!(bad.status.code(), Some(3));
}
