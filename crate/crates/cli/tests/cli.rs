//! End-to-end checks of the command-line interface: worked values, exit
//! codes, JSON shape and byte-stability of the output.

use std::process::{Command, Output};

fn perlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

#[test]
fn period_j1_worked_example() {
    let out = perlab(&["period", "j1", "--q", "4", "--s", "1/2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "5/3\n");
}

#[test]
fn period_jn_worked_example() {
    let out = perlab(&["period", "jn", "--q", "2", "--lambda", "3/2,1/2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "35/6\n");
}

#[test]
fn converge_sp_worked_example() {
    let out = perlab(&[
        "converge",
        "sp",
        "--n",
        "2",
        "--levi",
        "2,2;0",
        "--lambda",
        "-1/2,-1/2,-1/2,-1/2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "false\n");
}

#[test]
fn orbits_json_has_nine_entries() {
    let out = perlab(&[
        "orbits",
        "--n",
        "2",
        "--levi",
        "1,1,1,1;0",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["result"].as_array().unwrap().len(), 9);
    assert_eq!(doc["command"], "orbits");
    // fraction strings in the payload
    let rho = doc["result"][8]["rho_x"].as_array().unwrap();
    assert_eq!(rho[0], "1/2");
}

#[test]
fn graph_json_exports_vertices_and_edges() {
    let out = perlab(&["graph", "--n", "1", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["result"]["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(doc["result"]["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn classify_sp_class_from_stdin_schema() {
    use std::io::Write;
    let payload = r#"{
        "levi": "1,1;0",
        "labels": [
            {"id": "1", "gl_size": 1, "trivial_char": true, "selfdual": true},
            {"id": "1", "gl_size": 1, "trivial_char": true, "selfdual": true}
        ],
        "subspace": {"base": ["0", "1"], "dirs": []}
    }"#;
    let mut child = Command::new(env!("CARGO_BIN_EXE_perlab"))
        .args(["classify", "sp-class", "--input", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(payload.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "true\n");
}

#[test]
fn output_is_byte_stable() {
    let args = [
        "orbits",
        "--n",
        "2",
        "--levi",
        "1,1,1,1;0",
        "--format",
        "json",
    ];
    let a = perlab(&args);
    let b = perlab(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_input_exits_2() {
    let out = perlab(&["orbits", "--n", "2", "--levi", "9,9;0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = perlab(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = perlab(&["period", "j1", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flags print usage and exit 2
    let out = perlab(&["count", "--n", "2", "--bogus", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("usage:"), "{err}");
}

#[test]
fn rank_guard_respects_env_override() {
    let out = perlab(&["orbits", "--n", "4", "--levi", "1,1,1,1,1,1,1,1;0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_perlab"))
        .args(["orbits", "--n", "4", "--levi", "1,1,1,1,1,1,1,1;0"])
        .env("PERLAB_MAX_RANK", "8")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let warned = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(warned.contains("unsupported territory"), "{warned}");
}
