use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_orbitquant"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().expect("stdin");
    if let Some(s) = stdin {
        pipe.write_all(s.as_bytes()).expect("write stdin");
    }
    drop(pipe);
    child.wait_with_output().expect("binary exits")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn verify_suites_exit_zero() {
    for suite in ["closedform", "kks", "wick", "poles"] {
        let out = run(&["verify", suite, "--type-a", "1", "--grade", "3", "--json"], None);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["pass"], true, "{suite}");
    }
}

#[test]
fn twist_lists_poles() {
    let out = run(&["twist", "--type-a", "1", "--r", "2", "--grade", "3", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let poles: Vec<String> = v["poles"].as_array().unwrap().iter().map(|p| p["hbar"]["re"].as_str().unwrap().to_string()).collect();
    assert_eq!(poles, ["1", "2"]);
}

#[test]
fn star_reads_both_factors_from_stdin() {
    let x = r#"{"vars": ["R_0_0", "R_0_1", "R_1_0", "R_1_1"], "terms": [[[0, 1, 0, 0], {"num": [[0, {"re": "1", "im": "0"}]], "den": [[0, {"re": "1", "im": "0"}]]}]]}"#;
    let y = x.replace("[0, 1, 0, 0]", "[0, 0, 1, 0]");
    let out = run(&["star", "--type-a", "1", "--points", "3", "--hbar", "1/7", "--json"], Some(&format!("[{x}, {y}]")));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["values"].as_array().unwrap().len(), 3);
    assert_eq!(v["twist_grade"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["twist", "--type-a", "1", "--r", "0"], None).status.code(), Some(2));
    assert_eq!(run(&["verify", "kks"], None).status.code(), Some(2));
    let out = run(&["verify", "positivity", "--type-a", "1", "--real-form", "compact"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));
    let x = r#"[{"vars": ["R_0_0", "R_0_1", "R_1_0", "R_1_1"], "terms": [[[0, 1, 0, 0], {"num": [[0, {"re": "1", "im": "0"}]], "den": [[0, {"re": "1", "im": "0"}]]}]]}, {"vars": ["R_0_0", "R_0_1", "R_1_0", "R_1_1"], "terms": [[[0, 0, 1, 0], {"num": [[0, {"re": "1", "im": "0"}]], "den": [[0, {"re": "1", "im": "0"}]]}]]}]"#;
    assert_eq!(run(&["star", "--type-a", "1", "--grade", "2", "--hbar", "1"], Some(x)).status.code(), Some(4));
}
