use std::io::Write;
use std::process::Command;

fn nk() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nk"))
}

fn temp_doc(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn run_and_validate() {
    let f = temp_doc(nk::corpus::find("torus-degree-two-minus").unwrap().text);
    let out = nk().arg("run").arg(f.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("q = 1, factors = [2 - z]"));
    let out = nk().arg("validate").arg(f.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok: mapping-torus\n");
}

#[test]
fn errors_exit_with_two() {
    let f = temp_doc(
        r#"{"kind": "novikov", "payload": {"complex": {"ranks": [1, 1, 1], "differentials": {"1": [[1]], "2": [[1]]}}}}"#,
    );
    for cmd in ["run", "validate"] {
        let out = nk().arg(cmd).arg(f.path()).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("degree 2"));
    }
    let out = nk().args(["run", "/nonexistent/doc.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_and_machine_output() {
    let f = temp_doc(nk::corpus::find("scalar-domain").unwrap().text);
    let out = nk()
        .args(["run", "--precision", "3", "--format", "machine", "--oracle"])
        .arg(f.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["F-hat truncated at z^3"]["d 1"][0][0],
        serde_json::json!({"1": 1, "2": 1, "3": 1})
    );
    assert_eq!(v["conclusive"], serde_json::json!(true));
}

#[test]
fn examples_commands() {
    let out = nk().args(["examples", "list"]).output().unwrap();
    let listing = String::from_utf8_lossy(&out.stdout);
    assert!(listing.lines().count() == nk::corpus::EXAMPLES.len());
    let out = nk().args(["examples", "run-all", "--oracle"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let order: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix("== "))
        .map(|l| l.trim_end_matches(" =="))
        .collect();
    let expected: Vec<&str> = nk::corpus::EXAMPLES.iter().map(|e| e.name).collect();
    assert_eq!(order, expected);
}
