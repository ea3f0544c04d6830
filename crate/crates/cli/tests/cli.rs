use std::path::Path;
use std::process::{Command, Output};

fn mackey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mackey"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("run mackey")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn idempotents_of_s3() {
    let o = mackey(&["idempotents", "--group", "s3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["idempotents"].as_array().unwrap().len(), 4);
    assert_eq!(v["report"]["summary"]["failed"], 0);
}

#[test]
fn marks_formats() {
    let o = mackey(&["marks", "--group", "c4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(1).unwrap().ends_with(",4,0,0"));
}

#[test]
fn roundtrip_constant_on_padic_tower() {
    let o = mackey(&[
        "roundtrip",
        "--mackey",
        "constant_q",
        "--tower",
        "p-adic:2:3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn broken_functor_fails_with_witness() {
    let o = mackey(&[
        "check-mackey",
        "tests/fixtures/broken.json",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("[FAIL] mackey_formula"), "{text}");
    assert!(text.contains("H={0,1} K={0} L={0}"), "{text}");
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{ not json").unwrap();
    let o = mackey(&["check-mackey", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(mackey(&["marks", "--group", "nope"]).status.code(), Some(2));
    assert_eq!(
        mackey(&["marks", "--group", "s4", "--max-order", "10"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mackey(&["stalks", "--mackey", "burnside", "--tower", "s3", "--chain", "99"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn unstabilized_policy_is_reported_not_fatal() {
    let o = mackey(&[
        "stalks",
        "--mackey",
        "constant_q",
        "--tower",
        "p-adic:2:2",
        "--chain",
        "1",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("stabilized=false"));
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "roundtrip",
        "--mackey",
        "burnside",
        "--tower",
        "d8",
        "--seed",
        "7",
    ];
    let a = mackey(&args);
    let b = mackey(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn conversions_write_files_that_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let sheaf = dir.path().join("sheaf.json");
    let functor = dir.path().join("functor.json");
    let o = mackey(&[
        "to-sheaf",
        "--mackey",
        "burnside",
        "--tower",
        "s3",
        "--out",
        sheaf.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(Path::new(&sheaf).is_file());

    let o = mackey(&[
        "to-mackey",
        sheaf.to_str().unwrap(),
        "--out",
        functor.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&functor).unwrap()).unwrap();
    assert_eq!(v["dims"], serde_json::json!([1, 2, 2, 2, 2, 4]));

    assert_eq!(
        mackey(&["roundtrip", sheaf.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        mackey(&["check-mackey", functor.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn decompose_constant_on_c2() {
    let o = mackey(&[
        "decompose",
        "--mackey",
        "constant_q",
        "--tower",
        "c2",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim M(G)=1 sum=1"));
}
