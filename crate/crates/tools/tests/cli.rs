use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use toric_core::cone::classify;
use toric_core::mmp::{standard_flip_fan, Family, FlipFamily};
use toric_tools::cli::run;
use toric_tools::FanDocument;

fn toric(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["toric".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn single_error_line(err: &str, kind: &str) {
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("error: {kind}: ")), "{err}");
}

#[test]
fn generate_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = toric(&["generate", "--family", "A", "--r", "2", "--a", "1"]);
    assert_eq!(code, 0);
    let doc = FanDocument::parse(&out).unwrap();
    assert_eq!(doc.rays[3], [1, 1, -2]);
    let path = write(dir.path(), "a21.json", &out);

    let (code, out, _) = toric(&["classify", &path, "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let classes: Vec<&str> = v["cones"].as_array().unwrap().iter().map(|c| c["class"].as_str().unwrap()).collect();
    assert_eq!(classes, ["Smooth", "TerminalQuotient"]);
    assert_eq!(v["cones"][1]["r"], 2);
    assert_eq!(v["cones"][1]["a"], 1);

    // the file round trip agrees with the in-memory pipeline
    let fan = standard_flip_fan(FlipFamily::new(Family::A, 2, 1).unwrap());
    for (i, c) in v["cones"].as_array().unwrap().iter().enumerate() {
        assert_eq!(c["class"], classify(&fan.cone(i)).unwrap().kind().name());
    }

    let (code, text, _) = toric(&["classify", &path]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("TerminalQuotient(r=2, a=1)"));
}

#[test]
fn output_is_canonical() {
    let (_, a, _) = toric(&["generate", "--family", "B", "--r", "7", "--a", "3"]);
    let (_, b, _) = toric(&["generate", "--family", "B", "--r", "7", "--a", "3"]);
    assert_eq!(a, b);
    let keys: Vec<&str> = a.lines().filter(|l| l.starts_with("  \"")).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn walls_and_flip() {
    let dir = tempfile::tempdir().unwrap();
    let (_, doc, _) = toric(&["generate", "--family", "A", "--r", "5", "--a", "2"]);
    let path = write(dir.path(), "x.json", &doc);
    let (code, out, _) = toric(&["walls", &path, "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["walls"][0]["type"], "Flipping");
    assert_eq!(v["walls"][0]["sum"], 1);
    assert_eq!(v["walls"][0]["k_sign"], "negative");

    let out_path = dir.path().join("xp.json");
    let (code, _, _) = toric(&["flip", &path, "--wall", "0,1", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let flipped = FanDocument::parse(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(flipped.cones, vec![vec![0, 2, 3], vec![1, 2, 3]]);

    let (code, out, _) = toric(&["walls", out_path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["walls"][0]["type"], "SmallKPositive");
    assert_eq!(v["walls"][0]["k_sign"], "positive");

    // flipping back across a K-positive wall is refused
    let (code, _, err) = toric(&["flip", out_path.to_str().unwrap(), "--wall", "2,3"]);
    assert_eq!(code, 3);
    single_error_line(&err, "guard");
    assert!(err.contains("not a flipping wall"));
}

#[test]
fn flop_writes_both_resolutions() {
    let dir = tempfile::tempdir().unwrap();
    let odp = write(dir.path(), "odp.json", r#"{"rays": [[1,0,0],[0,1,0],[0,0,1],[1,1,-1]], "cones": [[0,1,2,3]]}"#);
    let (code, out, _) = toric(&["flop", &odp]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let docs = v.as_array().unwrap();
    assert_eq!(docs.len(), 2);
    for d in docs {
        let doc: FanDocument = serde_json::from_value(d.clone()).unwrap();
        let fan = doc.to_fan().unwrap();
        assert_eq!(fan.cones().len(), 2);
        for i in 0..2 {
            assert_eq!(classify(&fan.cone(i)).unwrap().kind().name(), "Smooth");
        }
    }
    let smooth = write(dir.path(), "smooth.json", r#"{"rays": [[1,0,0],[0,1,0],[0,0,1]], "cones": [[0,1,2]]}"#);
    let (code, _, err) = toric(&["flop", &smooth]);
    assert_eq!(code, 3);
    assert!(err.contains("flop defined only for ordinary double points"));
}

#[test]
fn flop_fan_is_not_flipped() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "flop.json",
        r#"{"rays": [[1,0,0],[0,1,0],[0,0,1],[1,1,-1]], "cones": [[0,1,2],[0,1,3]]}"#,
    );
    let (code, _, err) = toric(&["flip", &p, "--wall", "0,1"]);
    assert_eq!(code, 3);
    assert!(err.contains("not a flipping wall"));
    let (code, _, err) = toric(&["flip", &p, "--wall", "0,2"]);
    assert_eq!(code, 3);
    assert!(err.contains("do not span a wall"));
}

#[test]
fn generate_with_odp_ray() {
    let (code, out, _) = toric(&["generate", "--family", "A", "--r", "2", "--a", "1", "--theorem4", "d1"]);
    assert_eq!(code, 0);
    let doc = FanDocument::parse(&out).unwrap();
    assert!(doc.rays.contains(&[-1, 1, 1]));
    assert_eq!(doc.cones[0].len(), 4);
    assert_eq!(doc.meta.unwrap()["theorem4"], "d1");
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = write(dir.path(), "bad.json", "{\"rays\": [[1,0,0]],\n \"cones\": [[0]");
    let (code, _, err) = toric(&["classify", &bad_json]);
    assert_eq!(code, 2);
    single_error_line(&err, "parse");
    assert!(err.contains("line 2"), "{err}");

    let bad_index = write(dir.path(), "idx.json", r#"{"rays": [[1,0,0],[0,1,0]], "cones": [[0,1,5]]}"#);
    let (code, _, err) = toric(&["walls", &bad_index]);
    assert_eq!(code, 2);
    single_error_line(&err, "validation");
    assert!(err.contains("ray index 5 out of range"));

    let overlap = write(
        dir.path(),
        "overlap.json",
        r#"{"rays": [[1,0,0],[0,1,0],[0,0,1],[1,1,-2]], "cones": [[0,1,2],[0,2,3]]}"#,
    );
    let (code, _, err) = toric(&["classify", &overlap]);
    assert_eq!(code, 2);
    assert!(err.contains("overlapping cones"));

    let (code, _, err) = toric(&["classify", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
    single_error_line(&err, "io");

    let (code, _, err) = toric(&["generate", "--family", "A", "--r", "4", "--a", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid family parameters"));
}

#[test]
fn usage() {
    let (code, _, err) = toric(&["verify", "--theorem", "9.9"]);
    assert_eq!(code, 1);
    single_error_line(&err, "usage");
    let (code, _, err) = toric(&["flip", "x.json", "--wall", "1"]);
    assert_eq!(code, 1);
    single_error_line(&err, "usage");
    let (code, out, _) = toric(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
    let (code, _, _) = toric(&["verify", "--theorem", "2.1", "--bound", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_reports() {
    let (code, out, _) = toric(&["verify", "--theorem", "4.1", "--bound", "12", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    assert_eq!(v["passed"], true);
    assert!(v["instances"].as_u64().unwrap() > 0);
    let (code, out, _) = toric(&["verify", "--theorem", "2.1", "--bound", "6"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("theorem 2.1:"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_toric");
    let out = Command::new(bin).args(["generate", "--family", "A", "--r", "3", "--a", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(FanDocument::parse(std::str::from_utf8(&out.stdout).unwrap()).is_ok());
    let out = Command::new(bin).args(["nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).args(["verify", "--theorem", "1.1", "--bound", "6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
