use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn galoisirr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galoisirr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const S3: &str = "{\"degree\":3,\"generators\":[[1,2,0],[1,0,2]],\"name\":\"S3\"}\n";
const Q8: &str = "{\"degree\":8,\"generators\":[[1,2,3,0,5,6,7,4],[4,7,6,5,2,1,0,3]]}\n";
const S4: &str = "{\"degree\":4,\"generators\":[[1,2,3,0],[1,0,2,3]]}\n";

#[test]
fn classify_s3_reports_a1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s3.json", S3);
    let o = galoisirr(&["classify", &f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: SingleGaloisClass"));
    assert!(text.contains("case: a1"));
    assert!(text.contains("p = 3  n = 1  d = 1"));
}

#[test]
fn classify_json_embeds_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s3.json", S3);
    let o = galoisirr(&["classify", &f, "--report", "json", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["seed"], 5);
    assert_eq!(v["report"]["case_tag"], "a1");
    assert_eq!(v["report"]["verdict"], "SingleGaloisClass");
    assert_eq!(v["report"]["checklist"]["scalar_transitive"], true);
}

#[test]
fn assertions_set_exit_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s4.json", S4);
    let o = galoisirr(&["classify", &f, "--expect-single"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NotSingleClass"));
    let o = galoisirr(&["classify", &f]);
    assert_eq!(o.status.code(), Some(0));
    let s3 = write(dir.path(), "s3.json", S3);
    assert_eq!(galoisirr(&["classify", &s3, "--expect-tag", "a2"]).status.code(), Some(1));
    assert_eq!(galoisirr(&["classify", &s3, "--expect-tag", "a1"]).status.code(), Some(0));
}

#[test]
fn chartab_q8_has_five_rows() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "q8.json", Q8);
    let o = galoisirr(&["chartab", &f]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<&str> = stdout(&o).lines().filter(|l| l.starts_with("X.")).map(|_| "").collect();
    assert_eq!(rows.len(), 5);
    let o = galoisirr(&["chartab", &f, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["table"]["degrees"], serde_json::json!([1, 1, 1, 1, 2]));
    assert_eq!(v["table"]["order"], 8);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "q8.json", Q8);
    let a = galoisirr(&["chartab", &f, "--format", "json", "--seed", "9"]);
    let b = galoisirr(&["chartab", &f, "--format", "json", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn zsigmondy_prints_prime_or_none() {
    assert_eq!(stdout(&galoisirr(&["zsigmondy", "2", "6"])).trim(), "none");
    assert_eq!(stdout(&galoisirr(&["zsigmondy", "2", "4"])).trim(), "5");
    assert_eq!(stdout(&galoisirr(&["zsigmondy", "3", "2"])).trim(), "none");
    let o = galoisirr(&["zsigmondy", "4", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_round_trips_through_classify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d10.json");
    let o = galoisirr(&[
        "construct", "a1", "--p", "5", "--n", "1", "--d", "2", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = galoisirr(&["classify", out.to_str().unwrap(), "--expect-tag", "a1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|G| = 10  p = 5  n = 1  d = 2"));
}

#[test]
fn invalid_parameters_exit_one() {
    let o = galoisirr(&["construct", "a5", "--p", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("PARAMS-INVALID"));
    let o = galoisirr(&["construct", "a2", "--p", "5", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_group_files_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", "{\"degree\":3,\"generators\":[[0,0,1]]}");
    assert_eq!(galoisirr(&["classify", &f]).status.code(), Some(2));
    let f = write(dir.path(), "junk.json", "not json");
    assert_eq!(galoisirr(&["chartab", &f]).status.code(), Some(2));
    let s4 = write(dir.path(), "s4.json", S4);
    let o = galoisirr(&["chartab", &s4, "--max-order", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bound"));
}

#[test]
fn sweep_writes_a_census() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.json");
    let o = galoisirr(&[
        "sweep", "--tags", "a1,a5", "--max-order", "60", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let records = v["records"].as_array().unwrap();
    assert!(!records.is_empty());
    assert_eq!(v["max_order"], 60);
    for r in records {
        let status = r["status"].as_str().unwrap();
        assert!(status == "Classified" || status == "PARAMS-INVALID");
        if status == "Classified" {
            assert_eq!(r["report"]["case_tag"], r["params"]["tag"]);
        }
    }
    assert!(records
        .iter()
        .any(|r| r["params"]["tag"] == "a5" && r["status"] == "Classified"));
}

#[test]
fn check_theorem_on_a_negative_control() {
    let o = galoisirr(&["check-theorem", "--corpus", "S4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("S4"));
    assert!(text.contains("NotSingleClass"));
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion")).count(), 9);
}

#[test]
fn check_theorem_rejects_an_empty_corpus() {
    let o = galoisirr(&["check-theorem", "--corpus", ""]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("corpus is empty"));
    let o = galoisirr(&["check-theorem", "--corpus", "NoSuchGroup"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_theorem_lists_the_corpus() {
    let o = galoisirr(&["check-theorem", "--list"]);
    let names = stdout(&o);
    assert!(names.lines().any(|l| l == "SL(2,3)"));
    assert!(names.lines().count() >= 25);
}
