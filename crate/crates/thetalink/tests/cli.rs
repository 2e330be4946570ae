//! End-to-end checks of the command-line surface: flag parsing, output
//! formats, exit codes, catalog files and cache transparency.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use thetalink::scalar::ScalarValue;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thetalink"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("thetalink-cli-{}-{}", tag, std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn eval_unknot_is_one() {
    let out = run(&["eval", "--braid", "{}", "--strands", "1", "--invariant", "theta"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn eval_by_name_and_alias() {
    let by_name = run(&["eval", "--link", "L11n418{0,0}", "--invariant", "homflypt"]);
    let by_alias = run(&["eval", "--link", "L11n418.00", "--invariant", "homflypt"]);
    assert!(by_name.status.success());
    assert_eq!(stdout(&by_name), stdout(&by_alias));
}

#[test]
fn eval_engine_all_agrees() {
    let out = run(&["eval", "--braid", "{1,1}", "--invariant", "theta", "--engine", "all"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("engines agree"));
}

#[test]
fn eval_json_round_trips() {
    let out = run(&["eval", "--braid", "{1,1,1}", "--invariant", "theta", "--format", "json"]);
    assert!(out.status.success());
    let v: ScalarValue = serde_json::from_str(stdout(&out).trim()).unwrap();
    let again = serde_json::to_string(&v).unwrap();
    assert_eq!(stdout(&out).trim(), again);
}

#[test]
fn usage_errors_exit_1() {
    let out = run(&["eval", "--invariant", "theta"]); // neither --braid nor --link
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["eval", "--braid", "{0}"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["eval", "--braid", "{1}", "--invariant", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["eval", "--link", "no-such-link"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["validate", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn computation_failures_exit_2() {
    let out = run(&["eval", "--braid", "{1}", "--catalog", "/no/such/file.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn distinguished_pair_signals_exit_3() {
    let out = run(&["compare", "L10n76{1,1}", "L11n425{1,0}"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("P-equal:          true"));
    assert!(text.contains("theta-equal:      false"));

    let out = run(&["compare", "3_1", "3_1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("theta difference: 0"));
}

#[test]
fn compare_json_contains_specializations() {
    let out = run(&["compare", "hopf", "hopf*", "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["p_equal"], serde_json::Value::Bool(false));
    assert!(report["specializations"]["1/2"].is_object());
    assert!(report["specializations"]["1/3"].is_object());
}

#[test]
fn cache_is_transparent() {
    let dir = temp_dir("cache");
    let cache = dir.to_str().unwrap();
    let args = ["eval", "--braid", "{1,-2,1,-2}", "--invariant", "theta"];

    let cold = run(&[&args[..], &["--cache-dir", cache]].concat());
    let warm = run(&[&args[..], &["--cache-dir", cache]].concat());
    let plain = run(&args);
    assert!(cold.status.success());
    assert_eq!(stdout(&cold), stdout(&plain));
    assert_eq!(stdout(&warm), stdout(&plain));
    assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);

    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_file_extends_names() {
    let dir = temp_dir("catalog");
    let path = dir.join("extra.jsonl");
    fs::write(
        &path,
        r#"{"name":"granny","braid":"{1,1,1,2,2,2}","components":1,"source":"external_table"}"#,
    )
    .unwrap();

    let out = run(&[
        "eval",
        "--link",
        "granny",
        "--invariant",
        "homflypt",
        "--catalog",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // granny knot = trefoil # trefoil, so P is the square of P(3_1)
    let trefoil = run(&["eval", "--link", "3_1", "--invariant", "homflypt", "--format", "json"]);
    let granny: ScalarValue = {
        let out = run(&[
            "eval",
            "--link",
            "granny",
            "--invariant",
            "homflypt",
            "--format",
            "json",
            "--catalog",
            path.to_str().unwrap(),
        ]);
        serde_json::from_str(stdout(&out).trim()).unwrap()
    };
    let t: ScalarValue = serde_json::from_str(stdout(&trefoil).trim()).unwrap();
    assert_eq!(granny, &t * &t);

    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_listing_shows_sources() {
    let out = run(&["catalog", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("paper_appendix_A"));
    assert!(text.contains("paper_section_8_3"));
    assert!(text.contains("external_table"));
}

#[test]
fn validate_esystem_passes() {
    let out = run(&["validate", "--suite", "esystem", "--tolerance", "1e-9"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("2/2 checks passed"));
}
