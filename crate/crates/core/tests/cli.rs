//! End-to-end runs of the command-line front end against a scratch cache.

use ritzlab::cli::cache::Cache;
use ritzlab::cli::{run, EXIT_COMPUTE, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str], cache: Option<&Cache>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ritzlab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err, cache);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn rrm_json_is_stable_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let args = ["rrm", "--k", "2", "--epsilon", "1", "--dims", "10,20", "--prec", "128", "--format", "json"];
    let (code, first, _) = invoke(&args, Some(&cache));
    assert_eq!(code, EXIT_OK);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);

    let (code, second, _) = invoke(&args, Some(&cache));
    assert_eq!(code, EXIT_OK);
    assert_eq!(first, second);

    let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(first, again);
    assert_eq!(parsed["rows"].as_array().unwrap().len(), 2);
    assert_eq!(parsed["bits"], "128");
}

#[test]
fn different_precision_is_a_different_record() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    for bits in ["128", "192"] {
        let (code, _, _) = invoke(&["exact", "--k", "3", "--epsilon", "1/2", "--dim", "8", "--prec", bits], Some(&cache));
        assert_eq!(code, EXIT_OK);
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn no_cache_leaves_the_workspace_empty() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let (code, out, _) = invoke(&["compare", "--k", "2", "--epsilon", "1", "--dim", "12", "--no-cache"], Some(&cache));
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("## "));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn csv_carries_precision_columns() {
    let (code, out, _) = invoke(&["potential", "--k", "2", "--epsilon", "1", "--eval", "-0.5", "--format", "csv"], None);
    assert_eq!(code, EXIT_OK);
    let header = out.lines().next().unwrap();
    assert!(header.ends_with(",bits,digits"), "{header}");
}

#[test]
fn out_file_receives_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.md");
    let (code, out, _) = invoke(&["pt", "--epsilon", "0.33", "--dim", "25", "--out", path.to_str().unwrap()], None);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("9.81603831246387"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["rrm", "--k", "2", "--epsilon", "-1", "--dim", "10"][..],
        &["rrm", "--k", "2", "--epsilon", "1", "--sigma", "3", "--dim", "10"],
        &["rrm", "--k", "1", "--epsilon", "1", "--dim", "10"],
        &["rrm", "--k", "2", "--epsilon", "1"],
        &["rrm", "--k", "2", "--epsilon", "1", "--dims", "20,10"],
        &["reproduce", "14"],
        &["frobnicate"],
    ] {
        let (code, _, err) = invoke(args, None);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn compute_errors_exit_3() {
    let (code, _, err) = invoke(&["rrm", "--k", "2", "--epsilon", "1", "--dim", "400", "--no-cache"], None);
    assert_eq!(code, EXIT_COMPUTE);
    assert!(err.contains("350"), "{err}");
}

#[test]
fn reproduced_table_two_matches_every_row() {
    let (code, out, _) = invoke(&["reproduce", "2", "--format", "json", "--no-cache"], None);
    assert_eq!(code, EXIT_OK);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in parsed["rows"].as_array().unwrap() {
        assert_eq!(row["verdict"], "match", "{row}");
    }
}
