use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circtree")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn tau_of_the_moebius_double_step() {
    let v = json(&["tau", "--beta", "2", "--s", "1", "--alpha", "1", "--n", "5"]);
    assert_eq!(v[0]["value"], "16820");
    assert_eq!(v[0]["agree"], true);
    assert_eq!(v[0]["certified"], true);
}

#[test]
fn tau_of_a_cycle() {
    for method in ["brute", "eigen", "chebyshev", "all"] {
        let v = json(&["tau", "--beta", "1", "--s", "1", "--n", "9", "--method", method]);
        assert_eq!(v[0]["value"], "9", "{method}");
        for key in ["spec", "method", "certified", "precision_bits"] {
            assert!(!v[0][key].is_null(), "{method} lacks {key}");
        }
    }
}

#[test]
fn three_methods_agree_on_a_grid_member() {
    let v = json(&["tau", "--beta", "2", "--s", "1,2,3", "--alpha", "1", "--n", "3", "--method", "all"]);
    assert_eq!(v[0]["agree"], true);
    assert_eq!(v[0]["value"], "10368");
    let methods: Vec<&str> = v[0]["methods"].as_array().unwrap().iter().map(|m| m["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["brute-force", "eigen-product", "chebyshev-product"]);
}

#[test]
fn decompose_recovers_the_sequence() {
    let v = json(&["decompose", "--beta", "3", "--s", "1", "--alpha", "1", "--n-range", "1..4"]);
    let a: Vec<&str> = v.as_array().unwrap().iter().map(|d| d["a_n"].as_str().unwrap()).collect();
    assert_eq!(a, ["2", "8", "37", "176"]);
    assert!(v.as_array().unwrap().iter().all(|d| d["coefficient"] == 3));
}

#[test]
fn decompose_trivial_and_even_branch() {
    let v = json(&["decompose", "--beta", "1", "--s", "1", "--n", "5"]);
    assert_eq!(v[0]["coefficient"], 1);
    assert_eq!(v[0]["a_n"], "1");
    let v = json(&["decompose", "--beta", "2", "--s", "1,2,3", "--alpha", "1", "--n", "4"]);
    assert_eq!(v[0]["case_tag"], "even-n");
    assert_eq!(v[0]["coefficient"], 4);
}

#[test]
fn mahler_constants() {
    let a = json(&["mahler", "--beta", "2", "--s", "1,2,3", "--alpha", "1"])["A"]["mid"].as_f64().unwrap();
    assert!((a - 42.4038).abs() < 5e-4, "{a}");
    let cycle = json(&["mahler", "--beta", "1", "--s", "1"])["thermodynamic_limit"]["mid"].as_f64().unwrap();
    assert!(cycle.abs() < 1e-12, "{cycle}");
    let ladder = json(&["mahler", "--beta", "2", "--s", "1", "--alpha", "1"])["thermodynamic_limit"]["mid"].as_f64().unwrap();
    assert!((ladder - 0.88137).abs() < 1e-5, "{ladder}");
}

#[test]
fn mahler_convergence_table() {
    let v = json(&["mahler", "--beta", "2", "--s", "1", "--alpha", "1", "--n-range", "20..22"]);
    let rows = v["convergence"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!((r["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn invalid_specs_exit_two() {
    for args in [
        &["tau", "--beta", "1", "--s", "2", "--n", "6"][..],
        &["tau", "--beta", "1", "--s", "3,2", "--n", "9"],
        &["tau", "--beta", "1", "--s", "1,5", "--n", "6"],
        &["tau", "--beta", "0", "--s", "1", "--n", "6"],
        &["tau", "--beta", "1", "--s", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn json_is_deterministic() {
    let args = ["tau", "--beta", "3", "--s", "1,2", "--alpha", "1", "--n-range", "2..6"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_has_one_row_per_n() {
    let out = run(&["tau", "--beta", "2", "--s", "1", "--alpha", "1", "--n-range", "2..7", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(&rows[3][5], "16820");
}

#[test]
fn human_output_explains_the_case() {
    let out = run(&["decompose", "--beta", "2", "--s", "1,2,3", "--alpha", "1", "--n", "3", "--format", "human"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n odd, beta even"), "{text}");
}

#[test]
fn out_file_receives_the_document() {
    let path = std::env::temp_dir().join(format!("circtree-out-{}.json", std::process::id()));
    let out = run(&["tau", "--beta", "1", "--s", "1,2", "--n", "7", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v[0]["value"], "1183");
}

#[test]
fn laplacian_rows_sum_to_zero() {
    let v = json(&["laplacian", "--beta", "2", "--s", "1", "--alpha", "1", "--n", "3"]);
    let rows = v["laplacian"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for r in rows {
        assert_eq!(r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).sum::<i64>(), 0);
    }
}

#[test]
fn examples_replay() {
    let out = run(&["verify", "--examples", "--n-max", "6"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 7);
    assert!(reports.iter().all(|r| r["passed"] == true));
}

#[test]
fn verify_grid_passes() {
    let out = run(&["verify", "--format", "csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| &r[2] == "0"));
}
