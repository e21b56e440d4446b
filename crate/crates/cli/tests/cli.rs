use std::process::{Command, Output};

fn fig8(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fig8"))
        .args(args)
        .env_remove("FIG8_PRECISION_BITS")
        .output()
        .expect("failed to run fig8")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_thirteen() {
    let o = fig8(&["eval", "--r", "1", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("J_3(1.0) = 13\n"), "{}", stdout(&o));
}

#[test]
fn eval_rational_and_imaginary() {
    let o = fig8(&["eval", "--r", "18/20", "--N", "90", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("N,r_kind,r,value,sign,log_abs,s_N,bits"));
    assert!(lines.next().unwrap().starts_with("90,rational,9/10,0.72427270633824"));

    let o = fig8(&["eval", "--r", "i1", "--N", "2"]);
    // 1 + (2cosh 2π - 2cosh π)
    let want = 1.0 + 2.0 * (2.0 * std::f64::consts::PI).cosh() - 2.0 * std::f64::consts::PI.cosh();
    let got: f64 = stdout(&o).lines().next().unwrap().rsplit(' ').next().unwrap().parse().unwrap();
    assert!((got - want).abs() < 1e-9 * want);
}

#[test]
fn predict_uncovered() {
    let o = fig8(&["predict", "--r", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("regime: uncovered"));
}

#[test]
fn verify_appendix_passes() {
    let o = fig8(&["verify", "--suite", "appendix"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_failure_exits_one() {
    // the lower-band check at floor(A'') fails at this N
    let o = fig8(&["verify", "--suite", "local-maxima", "--r", "1.2", "--N", "2000"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["eval", "--r", "9/0", "--N", "3"][..],
        &["eval", "--r", "nope", "--N", "3"],
        &["scan", "--r", "1", "--N", "0"],
        &["scan", "--r", "1", "--N", "20000"],
        &["verify", "--suite", "sandwich", "--r", "0.5"],
        &["table", "--r", "0.5", "--N", "10"],
        &["eval", "--r", "1", "--N", "3", "--bits", "8"],
        &["frobnicate"],
    ] {
        let o = fig8(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn precision_env_var() {
    let o = Command::new(env!("CARGO_BIN_EXE_fig8"))
        .args(["eval", "--r", "1", "--N", "3", "--format", "json"])
        .env("FIG8_PRECISION_BITS", "300")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["bits"], 300);
}

#[test]
fn csv_header_and_columns() {
    let o = fig8(&["scan", "--r", "9/10", "--N", "9:27:9,28", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["N", "r_kind", "r", "mode", "log_abs", "s_N", "prediction", "abs_error", "subseq_class"]
    );
    let classes: Vec<String> = rdr.records().map(|r| r.unwrap()[8].to_string()).collect();
    assert_eq!(classes, ["multiple-of-q", "multiple-of-q", "multiple-of-q", "non-multiple"]);
}

#[test]
fn json_round_trips_exactly() {
    let o = fig8(&["scan", "--r", "1.05", "--N", "50:500:50", "--format", "json"]);
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["meta"]["regime"], "main-irrational");
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    for row in rows {
        let s = row["s_N"].as_f64().unwrap();
        // shortest round-trip text reparses to the same bits
        assert_eq!(format!("{s:?}").parse::<f64>().unwrap().to_bits(), s.to_bits());
        assert!(text.contains(&format!("\"s_N\": {s:?},")));
    }
    // a second run is byte-identical
    assert_eq!(stdout(&fig8(&["scan", "--r", "1.05", "--N", "50:500:50", "--format", "json"])), text);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("fig8-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let o = fig8(&["scan", "--r", "1", "--N", "1e3:1e5:x10", "--mode", "product-only", "--format", "csv", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sign_table_and_imaginary() {
    let o = fig8(&["table", "--r", "6/5", "--N", "60"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    let o = fig8(&["imaginary", "--s", "1", "--N", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("imaginary-above"));
}
