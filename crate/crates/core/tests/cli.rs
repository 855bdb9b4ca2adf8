use polarkit::cli::{run, CommandResult};
use serde_json::{json, Value};

fn call(args: &[&str], stdin: &str) -> CommandResult {
    let argv = std::iter::once("polarkit").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn json_out(r: &CommandResult) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("bad JSON {e}: {}", r.stdout))
}

const LINE2: &str = r#"{"breakpoints":[["0","0"]],"tail":{"kind":"slope","value":"2"}}"#;

#[test]
fn splice_of_upper_envelope() {
    let r = call(&["construct", "splice", "--q", "5/4", "--of", "envelope-upper", "--mode", "rational"], "");
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let v = json_out(&r);
    assert_eq!(v["breakpoints"], json!([["0", "0"], ["5/4", "3/4"]]));
    assert_eq!(v["tail"], json!({"kind": "slope", "value": "5/3"}));
}

#[test]
fn line_two_is_not_self_polar() {
    let r = call(&["verify", "--self-polar"], LINE2);
    assert_eq!(r.exit_code, 1);
    let v = json_out(&r);
    assert_eq!(v["is_self_polar"], json!(false));
    assert_eq!(v["witness"]["x"].as_f64(), Some(1.0));
    assert_eq!(v["witness"]["gap"].as_f64(), Some(1.5));
}

#[test]
fn gaussian_legendre_product() {
    let gauss = r#"{"type":"power","coefficient":0.5,"exponent":2}"#;
    let r = call(&["santalo", "--n", "2", "--transform", "legendre"], gauss);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let v = json_out(&r);
    let p = v["product"].as_f64().unwrap();
    let target = (2.0 * std::f64::consts::PI).powi(2);
    assert!((p - target).abs() / target < 1e-8, "{p}");
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(call(&["frobnicate"], "").exit_code, 2);
    assert_eq!(call(&["transform", "--op", "polar"], "{not json").exit_code, 2);
    let r = call(&["transform", "--op", "polar"], r#"{"breakpoints":[["0","1"]],"tail":{"kind":"infinite"}}"#);
    assert_eq!(r.exit_code, 2);
    assert!(!r.stderr.is_empty());
}

#[test]
fn csv_round_trip_is_bit_exact() {
    let inputs = [
        r#"{"breakpoints":[["0","0"],["1/3","0"],["5/4","3/4"]],"tail":{"kind":"slope","value":"5/3"}}"#,
        r#"{"breakpoints":[["0","0"],["7/2","0"]],"tail":{"kind":"infinite"}}"#,
        LINE2,
    ];
    for text in inputs {
        let canon = call(&["transform", "--op", "polar"], text);
        let canon = call(&["transform", "--op", "polar"], &canon.stdout);
        assert_eq!(canon.exit_code, 0, "{}", canon.stderr);
        let csv = call(&["plot", "--csv"], &canon.stdout);
        assert_eq!(csv.exit_code, 0, "{}", csv.stderr);
        let back = call(&["construct", "from-csv"], &csv.stdout);
        assert_eq!(back.exit_code, 0, "{}", back.stderr);
        assert_eq!(back.stdout, canon.stdout);
    }
}

#[test]
fn involution_over_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.json"), LINE2).unwrap();
    let b = call(&["construct", "envelope", "--q", "13/5", "--which", "lower"], "");
    std::fs::write(dir.path().join("b.json"), &b.stdout).unwrap();
    let c = call(&["construct", "indicator", "--a", "3/7"], "");
    std::fs::write(dir.path().join("c.json"), &c.stdout).unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();

    let d = dir.path().to_str().unwrap();
    let r = call(&["verify", "--involution", "--dir", d], "");
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let v = json_out(&r);
    assert_eq!(v["all_passed"], json!(true));
    assert_eq!(v["results"].as_array().unwrap().len(), 3);

    std::fs::write(dir.path().join("d.json"), r#"{"breakpoints":[]}"#).unwrap();
    assert_eq!(call(&["verify", "--involution", "--dir", d], "").exit_code, 2);
}

#[test]
fn order_reversal_pair() {
    let line1 = r#"{"breakpoints":[["0","0"]],"tail":{"kind":"slope","value":"1"}}"#;
    let r = call(&["verify", "--order-reversal"], &format!("[{line1},{LINE2}]"));
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    assert_eq!(call(&["verify", "--order-reversal"], &format!("[{LINE2},{line1}]")).exit_code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["search", "--knots", "1", "--budget", "60", "--seed", "7"];
    assert_eq!(call(&args, "").stdout, call(&args, "").stdout);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_polarkit");
    let out = std::process::Command::new(exe)
        .args(["construct", "line", "--beta", "1/2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tail"], json!({"kind": "slope", "value": "1/2"}));
    let bad = std::process::Command::new(exe).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
