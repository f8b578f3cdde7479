use std::process::{Command, Output};

use serde_json::Value;

fn lame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lame")).args(args).output().expect("run lame")
}

fn ok(args: &[&str]) -> String {
    let out = lame(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&ok(&a)).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let head = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    (head, rows)
}

fn column(doc: &Value, key: &str) -> Vec<f64> {
    doc["records"].as_array().unwrap().iter().map(|r| r[key].as_f64().unwrap()).collect()
}

#[test]
fn analytic_edges_of_lame_a2() {
    let doc = json(&["edges", "--p", "6", "--q", "0", "--m", "0.5", "--source", "analytic"]);
    let m: f64 = 0.5;
    let d = (1.0 - m + m * m).sqrt();
    let mut want = vec![2.0 + 2.0 * m - 2.0 * d, 1.0 + m, 1.0 + 4.0 * m, 4.0 + m, 2.0 + 2.0 * m + 2.0 * d];
    want.sort_by(f64::total_cmp);
    let got = column(&doc, "energy");
    assert_eq!(got.len(), 5);
    for (g, w) in got.iter().zip(&want) {
        assert!((g - (w - want[0])).abs() < 1e-13);
    }
    assert!((doc["meta"]["potential"]["offset"].as_f64().unwrap() + want[0]).abs() < 1e-13);
}

#[test]
fn free_particle_edges() {
    let doc = json(&["edges", "--p", "0", "--q", "0", "--m", "0", "--source", "numeric", "--e-max", "10"]);
    let got = column(&doc, "energy");
    let want = [0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0];
    assert_eq!(got.len(), want.len());
    assert!(got.iter().zip(want).all(|(g, w)| (g - w).abs() < 1e-8));
}

#[test]
fn gap_delta2_vanishes_at_three_halves() {
    let text = ok(&["scan", "--quantity", "gap-delta2", "--a", "3/2"]);
    let (head, rows) = csv_rows(&text);
    assert_eq!(head, ["m", "delta2"]);
    assert_eq!(rows.len(), 50);
    assert_eq!(rows.last().unwrap()[0], "0.998");
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() == 0.0));
}

#[test]
fn csv_and_json_agree() {
    let args = ["profile", "--p", "63/4", "--q", "3/4", "--m", "0.7", "--grid", "50", "--partner"];
    let (head, rows) = csv_rows(&ok(&args));
    let doc = json(&args);
    let recs = doc["records"].as_array().unwrap();
    assert_eq!(rows.len(), recs.len());
    for (row, rec) in rows.iter().zip(recs) {
        for (k, cell) in head.iter().zip(row) {
            assert_eq!(cell.parse::<f64>().unwrap(), rec[k].as_f64().unwrap(), "{k}");
        }
    }
    // Lossless round trip through the serialized form.
    let again: Value = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(again, doc);
}

#[test]
fn fifteen_significant_digits() {
    let doc = json(&["profile", "--a", "2", "--m", "0.3", "--grid", "7"]);
    for r in doc["records"].as_array().unwrap() {
        let text = r["V"].to_string();
        let digits = text.split(['e', 'E']).next().unwrap().chars().filter(|c| c.is_ascii_digit()).count();
        assert!(digits <= 16, "{text}");
    }
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edges.json");
    ok(&["edges", "--a", "1", "--m", "0.3", "--source", "analytic", "--format", "json", "-o", path.to_str().unwrap()]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let e = column(&doc, "energy");
    assert!((e[1] - 0.7).abs() < 1e-14 && (e[2] - 1.0).abs() < 1e-14);
}

#[test]
fn swapped_input_is_canonicalized() {
    let doc = json(&["edges", "--p", "2", "--q", "6", "--m", "0.5", "--source", "analytic"]);
    let pot = &doc["meta"]["potential"];
    assert_eq!(pot["p"].as_f64(), Some(6.0));
    assert_eq!(pot["swapped"], Value::Bool(false));
    let doc = json(&["profile", "--p", "2", "--q", "6", "--m", "0.5", "--grid", "3"]);
    assert_eq!(doc["meta"]["potential"]["swapped"], Value::Bool(true));
    assert_eq!(column(&doc, "V")[0], 1.0);
}

#[test]
fn partner_verdicts() {
    let doc = json(&["partner", "--p", "2", "--q", "2", "--m", "0.5", "--grid", "20"]);
    assert_eq!(doc["meta"]["verdict"], "self-isospectral");
    assert!(doc["meta"]["shift_identity_deviation"].as_f64().unwrap() < 1e-8);
    let doc = json(&["partner", "--a", "2", "--m", "0.5", "--grid", "20"]);
    assert_eq!(doc["meta"]["verdict"], "not-self-isospectral");
}

#[test]
fn dispersion_of_free_particle() {
    let doc = json(&["dispersion", "--p", "0", "--m", "0", "--e-min", "0.25", "--e-max", "1", "--grid", "4"]);
    let k = column(&doc, "k");
    let e = column(&doc, "E");
    for (k, e) in k.iter().zip(&e) {
        assert!((k - e.sqrt()).abs() < 1e-4, "E = {e}: k = {k}");
    }
}

#[test]
fn parabola_membership() {
    let doc = json(&["parabolas", "--p", "12", "--q", "0"]);
    let n: Vec<u64> = doc["records"].as_array().unwrap().iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert_eq!(n, [3, 4]);
    let doc = json(&["parabolas", "--grid", "5"]);
    assert_eq!(doc["records"].as_array().unwrap().len(), 25);
}

#[test]
fn verify_subset() {
    let doc = json(&["verify", "--criteria", "1,6"]);
    assert_eq!(doc["meta"]["passed"], Value::Bool(true));
    assert_eq!(doc["records"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| lame(args).status.code();
    assert_eq!(code(&["edges", "--a", "1", "--p", "2", "--m", "0.5"]), Some(2));
    assert_eq!(code(&["edges", "--a", "1", "--m", "0.9995"]), Some(2));
    assert_eq!(code(&["edges", "--m", "0.5"]), Some(2));
    assert_eq!(code(&["edges", "--a", "1", "--m", "1/0"]), Some(2));
    assert_eq!(code(&["profile", "--a", "1", "--m", "0.5", "--format", "xml"]), Some(2));
    assert_eq!(code(&["launch"]), Some(2));
    assert_eq!(code(&["verify", "--criteria", "11"]), Some(2));
    assert_eq!(code(&["partner", "--p", "7", "--q", "1", "--m", "0.5"]), Some(2));
    assert_eq!(code(&["dispersion", "--p", "6", "--m", "0.5", "--e-min", "1e12", "--e-max", "2e12", "--grid", "2"]), Some(3));
}
