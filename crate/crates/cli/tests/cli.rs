use std::process::{Command, Output};

fn qwkb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwkb"))
        .args(args)
        .env_remove("QWKB_GOLDEN_DIR")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = qwkb(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    qwkb(args).status.code().expect("exited normally")
}

/// Data rows of a CSV output, split into cells.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(csv.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn explicit_coefficient_row() {
    let r = rows(&ok(&["coeff", "b", "5"]));
    assert_eq!(r.len(), 6);
    assert_eq!(r[1][1], "3.53677651315322968375297251938920804521021e-02");
    assert_eq!(r[1][2], "1.21585e+00");
    assert_eq!(r[0][2], "");
}

#[test]
fn implicit_coefficient_ratio_column() {
    let r = rows(&ok(&["coeff", "a", "2"]));
    assert_eq!(r[2][1], "2.14843750000000000000000000000000000000000e-02");
    assert_eq!(r[2][2], "1.58680e+00");
}

#[test]
fn summation_constants_are_exact() {
    let r = rows(&ok(&["coeff", "K", "1"]));
    assert_eq!(
        r,
        vec![
            vec!["0".to_string(), "1".into()],
            vec!["1".into(), "-1/12".into()]
        ]
    );
}

#[test]
fn subdominant_corrections_with_scanned_orders() {
    let r = rows(&ok(&["eigen", "0..10", "sd"]));
    assert_eq!(r.len(), 11);
    let orders: Vec<usize> = r.iter().map(|row| row[2].parse().unwrap()).collect();
    assert_eq!(&orders[..4], &[2, 7, 11, 19]);
    for (n, &l) in orders.iter().enumerate().skip(3) {
        assert_eq!(l, 4 * n + 7);
    }
    assert_eq!(r[0][4], "4.98423055820686687647434545538733033938247e-02");
    assert_eq!(r[1][4], "-4.25176939431772011755051955474252988393987e-03");
    assert_eq!(r[3][4], "-1.12467805686987628050920515996642836276596e-05");
}

#[test]
fn order_scan_reproduces_the_level_five_block() {
    let r = rows(&ok(&["eigen", "5", "wkb", "--scan", "L-2..L+2"]));
    let expected = [
        [
            "11",
            "25",
            "2.4857439e-08",
            "-4.9613663e-12",
            "-3.3805929e-14",
        ],
        [
            "12",
            "26",
            "2.4862367e-08",
            "-3.3805755e-14",
            "-3.3805743e-14",
        ],
        [
            "13",
            "27",
            "2.4866722e-08",
            "4.3213208e-12",
            "-3.3805755e-14",
        ],
        [
            "14",
            "28",
            "2.4861765e-08",
            "-6.3605332e-13",
            "-3.3805994e-14",
        ],
        [
            "15",
            "29",
            "2.4855724e-08",
            "-6.6769826e-12",
            "-3.3806373e-14",
        ],
    ];
    assert_eq!(r.len(), 5);
    for (row, exp) in r.iter().zip(expected) {
        assert_eq!(row[0], "5");
        assert_eq!(&row[1..], &exp);
    }
    // an absolute window names the same orders
    assert_eq!(
        ok(&["eigen", "5", "cwkb", "--scan", "11..15"]),
        ok(&["eigen", "5", "wkb", "--scan", "L-2..L+2"])
    );
}

#[test]
fn corrected_ground_state_beats_wkb() {
    let w = rows(&ok(&["eigen", "0", "wkb"]));
    let c = rows(&ok(&["eigen", "0", "cwkb"]));
    assert!(num(&c[0][5]).abs() < num(&w[0][5]).abs());
}

#[test]
fn hyperasymptotic_sums() {
    let r = rows(&ok(&["sum", "1..10", "hyp"]));
    assert_eq!(r.len(), 10);
    assert!(num(&r[0][5]).abs() < 2e-4);
    assert_eq!(r[9][2], "23");
    assert!(num(&r[9][5]).abs() < 1e-22);
    let six = ok(&["sum", "10", "hyp", "--error-digits", "6"]);
    assert_eq!(rows(&six)[0][5], "-2.03952e-23");
}

#[test]
fn subdominant_sum_columns() {
    let r = rows(&ok(&["sum", "1..10", "sd", "--digits", "12"]));
    assert_eq!(r[0], ["1", "4.03447966131e-03", "4.03383052423e-03"]);
    assert_eq!(r[1], ["2", "-2.17289733012e-04", "-2.17287572833e-04"]);
    assert_eq!(r[4], ["5", "2.37706662505e-08", "2.37706614235e-08"]);
    assert_eq!(r[9], ["10", "-4.51598363452e-15", "-4.51598360000e-15"]);
}

#[test]
fn csv_and_json_agree() {
    for args in [
        &["eigen", "0..3", "cwkb"][..],
        &["sum", "2..4", "cswkb"],
        &["coeff", "h", "3"],
    ] {
        let csv = ok(args);
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let json: serde_json::Value = serde_json::from_str(&ok(&json_args)).unwrap();
        let mut reader = csv::Reader::from_reader(csv.as_bytes());
        let header: Vec<String> = reader
            .headers()
            .unwrap()
            .iter()
            .map(str::to_string)
            .collect();
        let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        let objects = json.as_array().unwrap();
        assert_eq!(records.len(), objects.len());
        for (rec, obj) in records.iter().zip(objects) {
            for (col, cell) in header.iter().zip(rec.iter()) {
                let v = &obj[col];
                let as_text = match v {
                    serde_json::Value::Null => String::new(),
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                assert_eq!(as_text, cell, "{args:?} column {col}");
            }
        }
    }
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["eigen", "0..4", "bcwkb", "--digits", "30"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let path = std::env::temp_dir().join(format!("qwkb-cli-{}.csv", std::process::id()));
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &p]);
    assert_eq!(ok(&with_out), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn explicit_orders_override_strategies() {
    let r = rows(&ok(&["eigen", "6", "cwkb"]));
    assert_eq!((r[0][2].as_str(), r[0][3].as_str()), ("14", "31"));
    let r = rows(&ok(&[
        "eigen",
        "6",
        "cwkb",
        "--order",
        "12",
        "--sd-order",
        "30",
    ]));
    assert_eq!((r[0][2].as_str(), r[0][3].as_str()), ("12", "30"));
    // the large-order estimate agrees with the scan at n = 5..10
    assert_eq!(
        ok(&["eigen", "5..10", "wkb", "--strategy", "asym"]),
        ok(&["eigen", "5..10", "wkb"])
    );
    let r = rows(&ok(&["eigen", "4", "cwkb", "--strategy", "empirical"]));
    assert_eq!(r[0][2], "10");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["coeff", "a", "41"]), 3);
    assert_eq!(code(&["coeff", "f", "5"]), 3);
    assert_eq!(code(&["coeff", "a", "3", "--digits", "80"]), 2);
    assert_eq!(
        code(&[
            "coeff",
            "a",
            "3",
            "--precision-bits",
            "512",
            "--digits",
            "80"
        ]),
        0
    );
    assert_eq!(code(&["eigen", "0", "sd", "--strategy", "asym"]), 2);
    assert_eq!(code(&["sum", "3", "swkb", "--strategy", "asym"]), 2);
    assert_eq!(code(&["sum", "0", "hyp"]), 2);
    assert_eq!(code(&["eigen", "25", "wkb", "--scan", "L-1..L+1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["coeff", "z", "3"]), 2);
}

#[test]
fn verify_reports_documented_drift() {
    let out = qwkb(&["verify", "coeffs"]);
    assert_eq!(out.status.code(), Some(1));
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    let status = |table: &str, col: &str| {
        r.iter()
            .find(|row| row[0] == table && row[1] == col)
            .map(|row| row[7].clone())
            .unwrap()
    };
    for (t, c) in [
        ("S2", "a_n"),
        ("S2", "ratio"),
        ("S3", "exact a_n"),
        ("S5", "b_n"),
        ("S14", "c_n"),
        ("S16", "q_n"),
    ] {
        assert_eq!(status(t, c), "pass", "{t} {c}");
    }
    assert_eq!(status("S8", "d_n"), "documented-drift");
    // every mismatch is inside the documented region
    assert!(r.iter().all(|row| row[3] == row[4]));
    assert_eq!(code(&["verify", "coeffs", "--allow-documented"]), 0);
}

#[test]
fn verify_tables_of_errors() {
    for suite in ["eigen", "sums"] {
        let r = rows(&ok(&["verify", suite, "--allow-documented"]));
        for row in r
            .iter()
            .filter(|row| ["S21", "S22"].contains(&row[0].as_str()))
        {
            assert_eq!(
                (row[2].as_str(), row[7].as_str()),
                ("30", "pass"),
                "{row:?}"
            );
        }
    }
}

#[test]
fn verify_oracle_uses_the_cache() {
    let dir = std::env::temp_dir().join(format!("qwkb-cli-oracle-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let r = rows(&ok(&["verify", "oracle", "--cache-dir", d]));
    assert_eq!(r[0][..4], ["S1", "eigenvalue", "20", "0"]);
    assert!(num(&r[0][5]) <= 1e-40);
    assert!(std::fs::read_dir(&dir).unwrap().count() == 1);
    assert_eq!(
        ok(&["verify", "oracle", "--cache-dir", d]),
        ok(&["verify", "oracle", "--cache-dir", d])
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_golden_data_is_a_configuration_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_qwkb"))
        .args(["verify", "sums"])
        .env("QWKB_GOLDEN_DIR", "/nonexistent/qwkb-golden")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
