use std::process::{Command, Output};

fn modva(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modva")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gram_json_for_sl2() {
    let o = modva(&["gram", "--carrier", "affine:sl2", "--p", "5", "--level", "1", "--max-degree", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["matrix"], serde_json::json!([[1]]));
    // Degree 1 is -<a,b> in the basis e, h, f.
    assert_eq!(rows[1]["matrix"], serde_json::json!([[0, 0, 4], [0, 3, 0], [4, 0, 0]]));
    assert_eq!(rows[1]["rank"], 3);
}

#[test]
fn gram_text_shows_the_virasoro_radical() {
    let o = modva(&["gram", "--carrier", "virasoro", "--p", "7", "--c", "0", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("degree 2: dim 1, rank 0"), "{out}");
    assert!(out.contains("radical: [1]"), "{out}");
}

#[test]
fn gram_csv_has_one_line_per_entry() {
    let o = modva(&["gram", "--max-degree", "2", "--format", "csv"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("degree,row,col,value"));
    // 1 + 3^2 + 9^2 entries for sl2 up to degree 2.
    assert_eq!(lines.count(), 1 + 9 + 81);
}

#[test]
fn formspace_is_one_and_stabilized() {
    let o = modva(&["formspace", "--carrier", "virasoro", "--p", "7", "--c", "3", "--max-degree", "6"]);
    assert_eq!(stdout(&o), "1\nstabilized true\n");
    let o = modva(&["formspace", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["dim"].as_u64(), v["stabilized"].as_bool()), (Some(1), Some(true)));
}

#[test]
fn dims_of_the_level_zero_quotient() {
    let o = modva(&["dims", "--level", "0", "--max-degree", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "degree,dim,carrier_dim\n0,1,1\n1,0,3\n2,0,9\n3,0,22\n");
}

#[test]
fn normal_form_reorders_generators() {
    let o = modva(&["normal-form", "E^(1) D^(1)", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "D^(1) E^(1) - H^(1)\n");
    let o = modva(&["normal-form", "H^(1) H^(1)", "--p", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["p"], 5);
    assert_eq!(v["normal_form"], "2 H^(2) + H^(1)");
}

#[test]
fn verify_single_suite_in_every_format() {
    let o = modva(&["verify", "--suite", "symmetry", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "symmetry");
    assert_eq!(row[1], row[2]);
    assert_eq!(row[3], "0");
    let o = modva(&["verify", "--suite", "conj-E", "--carrier", "virasoro", "--p", "7"]);
    assert!(stdout(&o).starts_with("conj-E"), "{}", stdout(&o));
    let o = modva(&["dual-check", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["suite"], "dual-module");
    assert_eq!(v[0]["failures"], serde_json::json!([]));
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        vec!["gram", "--p", "4"],
        vec!["gram", "--p", "2"],
        vec!["gram", "--carrier", "affine:e8"],
        vec!["gram", "--carrier", "sl2"],
        vec!["gram", "--max-degree", "13"],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--bound", "0"],
        vec!["normal-form", "E^(1) +"],
        vec!["gram", "--workers", "0"],
        vec!["frobnicate"],
        vec!["gram", "--format", "yaml"],
    ] {
        let o = modva(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let o = modva(&["gram", "--p", "9"]);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn lie_spec_from_a_json_file() {
    let dir = std::env::temp_dir().join(format!("modva-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("heis.json");
    std::fs::write(
        &good,
        r#"{"basis": ["x", "y", "z"], "brackets": [["x", "y", {"z": 1}]],
            "form": [[0, 1, 0], [1, 0, 0], [0, 0, 0]]}"#,
    )
    .unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"basis": ["e", "h", "f"], "brackets": [["e", "f", {"h": 1}]], "form": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#)
        .unwrap();
    let carrier = format!("affine:{}", good.display());
    let o = modva(&["dims", "--carrier", &carrier, "--max-degree", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("degree,dim,carrier_dim\n0,1,1\n1,"));
    let o = modva(&["verify", "--suite", "invariance", "--carrier", &carrier, "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = modva(&["gram", "--carrier", &format!("affine:{}", bad.display())]);
    assert_eq!(o.status.code(), Some(2));
    let o = modva(&["gram", "--carrier", &format!("affine:{}", dir.join("missing.json").display())]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn workers_do_not_change_reports() {
    let run = |w: &str| stdout(&modva(&["verify", "--suite", "invariance", "--format", "json", "--seed", "3", "--workers", w]));
    assert_eq!(run("1"), run("2"));
}
