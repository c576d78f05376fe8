use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const HALF: &str = r#"{"lie_type": "A", "rank": 1, "weights": [[1], [1]], "points": ["0", "1"],
    "tuple": [["-1/2", "1"]], "coordinates": [["1/2"]]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn miura(args: &[&str], file: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_miura"))
        .args(args)
        .arg(file)
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn seed(lie_type: &str, rank: usize) -> String {
    let ones = vec![r#"["1"]"#; rank].join(", ");
    format!(r#"{{"lie_type": "{lie_type}", "rank": {rank}, "tuple": [{ones}]}}"#)
}

#[test]
fn check_reports_fertility_and_criticality() {
    let dir = TempDir::new().unwrap();
    let out = miura(&["check"], &write(&dir, "half.json", HALF));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["fertile"], true);
    assert_eq!(r["generic"], true);
    assert_eq!(r["critical"], true);
    assert_eq!(r["directions"][0]["canonical"], serde_json::json!(["0", "0", "1"]));
    assert_eq!(r["directions"][0]["wronskian_target"], serde_json::json!(["0", "-1", "1"]));

    let out = miura(&["check"], &write(&dir, "seed.json", &seed("B", 2)));
    assert_eq!(out.status.code(), Some(0));
    for d in report(&out)["directions"].as_array().unwrap() {
        assert_eq!(d["canonical"], serde_json::json!(["0", "1"]));
    }
}

#[test]
fn infertile_tuple_exits_one() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.json", r#"{"lie_type": "A", "rank": 2, "tuple": [["0", "1"], ["0", "1"]]}"#);
    let out = miura(&["check"], &file);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["fertile"], false);
    assert_eq!(r["generic"], false);
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.json", &HALF.replace("\"1\"]", "\"1//2\"]"));
    let out = miura(&["check"], &file);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("points[1]"));

    let file = write(&dir, "syntax.json", "{\"lie_type\": \"A\",\n \"rank\": }");
    let out = miura(&["check"], &file);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = miura(&["descend", "--direction", "3"], &write(&dir, "half.json", HALF));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn populate_tables() {
    let dir = TempDir::new().unwrap();
    for (lie_type, rank, rows) in [("A", 1, 2), ("A", 2, 6), ("B", 2, 8)] {
        let out = miura(&["populate"], &write(&dir, "seed.json", &seed(lie_type, rank)));
        assert_eq!(out.status.code(), Some(0));
        let r = report(&out);
        let cells = r["cells"].as_array().unwrap();
        assert_eq!(cells.len(), rows, "{lie_type}{rank}");
        for cell in cells {
            assert_eq!(cell["length"], cell["word"].as_array().unwrap().len());
        }
    }
    let out = miura(&["populate", "--max-cells", "1"], &write(&dir, "seed.json", &seed("A", 1)));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn descend_one_step() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "half.json", HALF);
    let r = report(&miura(&["descend", "--direction", "1"], &file));
    assert_eq!(r["tuple"], serde_json::json!([["0", "0", "1"]]));
    assert_eq!(r["parameter"], "(1:0)");
    let r = report(&miura(&["descend", "--direction", "1", "--param", "-1/2"], &file));
    assert_eq!(r["tuple"], serde_json::json!([["1/4", "-1/2", "1"]]));
    assert_eq!(r["degrees"], serde_json::json!([2]));
}

#[test]
fn solve_builders() {
    let dir = TempDir::new().unwrap();
    let out = miura(&["solve"], &write(&dir, "seed.json", &seed("A", 1)));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verification"], "DY=0: exact");
    assert_eq!(r["entries"][0][0], serde_json::json!({"(0)": "1"}));
    assert_eq!(r["entries"][0][1], serde_json::json!({}));
    assert_eq!(r["entries"][1][0], serde_json::json!({"(0)": "-x"}));
    assert_eq!(r["entries"][1][1], serde_json::json!({"(0)": "1"}));

    let r = report(&miura(&["solve"], &write(&dir, "half.json", HALF)));
    assert_eq!(r["rows"], 2);
    assert_eq!(r["exponents_in_lattice"], true);
    for row in r["entries"].as_array().unwrap() {
        for entry in row.as_array().unwrap() {
            for key in entry.as_object().unwrap().keys() {
                assert!(key == "(1/2)" || key == "(0)" || key == "(1)", "{key}");
            }
        }
    }

    let r = report(&miura(&["solve"], &write(&dir, "b2.json", &seed("B", 2))));
    assert_eq!(r["builder"], "bc");
    assert_eq!(r["bc_sign"], "plus");
    assert_eq!(r["rows"], 4);

    let r = report(&miura(&["solve", "--path", "1,2,1"], &write(&dir, "a2.json", &seed("A", 2))));
    assert_eq!(r["builder"], "general");
    assert_eq!(r["cols"], 1);

    let out = miura(&["solve"], &write(&dir, "g2.json", &seed("G", 2)));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--path"));
    let out = miura(&["solve", "--rep", "sp"], &write(&dir, "a2.json", &seed("A", 2)));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_paths() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "b2.json", &seed("B", 2));
    let out = miura(&["verify", "--path", "1,2,1,2", "--param", "0,1,-2,1:3"], &file);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["gauge_squares"], 2);
    assert_eq!(r["parameters"][3], "(1:3)");
    let out = miura(&["verify", "--path", "1,2", "--param", "0"], &file);
    assert_eq!(out.status.code(), Some(2));
    let out = miura(&["verify", "--path", "1", "--param", "0:1"], &file);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "half.json", HALF);
    let target = dir.path().join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_miura"))
        .args(["check", "--output"])
        .arg(&target)
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(r["command"], "check");
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn echo_round_trips_and_reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "half.json", HALF);
    let first = miura(&["solve"], &file);
    let echoed = report(&first)["problem"].clone();
    let file2 = write(&dir, "echo.json", &serde_json::to_string(&echoed).unwrap());
    let second = miura(&["solve"], &file2);
    assert_eq!(report(&second)["problem"], echoed);
    assert_eq!(without_timing(report(&first)), without_timing(report(&second)));
    let third = miura(&["solve"], &file);
    let strip = |out: &Output| {
        String::from_utf8(out.stdout.clone())
            .unwrap()
            .lines()
            .filter(|l| !l.contains("\"elapsed_ms\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&first), strip(&third));
}
