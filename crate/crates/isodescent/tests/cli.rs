use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const WORKED: &str = r#"{"field":{"kind":"q-padic","p":5},"n":2,"a":[["1","1"],["1","25"]],"b":[["25","1"],["1","1"]],"u":[["5","0"],["0","1/5"]]}"#;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isodescent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn descend_worked_instance() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "p.json", WORKED);
    let out = bin(&["descend", s(&input)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["v"], serde_json::json!([["0", "1"], ["1", "0"]]));
    assert!(v.get("trace").is_none());

    let sol = dir.path().join("s.json");
    let report = dir.path().join("r.json");
    let out = bin(&[
        "descend",
        s(&input),
        "--trace",
        "--out",
        s(&sol),
        "--report",
        s(&report),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&sol).unwrap()).unwrap();
    let steps: Vec<&str> = written["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["step"].as_str().unwrap())
        .collect();
    assert_eq!(steps.first(), Some(&"LEFT_RIGHT_FACTOR"));
    assert!(steps.contains(&"CORE_IDENTITY"));
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for key in [
        "matrix_ops",
        "valuations",
        "group_ops",
        "uniformizers",
        "max_bits",
        "wall_ms",
    ] {
        assert!(r[key].is_number(), "{key}");
    }
    assert_eq!(r["levels"], 1);

    let out = bin(&["verify", s(&input), "--solution", s(&sol)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("trace replays to v"));
}

#[test]
fn descend_rejects_bad_files() {
    let dir = TempDir::new().unwrap();
    let tampered = file(
        &dir,
        "t.json",
        &WORKED.replace(r#"["1","1"]],"u""#, r#"["1","2"]],"u""#),
    );
    let out = bin(&["descend", s(&tampered)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("u·a·u* = b"));

    let malformed = file(&dir, "m.json", &WORKED.replace(r#""1/5""#, r#""5//3""#));
    let out = bin(&["descend", s(&malformed)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("position"));

    let out = bin(&["descend", s(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_is_deterministic_and_valid() {
    let dir = TempDir::new().unwrap();
    let args = [
        "generate",
        "--field",
        "q-padic:5",
        "--n",
        "2",
        "--levels",
        "+1,-1",
        "--seed",
        "7",
    ];
    let first = bin(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, bin(&args).stdout);
    let path = file(&dir, "g.json", &stdout(&first));
    let out = bin(&["verify", s(&path)]);
    assert_eq!(out.status.code(), Some(0));

    let trivial = bin(&[
        "generate",
        "--field",
        "gaussian-inert:3",
        "--n",
        "1",
        "--levels",
        "0",
    ]);
    assert_eq!(trivial.status.code(), Some(0));
    let p: serde_json::Value = serde_json::from_str(&stdout(&trivial)).unwrap();
    assert_eq!(p["u"], serde_json::json!([["1"]]));

    let neg_first = bin(&[
        "generate",
        "--field",
        "ratfunc-tadic:0",
        "--n",
        "3",
        "--levels",
        "-2,+2",
        "--rounds",
        "1",
    ]);
    assert_eq!(neg_first.status.code(), Some(0), "{}", stderr(&neg_first));
}

#[test]
fn generate_rejects_bad_flags() {
    let unbalanced = bin(&[
        "generate",
        "--field",
        "q-padic:5",
        "--n",
        "2",
        "--levels",
        "1,1",
    ]);
    assert_eq!(unbalanced.status.code(), Some(2));
    let p2 = bin(&["generate", "--field", "q-padic:2", "--n", "2"]);
    assert_eq!(p2.status.code(), Some(2));
    let unknown = bin(&["generate", "--field", "real:5", "--n", "2"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn verify_reports_each_check() {
    let dir = TempDir::new().unwrap();
    let good = file(&dir, "p.json", WORKED);
    let out = bin(&["verify", s(&good)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 6);

    let tampered = file(
        &dir,
        "t.json",
        &WORKED.replace(r#"["1","1"]],"u""#, r#"["1","2"]],"u""#),
    );
    let out = bin(&["verify", s(&tampered)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL u·a·u* = b"));

    let wrong = file(&dir, "s.json", r#"{"v":[["5","0"],["0","1/5"]]}"#);
    let out = bin(&["verify", s(&good), "--solution", s(&wrong)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL v is unimodular"));

    let right = file(&dir, "r.json", r#"{"v":[["0","1"],["1","0"]]}"#);
    assert_eq!(
        bin(&["verify", s(&good), "--solution", s(&right)])
            .status
            .code(),
        Some(0)
    );

    let broken = file(&dir, "b.json", "{\"v\": [[\"0\"");
    assert_eq!(
        bin(&["verify", s(&good), "--solution", s(&broken)])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn bench_csv_shape() {
    let args = [
        "bench",
        "--field",
        "q-padic:5",
        "--range",
        "2..4",
        "--seeds",
        "0,1,2",
    ];
    let out = bin(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,seed,rep,status,mat_ops,valuations,group_ops,uniformizers,levels,max_bits,wall_ms"
    );
    assert_eq!(lines.len(), 10);
    let strip = |t: &str| -> Vec<String> {
        t.lines()
            .skip(1)
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    assert_eq!(strip(&text), strip(&stdout(&bin(&args))));
}
