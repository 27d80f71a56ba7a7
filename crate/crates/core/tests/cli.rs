use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bim::format::MatrixFile;
use bim::FieldSpec;
use bim::Matrix;
use tempfile::TempDir;

fn bim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.bim");
    let b = dir.path().join("b.bim");
    for out in [&a, &b] {
        let o = bim(&["generate", "--n", "6", "--p", "2", "--field", "gf(2)", "--seed", "7", "--out", path_str(out)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).contains("6x6"));
        assert!(stdout(&o).contains("2 extension steps"));
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    assert!(String::from_utf8(bytes).unwrap().starts_with("bim v1\ngf(2)\n6 6 2\n"));
}

#[test]
fn generate_to_stdout() {
    let o = bim(&["generate", "--n", "4", "--p", "2", "--field", "gf(3)"]);
    assert_eq!(o.status.code(), Some(0));
    let file = MatrixFile::parse(&stdout(&o)).unwrap();
    assert_eq!(file.matrix.rows(), 4);
    assert!(stderr(&o).contains("seed 24301"));
}

#[test]
fn generate_validation_errors() {
    let o = bim(&["generate", "--n", "7", "--p", "2", "--field", "gf(2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p must divide n"), "{}", stderr(&o));

    for args in [
        ["generate", "--n", "4", "--p", "1", "--field", "gf(2)"],
        ["generate", "--n", "4", "--p", "2", "--field", "gf(4)"],
        ["generate", "--n", "4", "--p", "2", "--field", "bogus"],
        ["generate", "--n", "x", "--p", "2", "--field", "gf(2)"],
    ] {
        assert_eq!(bim(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(bim(&[]).status.code(), Some(2));
    assert_eq!(bim(&["--help"]).status.code(), Some(0));
}

#[test]
fn generate_io_error() {
    let o = bim(&["generate", "--n", "4", "--p", "2", "--field", "gf(2)", "--out", "/nonexistent/dir/m.bim"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_pipeline() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.json");
    let o =
        bim(&["generate", "--n", "12", "--p", "3", "--field", "gf(2^4)", "--format", "json", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["field"], "gf(2^4)");
    assert_eq!(v["p"], 3);

    let o = bim(&["verify", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("block invertible square: yes"));

    let o = bim(&["verify", "--json", path_str(&out)]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["is_block_invertible_square"], true);
    assert_eq!(report["block_verdicts"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_identity_fails() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("id.bim");
    MatrixFile::new(Matrix::identity(4, FieldSpec::prime(2).unwrap()), None)
        .save(&path, bim::format::Format::Text)
        .unwrap();
    let o = bim(&["verify", "--p", "2", path_str(&path)]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("failing blocks: (0,1) (1,0)"), "{text}");
    assert!(text.starts_with("✓ ✗\n✗ ✓\n"));

    let o = bim(&["verify", "--p", "2", "--quiet", path_str(&path)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!stdout(&o).contains('✓'));

    let o = bim(&["verify", "--p", "3", path_str(&path)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("block size must divide dimensions"), "{}", stderr(&o));

    // no --p and none recorded in the file
    assert_eq!(bim(&["verify", path_str(&path)]).status.code(), Some(2));
}

#[test]
fn verify_bad_files() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.bim");
    fs::write(&path, "bim v1\ngf(2)\n2 2\n1 0\n").unwrap();
    assert_eq!(bim(&["verify", "--p", "2", path_str(&path)]).status.code(), Some(2));
    fs::write(&path, "hello").unwrap();
    assert_eq!(bim(&["verify", "--p", "2", path_str(&path)]).status.code(), Some(2));
    let missing = dir.path().join("missing.bim");
    assert_eq!(bim(&["verify", "--p", "2", path_str(&missing)]).status.code(), Some(1));
}

#[test]
fn verify_non_square_strip() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("strip.bim");
    fs::write(&path, "bim v1\ngf(2)\n2 4 2\n0 1 1 1\n1 1 1 0\n").unwrap();
    let o = bim(&["verify", path_str(&path)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("whole matrix invertible: not square"));
}

#[test]
fn count_outputs() {
    let o = bim(&["count", "--p", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("6"));
    assert!(text.contains("acceptance probability: 6/16 = 3/8 = 0.375"), "{text}");

    assert_eq!(stdout(&bim(&["count", "--p", "1", "--q", "2"])).lines().next(), Some("1"));
    assert_eq!(stdout(&bim(&["count", "--p", "3", "--q", "2"])).lines().next(), Some("168"));
    assert_eq!(stdout(&bim(&["count", "--p", "2", "--q", "5"])).lines().next(), Some("480"));
    assert_eq!(bim(&["count", "--p", "2", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn kron_outcomes() {
    let o = bim(&["kron", "--p", "2", "--field", "gf(2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no invertible 2x2 matrix with all entries nonzero exists"));

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("k.bim");
    let o = bim(&["kron", "--p", "2", "--field", "gf(3)", "--seed", "1", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = bim(&["verify", path_str(&out)]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(MatrixFile::load(&out).unwrap().matrix.rows(), 4);

    let o = bim(&["kron", "--p", "4", "--field", "gf(2^16)", "--max-trials", "0"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("inconclusive"));

    let o = bim(&["kron", "--p", "5", "--field", "gf(2)", "--max-trials", "20"]);
    assert_eq!(o.status.code(), Some(4));

    assert_eq!(bim(&["kron", "--p", "1", "--field", "gf(3)"]).status.code(), Some(2));
}
