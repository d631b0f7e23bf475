use ncop::cli::run;
use std::process::Command;

fn ncop(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["ncop"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(args: &[&str], file: &str) {
    let (code, out, err) = ncop(args);
    assert_eq!(code, 0, "{err}");
    let want = std::fs::read_to_string(format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    assert_eq!(out, want, "{file}");
}

#[test]
fn goldens() {
    golden(&["dims", "ncHyperCom", "--n-max", "7", "--brute-max", "5", "--format", "csv"], "dims_hypercom.csv");
    golden(&["correlators", "--n", "4", "--format", "csv"], "correlators_4.csv");
    golden(&["polytope", "loday", "--n", "4", "--check", "minkowski,missing-basis"], "loday_4.md");
    golden(&["fan", "--n", "4", "--format", "json"], "fan_4.json");
    golden(&["betti", "--n", "6"], "betti_6.md");
    golden(&["zoo", "relations", "ncHyperCom", "--cap", "4", "--format", "csv"], "hypercom_relations.csv");
}

#[test]
fn catalan_row() {
    let (code, out, _) = ncop(&["dims", "ncHyperCom", "--n-min", "2", "--n-max", "7", "--brute-max", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "total,1,2,5,14,42,132"), "{out}");
}

#[test]
fn correlator_rows() {
    let (code, out, _) = ncop(&["correlators", "--n", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ends_with(",1")));
    for n in 2..=7 {
        let (_, out, _) = ncop(&["correlators", "--n", &n.to_string(), "--format", "csv"]);
        assert_eq!(out.lines().count() - 1, 1 << (n - 2));
    }
}

#[test]
fn loday_checks_pass() {
    for n in ["3", "4", "5"] {
        let (code, out, _) = ncop(&["polytope", "loday", "--n", n, "--check", "minkowski,missing-basis", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.contains("minkowski,PASS") && out.contains("missing-basis,PASS"));
    }
}

#[test]
fn seeded_output_is_deterministic() {
    for args in [
        vec!["brick", "sample", "--n", "5", "--seed", "17", "--format", "json"],
        vec!["borjeson", "--fixture", "odd_square_zero", "--degree", "1", "--seed", "3"],
        vec!["givental", "--fixture", "upper_triangular", "--k-max", "1", "--format", "csv"],
    ] {
        let a = ncop(&args);
        let b = ncop(&args);
        assert_eq!(a.0, 0, "{}", a.2);
        assert_eq!(a, b);
    }
    let x = ncop(&["brick", "sample", "--n", "5", "--seed", "1"]).1;
    let y = ncop(&["brick", "sample", "--n", "5", "--seed", "2"]).1;
    assert_ne!(x, y);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(ncop(&["frobnicate"]).0, 2);
    assert_eq!(ncop(&["dims", "ncHyperCom", "--bogus"]).0, 2);
    assert_eq!(ncop(&["dims", "ncHyperCom", "--format", "xml"]).0, 2);
    assert_eq!(ncop(&["certify", "10"]).0, 2);
    let (code, _, err) = ncop(&["dims", "NotAnOperad"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown name"));
    assert_eq!(ncop(&["borjeson", "--fixture", "missing"]).0, 2);
    assert_eq!(ncop(&["--help"]).0, 0);
}

#[test]
fn resource_guards() {
    let (code, out, err) = ncop(&["correlators", "--n", "30"]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.contains("resource guard"), "{err}");
    let (code, _, err) = ncop(&["givental", "--cap", "12"]);
    assert_eq!(code, 3);
    assert!(err.contains("exceeds cap"), "{err}");
}

#[test]
fn external_fixture_file() {
    let dir = std::env::temp_dir().join(format!("ncop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("line.json");
    std::fs::write(&good, r#"{"name":"line","dims":{"0":2},"product":[[[0,0],0,"1"],[[0,1],1,"1"]]}"#).unwrap();
    let (code, out, err) = ncop(&["borjeson", "--fixture", good.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("closed form agrees"));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"name":"x","dims":{"0":2},"product":[[[0,0],1,"1"],[[0,1],0,"1"]]}"#).unwrap();
    assert_eq!(ncop(&["borjeson", "--fixture", bad.to_str().unwrap()]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_file_and_cache() {
    let dir = std::env::temp_dir().join(format!("ncop-cache-{}", std::process::id()));
    let target = dir.join("out.csv");
    std::fs::create_dir_all(&dir).unwrap();
    let (code, out, _) = ncop(&["betti", "--n", "5", "--format", "csv", "--output", target.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&target).unwrap().contains("real betti,1 3 2"));
    let bin = env!("CARGO_BIN_EXE_ncop");
    let run_bin = || Command::new(bin).args(["correlators", "--n", "5", "--format", "csv"]).env("NCOP_CACHE_DIR", &dir).output().unwrap();
    let first = run_bin();
    assert!(first.status.success());
    assert!(dir.join("correlators-5.json").exists());
    let second = run_bin();
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ncop");
    let st = Command::new(bin).args(["certify", "4"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).contains("PASS"));
    assert_eq!(Command::new(bin).arg("nope").output().unwrap().status.code(), Some(2));
    assert_eq!(Command::new(bin).args(["correlators", "--n", "99"]).output().unwrap().status.code(), Some(3));
}
