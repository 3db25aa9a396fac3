use std::fs;
use std::path::Path;
use std::process::Command;

use tempfile::TempDir;

fn bin(dir: &Path, args: &[&str]) -> i32 {
    let out = Command::new(env!("CARGO_BIN_EXE_csa-witness"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    out.status.code().expect("exit code")
}

fn ok(dir: &Path, args: &[&str]) {
    assert_eq!(bin(dir, args), 0, "command failed: {args:?}");
}

#[test]
fn ideal_pencil_end_to_end() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["algebra", "new", "--preset", "matrix", "--n", "4", "--field", "fp:5", "--out", "a.json"]);
    ok(d, &["ideal", "random", "--algebra", "a.json", "--rdim", "2", "--seed", "7", "--out", "i1.json"]);
    ok(d, &["ideal", "random", "--algebra", "a.json", "--rdim", "2", "--seed", "8", "--out", "i2.json"]);
    ok(d, &["ideal", "check", "--ideal", "i1.json"]);
    ok(d, &["witness", "connect-ideals", "--algebra", "a.json", "--from", "i1.json", "--to", "i2.json", "--out", "w.json"]);
    ok(d, &["verify", "--witness", "w.json", "--exhaustive", "--out", "r.json"]);
    let report = fs::read_to_string(d.join("r.json")).unwrap();
    assert!(report.contains("\"pass\": true"));

    // change one pencil entry
    let w = fs::read_to_string(d.join("w.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&w).unwrap();
    let entry = &mut v["segments"][0]["pencil_w"][0][0];
    let old: u64 = entry.as_str().unwrap().parse().unwrap();
    *entry = serde_json::Value::String(((old + 1) % 5).to_string());
    fs::write(d.join("tampered.json"), serde_json::to_string_pretty(&v).unwrap()).unwrap();
    assert_eq!(bin(d, &["verify", "--witness", "tampered.json", "--exhaustive"]), 1);
}

#[test]
fn same_seed_gives_identical_files() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["algebra", "new", "--preset", "matrix", "--n", "3", "--field", "fp:7", "--out", "a.json"]);
    for run in ["x", "y"] {
        ok(d, &["ideal", "random", "--algebra", "a.json", "--rdim", "1", "--seed", "11", "--out", &format!("i1{run}.json")]);
        ok(d, &["ideal", "random", "--algebra", "a.json", "--rdim", "1", "--seed", "12", "--out", &format!("i2{run}.json")]);
        ok(
            d,
            &[
                "witness", "connect-ideals", "--algebra", "a.json", "--from", &format!("i1{run}.json"), "--to",
                &format!("i2{run}.json"), "--out", &format!("w{run}.json"),
            ],
        );
    }
    for f in ["i1", "i2", "w"] {
        assert_eq!(fs::read(d.join(format!("{f}x.json"))).unwrap(), fs::read(d.join(format!("{f}y.json"))).unwrap());
    }
}

#[test]
fn etale_and_quadric_commands() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["algebra", "new", "--preset", "matrix", "--n", "2", "--field", "q", "--out", "a.json"]);
    ok(d, &["etale", "generate", "--algebra", "a.json", "--generator", "1,0,0,2", "--out", "e1.json"]);
    ok(d, &["etale", "generate", "--algebra", "a.json", "--generator", "0,1,1,0", "--out", "e2.json"]);
    ok(d, &["etale", "type", "--subalgebra", "e1.json"]);
    ok(d, &["witness", "connect-etale", "--from", "e1.json", "--to", "e2.json", "--seed", "3", "--out", "w.json"]);
    ok(d, &["verify", "--witness", "w.json", "--samples", "0,1,2,1/2,-1"]);
    // a nilpotent generator is rejected as invalid input
    assert_eq!(bin(d, &["etale", "generate", "--algebra", "a.json", "--generator", "0,1,0,0", "--out", "n.json"]), 2);

    fs::write(
        d.join("conic.json"),
        r#"{"kind": "quadric", "form": {"field": {"kind": "fp", "p": 3}, "upper": [["1","0","0"],["0","1","0"],["0","0","-1"]]}}"#,
    )
    .unwrap();
    ok(d, &["enumerate", "--model", "conic.json", "--degree", "2", "--out", "pts.json"]);
    let pts: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("pts.json")).unwrap()).unwrap();
    assert_eq!(pts["count"], 7);
    ok(d, &["witness", "connect-quadric", "--model", "conic.json", "--from", "1,0,1", "--to", "0,1,1", "--out", "q.json"]);
    ok(d, &["verify", "--witness", "q.json", "--exhaustive"]);
    ok(d, &["hgraph", "--model", "conic.json", "--n", "2", "--seed", "1", "--out", "g.json"]);
    let g: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("g.json")).unwrap()).unwrap();
    assert_eq!(g["components"], 1);
    assert_eq!(g["vertices"], 9);
    // a tiny budget is reported with exit code 3
    assert_eq!(bin(d, &["enumerate", "--model", "conic.json", "--degree", "2", "--budget", "10", "--out", "p.json"]), 3);
}

#[test]
fn invalid_input_exit_codes() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    assert_eq!(bin(d, &["algebra", "new", "--preset", "matrix", "--n", "2", "--field", "fp:6", "--out", "a.json"]), 2);
    assert_eq!(bin(d, &["algebra", "new", "--preset", "matrix", "--field", "fp:5", "--out", "a.json"]), 2);
    assert_eq!(bin(d, &["verify", "--witness", "missing.json"]), 2);
    assert_eq!(bin(d, &["algebra", "new", "--preset", "octonion", "--out", "a.json"]), 2);
    ok(d, &["algebra", "new", "--preset", "quaternion", "--a", "-1", "--b", "-1", "--field", "q", "--out", "h.json"]);
    ok(d, &["involution", "new", "--algebra", "h.json", "--kind", "conjugation", "--out", "s.json"]);
    ok(d, &["involution", "type", "--involution", "s.json"]);
    ok(d, &["arith", "pidegree", "--p", "3", "--n", "3", "--m", "3"]);
}
