use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../gct-core/data").join(format!("{name}.json"))
}

fn gct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gct")).args(args).env_remove("GCT_SEED").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
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
fn verify_accepts_bundled_categories() {
    for name in ["vec_z2", "vec_z3", "ising", "fib"] {
        let o = gct(&["verify", path_str(&data(name))]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
        assert!(stdout(&o).contains("result: pass"));
    }
}

#[test]
fn verify_rejects_inconsistent_fusion() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(data("ising")).unwrap()).unwrap();
    v["N"].as_array_mut().unwrap().push(serde_json::json!([2, 2, 2, 1]));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = gct(&["verify", path_str(&bad)]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr(&o).trim(), "error: invariant violation: grading violated at (sigma,sigma,sigma)");

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ nope").unwrap();
    assert_eq!(code(&gct(&["verify", path_str(&garbage)])), 2);
    assert_eq!(code(&gct(&["verify", path_str(&dir.path().join("missing.json"))])), 1);
}

#[test]
fn tube_reports_component_dimensions() {
    let o = gct(&["tube", path_str(&data("ising"))]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .filter(|l| l.starts_with("0 ") || l.starts_with("1 "))
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows.len(), 2, "{out}");
    assert_eq!((rows[0][1], rows[0][3]), ("4", "4"));
    assert_eq!((rows[1][1], rows[1][3]), ("2", "2"));

    let o = gct(&["tube", path_str(&data("vec_z3")), "--action", "inversion"]);
    assert_eq!(code(&o), 0);
    let dims: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("0 ") || l.starts_with("i "))
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(dims, vec!["9", "9"]);
}

#[test]
fn center_counts_simples() {
    for (name, sub, n) in [("vec_z2", "all", 4), ("ising", "degree0", 6), ("fib", "all", 4)] {
        let o = gct(&["center", path_str(&data(name)), "--subcat", sub]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
        assert!(stdout(&o).contains(&format!(": {n} simples")), "{}", stdout(&o));
    }
}

#[test]
fn gcenter_of_z3_under_inversion() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("z3.json");
    let o = gct(&["gcenter", path_str(&data("vec_z3")), "--action", "inversion", "--json", path_str(&json)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("10 simples"));
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(rep["equivariant"]["count"], 8);
    assert_eq!(rep["full_center_simples"], 8);
    assert!(rep["iso_deviation"].as_f64().unwrap() < 1e-8);
}

#[test]
fn gcenter_needs_an_action() {
    let o = gct(&["gcenter", path_str(&data("vec_z3"))]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--action"));
    assert_eq!(code(&gct(&["gcenter", path_str(&data("fib"))])), 2);
    assert_eq!(code(&gct(&["gcenter", path_str(&data("vec_z3")), "--action", "nope"])), 2);
}

fn write_braiding(dir: &Path) -> PathBuf {
    let file = dir.join("braiding.json");
    let o = gct(&["center", path_str(&data("vec_z2")), "--subcat", "all", "--braiding", path_str(&file)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    file
}

fn edit(file: &Path, f: impl FnOnce(&mut Value)) -> PathBuf {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    f(&mut v);
    let out = file.with_extension("edited.json");
    std::fs::write(&out, v.to_string()).unwrap();
    out
}

#[test]
fn braid_check_round_trip_and_faults() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_braiding(dir.path());
    let cat = data("vec_z2");
    let check = |b: &Path| gct(&["braid-check", path_str(&cat), "--braiding", path_str(b)]);

    let o = check(&file);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("result: pass"));

    // Negate every entry of one row: multiplicativity breaks by 2.
    let flipped = edit(&file, |v| {
        for entry in v["entries"][1].as_array_mut().unwrap() {
            for ch in entry["channels"].as_array_mut().unwrap() {
                for row in ch.as_array_mut().unwrap() {
                    for z in row.as_array_mut().unwrap() {
                        for part in z.as_array_mut().unwrap() {
                            *part = Value::from(-part.as_f64().unwrap());
                        }
                    }
                }
            }
        }
    });
    let o = check(&flipped);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));

    let empty = edit(&file, |v| v["entries"] = Value::Array(vec![]));
    let o = check(&empty);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("missing entries"), "{}", stderr(&o));

    let wrong = edit(&file, |v| v["simples"] = Value::from(3));
    assert_eq!(code(&check(&wrong)), 2);

    assert_eq!(code(&check(&dir.path().join("absent.json"))), 1);
    assert_eq!(code(&gct(&["braid-check", path_str(&cat)])), 2);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (dir.path().join("a.json"), dir.path().join("b.json"), dir.path().join("c.json"));
    let cat = data("ising");
    assert_eq!(code(&gct(&["center", path_str(&cat), "--seed", "5", "--json", path_str(&a)])), 0);
    assert_eq!(code(&gct(&["center", path_str(&cat), "--seed", "5", "--json", path_str(&b)])), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_gct"))
        .args(["center", path_str(&cat), "--json", path_str(&c)])
        .env("GCT_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let a = std::fs::read(a).unwrap();
    assert_eq!(a, std::fs::read(b).unwrap());
    assert_eq!(a, std::fs::read(c).unwrap());
}

#[test]
fn invalid_seed_environment_is_rejected() {
    let o = Command::new(env!("CARGO_BIN_EXE_gct"))
        .args(["tube", path_str(&data("fib"))])
        .env("GCT_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: "));
}
