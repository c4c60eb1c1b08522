use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn cleaved(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cleaved"))
        .args(args)
        .current_dir(root())
        .output()
        .unwrap()
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cleaved-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn pair_reproduces_the_left_trefoil_table() {
    let golden = root().join("crates/core/data/golden/left-trefoil.json");
    let o = cleaved(&[
        "pair",
        "left=unknot-half.tangle",
        "right=trefoil.tangle",
        "--simplify",
        "--homology",
        "--against-oracle",
        &format!("--expect={}", golden.display()),
    ]);
    let v = json(&o);
    let rows = v["homology"]["groups"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let torsion: Vec<&Value> = rows.iter().filter(|r| !r["torsion"].as_array().unwrap().is_empty()).collect();
    assert_eq!(torsion.len(), 1);
    assert_eq!(torsion[0]["h"], -2);
}

#[test]
fn algebra_audit_at_one_strand_pair() {
    let v = json(&cleaved(&["algebra", "n=1", "--audit"]));
    assert_eq!(v["idempotents"], 2);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
    assert_eq!(v["nonzero_differentials"], 0);
}

#[test]
fn verify_accepts_the_corpus() {
    let o = cleaved(&["verify", "corpus/"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["pair", "--left", "hopf-inside", "--right", "left-trefoil-outside", "--simplify", "--homology"][..],
        &["type-d", "right-trefoil-outside", "--simplify"],
        &["oracle", "figure-eight", "--homology"],
    ] {
        let (a, b) = (cleaved(args), cleaved(args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_flag_writes_the_artifact() {
    let p = std::env::temp_dir().join(format!("cleaved-out-{}.json", std::process::id()));
    let o = cleaved(&["homology", "left-trefoil", "-o", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert!(v["schema"].as_str().is_some());
}

#[test]
fn parse_errors_exit_2() {
    let bad = scratch("bad.tangle", "outside n=1: cup(3), twist(2)\n");
    assert_eq!(cleaved(&["type-d", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(cleaved(&["type-a", "no-such-diagram"]).status.code(), Some(2));
}

#[test]
fn strand_mismatch_exits_2() {
    let wide = scratch("wide.tangle", "outside n=2: cap(3), cap(1)\n");
    let o = cleaved(&["pair", "--left", "unknot-half", "--right", wide.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n=1 and type D over n=2"));
}

#[test]
fn crossing_cap_exits_3() {
    assert_eq!(cleaved(&["--cap", "2", "oracle", "left-trefoil"]).status.code(), Some(3));
}

#[test]
fn wrong_expectation_exits_4() {
    let golden = root().join("crates/core/data/golden/figure-eight.json");
    let o = cleaved(&["homology", "left-trefoil", &format!("--expect={}", golden.display())]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected"));
}
