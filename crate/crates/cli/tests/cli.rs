use std::path::PathBuf;
use std::process::{Command, Output};

fn endolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endolab")).args(args).env("ENDOLAB_WORKERS", "2").output().expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).expect("golden file")
}

fn assert_golden(args: &[&str], name: &str) {
    let out = endolab(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(name), "{args:?}");
}

#[test]
fn golden_documents() {
    assert_golden(&["endoscopy", "enumerate", "--type", "C2", "--isogeny", "sc"], "endoscopy_c2.json");
    assert_golden(&["endoscopy", "enumerate", "--type", "G2", "--format", "csv"], "endoscopy_g2.csv");
    assert_golden(&["endoscopy", "estimate", "--type", "E6"], "estimate_e6.json");
    assert_golden(&["tori", "h1", "--frob", "[[-1]]"], "tori_norm_one.json");
    assert_golden(&["springer", "verify", "--group", "SL2", "--q", "5", "--all"], "springer_sl2_5.json");
    assert_golden(&["chartable", "--group", "GL2", "--q", "3", "--method", "classical"], "chartable_gl2_3.csv");
    assert_golden(&["tjd", "--p", "3", "--k", "4", "--matrix", "[[2,5],[7,2]]"], "tjd.json");
    assert_golden(&["hilbert", "--a", "3", "--b", "-5"], "hilbert.json");
}

#[test]
fn c2_has_two_triples() {
    let out = endolab(&["endoscopy", "enumerate", "--type", "C2", "--isogeny", "sc"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn springer_all_covers_every_unipotent_class() {
    let all = endolab(&["springer", "verify", "--group", "SL2", "--q", "5", "--all"]);
    let regular = endolab(&["springer", "verify", "--group", "SL2", "--q", "5"]);
    let cases = |o: &Output| serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["cases"].as_u64().unwrap();
    assert_eq!(cases(&all), 3 * cases(&regular));
}

#[test]
fn exit_codes() {
    assert_eq!(endolab(&["bogus"]).status.code(), Some(2));
    assert_eq!(endolab(&["chartable", "--group", "SL7", "--q", "3"]).status.code(), Some(2));
    assert_eq!(endolab(&["tjd", "--p", "4", "--k", "2", "--matrix", "[[1,0],[0,1]]"]).status.code(), Some(2));
    assert_eq!(endolab(&["tjd", "--p", "3", "--k", "2", "--matrix", "[[1,0],[0,1]]", "--format", "csv"]).status.code(), Some(2));
    // D_4 with the estimate: no large orbits, so nothing to contradict
    assert_eq!(endolab(&["endoscopy", "estimate", "--type", "D4"]).status.code(), Some(0));
    assert_eq!(endolab(&["hilbert", "--a", "2", "--b", "3", "--place", "3"]).status.code(), Some(0));
}

#[test]
fn selftest_is_deterministic() {
    let a = endolab(&["selftest", "--seed", "7"]);
    let b = endolab(&["selftest", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("endolab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c2.json");
    let out = endolab(&["endoscopy", "enumerate", "--type", "C2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("endoscopy_c2.json"));
    std::fs::remove_dir_all(dir).unwrap();
}
