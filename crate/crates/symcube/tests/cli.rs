use std::path::PathBuf;
use std::process::{Command, Output};

use symcube::format::parse_presheaf;

fn symcube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcube")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

/// Runs a command that prints a presheaf and saves it under the temp dir.
fn save(name: &str, args: &[&str]) -> String {
    let o = symcube(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let path: PathBuf = [env!("CARGO_TARGET_TMPDIR"), name].iter().collect();
    std::fs::write(&path, &o.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn morphism_commands() {
    let o = symcube(&["compose", "(x3,x1^x2):3->2", "(0,x1,x5):5->3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(x5,0):5->2\n");
    let o = symcube(&["factor", "(x3,1,x1^x5^x2,0):5->4"]);
    assert_eq!(stdout(&o), "d4,0 d2,1 g2 g3 pi(1 2 4 3) s4\n");
    let o = symcube(&["tensor", "(x1^x2):2->1", "(0,x1):1->2"]);
    assert_eq!(stdout(&o), "(x1^x2,0,x3):3->3\n");
    let o = symcube(&["enum-hom", "1", "1", "--site", "Q"]);
    assert_eq!(stdout(&o), "(0):1->1\n(1):1->1\n(x1):1->1\n");
    assert_eq!(stdout(&symcube(&["enum-hom", "2", "1"])).lines().count(), 6);
}

#[test]
fn json_output() {
    let o = symcube(&["factor", "(x3,1,x1^x5^x2,0):5->4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["perm"], "(1 2 4 3)");
    assert_eq!(v["conjs"], serde_json::json!([2, 3]));
    assert_eq!(v["morphism"], "(x3,1,x1^x5^x2,0):5->4");
    let o = symcube(&["enum-hom", "2", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 6);
    assert_eq!(v["morphisms"][5], "(x2^x1):2->1");
    let o = symcube(&["homology", "--file", &data("boundary3.cub"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["groups"][1], serde_json::json!({ "rank": 0, "torsion": [] }));
}

#[test]
fn homology_of_the_sample_files() {
    let o = symcube(&["homology", "--file", &data("boundary3.cub")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H_0 = Z\nH_1 = 0\nH_2 = Z\n");
    let o = symcube(&["homology", &data("circle.cub")]);
    assert_eq!(stdout(&o), "H_0 = Z\nH_1 = Z\n");
    let o = symcube(&["realize", &data("circle.cub")]);
    assert!(stdout(&o).contains("level 1: 2 simplices, 1 nondegenerate"));
    assert!(stdout(&o).ends_with("euler characteristic: 0\n"));
}

#[test]
fn constructions_print_loadable_files() {
    let b = save("b2q.cub", &["boundary", "--dim", "2", "--site", "Q"]);
    let s = save("b2s.cub", &["symmetrize", &b]);
    let x = parse_presheaf(&std::fs::read_to_string(&s).unwrap()).unwrap();
    assert_eq!(x.site(), symcube_core::Site::QSigma);
    assert_eq!(stdout(&symcube(&["homology", &s])), "H_0 = Z\nH_1 = Z\n");
    let c = save("c1.cub", &["boundary", "--dim", "1"]);
    let conv = save("conv.cub", &["convolve", &c, &c]);
    assert_eq!(parse_presheaf(&std::fs::read_to_string(conv).unwrap()).unwrap().level_sizes(), vec![4]);
    let q = save("quot.cub", &["quotient", "--dim", "2", "--gen", "(1 2)"]);
    assert_eq!(parse_presheaf(&std::fs::read_to_string(&q).unwrap()).unwrap().len(0), 3);
    assert_eq!(stdout(&symcube(&["homology", &q])), "H_0 = Z\nH_1 = 0\nH_2 = 0\n");
    let qb = save("quotb.cub", &["quotient", "--dim", "2", "--gen", "(1 2)", "--boundary"]);
    assert_eq!(stdout(&symcube(&["homology", &qb])).lines().next(), Some("H_0 = Z"));
    let cap = save("cap.cub", &["cap", "--dim", "2", "--index", "1", "--eps", "0", "--site", "Q"]);
    let x = parse_presheaf(&std::fs::read_to_string(&cap).unwrap()).unwrap();
    assert_eq!(x.nondegenerate_counts(), vec![4, 3]);
    let sk = save("sk.cub", &["skeleton", &data("boundary3.cub"), "--dim", "1"]);
    assert_eq!(stdout(&symcube(&["homology", &sk])).lines().nth(1), Some("H_1 = Z^5"));
    let r = save("restr.cub", &["restrict", &c, "--dim", "2"]);
    assert!(std::fs::read_to_string(&r).unwrap().contains("kind: truncated"));
    let co = save("cosk.cub", &["coskeleton", &c, "--dim", "0", "--up-to", "1"]);
    assert_eq!(parse_presheaf(&std::fs::read_to_string(co).unwrap()).unwrap().level_sizes(), vec![2, 4]);
    let j = symcube(&["boundary", "--dim", "1", "--json"]);
    let from_json = parse_presheaf(&stdout(&j)).unwrap();
    assert_eq!(from_json, parse_presheaf(&std::fs::read_to_string(&c).unwrap()).unwrap());
}

#[test]
fn verification_commands() {
    let o = symcube(&["verify-relations", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with(", 0 failures\n"));
    let o = symcube(&["verify-ez", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = symcube(&["verify-pushouts", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("ok ")).count(), 9);
    let o = symcube(&["verify-pushouts", "--file", &data("circle.cub"), "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = symcube(&["verify-all", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 12);
}

#[test]
fn homotopy_commands() {
    let c = save("cube1.cub", &["quotient", "--dim", "1"]);
    let b = save("bdry1.cub", &["boundary", "--dim", "1"]);
    let o = symcube(&["lift", &b, "--boundary", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "boundary(1): 2 of 4 maps extend\n");
    let o = symcube(&["lift", &b, "--cap", "1,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = symcube(&["fibrant", &b, "--dim", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("fibrant\n"));
    let o = symcube(&["homotopic", &b, "--from", "(0):0->1", "--to", "(1):0->1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not homotopic"));
    let o = symcube(&["homotopic", &c, "--from", "(0):0->1", "--to", "(1):0->1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "(0):0->1 and (1):0->1 are homotopic through □1\n");
    let o = symcube(&["fibrant", &c, "--dim", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL cap(2,1,0): 5 of 7 maps extend"));
}

#[test]
fn exit_codes() {
    let o = symcube(&["compose", "(x1):1->1", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: parse error"));
    assert_eq!(symcube(&["compose", "(x1):1->1", "(x1,x2):2->2"]).status.code(), Some(2));
    assert_eq!(symcube(&["homology", "--file", "/nonexistent/x.cub"]).status.code(), Some(2));
    assert_eq!(symcube(&["homology"]).status.code(), Some(2));
    assert_eq!(symcube(&["boundary"]).status.code(), Some(2));
    assert_eq!(symcube(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(symcube(&["enum-hom", "1", "1", "--site", "Z"]).status.code(), Some(2));
    let o = symcube(&["enum-hom", "6", "6", "--limit", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds limit 10"));
    let b = save("bdry1_limit.cub", &["boundary", "--dim", "1"]);
    assert_eq!(symcube(&["fibrant", &b, "--dim", "2", "--limit", "1"]).status.code(), Some(3));
    assert_eq!(symcube(&["--help"]).status.code(), Some(0));
}
