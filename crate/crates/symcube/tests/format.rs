use std::sync::Arc;

use symcube::format::{parse_presheaf, presheaf_json, print_presheaf, PresheafDoc};
use symcube::verify::{circle, cube};
use symcube_core::monoidal::{convolve, restrict, symmetrize};
use symcube_core::presheaf::{boundary, cap, coskeleton, quotient_by_group, SubgroupSpec};
use symcube_core::{Error, Kind, Presheaf, Site};

fn corpus() -> Vec<Arc<Presheaf>> {
    let mut v = vec![Arc::new(Presheaf::empty(Site::QSigma)), Arc::new(Presheaf::point(Site::Q))];
    for site in [Site::Q, Site::QSigma] {
        v.push(cube(2, site).unwrap());
        v.push(boundary(2, site).unwrap().0);
        v.push(circle(site).unwrap());
    }
    let c1 = cube(1, Site::QSigma).unwrap();
    v.push(convolve(&c1, &c1).unwrap().product);
    v.push(Arc::new(coskeleton(&c1, 0, 2).unwrap()));
    v.push(Arc::new(restrict(&c1, 2).unwrap()));
    v.push(Arc::new(symmetrize(&cap(2, 1, false).unwrap().0).unwrap()));
    v.push(quotient_by_group(2, &SubgroupSpec::symmetric(2), Site::QSigma).unwrap().0);
    v
}

#[test]
fn text_round_trip() {
    for x in corpus() {
        let text = print_presheaf(&x);
        let back = parse_presheaf(&text).unwrap_or_else(|e| panic!("{x}: {e}\n{text}"));
        assert_eq!(back, *x, "{x}");
        assert_eq!(print_presheaf(&back), text);
    }
}

#[test]
fn json_round_trip() {
    for x in corpus() {
        let text = serde_json::to_string(&presheaf_json(&x)).unwrap();
        let back = parse_presheaf(&text).unwrap();
        assert_eq!(back, *x);
        let doc: PresheafDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(doc, PresheafDoc::from_presheaf(&x));
    }
}

#[test]
fn truncated_kind_is_kept() {
    let r = restrict(&cube(1, Site::QSigma).unwrap(), 2).unwrap();
    assert_eq!(r.kind(), Kind::Truncated);
    assert!(print_presheaf(&r).contains("kind: truncated"));
}

const INTERVAL: &str = "\
site: Q
truncation: 1

level 0:
  a
  b
level 1:
  a.1
  b.1
  e

delta(1,0)@0: a.1 -> a
delta(1,0)@0: b.1 -> b
delta(1,0)@0: e -> a
delta(1,1)@0: a.1 -> a
delta(1,1)@0: b.1 -> b
delta(1,1)@0: e -> b
sigma(1)@0: a -> a.1
sigma(1)@0: b -> b.1
";

#[test]
fn hand_written_file() {
    let x = parse_presheaf(INTERVAL).unwrap();
    assert_eq!(x.kind(), Kind::Skeletal);
    assert_eq!(x.level_sizes(), vec![2, 3]);
    assert_eq!(x.nondegenerate_counts(), vec![2, 1]);
    assert!(x.labels(0).is_none());
    let e = x.find(1, "e").unwrap();
    assert!(x.is_nondegenerate(1, e));
}

fn parse_error(text: &str) -> Error {
    parse_presheaf(text).expect_err("input should be rejected")
}

#[test]
fn invalid_files_are_rejected() {
    let broken = INTERVAL.replace("sigma(1)@0: a -> a.1", "sigma(1)@0: a -> b.1");
    assert!(matches!(parse_error(&broken), Error::InvalidPresheaf(_)));
    let missing = INTERVAL.replace("sigma(1)@0: b -> b.1\n", "");
    assert!(matches!(parse_error(&missing), Error::Parse(m) if m.contains("no value for \"b\"")));
    let unknown = INTERVAL.replace("e -> b", "e -> c");
    assert!(matches!(parse_error(&unknown), Error::Parse(m) if m.contains("unknown section")));
    let twice = INTERVAL.replace("  b\n", "  a\n");
    assert!(matches!(parse_error(&twice), Error::Parse(m) if m.contains("repeated")));
    let order = INTERVAL.replace("level 1:", "level 2:");
    assert!(matches!(parse_error(&order), Error::Parse(m) if m.starts_with("line 7")));
    let gen = INTERVAL.replace("sigma(1)@0", "sigma(1,2)@0");
    assert!(matches!(parse_error(&gen), Error::Parse(_)));
    let beyond = format!("{INTERVAL}swap(1)@1: e -> e\n");
    assert!(parse_presheaf(&beyond).is_err());
    assert!(matches!(parse_error("level 0:\n  a\n"), Error::Parse(m) if m.contains("site")));
    assert!(matches!(parse_error("site: Q\nlevel 0:\n  \"a\n"), Error::Parse(_)));
    let mixed = INTERVAL.replace("  a\n", "  a = (0):0->1\n");
    assert!(matches!(parse_error(&mixed), Error::Parse(m) if m.contains("label")));
    assert!(parse_presheaf("{ \"site\": \"Q\" }").is_err());
}

#[test]
fn inconsistent_labels_are_rejected() {
    let x = cube(1, Site::QSigma).unwrap();
    let text = print_presheaf(&x);
    let swapped = text.replacen("= (0):0->1", "= (1):0->1", 1);
    assert!(parse_presheaf(&swapped).is_err());
}

#[test]
fn awkward_names_are_quoted() {
    let text = "site: Q\nlevel 0:\n  level\n  \"a b\"\n  \"->\"\n  \"q\\\"\"\n";
    let x = parse_presheaf(text).unwrap();
    assert_eq!(x.names(0), ["level", "a b", "->", "q\""]);
    let printed = print_presheaf(&x);
    assert!(printed.contains("  \"level\"\n"));
    assert_eq!(parse_presheaf(&printed).unwrap(), x);
}
