use std::sync::Arc;

use symcube_core::perm::Permutation;
use symcube_core::presheaf::{
    boundary, cap, coskeleton, count_maps, extend_level, ez_decompose_section, find_isomorphism, hom_set,
    nondegenerate_sections, pushout, quotient_boundary, quotient_by_group, representable, skeleton, stabilizer,
    verify_skeletal_pushout, SubgroupSpec,
};
use symcube_core::site::{enumerate_hom, parse_morphism, DEFAULT_LIMIT};
use symcube_core::{Entry, Kind, Morphism, Presheaf, PresheafMap, Site};

fn m(s: &str) -> Morphism {
    parse_morphism(s).unwrap()
}

fn cube(n: usize, site: Site) -> Arc<Presheaf> {
    Arc::new(representable(n, site).unwrap())
}

#[test]
fn representable_sizes() {
    assert_eq!(cube(0, Site::QSigma).level_sizes(), vec![1]);
    assert_eq!(cube(1, Site::QSigma).level_sizes(), vec![2, 3]);
    let q2 = cube(2, Site::Q);
    assert_eq!(q2.level_sizes()[..2], [4, 8]);
    assert_eq!(q2.nondegenerate_counts()[..2], [4, 4]);
    assert_eq!(q2.labels(2).unwrap(), enumerate_hom(2, 2, Site::Q, DEFAULT_LIMIT).unwrap().as_slice());
    for n in 0..=3 {
        cube(n, Site::QSigma).validate().unwrap();
        cube(n, Site::Q).validate().unwrap();
    }
}

#[test]
fn action_is_precomposition() {
    let x = cube(2, Site::QSigma);
    for a in 0..=2 {
        for b in 0..=2 {
            for f in enumerate_hom(a, b, Site::QSigma, DEFAULT_LIMIT).unwrap() {
                for (s, label) in x.labels(b).unwrap().iter().enumerate() {
                    let t = x.act(&f, s).unwrap();
                    assert_eq!(x.labels(a).unwrap()[t], label.compose(&f).unwrap());
                }
            }
        }
    }
}

#[test]
fn invalid_tables_are_rejected() {
    let x = cube(1, Site::QSigma);
    let mut actions = x.actions().clone();
    let key = *actions.keys().find(|g| matches!(g, symcube_core::presheaf::Gen::Sigma { .. })).unwrap();
    actions.get_mut(&key).unwrap().swap(0, 1);
    let names = (0..=1).map(|k| x.names(k).to_vec()).collect();
    let err = Presheaf::new(Site::QSigma, Kind::Skeletal, 1, names, actions).unwrap_err();
    assert!(format!("{err}").contains("relation"), "{err}");
}

#[test]
fn boundaries() {
    let (b1, _) = boundary(1, Site::QSigma).unwrap();
    assert_eq!(b1.level_sizes(), vec![2]);
    let (b2, inc) = boundary(2, Site::QSigma).unwrap();
    assert!(inc.is_surjective());
    let inc2 = inc.extend(2).unwrap();
    assert!(inc2.is_injective());
    let cube2 = cube(2, Site::QSigma);
    let with_constant: Vec<&Morphism> =
        cube2.labels(2).unwrap().iter().filter(|f| f.entries().iter().any(Entry::is_constant)).collect();
    assert_eq!(inc2.src().len(2), with_constant.len());
    assert_eq!(cube2.len(2) - with_constant.len(), 2);
    let image: Vec<&Morphism> = inc2.components()[2].iter().map(|&s| &cube2.labels(2).unwrap()[s]).collect();
    assert!(image.iter().all(|f| with_constant.contains(f)));
    assert!(nondegenerate_sections(&b2, 2).unwrap().is_empty());
    assert!(boundary(0, Site::Q).is_err());
}

#[test]
fn caps() {
    let (c, _) = cap(1, 1, false).unwrap();
    assert_eq!(c.level_sizes(), vec![1]);
    assert_eq!(c.name(0, 0), "(1):0->1");
    let (c2, inc) = cap(2, 1, false).unwrap();
    assert_eq!(c2.nondegenerate(1).len(), 3);
    let (_, b) = boundary(2, Site::Q).unwrap();
    let through: Vec<Vec<usize>> = (0..=1)
        .map(|k| {
            (0..c2.len(k))
                .map(|s| {
                    let label = &c2.labels(k).unwrap()[s];
                    b.src().labels(k).unwrap().iter().position(|f| f == label).unwrap()
                })
                .collect()
        })
        .collect();
    let into_boundary = PresheafMap::new(c2.clone(), b.src().clone(), through).unwrap();
    assert_eq!(into_boundary.then(&b).unwrap().components(), inc.components());
}

#[test]
fn skeleta() {
    let c1 = cube(1, Site::QSigma);
    let (sk0, _) = skeleton(&c1, 0).unwrap();
    let ext = sk0.extend_to(3).unwrap();
    assert_eq!(ext.level_sizes(), vec![2, 2, 2, 2]);
    let (same, id) = skeleton(&c1, 1).unwrap();
    assert_eq!(*same, *c1);
    assert!(id.is_iso().unwrap());
    let c3 = cube(3, Site::QSigma);
    let (b3, _) = boundary(3, Site::QSigma).unwrap();
    let (a, _) = skeleton(&b3, 1).unwrap();
    let (b, _) = skeleton(&c3, 1).unwrap();
    assert_eq!(a.level_sizes(), b.level_sizes());
    assert!(find_isomorphism(&a, &b).unwrap().is_some());
    for k in 0..=2 {
        for j in 0..=2 {
            let (sk, _) = skeleton(&c3, k).unwrap();
            let (twice, _) = skeleton(&sk, j).unwrap();
            let (once, _) = skeleton(&c3, j.min(k)).unwrap();
            assert_eq!(twice.level_sizes(), once.level_sizes());
        }
    }
}

#[test]
fn coskeleta() {
    let x = Arc::new(representable(1, Site::Q).unwrap());
    let ck = coskeleton(&x, 0, 2).unwrap();
    assert_eq!(ck.level_sizes(), vec![2, 4, 16]);
    let ck1 = coskeleton(&x, 1, 1).unwrap();
    assert_eq!(ck1.level_sizes(), x.level_sizes());
    let pt = Arc::new(representable(0, Site::QSigma).unwrap());
    assert_eq!(coskeleton(&pt, 1, 3).unwrap().level_sizes(), vec![1, 1, 1, 1]);
    assert_eq!(ck.kind(), Kind::Truncated);
    assert!(ck.extend_to(3).is_err());
}

#[test]
fn coskeleton_adjunction_counts() {
    let x = Arc::new(boundary(2, Site::Q).unwrap().0.as_ref().clone());
    for k in 0..=1 {
        for n in 1..=2 {
            let a = cube(n, Site::Q);
            let (ska, _) = skeleton(&a, k).unwrap();
            let ck = Arc::new(coskeleton(&x, k, n).unwrap());
            assert_eq!(count_maps(&ska, &x).unwrap(), count_maps(&a, &ck).unwrap(), "k={k} n={n}");
        }
    }
}

#[test]
fn ez_decomposition() {
    let c1 = cube(1, Site::QSigma);
    let ext = c1.extend_to(2).unwrap();
    let s = ext.names(2).iter().position(|n| n.starts_with("(x1^x2):2->1")).unwrap();
    let (epi, rep) = ez_decompose_section(&c1, 2, s).unwrap();
    assert_eq!(epi, m("(x1^x2):2->1"));
    assert_eq!(c1.name(1, rep), "(x1):1->1");
    let (e0, r0) = ez_decompose_section(&c1, 0, 1).unwrap();
    assert!(e0.is_identity() && r0 == 1);
    let c2 = cube(2, Site::QSigma);
    let s = c2.find(1, "(x1,0):1->2").unwrap();
    assert!(c2.is_nondegenerate(1, s));
    let nd: Vec<&str> = nondegenerate_sections(&c2, 2).unwrap().into_iter().map(|s| c2.name(2, s)).collect();
    assert_eq!(nd, vec!["(x1,x2):2->2", "(x2,x1):2->2"]);
    assert_eq!(nondegenerate_sections(&c2, 0).unwrap().len(), 4);
}

#[test]
fn ez_groupoid_is_contractible() {
    // all (epi, nondegenerate) decompositions of a section differ by a unique cosymmetry
    for n in 1..=2 {
        let x = cube(n, Site::QSigma);
        let ext = x.extend_to(3).unwrap();
        for level in 0..=3 {
            for s in 0..ext.len(level) {
                let label = &ext.labels(level).unwrap()[s];
                let mut found = Vec::new();
                for k in 0..=level.min(n) {
                    for e in symcube_core::site::enumerate_minus(level, k, Site::QSigma, DEFAULT_LIMIT).unwrap() {
                        for y in ext.nondegenerate(k) {
                            if ext.labels(k).unwrap()[y].compose(&e).unwrap() == *label {
                                found.push((e.clone(), ext.labels(k).unwrap()[y].clone()));
                            }
                        }
                    }
                }
                assert!(!found.is_empty());
                for (e1, y1) in &found {
                    for (e2, y2) in &found {
                        let k = e1.dst();
                        assert_eq!(k, e2.dst());
                        let mediators: Vec<Morphism> = symcube_core::site::automorphisms(k, Site::QSigma)
                            .into_iter()
                            .filter(|t| t.compose(e1).unwrap() == *e2 && y2.compose(t).unwrap() == *y1)
                            .collect();
                        assert_eq!(mediators.len(), 1);
                    }
                }
            }
        }
    }
}

#[test]
fn hom_sets() {
    let pt = cube(0, Site::QSigma);
    let c1 = cube(1, Site::QSigma);
    let (b2, _) = boundary(2, Site::QSigma).unwrap();
    assert_eq!(hom_set(&pt, &b2, 100).unwrap().len(), b2.len(0));
    assert_eq!(hom_set(&c1, &c1, 100).unwrap().len(), 3);
    let (b1, _) = boundary(1, Site::QSigma).unwrap();
    assert_eq!(hom_set(&b1, &pt, 100).unwrap().len(), 1);
    for n in 0..=2 {
        for k in 0..=2 {
            let expected = enumerate_hom(n, k, Site::QSigma, DEFAULT_LIMIT).unwrap().len() as u128;
            assert_eq!(count_maps(&cube(n, Site::QSigma), &cube(k, Site::QSigma)).unwrap(), expected);
        }
    }
    assert!(hom_set(&c1, &c1, 2).is_err());
}

#[test]
fn pushouts() {
    let (b1, inc) = boundary(1, Site::QSigma).unwrap();
    let id = PresheafMap::identity(b1.clone());
    let po = pushout(&id, &inc).unwrap();
    assert!(find_isomorphism(&po.object, inc.dst()).unwrap().is_some());
    let two = pushout(&inc, &inc).unwrap();
    assert_eq!(two.object.level_sizes(), vec![2, 2 * 3 - 2]);
    assert_eq!(two.object.nondegenerate_counts(), vec![2, 2]);
    let pt = cube(0, Site::QSigma);
    let to_pt = PresheafMap::new(b1.clone(), pt, vec![vec![0, 0]]).unwrap();
    let circle = pushout(&inc, &to_pt).unwrap();
    assert_eq!(circle.object.level_sizes(), vec![1, 2]);
    assert_eq!(circle.object.nondegenerate_counts(), vec![1, 1]);
}

#[test]
fn group_quotients() {
    let trivial = SubgroupSpec::trivial(2);
    let (q, _) = quotient_by_group(2, &trivial, Site::QSigma).unwrap();
    assert!(find_isomorphism(&q, &cube(2, Site::QSigma)).unwrap().is_some());
    let s2 = SubgroupSpec::new(2, vec![Permutation::transposition(2, 1).unwrap()]).unwrap();
    let (q, proj) = quotient_by_group(2, &s2, Site::QSigma).unwrap();
    assert_eq!(q.len(0), 3);
    assert!(proj.is_surjective());
    let top = q.find(2, "(x1,x2):2->2").unwrap();
    assert_eq!(stabilizer(&q, 2, top).unwrap().order(), 2);
    let c2 = cube(2, Site::QSigma);
    assert!(stabilizer(&c2, 2, c2.find(2, "(x1,x2):2->2").unwrap()).unwrap().is_trivial());
    assert!(stabilizer(&c2, 0, 0).unwrap().is_trivial());
    for n in 1..=3 {
        for h in [SubgroupSpec::trivial(n), SubgroupSpec::symmetric(n)] {
            let (_, inc) = quotient_boundary(n, &h, Site::QSigma).unwrap();
            assert!(inc.extend(n).unwrap().is_injective());
        }
    }
}

#[test]
fn cellular_filtration() {
    let s2 = SubgroupSpec::symmetric(2);
    let corpus = [
        cube(2, Site::QSigma),
        quotient_by_group(2, &s2, Site::QSigma).unwrap().0,
        boundary(3, Site::QSigma).unwrap().0,
        cube(2, Site::Q),
    ];
    for x in &corpus {
        for k in 0..=3 {
            let r = verify_skeletal_pushout(x, k).unwrap();
            assert!(r.passed(), "k={k}: {}", r.detail);
        }
    }
    let r = verify_skeletal_pushout(&corpus[1], 2).unwrap();
    assert_eq!(r.orbits.len(), 1);
    assert_eq!(r.orbits[0].1, 2);
}

#[test]
fn level_extension_oracles_agree() {
    let c1 = cube(1, Site::QSigma);
    let e = extend_level(&c1, 2).unwrap();
    assert!(e.agrees());
    assert_eq!(e.cell_size, 6);
    let (b1, _) = boundary(1, Site::QSigma).unwrap();
    let e = extend_level(&b1, 1).unwrap();
    assert!(e.agrees());
    assert_eq!(e.cell_size, 2);
    let s2 = SubgroupSpec::symmetric(2);
    let corpus = [
        cube(1, Site::QSigma),
        cube(2, Site::QSigma),
        cube(1, Site::Q),
        boundary(2, Site::QSigma).unwrap().0,
        boundary(2, Site::Q).unwrap().0,
        quotient_by_group(2, &s2, Site::QSigma).unwrap().0,
    ];
    for x in &corpus {
        for n in x.truncation() + 1..=x.truncation() + 2 {
            let e = extend_level(x, n).unwrap();
            assert!(e.agrees(), "{x} at {n}: {e:?}");
        }
    }
}

#[test]
fn extension_matches_representable() {
    for site in [Site::Q, Site::QSigma] {
        for n in 0..=2 {
            let (b, _) = if n == 0 { continue } else { boundary(n, site).unwrap() };
            let ext = b.extend_to(n + 1).unwrap();
            ext.validate().unwrap();
            let c = cube(n, site).extend_to(3).unwrap();
            c.validate().unwrap();
            for k in 0..=3 {
                let expected = enumerate_hom(k, n, site, DEFAULT_LIMIT).unwrap();
                let mut labels = c.labels(k).unwrap().to_vec();
                labels.sort();
                assert_eq!(labels, expected);
            }
            let round = ext.restrict_levels(b.truncation(), Kind::Skeletal);
            assert_eq!(round, *b);
        }
    }
}

#[test]
fn isomorphism_search_matches_exhaustive_search() {
    let s2 = SubgroupSpec::new(2, vec![Permutation::transposition(2, 1).unwrap()]).unwrap();
    for site in [Site::Q, Site::QSigma] {
        let mut xs = vec![cube(1, site), cube(2, site), boundary(2, site).unwrap().0, boundary(1, site).unwrap().0];
        xs.push(pushout(&boundary(1, site).unwrap().1, &boundary(1, site).unwrap().1).unwrap().object);
        if site == Site::QSigma {
            xs.push(quotient_by_group(2, &s2, site).unwrap().0);
        }
        for x in &xs {
            for y in &xs {
                let fast = find_isomorphism(x, y).unwrap();
                let top = x.truncation().max(y.truncation());
                let (xe, ye) = (Arc::new(x.extend_to(top).unwrap()), Arc::new(y.extend_to(top).unwrap()));
                let slow = hom_set(&xe, &ye, DEFAULT_LIMIT)
                    .unwrap()
                    .into_iter()
                    .any(|m| m.is_injective() && m.is_surjective());
                assert_eq!(fast.is_some(), slow);
                if let Some(m) = fast {
                    assert!(m.is_iso().unwrap());
                }
            }
        }
    }
}
