use std::collections::BTreeSet;
use std::sync::Arc;

use symcube_core::monoidal::{
    adjunction_counit, adjunction_unit, convolve, counit_triangle, pushout_product, restrict, restrict_map,
    right_unitor, symmetrization, symmetrize, symmetrize_map, symmetry_map, tensor_maps, unit_triangle,
};
use symcube_core::presheaf::{boundary, cap, find_isomorphism, representable, skeleton};
use symcube_core::site::{enumerate_hom, DEFAULT_LIMIT};
use symcube_core::{Entry, Morphism, Presheaf, PresheafMap, Site};

fn cube(n: usize, site: Site) -> Arc<Presheaf> {
    Arc::new(representable(n, site).unwrap())
}

fn bdry(n: usize, site: Site) -> (Arc<Presheaf>, PresheafMap) {
    boundary(n, site).unwrap()
}

fn empty_into_point(site: Site) -> PresheafMap {
    let e = Arc::new(Presheaf::empty(site));
    PresheafMap::new(e, Arc::new(Presheaf::point(site)), vec![vec![]]).unwrap()
}

fn hom_set(k: usize, n: usize, site: Site) -> BTreeSet<Morphism> {
    enumerate_hom(k, n, site, DEFAULT_LIMIT).unwrap().into_iter().collect()
}

/// Labels at level `k` are exactly `Hom(k, n)`, each once.
fn labels_are_hom(x: &Presheaf, k: usize, n: usize, site: Site) {
    let labels = x.labels(k).unwrap();
    let set: BTreeSet<Morphism> = labels.iter().cloned().collect();
    assert_eq!(set.len(), labels.len(), "repeated label at level {k}");
    assert_eq!(set, hom_set(k, n, site), "level {k}");
}

/// Image of a labelled map into a representable, as labels.
fn image_labels(f: &PresheafMap, k: usize) -> BTreeSet<Morphism> {
    let dst = f.dst().extend_to(k).unwrap();
    let f = f.extend(k).unwrap();
    f.components()[k].iter().map(|&v| dst.labels(k).unwrap()[v].clone()).collect()
}

fn corpus(site: Site) -> Vec<Arc<Presheaf>> {
    let mut v = vec![cube(0, site), cube(1, site), cube(2, site)];
    v.push(bdry(1, site).0);
    v.push(bdry(2, site).0);
    v
}

fn dim(x: &Presheaf) -> usize {
    (0..=x.truncation()).rev().find(|&k| !x.nondegenerate(k).is_empty()).unwrap_or(0)
}

#[test]
fn cubes_convolve_to_cubes() {
    for site in [Site::Q, Site::QSigma] {
        for m in 0..=3 {
            for n in 0..=3 - m {
                let c = convolve(&cube(m, site), &cube(n, site)).unwrap();
                assert_eq!(c.product.truncation(), m + n);
                for k in 0..=m + n {
                    labels_are_hom(&c.product, k, m + n, site);
                }
                let iso = find_isomorphism(&c.product, &cube(m + n, site)).unwrap();
                assert!(iso.is_some(), "{m} ⊗ {n} over {site}");
            }
        }
    }
}

#[test]
fn boundary_points() {
    let (b, _) = bdry(1, Site::QSigma);
    let c = convolve(&b, &b).unwrap();
    assert_eq!(c.product.level_sizes(), vec![4]);
    assert_eq!(c.product.extend_to(2).unwrap().nondegenerate_counts(), vec![4, 0, 0]);
}

#[test]
fn classes_and_representatives() {
    let x = cube(1, Site::QSigma);
    let c = convolve(&x, &x).unwrap();
    for k in 0..=2 {
        for q in 0..c.product.len(k) {
            let (h, a, b) = c.representative(k, q);
            assert_eq!(c.class(k, &h, a, b).unwrap(), q);
        }
    }
}

#[test]
fn unit_law() {
    for site in [Site::Q, Site::QSigma] {
        for x in corpus(site) {
            let u = right_unitor(&x).unwrap();
            assert!(u.is_iso().unwrap());
        }
    }
}

#[test]
fn symmetry_is_involutive_iso() {
    let xs = corpus(Site::QSigma);
    for x in &xs {
        for y in &xs {
            if dim(x) + dim(y) > 3 {
                continue;
            }
            let s = symmetry_map(x, y).unwrap();
            assert!(s.is_iso().unwrap());
            let back = symmetry_map(y, x).unwrap();
            let round = s.then(&back).unwrap();
            assert!(round.components().iter().all(|c| c.iter().enumerate().all(|(i, &v)| i == v)));
        }
    }
    assert!(symmetry_map(&cube(1, Site::Q), &cube(1, Site::Q)).is_err());
}

#[test]
fn associativity() {
    for site in [Site::Q, Site::QSigma] {
        let xs = corpus(site);
        for x in &xs {
            for y in &xs {
                for z in &xs {
                    if dim(x) + dim(y) + dim(z) > 3 {
                        continue;
                    }
                    let left = convolve(&convolve(x, y).unwrap().product, z).unwrap().product;
                    let right = convolve(x, &convolve(y, z).unwrap().product).unwrap().product;
                    assert!(find_isomorphism(&left, &right).unwrap().is_some());
                }
            }
        }
    }
}

#[test]
fn tensor_of_maps_is_functorial() {
    let site = Site::QSigma;
    let (_, f) = bdry(1, site);
    let (_, g) = bdry(2, site);
    let fg = tensor_maps(&f, &g).unwrap();
    assert!(fg.is_injective());
    let (a, b) = (f.src().clone(), f.dst().clone());
    let (k, l) = (g.src().clone(), g.dst().clone());
    let first = tensor_maps(&f, &PresheafMap::identity(k)).unwrap();
    let second = tensor_maps(&PresheafMap::identity(b), &g).unwrap();
    assert_eq!(first.then(&second).unwrap().components(), &fg.components()[..=2]);
    let first = tensor_maps(&PresheafMap::identity(a), &g).unwrap();
    let second = tensor_maps(&f, &PresheafMap::identity(l)).unwrap();
    assert_eq!(first.then(&second).unwrap().components(), &fg.components()[..=2]);
}

#[test]
fn boundary_pushout_product() {
    let site = Site::QSigma;
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let (_, f) = bdry(m, site);
        let (_, g) = bdry(n, site);
        let corner = pushout_product(&f, &g).unwrap();
        assert!(corner.is_injective());
        let (_, target) = bdry(m + n, site);
        for k in 0..=m + n {
            assert_eq!(image_labels(&corner, k), image_labels(&target, k), "{m} ⊙ {n} at level {k}");
        }
        let iso = find_isomorphism(corner.src(), target.src()).unwrap();
        assert!(iso.is_some());
    }
}

#[test]
fn pushout_product_unit() {
    for site in [Site::Q, Site::QSigma] {
        for n in 1..=2 {
            let (_, f) = bdry(n, site);
            let corner = pushout_product(&f, &empty_into_point(site)).unwrap();
            let src_unitor = right_unitor(&Arc::new(f.src().extend_to(n).unwrap())).unwrap();
            let dst_unitor = right_unitor(f.dst()).unwrap();
            let p_to_a =
                PresheafMap::new(corner.src().clone(), f.src().clone(), src_unitor.components().to_vec()).unwrap();
            assert!(p_to_a.is_iso().unwrap());
            assert!(dst_unitor.is_iso().unwrap());
            let top = corner.src().truncation();
            let a = corner.then(&dst_unitor).unwrap().extend(top).unwrap();
            let b = p_to_a.then(&f).unwrap().extend(top).unwrap();
            assert_eq!(a.components(), b.components());
        }
    }
}

#[test]
fn pushout_product_of_monos_is_mono() {
    let (_, c) = cap(2, 1, false).unwrap();
    let (_, b) = bdry(1, Site::Q);
    assert!(pushout_product(&c, &b).unwrap().is_injective());
    let (_, b2) = bdry(2, Site::Q);
    assert!(pushout_product(&b, &b2).unwrap().is_injective());
}

#[test]
fn symmetrized_cubes_and_boundaries() {
    for n in 0..=3 {
        let s = symmetrize(&cube(n, Site::Q)).unwrap();
        assert_eq!(s.site(), Site::QSigma);
        for k in 0..=n {
            labels_are_hom(&s, k, n, Site::QSigma);
        }
        assert!(find_isomorphism(&Arc::new(s), &cube(n, Site::QSigma)).unwrap().is_some());
    }
    for n in 1..=3 {
        let (b, inc) = bdry(n, Site::Q);
        let (bs, inc_s) = bdry(n, Site::QSigma);
        let s = Arc::new(symmetrize(&b).unwrap());
        assert!(find_isomorphism(&s, &bs).unwrap().is_some(), "boundary {n}");
        let lifted = symmetrize_map(&inc).unwrap();
        assert!(lifted.is_injective());
        for k in 0..=n {
            assert_eq!(image_labels(&lifted, k), image_labels(&inc_s, k));
        }
    }
}

#[test]
fn symmetrized_cap() {
    let (c, _) = cap(2, 1, false).unwrap();
    let s = symmetrize(&c).unwrap();
    let inside = |f: &Morphism| f.entries()[0] == Entry::One || matches!(f.entries()[1], Entry::Zero | Entry::One);
    let expected: Vec<usize> =
        (0..=1).map(|k| hom_set(k, 2, Site::QSigma).iter().filter(|f| inside(f)).count()).collect();
    assert_eq!(s.level_sizes(), expected);
    let s2 = s.extend_to(2).unwrap();
    assert_eq!(s2.len(2), hom_set(2, 2, Site::QSigma).iter().filter(|f| inside(f)).count());
}

#[test]
fn skeleta_commute_with_symmetrization() {
    let mut xs = vec![cube(2, Site::Q), cube(3, Site::Q), bdry(3, Site::Q).0];
    xs.push(cap(2, 2, true).unwrap().0);
    for x in xs {
        for k in 0..x.truncation() {
            let (sk, _) = skeleton(&x, k).unwrap();
            let a = symmetrize(&sk).unwrap();
            let (b, _) = skeleton(&Arc::new(symmetrize(&x).unwrap()), k).unwrap();
            assert_eq!(a, *b, "k = {k}");
        }
    }
}

#[test]
fn strong_monoidality() {
    let q = corpus(Site::Q);
    for x in &q {
        for y in &q {
            if dim(x) + dim(y) > 3 {
                continue;
            }
            let lhs = Arc::new(symmetrize(&convolve(x, y).unwrap().product).unwrap());
            let sx = Arc::new(symmetrize(x).unwrap());
            let sy = Arc::new(symmetrize(y).unwrap());
            let rhs = convolve(&sx, &sy).unwrap().product;
            assert!(find_isomorphism(&lhs, &rhs).unwrap().is_some());
        }
    }
}

#[test]
fn restriction_sizes() {
    let r = restrict(&cube(1, Site::QSigma), 2).unwrap();
    assert_eq!(r.site(), Site::Q);
    assert_eq!(r.level_sizes(), vec![2, 3, 6]);
    let conj = r.labels(2).unwrap().iter().position(|f| f.to_string() == "(x1^x2):2->1").unwrap();
    assert!(r.is_nondegenerate(2, conj));
    let p = restrict(&cube(0, Site::QSigma), 3).unwrap();
    assert_eq!(p.level_sizes(), vec![1, 1, 1, 1]);
    assert!(restrict(&cube(1, Site::Q), 1).is_err());
}

#[test]
fn unit_is_the_canonical_inclusion() {
    for n in 0..=3 {
        let x = cube(n, Site::Q);
        let eta = adjunction_unit(&x, 3).unwrap();
        assert!(eta.is_injective());
        for k in 0..=3 {
            let src = eta.src().labels(k).unwrap();
            let dst = eta.dst().labels(k).unwrap();
            for (a, f) in src.iter().enumerate() {
                assert_eq!(&dst[eta.apply(k, a)], f);
            }
        }
    }
    let (b, _) = bdry(2, Site::Q);
    assert!(adjunction_unit(&b, 3).unwrap().is_injective());
}

#[test]
fn counit_is_surjective_on_cubes() {
    for n in 0..=2 {
        let eps = adjunction_counit(&cube(n, Site::QSigma), 2).unwrap();
        assert!(eps.is_surjective(), "n = {n}");
    }
}

#[test]
fn triangle_identities() {
    for n in 0..=2 {
        let y = cube(n, Site::QSigma);
        for up_to in 0..=3 {
            assert!(unit_triangle(&y, up_to).unwrap(), "□{n}_Σ at {up_to}");
        }
        let x = cube(n, Site::Q);
        for up_to in 0..=3 {
            assert!(counit_triangle(&x, up_to).unwrap(), "□{n} at {up_to}");
        }
    }
    let (b, _) = bdry(2, Site::QSigma);
    assert!(unit_triangle(&b, 3).unwrap());
    let (b, _) = bdry(2, Site::Q);
    assert!(counit_triangle(&b, 3).unwrap());
}

#[test]
fn unit_and_counit_are_natural() {
    let (b, inc) = bdry(2, Site::Q);
    let up_to = 3;
    let eta_b = adjunction_unit(&b, up_to).unwrap();
    let eta_c = adjunction_unit(inc.dst(), up_to).unwrap();
    let lifted = restrict_map(&symmetrize_map(&inc).unwrap(), up_to).unwrap();
    let inc3 = inc.extend(up_to).unwrap();
    for k in 0..=up_to {
        for x in 0..b.extend_to(up_to).unwrap().len(k) {
            assert_eq!(eta_c.apply(k, inc3.apply(k, x)), lifted.apply(k, eta_b.apply(k, x)));
        }
    }
    let (bs, inc_s) = bdry(2, Site::QSigma);
    let eps_b = adjunction_counit(&bs, up_to).unwrap();
    let eps_c = adjunction_counit(inc_s.dst(), up_to).unwrap();
    let ii = symmetrize_map(&restrict_map(&inc_s, up_to).unwrap()).unwrap();
    let inc_s3 = inc_s.extend(up_to).unwrap();
    for k in 0..=up_to {
        for q in 0..eps_b.src().len(k) {
            assert_eq!(inc_s3.apply(k, eps_b.apply(k, q)), eps_c.apply(k, ii.apply(k, q)));
        }
    }
    let s = symmetrization(&b).unwrap();
    for k in 0..=2 {
        for q in 0..s.object.len(k) {
            let (f, a) = s.representative(k, q);
            assert_eq!(s.class(k, &f, a).unwrap(), q);
        }
    }
}
