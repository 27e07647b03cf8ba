use std::sync::Arc;

use symcube_core::monoidal::symmetrization;
use symcube_core::presheaf::{boundary, cap, pushout, quotient_by_group, representable, SubgroupSpec};
use symcube_core::realize::{
    act_on_cube, act_on_simplex, homology, normalized_chains, realize, realize_map, realize_to, simplex_at,
    simplex_index, simplicial_homology, smith_normal_form, verify_cubical_monoid_delta1, HomologyGroup, Matrix,
    SimplicialMap, SimplicialSet,
};
use symcube_core::site::{enumerate_hom, DEFAULT_LIMIT};
use symcube_core::{Morphism, Presheaf, PresheafMap, Site};

fn m(s: &str) -> Morphism {
    s.parse().unwrap()
}

fn cube(n: usize, site: Site) -> Arc<Presheaf> {
    Arc::new(representable(n, site).unwrap())
}

fn point_map(x: &Arc<Presheaf>) -> PresheafMap {
    let top = x.truncation();
    let pt = Arc::new(Presheaf::point(x.site()).extend_to(top).unwrap());
    let comps = (0..=top).map(|k| vec![0; x.len(k)]).collect();
    PresheafMap::new(x.clone(), pt, comps).unwrap()
}

/// `□¹/∂□¹` as the pushout of the boundary inclusion against the point.
fn circle(site: Site) -> Arc<Presheaf> {
    let (_, inc) = boundary(1, site).unwrap();
    let collapse = point_map(inc.src());
    pushout(&inc, &collapse).unwrap().object
}

fn corpus() -> Vec<(String, Arc<Presheaf>)> {
    let mut out = Vec::new();
    for site in [Site::Q, Site::QSigma] {
        out.push((format!("point/{site:?}"), Arc::new(Presheaf::point(site))));
        for n in 1..=3 {
            out.push((format!("cube{n}/{site:?}"), cube(n, site)));
            out.push((format!("boundary{n}/{site:?}"), boundary(n, site).unwrap().0));
        }
        out.push((format!("circle/{site:?}"), circle(site)));
    }
    for (i, eps) in [(1, false), (2, true)] {
        out.push((format!("cap2_{i}{}", u8::from(eps)), cap(2, i, eps).unwrap().0));
    }
    let swap = SubgroupSpec::symmetric(2);
    out.push(("sigma2\\cube2".into(), quotient_by_group(2, &swap, Site::QSigma).unwrap().0));
    out
}

fn group(rank: usize) -> HomologyGroup {
    HomologyGroup { rank, torsion: vec![] }
}

/// Rank over ℚ by fraction-free elimination.
fn rational_rank(rows: Vec<Vec<i128>>) -> usize {
    let mut a = rows;
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, p);
        for i in rank + 1..r {
            for j in col + 1..c {
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
    }
    rank
}

fn betti_oracle(s: &SimplicialSet) -> Vec<usize> {
    let c = normalized_chains(s).unwrap();
    let ranks: Vec<usize> = c.differentials.iter().map(|d| rational_rank(d.to_rows())).collect();
    (0..ranks.len()).map(|k| c.rank(k) - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0)).collect()
}

#[test]
fn action_on_cubes_examples() {
    for n in 0..=3 {
        for k in 0..=3 {
            let table = act_on_cube(&Morphism::identity(n), k);
            assert!(table.iter().enumerate().all(|(i, &j)| i == j));
        }
    }
    let conj = act_on_cube(&m("(x1^x2):2->1"), 0);
    for (idx, &image) in conj.iter().enumerate() {
        let t = simplex_at(2, 0, idx);
        // threshold 0 is the vertex 1 at level 0
        let expected = if t == [0, 0] { 0 } else { 1 };
        assert_eq!(image, expected, "{t:?}");
    }
    for k in 0..=3 {
        let swap = act_on_cube(&m("(x2,x1):2->2"), k);
        for (idx, &image) in swap.iter().enumerate() {
            let t = simplex_at(2, k, idx);
            assert_eq!(simplex_at(2, k, image), vec![t[1], t[0]]);
        }
    }
    for k in 0..=3 {
        for idx in 0..(k + 2usize).pow(3) {
            assert_eq!(simplex_index(&simplex_at(3, k, idx), k), idx);
        }
    }
}

#[test]
fn action_is_functorial_and_simplicial() {
    for site in [Site::Q, Site::QSigma] {
        for a in 0..=2 {
            for b in 0..=2 {
                let fs = enumerate_hom(a, b, site, DEFAULT_LIMIT).unwrap();
                for c in 0..=2 {
                    let gs = enumerate_hom(b, c, site, DEFAULT_LIMIT).unwrap();
                    for f in &fs {
                        for g in &gs {
                            let gf = g.compose(f).unwrap();
                            for k in 0..=3 {
                                let (tf, tg, tgf) = (act_on_cube(f, k), act_on_cube(g, k), act_on_cube(&gf, k));
                                assert!(tf.iter().enumerate().all(|(s, &v)| tg[v] == tgf[s]), "{g} ∘ {f} at {k}");
                            }
                        }
                    }
                }
                for f in &fs {
                    let src = SimplicialSet::cube_power(a, 3);
                    let dst = SimplicialSet::cube_power(b, 3);
                    let comps = (0..=3).map(|k| act_on_cube(f, k)).collect();
                    SimplicialMap::new(Arc::new(src), Arc::new(dst), comps).unwrap();
                }
            }
        }
    }
}

#[test]
fn cube_powers_are_simplicial_sets() {
    for m in 0..=3 {
        let s = SimplicialSet::cube_power(m, 3);
        SimplicialSet::new(
            (0..=3).map(|k| (0..s.len(k)).map(|x| s.name(k, x).to_string()).collect()).collect(),
            (0..=3)
                .map(|k| {
                    if k == 0 {
                        vec![]
                    } else {
                        (0..=k).map(|i| (0..s.len(k)).map(|x| s.face(k, i, x)).collect()).collect()
                    }
                })
                .collect(),
            (0..3).map(|k| (0..=k).map(|i| (0..s.len(k)).map(|x| s.degeneracy(k, i, x)).collect()).collect()).collect(),
        )
        .unwrap();
        // Δ[1]^m has m! nondegenerate top simplices and none above
        let fact: usize = (1..=m).product();
        let counts = s.nondegenerate_counts();
        assert_eq!(counts[m], fact);
        assert!(counts[m + 1..].iter().all(|&c| c == 0));
    }
}

#[test]
fn smith_normal_form_examples() {
    let f = smith_normal_form(&Matrix::from_rows(&[vec![2]]).unwrap()).unwrap();
    assert_eq!(f.d.to_rows(), vec![vec![2]]);
    let f = smith_normal_form(&Matrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap()).unwrap();
    assert_eq!(f.d.to_rows(), vec![vec![1, 0], vec![0, 0]]);
    let id = Matrix::identity(3);
    let f = smith_normal_form(&id).unwrap();
    assert_eq!((f.d.clone(), f.u.clone(), f.v.clone()), (id.clone(), id.clone(), id));
}

#[test]
fn smith_normal_form_is_a_factorization() {
    let samples = [
        vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
        vec![vec![6, 0], vec![0, 4]],
        vec![vec![0, 0, 3], vec![0, 5, 0]],
        vec![vec![-1, 2], vec![3, -6], vec![4, 1]],
        vec![vec![0, 0], vec![0, 0]],
    ];
    for rows in samples {
        let a = Matrix::from_rows(&rows).unwrap();
        let f = smith_normal_form(&a).unwrap();
        assert_eq!(f.u.mul(&a).unwrap().mul(&f.v).unwrap(), f.d);
        let diag = f.invariant_factors();
        assert!(diag.iter().all(|&x| x > 0));
        assert!(diag.windows(2).all(|w| w[1] % w[0] == 0), "{diag:?}");
        for i in 0..f.d.rows() {
            for j in 0..f.d.cols() {
                assert!(i == j || f.d.get(i, j) == 0);
            }
        }
        assert_eq!(f.rank(), rational_rank(rows));
    }
    let f =
        smith_normal_form(&Matrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap()).unwrap();
    assert_eq!(f.invariant_factors(), vec![2, 6, 12]);
    let f = smith_normal_form(&Matrix::from_rows(&[vec![6, 0], vec![0, 4]]).unwrap()).unwrap();
    assert_eq!(f.invariant_factors(), vec![2, 12]);
}

#[test]
fn realization_examples() {
    let pt = realize(&Arc::new(Presheaf::point(Site::QSigma))).unwrap();
    assert_eq!(pt.simplicial.level_sizes(), vec![1]);
    let interval = realize(&cube(1, Site::QSigma)).unwrap();
    assert_eq!(interval.simplicial.nondegenerate_counts(), vec![2, 1]);
    for site in [Site::Q, Site::QSigma] {
        let b = realize(&boundary(2, site).unwrap().0).unwrap();
        assert_eq!(b.simplicial.nondegenerate_counts(), vec![4, 4]);
        b.simplicial.validate().unwrap();
        let c = normalized_chains(&b.simplicial).unwrap();
        assert_eq!((c.differentials[1].rows(), c.differentials[1].cols()), (4, 4));
        assert_eq!(rational_rank(c.differentials[1].to_rows()), 3);
    }
    let c = normalized_chains(&interval.simplicial).unwrap();
    let d1 = c.differentials[1].to_rows();
    let mut column: Vec<i128> = d1.iter().map(|r| r[0]).collect();
    column.sort();
    assert_eq!(column, vec![-1, 1]);
}

#[test]
fn realizations_of_cubes_are_cube_powers() {
    for site in [Site::Q, Site::QSigma] {
        for n in 0..=3 {
            let r = realize(&cube(n, site)).unwrap();
            r.simplicial.validate().unwrap();
            let power = SimplicialSet::cube_power(n, n);
            assert_eq!(r.simplicial.level_sizes(), power.level_sizes(), "n = {n}");
            let id = Morphism::identity(n);
            let top = r.source().labels(n).unwrap().iter().position(|f| *f == id).unwrap();
            let comps = (0..=n)
                .map(|k| (0..power.len(k)).map(|s| r.class(k, (n, top), &simplex_at(n, k, s)).unwrap()).collect())
                .collect();
            let map = SimplicialMap::new(Arc::new(power), r.simplicial.clone(), comps).unwrap();
            assert!(map.is_iso());
        }
    }
}

#[test]
fn homology_values() {
    for site in [Site::Q, Site::QSigma] {
        for n in 0..=3 {
            assert_eq!(homology(&cube(n, site)).unwrap().groups[0], group(1));
            assert!(homology(&cube(n, site)).unwrap().groups[1..].iter().all(HomologyGroup::is_zero));
        }
        let h = homology(&boundary(2, site).unwrap().0).unwrap();
        assert_eq!(h.groups, vec![group(1), group(1)]);
        let h = homology(&boundary(3, site).unwrap().0).unwrap();
        assert_eq!(h.groups, vec![group(1), group(0), group(1)]);
        let h = homology(&circle(site)).unwrap();
        assert_eq!(h.groups, vec![group(1), group(1)]);
    }
    let h = homology(&boundary(3, Site::QSigma).unwrap().0).unwrap();
    assert_eq!(h.to_string(), "H_0 = Z\nH_1 = 0\nH_2 = Z\n");
}

#[test]
fn homology_agrees_with_rational_oracle_and_euler() {
    for (name, x) in corpus() {
        let r = realize(&x).unwrap();
        r.simplicial.validate().unwrap();
        let h = simplicial_homology(&r.simplicial).unwrap();
        assert!(h.is_torsion_free(), "{name}");
        assert_eq!(h.betti(), betti_oracle(&r.simplicial), "{name}");
        assert_eq!(h.euler_characteristic(), r.simplicial.euler_characteristic(), "{name}");
    }
}

#[test]
fn higher_levels_add_only_degenerate_simplices() {
    for (name, x) in corpus() {
        let top = x.truncation();
        let r = realize_to(&x, top + 1).unwrap();
        assert_eq!(r.simplicial.nondegenerate_counts()[top + 1], 0, "{name}");
    }
}

#[test]
fn truncated_inputs_are_rejected() {
    let (b, _) = boundary(2, Site::QSigma).unwrap();
    let t = Arc::new(b.restrict_levels(0, symcube_core::Kind::Truncated));
    assert!(realize(&t).is_err());
}

#[test]
fn realization_is_functorial() {
    for site in [Site::Q, Site::QSigma] {
        for n in 1..=3 {
            let (b, inc) = boundary(n, site).unwrap();
            let inc = inc.extend(n).unwrap();
            let (rb, rc, map) = realize_map(&inc, n).unwrap();
            assert_eq!(map.src(), &rb.simplicial);
            assert_eq!(map.dst(), &rc.simplicial);
            assert!((0..=n).all(|k| {
                let mut seen = std::collections::BTreeSet::new();
                map.components()[k].iter().all(|&v| seen.insert(v))
            }));
            let collapse = point_map(&b);
            let pt = collapse.dst().clone();
            let (_, _, to_point) = realize_map(&collapse.extend(n).unwrap(), n).unwrap();
            let (_, _, composite) =
                realize_map(&inc.then(&point_map(&cube(n, site)).extend(n).unwrap()).unwrap(), n).unwrap();
            assert_eq!(to_point.components(), composite.components());
            assert_eq!(pt.len(0), 1);
        }
    }
}

#[test]
fn realization_preserves_pushouts() {
    for site in [Site::Q, Site::QSigma] {
        let (_, inc) = boundary(1, site).unwrap();
        let collapse = point_map(inc.src());
        let p = pushout(&inc, &collapse).unwrap();
        let top = 1;
        let (_, rp, left) = realize_map(&p.left.extend(top).unwrap(), top).unwrap();
        let (_, _, right) = realize_map(&p.right.extend(top).unwrap(), top).unwrap();
        for k in 0..=top {
            let mut hit = vec![false; rp.simplicial.len(k)];
            for &v in left.components()[k].iter().chain(&right.components()[k]) {
                hit[v] = true;
            }
            assert!(hit.iter().all(|&h| h), "level {k}");
        }
        // the two interval endpoints become one vertex
        assert_eq!(rp.simplicial.len(0), 1);
    }
}

#[test]
fn extension_along_the_inclusion_does_not_change_realization() {
    let mut inputs = vec![Arc::new(Presheaf::point(Site::Q))];
    for n in 1..=3 {
        inputs.push(cube(n, Site::Q));
        inputs.push(boundary(n, Site::Q).unwrap().0);
    }
    inputs.push(cap(2, 1, false).unwrap().0);
    inputs.push(circle(Site::Q));
    for x in inputs {
        let sym = symmetrization(&x).unwrap();
        let rx = realize(&x).unwrap();
        let ry = realize(&sym.object).unwrap();
        let top = x.truncation();
        let comps = (0..=top)
            .map(|k| {
                (0..rx.simplicial.len(k))
                    .map(|q| {
                        let ((n, xn), t) = rx.representative(k, q);
                        let y = sym.class(n, &Morphism::identity(n), (n, xn)).unwrap();
                        ry.class(k, (n, y), &t).unwrap()
                    })
                    .collect()
            })
            .collect();
        let map = SimplicialMap::new(rx.simplicial.clone(), ry.simplicial.clone(), comps).unwrap();
        assert!(map.is_iso(), "{:?}", x.level_sizes());
    }
}

#[test]
fn delta1_is_a_cubical_monoid() {
    let report = verify_cubical_monoid_delta1(3);
    assert!(report.passed(), "{report:?}");
    let laws: std::collections::BTreeSet<_> = report.checks.iter().map(|c| c.law.as_str()).collect();
    assert_eq!(laws.len(), 6);
    assert_eq!(report.checks.len(), 6 * 4);
}

#[test]
fn monoid_action_matches_pointwise_minimum() {
    for k in 0..=3 {
        for a in 0..=k + 1 {
            for b in 0..=k + 1 {
                let value = |t: usize, j: usize| u8::from(j >= t);
                let product = act_on_simplex(&m("(x1^x2):2->1"), &[a, b], k)[0];
                assert!((0..=k).all(|j| value(product, j) == value(a, j).min(value(b, j))));
            }
        }
    }
}
