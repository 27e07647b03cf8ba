//! The exhaustive property suites, one per acceptance criterion.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use symcube_core::homotopy::{contraction_h, find_homotopy};
use symcube_core::monoidal::{
    adjunction_unit, convolve, counit_triangle, pushout_product, right_unitor, symmetrize, symmetrize_map,
    symmetry_map, unit_triangle,
};
use symcube_core::presheaf::{
    boundary, cap, extend_level, find_isomorphism, pushout, quotient_by_group, representable, skeleton,
    verify_skeletal_pushout, SubgroupSpec,
};
use symcube_core::realize::{homology, realize, verify_cubical_monoid_delta1, HomologyGroup};
use symcube_core::site::{
    enumerate_factorizations, enumerate_hom, factor, hom_count, resource_limit, verify_ez1, verify_ez2, verify_ez3,
    verify_relations, vertices_action,
};
use symcube_core::{Entry, Morphism, Permutation, Presheaf, PresheafMap, Result, Site};

pub const CRITERIA: [&str; 12] = [
    "composition examples",
    "normal form",
    "relations",
    "EZ axioms",
    "hom cardinalities",
    "non-faithful vertices functor",
    "skeletal pushout squares",
    "convolution",
    "Kan extension",
    "homology",
    "cubical monoid on the interval",
    "homotopy",
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub dim: usize,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Runs criterion `id` (1-based) at scale `dim`; the reference scale is 3.
pub fn run_criterion(id: usize, dim: usize) -> Result<CriterionReport> {
    let mut t = Tally::default();
    match id {
        1 => compositions(&mut t)?,
        2 => normal_forms(&mut t, dim)?,
        3 => relations(&mut t, dim),
        4 => ez(&mut t, dim)?,
        5 => cardinalities(&mut t, dim)?,
        6 => vertices(&mut t)?,
        7 => pushouts(&mut t, dim)?,
        8 => convolution(&mut t, dim)?,
        9 => kan(&mut t, dim)?,
        10 => homology_values(&mut t, dim)?,
        11 => monoid(&mut t, dim),
        12 => homotopy(&mut t, dim)?,
        _ => return Err(symcube_core::Error::IndexOutOfRange { what: "criterion", index: id, bound: 12 }),
    }
    Ok(CriterionReport {
        id,
        name: CRITERIA[id - 1].into(),
        dim,
        passed: t.failures.is_empty(),
        checks: t.checks,
        failures: t.failures,
    })
}

pub fn run_all(dim: usize) -> Result<Vec<CriterionReport>> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, dim)).collect()
}

fn m(s: &str) -> Result<Morphism> {
    s.parse()
}

pub fn cube(n: usize, site: Site) -> Result<Arc<Presheaf>> {
    Ok(Arc::new(representable(n, site)?))
}

pub fn to_point(x: &Arc<Presheaf>) -> Result<PresheafMap> {
    let top = x.truncation();
    let pt = Arc::new(Presheaf::point(x.site()).extend_to(top)?);
    PresheafMap::new(x.clone(), pt, (0..=top).map(|k| vec![0; x.len(k)]).collect())
}

/// `□¹/∂□¹`.
pub fn circle(site: Site) -> Result<Arc<Presheaf>> {
    let (_, inc) = boundary(1, site)?;
    let collapse = to_point(inc.src())?;
    Ok(pushout(&inc, &collapse)?.object)
}

/// The objects whose skeletal filtration is checked by default.
pub fn pushout_corpus() -> Result<Vec<(String, Arc<Presheaf>)>> {
    let site = Site::QSigma;
    Ok(vec![
        ("cube2".into(), cube(2, site)?),
        ("sigma2\\cube2".into(), quotient_by_group(2, &SubgroupSpec::symmetric(2), site)?.0),
        ("boundary3".into(), boundary(3, site)?.0),
    ])
}

fn top_dim(x: &Presheaf) -> usize {
    (0..=x.truncation()).rev().find(|&k| !x.nondegenerate(k).is_empty()).unwrap_or(0)
}

fn compositions(t: &mut Tally) -> Result<()> {
    let cases = [
        ("(x3,x1^x2):3->2", "(0,x1,x5):5->3", "(x5,0):5->2"),
        ("(x2^x1):2->1", "(x1^x2,x3):3->2", "(x3^x1^x2):3->1"),
        ("(x1^x2):2->1", "(1,1):0->2", "(1):0->1"),
        ("(0,x1^x4):5->2", "(x10,0,0,1,x3):10->5", "(0,x10):10->2"),
    ];
    for (g, f, gf) in cases {
        let got = m(g)?.compose(&m(f)?)?.to_string();
        t.check(got == gf, || format!("{g} ∘ {f} = {got}, expected {gf}"));
    }
    let sum = m("(x1^x2):2->1")?.tensor(&m("(0,x1):1->2")?).to_string();
    t.check(sum == "(x1^x2,0,x3):3->3", || format!("tensor example gave {sum}"));
    Ok(())
}

fn normal_forms(t: &mut Tally, dim: usize) -> Result<()> {
    for a in 0..=dim {
        for b in 0..=dim {
            let hom = enumerate_hom(a, b, Site::QSigma, resource_limit())?;
            for f in &hom {
                let nf = factor(f);
                let ok = nf.validate().is_ok() && nf.evaluate().as_ref() == Ok(f);
                t.check(ok, || format!("factor round trip fails for {f}"));
            }
            let forms = enumerate_factorizations(a, b);
            t.check(forms.len() == hom.len(), || {
                format!("({a},{b}): {} normal forms, {} arrows", forms.len(), hom.len())
            });
            let images: BTreeSet<Morphism> = forms.iter().filter_map(|nf| nf.evaluate().ok()).collect();
            t.check(images == hom.iter().cloned().collect(), || format!("({a},{b}): normal forms miss arrows"));
        }
    }
    let nf = factor(&m("(x3,1,x1^x5^x2,0):5->4")?);
    let cycle = Permutation::from_cycles(4, &[vec![1, 2, 4, 3]])?;
    t.check(nf.perm == cycle, || format!("worked factorization has permutation {}", nf.perm.cycle_string()));
    t.check(nf.conjs == [2, 3] && nf.degens == [4], || format!("worked factorization is {nf}"));
    Ok(())
}

fn relations(t: &mut Tally, dim: usize) {
    let r = verify_relations(dim + 1);
    for i in &r.instances {
        t.check(i.holds, || format!("{}: {} ≠ {}", i.label, i.lhs, i.rhs));
    }
}

fn ez(t: &mut Tally, dim: usize) -> Result<()> {
    for r in [verify_ez1(dim, Site::QSigma)?, verify_ez2(dim)?, verify_ez3(dim + 1)?] {
        t.check(!r.checks.is_empty(), || "empty EZ report".into());
        for c in &r.checks {
            t.check(c.passed, || format!("{} at {}: {}", c.axiom, c.subject, c.detail));
        }
    }
    Ok(())
}

fn cardinalities(t: &mut Tally, dim: usize) -> Result<()> {
    let count = |a, b, site| -> Result<usize> { Ok(enumerate_hom(a, b, site, resource_limit())?.len()) };
    for n in 0..=2 * dim {
        let (to_point, from_point) = (count(n, 0, Site::QSigma)?, count(0, n, Site::QSigma)?);
        t.check(to_point == 1, || format!("|QΣ({n},0)| = {to_point}"));
        t.check(from_point == 1 << n, || format!("|QΣ(0,{n})| = {from_point}"));
    }
    let (a, b) = (count(2, 1, Site::QSigma)?, count(1, 1, Site::Q)?);
    t.check(a == 6, || format!("|QΣ(2,1)| = {a}"));
    t.check(b == 3, || format!("|Q(1,1)| = {b}"));
    for site in [Site::Q, Site::QSigma] {
        for a in 0..=dim {
            for b in 0..=dim {
                let (e, c) = (count(a, b, site)? as u128, hom_count(a, b, site));
                t.check(e == c, || format!("{site}({a},{b}): enumerated {e}, counted {c}"));
            }
        }
    }
    Ok(())
}

fn vertices(t: &mut Tally) -> Result<()> {
    let hom = enumerate_hom(2, 1, Site::QSigma, resource_limit())?;
    let mut witnesses = Vec::new();
    for (i, f) in hom.iter().enumerate() {
        for g in &hom[i + 1..] {
            if vertices_action(f) == vertices_action(g) {
                witnesses.push((f.to_string(), g.to_string()));
            }
        }
    }
    let expected = [("(x1^x2):2->1".to_string(), "(x2^x1):2->1".to_string())];
    t.check(witnesses == expected, || format!("witnesses {witnesses:?}"));
    Ok(())
}

fn pushouts(t: &mut Tally, dim: usize) -> Result<()> {
    for (name, x) in pushout_corpus()? {
        for k in 0..=dim {
            let r = verify_skeletal_pushout(&x, k)?;
            t.check(r.passed(), || format!("{name} at k = {k}: {}", r.detail));
        }
    }
    Ok(())
}

/// Images of a labelled map into a representable, as labels.
fn image_labels(f: &PresheafMap, k: usize) -> Result<BTreeSet<Morphism>> {
    let dst = f.dst().extend_to(k)?;
    let f = f.extend(k)?;
    let labels = dst.labels(k).unwrap_or_default();
    Ok(f.components()[k].iter().filter_map(|&v| labels.get(v).cloned()).collect())
}

fn monoidal_corpus(site: Site) -> Result<Vec<Arc<Presheaf>>> {
    Ok(vec![cube(0, site)?, cube(1, site)?, cube(2, site)?, boundary(1, site)?.0, boundary(2, site)?.0])
}

fn convolution(t: &mut Tally, dim: usize) -> Result<()> {
    for site in [Site::Q, Site::QSigma] {
        for a in 0..=dim {
            for b in 0..=dim - a {
                let c = convolve(&cube(a, site)?, &cube(b, site)?)?;
                let iso = find_isomorphism(&c.product, &cube(a + b, site)?)?;
                t.check(iso.is_some(), || format!("{a} ⊗ {b} over {site} is not a cube"));
            }
        }
        for x in monoidal_corpus(site)? {
            t.check(right_unitor(&x)?.is_iso()?, || format!("unitor of {x} is not invertible"));
        }
    }
    let site = Site::QSigma;
    for a in 1..dim {
        for b in 1..=dim - a {
            let (_, f) = boundary(a, site)?;
            let (_, g) = boundary(b, site)?;
            let corner = pushout_product(&f, &g)?;
            let (_, target) = boundary(a + b, site)?;
            t.check(corner.is_injective(), || format!("∂{a} ⊙ ∂{b} is not injective"));
            for k in 0..=a + b {
                let same = image_labels(&corner, k)? == image_labels(&target, k)?;
                t.check(same, || format!("∂{a} ⊙ ∂{b} differs from ∂{} at level {k}", a + b));
            }
            let iso = find_isomorphism(corner.src(), target.src())?;
            t.check(iso.is_some(), || format!("∂{a} ⊙ ∂{b} source is not ∂{}", a + b));
        }
    }
    let xs = monoidal_corpus(site)?;
    for x in &xs {
        for y in &xs {
            if top_dim(x) + top_dim(y) > dim {
                continue;
            }
            let s = symmetry_map(x, y)?;
            let round = s.then(&symmetry_map(y, x)?)?;
            let involutive = round.components().iter().all(|c| c.iter().enumerate().all(|(i, &v)| i == v));
            t.check(s.is_iso()?, || format!("symmetry {x} ⊗ {y} is not invertible"));
            t.check(involutive, || format!("symmetry {x} ⊗ {y} is not involutive"));
        }
    }
    Ok(())
}

fn kan(t: &mut Tally, dim: usize) -> Result<()> {
    for n in 0..=dim {
        let s = Arc::new(symmetrize(&cube(n, Site::Q)?)?);
        t.check(find_isomorphism(&s, &cube(n, Site::QSigma)?)?.is_some(), || format!("i_! □{n} ≇ □{n}_Σ"));
    }
    for n in 1..=dim {
        let (b, inc) = boundary(n, Site::Q)?;
        let (bs, _) = boundary(n, Site::QSigma)?;
        let s = Arc::new(symmetrize(&b)?);
        t.check(find_isomorphism(&s, &bs)?.is_some(), || format!("i_! ∂□{n} ≇ ∂□{n}_Σ"));
        t.check(symmetrize_map(&inc)?.is_injective(), || format!("i_! of ∂□{n} → □{n} is not injective"));
    }
    let mut xs = vec![cube(2, Site::Q)?, cube(dim, Site::Q)?, boundary(dim, Site::Q)?.0];
    xs.push(cap(2, 2, true)?.0);
    for x in &xs {
        for k in 0..x.truncation() {
            let (sk, _) = skeleton(x, k)?;
            let a = symmetrize(&sk)?;
            let (b, _) = skeleton(&Arc::new(symmetrize(x)?), k)?;
            t.check(a == *b, || format!("sk_{k} and i_! disagree on {x}"));
        }
    }
    let mut units = (0..=dim).map(|n| cube(n, Site::Q)).collect::<Result<Vec<_>>>()?;
    units.push(boundary(2, Site::Q)?.0);
    for x in &units {
        t.check(adjunction_unit(x, dim)?.is_injective(), || format!("unit at {x} is not injective"));
    }
    for n in 0..=2 {
        for up_to in 0..=dim {
            t.check(unit_triangle(&cube(n, Site::QSigma)?, up_to)?, || format!("unit triangle at □{n}_Σ, {up_to}"));
            t.check(counit_triangle(&cube(n, Site::Q)?, up_to)?, || format!("counit triangle at □{n}, {up_to}"));
        }
    }
    t.check(unit_triangle(&boundary(2, Site::QSigma)?.0, dim)?, || "unit triangle at ∂□²_Σ".into());
    t.check(counit_triangle(&boundary(2, Site::Q)?.0, dim)?, || "counit triangle at ∂□²".into());
    Ok(())
}

fn groups(ranks: &[usize]) -> Vec<HomologyGroup> {
    ranks.iter().map(|&rank| HomologyGroup { rank, torsion: Vec::new() }).collect()
}

fn homology_values(t: &mut Tally, dim: usize) -> Result<()> {
    let site = Site::QSigma;
    let mut expected = Vec::new();
    for n in 0..=dim {
        expected.push((format!("□{n}"), cube(n, site)?, vec![1]));
    }
    expected.push(("∂□²".into(), boundary(2, site)?.0, vec![1, 1]));
    expected.push(("∂□³".into(), boundary(3, site)?.0, vec![1, 0, 1]));
    expected.push(("□¹/∂□¹".into(), circle(site)?, vec![1, 1]));
    for (name, x, ranks) in &expected {
        let h = homology(x)?;
        let mut got = h.groups.clone();
        while got.len() > ranks.len() && got.last().is_some_and(HomologyGroup::is_zero) {
            got.pop();
        }
        t.check(got == groups(ranks), || format!("H({name}) = {:?}", h.groups));
    }
    let mut corpus: Vec<Arc<Presheaf>> = expected.into_iter().map(|(_, x, _)| x).collect();
    for s in [Site::Q, Site::QSigma] {
        corpus.push(Arc::new(Presheaf::point(s)));
        corpus.push(circle(s)?);
        for n in 1..=dim {
            corpus.push(cube(n, s)?);
            corpus.push(boundary(n, s)?.0);
        }
    }
    corpus.push(cap(2, 1, false)?.0);
    corpus.push(quotient_by_group(2, &SubgroupSpec::symmetric(2), site)?.0);
    for x in &corpus {
        let r = realize(x)?;
        let h = homology(x)?;
        let (cells, betti) = (r.simplicial.euler_characteristic(), h.euler_characteristic());
        t.check(cells == betti, || format!("χ({x}): cells {cells}, Betti {betti}"));
    }
    Ok(())
}

fn monoid(t: &mut Tally, dim: usize) {
    for c in verify_cubical_monoid_delta1(dim).checks {
        t.check(c.passed, || format!("{} at level {}", c.law, c.level));
    }
}

fn vertex(x: &Arc<Presheaf>, eps: bool) -> Result<PresheafMap> {
    let c = if eps { Entry::One } else { Entry::Zero };
    let v = Morphism::new(0, vec![c])?;
    let idx = x.labels(0).and_then(|l| l.iter().position(|f| *f == v));
    let idx = idx.ok_or_else(|| symcube_core::Error::InvalidPresheaf("missing labelled vertex".into()))?;
    PresheafMap::new(Arc::new(Presheaf::point(x.site())), x.clone(), vec![vec![idx]])
}

fn homotopy(t: &mut Tally, dim: usize) -> Result<()> {
    for n in 1..=dim + 1 {
        let c = contraction_h(n)?;
        t.check(c.passed(), || format!("contraction endpoints fail at n = {n}"));
    }
    let c = cube(1, Site::QSigma)?;
    let h = find_homotopy(&vertex(&c, false)?, &vertex(&c, true)?, 1)?;
    t.check(h.is_some(), || "{0} and {1} are not homotopic in □¹_Σ".into());
    for site in [Site::Q, Site::QSigma] {
        let (b, _) = boundary(1, site)?;
        let (f, g) = (vertex(&b, false)?, vertex(&b, true)?);
        t.check(find_homotopy(&f, &g, 1)?.is_none(), || format!("{{0}} ≃ {{1}} in ∂□¹ over {site}"));
        t.check(find_homotopy(&g, &f, 1)?.is_none(), || format!("{{1}} ≃ {{0}} in ∂□¹ over {site}"));
    }
    let mut corpus = vec![cube(1, Site::QSigma)?, cube(2, Site::QSigma)?, cube(1, Site::Q)?];
    corpus.push(boundary(2, Site::QSigma)?.0);
    corpus.push(boundary(2, Site::Q)?.0);
    corpus.push(quotient_by_group(2, &SubgroupSpec::symmetric(2), Site::QSigma)?.0);
    for x in &corpus {
        for n in x.truncation() + 1..=x.truncation() + 2 {
            let e = extend_level(x, n)?;
            t.check(e.agrees(), || format!("level extensions of {x} disagree at {n}"));
        }
    }
    Ok(())
}
