//! Eilenberg–Zilber structure of `QΣ`: split pushouts of epimorphisms and
//! exhaustive checks of the EZ axioms.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::factor::factor;
use super::hom::{
    automorphisms, classify, enumerate_hom, enumerate_minus, enumerate_plus, ez_factor, in_q, inverse_iso, is_minus,
    resource_limit, Site,
};
use super::morphism::{compose_word, delta, gamma, sigma, Morphism};
use crate::error::{Error, Result};

/// How a split-pushout witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum WitnessSource {
    Identity,
    Table,
    Search,
    Grid,
}

/// A split pushout square
///
/// ```text
///   A --a1--> B
///   |         |
///   a2        p2
///   v         v
///   C --p1--> P
/// ```
///
/// with sections `d0: P → B`, `d1: C → A`, `d1prime: B → A`, `d2prime: B → A`.
/// Generator squares always have `d1prime = d2prime ∘ d0 ∘ p2`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplitPushout {
    pub a1: Morphism,
    pub a2: Morphism,
    /// Cocone leg out of the target of `a1` (`τ1`).
    pub p2: Morphism,
    /// Cocone leg out of the target of `a2` (`τ2`).
    pub p1: Morphism,
    pub d0: Morphism,
    pub d1: Morphism,
    pub d1prime: Morphism,
    pub d2prime: Morphism,
    pub source: WitnessSource,
}

impl SplitPushout {
    /// `(τ1, τ2)`.
    pub fn cocone(&self) -> (&Morphism, &Morphism) {
        (&self.p2, &self.p1)
    }

    /// Evaluates commutativity and the six split-pushout identities, in order.
    pub fn identities(&self) -> [(&'static str, bool); 7] {
        identities(&self.a1, &self.a2, &self.p2, &self.p1, &self.d0, &self.d1, &self.d1prime, &self.d2prime)
    }

    pub fn is_valid(&self) -> bool {
        self.identities().iter().all(|(_, ok)| *ok)
    }

    /// Whether `d1prime = d2prime ∘ d0 ∘ p2`, so that five identities suffice.
    pub fn is_reduced(&self) -> bool {
        reduced_d1prime(&self.d2prime, &self.d0, &self.p2).as_ref() == Some(&self.d1prime)
    }
}

fn c(g: &Morphism, f: &Morphism) -> Option<Morphism> {
    g.compose(f).ok()
}

fn reduced_d1prime(d2: &Morphism, d0: &Morphism, p2: &Morphism) -> Option<Morphism> {
    c(d2, d0).and_then(|x| c(&x, p2))
}

#[allow(clippy::too_many_arguments)]
fn identities(
    a1: &Morphism,
    a2: &Morphism,
    p2: &Morphism,
    p1: &Morphism,
    d0: &Morphism,
    d1: &Morphism,
    d1p: &Morphism,
    d2: &Morphism,
) -> [(&'static str, bool); 7] {
    let id = |f: Option<Morphism>| f.is_some_and(|f| f.is_identity());
    let eq = |f: Option<Morphism>, g: Option<Morphism>| f.is_some() && f == g;
    [
        ("p2 a1 = p1 a2", eq(c(p2, a1), c(p1, a2))),
        ("a2 d1 = id", id(c(a2, d1))),
        ("p2 d0 = id", id(c(p2, d0))),
        ("a1 d2' = id", id(c(a1, d2))),
        ("d0 p1 = a1 d1", eq(c(d0, p1), c(a1, d1))),
        ("d0 p2 = a1 d1'", eq(c(d0, p2), c(a1, d1p))),
        ("a2 d1' = a2 d2'", eq(c(a2, d1p), c(a2, d2))),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    Sigma(usize),
    Gamma(usize),
}

fn as_generator(f: &Morphism) -> Option<Gen> {
    let nf = factor(f);
    if !nf.faces.is_empty() || !nf.perm.is_identity() {
        return None;
    }
    match (nf.conjs.as_slice(), nf.degens.as_slice()) {
        ([], [j]) => Some(Gen::Sigma(*j)),
        ([k], []) => Some(Gen::Gamma(*k)),
        _ => None,
    }
}

fn section_of(g: Gen, src: usize) -> Result<Morphism> {
    match g {
        Gen::Sigma(i) => delta(src - 1, i, false),
        Gen::Gamma(i) => delta(src - 1, i, true),
    }
}

/// Witnesses read off the case analysis for generator pairs, when it applies.
fn table(a1: Gen, a2: Gen, n: usize) -> Option<Result<[Morphism; 5]>> {
    use Gen::{Gamma as G, Sigma as S};
    let (m, l) = (n - 1, n.checked_sub(2)?);
    let row = |p2: Result<Morphism>, p1: Result<Morphism>, d0: Result<Morphism>, d1, d2| -> Result<[Morphism; 5]> {
        Ok([p2?, p1?, d0?, d1?, d2?])
    };
    let s = |i| sigma(l, i);
    let g = |i| gamma(l, i);
    Some(match (a1, a2) {
        (S(i), S(j)) if i < j => row(s(j - 1), s(i), delta(l, j - 1, false), delta(m, j, false), delta(m, i, false)),
        (G(i), G(j)) if j == i + 1 => row(g(i), g(i), delta(l, i + 1, true), delta(m, i + 2, true), delta(m, i, true)),
        (G(i), G(j)) if j > i + 1 => row(g(j - 1), g(i), delta(l, j - 1, true), delta(m, j, true), delta(m, i, true)),
        (S(j), G(i)) if i > j => row(g(i - 1), s(j), delta(l, i - 1, true), delta(m, i, true), delta(m, j, true)),
        (G(i), S(j)) if j == i => row(s(i), s(i), delta(l, i, false), delta(m, i, false), delta(m, i + 1, true)),
        (G(i), S(j)) if j == i + 1 => row(s(i), s(i), delta(l, i, false), delta(m, i + 1, false), delta(m, i, true)),
        (G(i), S(j)) if j > i + 1 => row(s(j - 1), g(i), delta(l, j - 1, false), delta(m, j, false), delta(m, i, true)),
        _ => return None,
    })
}

/// Sections of the epimorphism `e`, in canonical order.
fn sections(e: &Morphism) -> Result<Vec<Morphism>> {
    Ok(enumerate_plus(e.dst(), e.src(), Site::QSigma, resource_limit())?
        .into_iter()
        .filter(|s| e.compose(s).is_ok_and(|x| x.is_identity()))
        .collect())
}

/// Searches sections `(d0, d1, d1', d2')` for a given commuting cocone,
/// preferring `d1' = d2' d0 p2`.
fn find_witness(a1: &Morphism, a2: &Morphism, p2: &Morphism, p1: &Morphism) -> Result<Option<[Morphism; 4]>> {
    let d1s = sections(a2)?;
    let d2s = sections(a1)?;
    let d0s = sections(p2)?;
    let mut candidates = Vec::new();
    for d0 in &d0s {
        let Some(d0p1) = c(d0, p1) else { continue };
        for d1 in &d1s {
            if c(a1, d1).as_ref() == Some(&d0p1) {
                candidates.push((d0, d1));
            }
        }
    }
    let ok = |d0: &Morphism, d1: &Morphism, d1p: &Morphism, d2: &Morphism| {
        identities(a1, a2, p2, p1, d0, d1, d1p, d2).iter().all(|(_, ok)| *ok)
    };
    for &(d0, d1) in &candidates {
        for d2 in &d2s {
            if let Some(d1p) = reduced_d1prime(d2, d0, p2) {
                if ok(d0, d1, &d1p, d2) {
                    return Ok(Some([d0.clone(), d1.clone(), d1p, d2.clone()]));
                }
            }
        }
    }
    let all = enumerate_hom(a1.dst(), a1.src(), Site::QSigma, resource_limit())?;
    for &(d0, d1) in &candidates {
        let Some(d0p2) = c(d0, p2) else { continue };
        for d1p in all.iter().filter(|x| c(a1, x).as_ref() == Some(&d0p2)) {
            for d2 in &d2s {
                if ok(d0, d1, d1p, d2) {
                    return Ok(Some([d0.clone(), d1.clone(), d1p.clone(), d2.clone()]));
                }
            }
        }
    }
    Ok(None)
}

/// Searches commuting cocones of epimorphisms in increasing target degree.
fn search(a1: &Morphism, a2: &Morphism) -> Result<SplitPushout> {
    let (b, cc) = (a1.dst(), a2.dst());
    for l in 0..=b.min(cc) {
        let p2s = enumerate_minus(b, l, Site::QSigma, resource_limit())?;
        let p1s = enumerate_minus(cc, l, Site::QSigma, resource_limit())?;
        for p2 in &p2s {
            let top = p2.compose(a1)?;
            for p1 in &p1s {
                if p1.compose(a2)? != top {
                    continue;
                }
                if let Some([d0, d1, d1prime, d2prime]) = find_witness(a1, a2, p2, p1)? {
                    return Ok(SplitPushout {
                        a1: a1.clone(),
                        a2: a2.clone(),
                        p2: p2.clone(),
                        p1: p1.clone(),
                        d0,
                        d1,
                        d1prime,
                        d2prime,
                        source: WitnessSource::Search,
                    });
                }
            }
        }
    }
    Err(Error::InvalidMorphism(format!("no split pushout found for {a1} and {a2}")))
}

fn generator_pushout(a1: &Morphism, a2: &Morphism, g1: Gen, g2: Gen) -> Result<SplitPushout> {
    let n = a1.src();
    if g1 == g2 {
        let s = section_of(g1, n)?;
        let id = Morphism::identity(n - 1);
        return Ok(SplitPushout {
            a1: a1.clone(),
            a2: a2.clone(),
            p2: id.clone(),
            p1: id.clone(),
            d0: id,
            d1: s.clone(),
            d1prime: s.clone(),
            d2prime: s,
            source: WitnessSource::Identity,
        });
    }
    if let Some(row) = table(g1, g2, n) {
        let [p2, p1, d0, d1, d2prime] = row?;
        let d1prime = d2prime.compose(&d0)?.compose(&p2)?;
        return Ok(SplitPushout {
            a1: a1.clone(),
            a2: a2.clone(),
            p2,
            p1,
            d0,
            d1,
            d1prime,
            d2prime,
            source: WitnessSource::Table,
        });
    }
    search(a1, a2)
}

/// Splits a non-invertible epimorphism as `rest ∘ first`, where `first`
/// lowers the degree by one: a σ, or the last γ preceded by the cosymmetry.
fn peel(e: &Morphism) -> Result<(Morphism, Morphism)> {
    let nf = factor(e);
    let word = nf.generators()?;
    let k = word.len();
    let (rest, first) = if let Some(&j) = nf.degens.last() {
        (&word[..k - 1], sigma(e.src() - 1, j)?)
    } else {
        // word = γ … γ π
        let c = nf.conjs.len();
        (&word[..c - 1], compose_word(&word[c - 1..])?)
    };
    let rest = if rest.is_empty() { Morphism::identity(first.dst()) } else { compose_word(rest)? };
    Ok((rest, first))
}

/// Square for two epimorphisms that each lower the degree by one.
fn basic_pushout(a1: &Morphism, a2: &Morphism) -> Result<SplitPushout> {
    match (as_generator(a1), as_generator(a2)) {
        (Some(g1), Some(g2)) => generator_pushout(a1, a2, g1, g2),
        _ => search(a1, a2),
    }
}

/// Pushout cocone `(p2, p1)` of two epimorphisms, pasted from one-step squares.
fn grid(a1: &Morphism, a2: &Morphism) -> Result<(Morphism, Morphism)> {
    if let Some(inv) = inverse_iso(a1) {
        return Ok((a2.compose(&inv)?, Morphism::identity(a2.dst())));
    }
    if let Some(inv) = inverse_iso(a2) {
        return Ok((Morphism::identity(a1.dst()), a1.compose(&inv)?));
    }
    let (r, g) = peel(a1)?;
    let (s, h) = peel(a2)?;
    let sq = basic_pushout(&g, &h)?;
    let (u_g, u_h) = (sq.p2, sq.p1);
    let (v_u, v_c) = grid(&u_h, &s)?;
    let p_g = v_u.compose(&u_g)?;
    let (w_b, w_v) = grid(&r, &p_g)?;
    Ok((w_b, w_v.compose(&v_c)?))
}

/// Split pushout of two epimorphisms with a common source.
///
/// Generator pairs use the explicit case analysis when it applies and a
/// witness search otherwise; composite epimorphisms are pasted from generator
/// squares and then equipped with searched sections.
pub fn split_pushout(a1: &Morphism, a2: &Morphism) -> Result<SplitPushout> {
    if !is_minus(a1) || !is_minus(a2) {
        return Err(Error::NotEpi);
    }
    if a1.src() != a2.src() {
        return Err(Error::CompositionMismatch { left_src: a1.src(), right_dst: a2.src() });
    }
    if let (Some(g1), Some(g2)) = (as_generator(a1), as_generator(a2)) {
        return generator_pushout(a1, a2, g1, g2);
    }
    let (p2, p1) = grid(a1, a2)?;
    match find_witness(a1, a2, &p2, &p1)? {
        Some([d0, d1, d1prime, d2prime]) => Ok(SplitPushout {
            a1: a1.clone(),
            a2: a2.clone(),
            p2,
            p1,
            d0,
            d1,
            d1prime,
            d2prime,
            source: WitnessSource::Grid,
        }),
        None => search(a1, a2),
    }
}

/// One line of an EZ-axiom report.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EzCheck {
    pub axiom: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EzReport {
    pub checks: Vec<EzCheck>,
}

impl EzReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EzCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn count(&self, axiom: &str) -> usize {
        self.checks.iter().filter(|c| c.axiom == axiom).count()
    }
}

fn check(axiom: &str, subject: String, passed: bool, detail: String) -> EzCheck {
    EzCheck { axiom: axiom.into(), subject, passed, detail }
}

/// EZ1 over all arrows with objects `≤ dim`: monomorphisms are invertible
/// exactly when they preserve the degree, and otherwise raise it.
pub fn verify_ez1(dim: usize, site: Site) -> Result<EzReport> {
    let mut r = EzReport::default();
    for m in 0..=dim {
        for n in 0..=dim {
            for f in enumerate_hom(m, n, site, resource_limit())? {
                let cl = classify(&f);
                if !cl.is_mono {
                    continue;
                }
                let ok = if m == n { cl.is_iso } else { m < n && !cl.is_iso };
                r.checks.push(check("EZ1", format!("{f}"), ok, format!("iso={}", cl.is_iso)));
            }
        }
    }
    Ok(r)
}

/// All epi–mono factorizations `f = mono ∘ epi` in `QΣ`.
pub fn epi_mono_factorizations(f: &Morphism) -> Result<Vec<(Morphism, Morphism)>> {
    let mut out = Vec::new();
    for r in 0..=f.src().min(f.dst()) {
        let epis = enumerate_minus(f.src(), r, Site::QSigma, resource_limit())?;
        let monos = enumerate_plus(r, f.dst(), Site::QSigma, resource_limit())?;
        for e in &epis {
            for d in &monos {
                if d.compose(e)? == *f {
                    out.push((e.clone(), d.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Mediating maps `θ` with `θ e = e'` and `d' θ = d`.
pub fn mediating_maps(a: &(Morphism, Morphism), b: &(Morphism, Morphism)) -> Result<Vec<Morphism>> {
    let (e, d) = a;
    let (e2, d2) = b;
    if e.dst() != e2.dst() {
        return Ok(Vec::new());
    }
    let r = e.dst();
    let mut out = Vec::new();
    for t in enumerate_hom(r, r, Site::QSigma, resource_limit())? {
        if t.compose(e)? == *e2 && d2.compose(&t)? == *d {
            out.push(t);
        }
    }
    Ok(out)
}

/// EZ2 over all arrows with objects `≤ dim`: the read-off factorization is a
/// split epi followed by a mono, and any two factorizations found by search
/// are related by exactly one mediating map, which is a cosymmetry.
pub fn verify_ez2(dim: usize) -> Result<EzReport> {
    let mut r = EzReport::default();
    for m in 0..=dim {
        for n in 0..=dim {
            for f in enumerate_hom(m, n, Site::QSigma, resource_limit())? {
                let (e, d) = ez_factor(&f);
                let split = !sections(&e)?.is_empty();
                let ok = d.compose(&e)? == f && classify(&e).is_epi && classify(&d).is_mono && split;
                r.checks.push(check("EZ2", format!("{f}"), ok, format!("{d} o {e}")));
                let all = epi_mono_factorizations(&f)?;
                let mut unique = !all.is_empty();
                for a in &all {
                    for b in &all {
                        let t = mediating_maps(a, b)?;
                        unique &= t.len() == 1 && inverse_iso(&t[0]).is_some();
                    }
                }
                r.checks.push(check("EZ2-unique", format!("{f}"), unique, format!("{} factorizations", all.len())));
            }
        }
    }
    Ok(r)
}

/// Epimorphic generators out of `⟦n⟧`: `σ^1..σ^n` then `γ^1..γ^{n-1}`.
pub fn epi_generators(n: usize) -> Vec<Morphism> {
    let mut v = Vec::new();
    if n == 0 {
        return v;
    }
    for i in 1..=n {
        v.push(sigma(n - 1, i).expect("index in range"));
    }
    for i in 1..n {
        v.push(gamma(n - 1, i).expect("index in range"));
    }
    v
}

/// EZ3 for every ordered pair of epimorphic generators out of `⟦n⟧`, `n ≤ dim`.
pub fn verify_ez3(dim: usize) -> Result<EzReport> {
    let mut r = EzReport::default();
    for n in 1..=dim {
        let gens = epi_generators(n);
        for a1 in &gens {
            for a2 in &gens {
                let sp = split_pushout(a1, a2)?;
                let ids = sp.identities();
                let failed: Vec<&str> = ids.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
                let ok = failed.is_empty() && sp.is_reduced() && is_minus(&sp.p1) && is_minus(&sp.p2);
                r.checks.push(check(
                    "EZ3",
                    format!("{a1} , {a2}"),
                    ok,
                    format!("{:?} tau=({}, {}) failed={failed:?}", sp.source, sp.p2, sp.p1),
                ));
            }
        }
    }
    Ok(r)
}

/// `Aut(⟦m⟧) × Q⁺(m,n) → QΣ⁺(m,n)`, `(π, d) ↦ d ∘ π`, is a bijection.
pub fn verify_thickening(dim: usize) -> Result<EzReport> {
    let mut r = EzReport::default();
    for m in 0..=dim {
        for n in 0..=dim {
            let target = enumerate_plus(m, n, Site::QSigma, resource_limit())?;
            let qplus: Vec<Morphism> = enumerate_plus(m, n, Site::Q, resource_limit())?;
            debug_assert!(qplus.iter().all(in_q));
            let mut image = Vec::new();
            for p in automorphisms(m, Site::QSigma) {
                for d in &qplus {
                    image.push(d.compose(&p)?);
                }
            }
            let total = image.len();
            image.sort();
            image.dedup();
            let ok = image.len() == total && image == target;
            r.checks.push(check(
                "thickening",
                format!("[{m}] -> [{n}]"),
                ok,
                format!("{total} pairs, {} monos", target.len()),
            ));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::site::syntax::parse_morphism;

    fn m(s: &str) -> Morphism {
        parse_morphism(s).unwrap()
    }

    #[test]
    fn equal_sigmas_give_identity_cocone() {
        for n in 1..=3 {
            let s = sigma(n - 1, 1).unwrap();
            let sp = split_pushout(&s, &s).unwrap();
            assert!(sp.p2.is_identity() && sp.p1.is_identity() && sp.is_valid());
        }
    }

    #[test]
    fn sigma_pair_on_square() {
        let sp = split_pushout(&sigma(1, 1).unwrap(), &sigma(1, 2).unwrap()).unwrap();
        assert_eq!(sp.cocone(), (&sigma(0, 1).unwrap(), &sigma(0, 1).unwrap()));
        assert_eq!(sp.d0, delta(0, 1, false).unwrap());
        assert_eq!(sp.d1, delta(1, 2, false).unwrap());
        assert_eq!(sp.d2prime, delta(1, 1, false).unwrap());
        assert!(sp.is_valid());
    }

    #[test]
    fn gamma_sigma_equal_index() {
        let sp = split_pushout(&gamma(1, 1).unwrap(), &sigma(1, 1).unwrap()).unwrap();
        assert_eq!(sp.cocone(), (&sigma(0, 1).unwrap(), &sigma(0, 1).unwrap()));
        assert_eq!(sp.d0, delta(0, 1, false).unwrap());
        assert_eq!(sp.d1, delta(1, 1, false).unwrap());
        assert_eq!(sp.d2prime, delta(1, 2, true).unwrap());
        assert!(sp.is_valid());
    }

    #[test]
    fn rejects_non_epi() {
        assert_eq!(split_pushout(&m("(x1,0):1->2"), &m("(x1):1->1")), Err(Error::NotEpi));
    }

    #[test]
    fn composite_epis() {
        let a1 = m("(x3^x1):3->1");
        let a2 = m("(x2,x1):3->2");
        let sp = split_pushout(&a1, &a2).unwrap();
        assert!(sp.is_valid(), "{sp:?}");
        let a1 = m("(x2^x1,x3):3->2");
        let a2 = m("(x1^x3):3->1");
        assert!(split_pushout(&a1, &a2).unwrap().is_valid());
    }

    #[test]
    fn ez_axioms_small() {
        assert!(verify_ez1(2, Site::QSigma).unwrap().passed());
        assert!(verify_ez2(2).unwrap().passed());
        let r = verify_ez3(3).unwrap();
        assert!(r.passed(), "{:?}", r.failures().next());
        assert!(verify_thickening(2).unwrap().passed());
    }
}
