//! Standard presheaves and colimit constructions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::search::hom_set;
use super::{Kind, Presheaf, PresheafMap};
use crate::error::{Error, Result};
use crate::perm::{subgroup_closure, Permutation};
use crate::site::{self, resource_limit, Entry, Morphism, Site};
use crate::unionfind::UnionFind;

/// A subgroup `H ≤ Σ_n` given by generators, with its elements computed by closure.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SubgroupSpec {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl SubgroupSpec {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<SubgroupSpec> {
        let elements = subgroup_closure(n, &generators)?;
        Ok(SubgroupSpec { n, generators, elements })
    }

    pub fn trivial(n: usize) -> SubgroupSpec {
        SubgroupSpec { n, generators: Vec::new(), elements: alloc::vec![Permutation::identity(n)] }
    }

    /// The full symmetric group `Σ_n`.
    pub fn symmetric(n: usize) -> SubgroupSpec {
        let generators = (1..n).map(|i| Permutation::transposition(n, i).expect("adjacent index")).collect();
        SubgroupSpec { n, generators, elements: Permutation::all(n) }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in increasing one-line order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }
}

fn unique_names(names: Vec<String>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    names
        .into_iter()
        .map(|mut s| {
            while !seen.insert(s.clone()) {
                s.push('\'');
            }
            s
        })
        .collect()
}

fn hom_levels(top: usize, n: usize, site: Site, keep: impl Fn(&Morphism) -> bool) -> Result<Vec<Vec<Morphism>>> {
    (0..=top)
        .map(|m| Ok(site::enumerate_hom(m, n, site, resource_limit())?.into_iter().filter(&keep).collect()))
        .collect()
}

fn labelled(
    site: Site,
    top: usize,
    levels: Vec<Vec<Morphism>>,
    act: impl Fn(&Morphism) -> Morphism,
) -> Result<Presheaf> {
    let p = Presheaf::from_labels(
        site,
        Kind::Skeletal,
        top,
        &levels,
        |f| format!("{f}"),
        |g, f| act(&f.compose(&g.morphism()).expect("label precomposes")),
    )?;
    Ok(p.with_labels(levels))
}

/// Map between presheaves with morphism labels, matching labels through `to`.
fn label_map(src: Arc<Presheaf>, dst: Arc<Presheaf>, to: impl Fn(&Morphism) -> Morphism) -> Result<PresheafMap> {
    let top = src.truncation();
    let dst_ext = if dst.truncation() < top { Arc::new(dst.extend_to(top)?) } else { dst.clone() };
    let mut components = Vec::new();
    for k in 0..=top {
        let targets = dst_ext.labels(k).ok_or_else(|| Error::InvalidMap("target has no labels".into()))?;
        let index: BTreeMap<&Morphism, usize> = targets.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let sources = src.labels(k).ok_or_else(|| Error::InvalidMap("source has no labels".into()))?;
        let comp = sources
            .iter()
            .map(|f| index.get(&to(f)).copied().ok_or_else(|| Error::InvalidMap(format!("label {f} has no image"))))
            .collect::<Result<Vec<usize>>>()?;
        components.push(comp);
    }
    PresheafMap::new(src, dst, components)
}

/// The representable presheaf `□ⁿ` (over `Q`) or `□ⁿ_Σ` (over `QΣ`).
pub fn representable(n: usize, site: Site) -> Result<Presheaf> {
    labelled(site, n, hom_levels(n, n, site, |_| true)?, Morphism::clone)
}

/// `∂□ⁿ` with its inclusion into `□ⁿ`.
///
/// The boundary of `□⁰` is empty and is rejected with [`Error::BadDimension`];
/// use [`Presheaf::empty`] for it.
pub fn boundary(n: usize, site: Site) -> Result<(Arc<Presheaf>, PresheafMap)> {
    if n == 0 {
        return Err(Error::BadDimension(0));
    }
    let b = Arc::new(labelled(site, n - 1, hom_levels(n - 1, n, site, |_| true)?, Morphism::clone)?);
    let cube = Arc::new(representable(n, site)?);
    let inc = label_map(b.clone(), cube, Morphism::clone)?;
    Ok((b, inc))
}

/// The cap `⊓ⁿ_{i,ε} ⊂ □ⁿ` over `Q`: every face except the `(i, ε)` one.
pub fn cap(n: usize, i: usize, eps: bool) -> Result<(Arc<Presheaf>, PresheafMap)> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { what: "cap", index: i, bound: n });
    }
    let keep = |f: &Morphism| {
        f.entries().iter().enumerate().any(|(j, e)| match e {
            Entry::Conj(_) => false,
            c => (j + 1, *c == Entry::One) != (i, eps),
        })
    };
    let c = Arc::new(labelled(Site::Q, n - 1, hom_levels(n - 1, n, Site::Q, keep)?, Morphism::clone)?);
    let cube = Arc::new(representable(n, Site::Q)?);
    let inc = label_map(c.clone(), cube, Morphism::clone)?;
    Ok((c, inc))
}

/// `sk_k X` with its inclusion into `X`.
pub fn skeleton(x: &Arc<Presheaf>, k: usize) -> Result<(Arc<Presheaf>, PresheafMap)> {
    let top = x.truncation();
    if k >= top && x.kind() == Kind::Skeletal {
        return Ok((x.clone(), PresheafMap::identity(x.clone())));
    }
    if k > top {
        return Err(Error::BeyondTruncation { level: k, truncation: top });
    }
    let sk = Arc::new(x.restrict_levels(k, Kind::Skeletal));
    let components = (0..=k).map(|m| (0..x.len(m)).collect()).collect();
    let inc = PresheafMap::new(sk.clone(), x.clone(), components)?;
    Ok((sk, inc))
}

/// The truncated coskeleton: level `r ≤ up_to` is `Hom(sk_k □^r, X)`.
///
/// A section is recorded by its values on every arrow `⟦m⟧ → ⟦r⟧` with `m ≤ k`.
pub fn coskeleton(x: &Arc<Presheaf>, k: usize, up_to: usize) -> Result<Presheaf> {
    let xk = Arc::new(x.extend_to(k)?);
    let site = x.site();
    let homs: Vec<Vec<Vec<Morphism>>> = (0..=up_to).map(|r| hom_levels(k, r, site, |_| true)).collect::<Result<_>>()?;
    let index: Vec<Vec<BTreeMap<&Morphism, usize>>> =
        homs.iter().map(|h| h.iter().map(|l| l.iter().enumerate().map(|(j, f)| (f, j)).collect()).collect()).collect();
    let mut levels: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
    for r in 0..=up_to {
        let cube = Arc::new(representable(r, site)?);
        let (sk, _) = skeleton(&cube, k)?;
        let mut elems = Vec::new();
        for phi in hom_set(&sk, &xk, resource_limit())? {
            let phi = phi.extend(k)?;
            let src = phi.src().clone();
            let value: Vec<Vec<usize>> = (0..=k)
                .map(|m| {
                    let pos: BTreeMap<&Morphism, usize> =
                        src.labels(m).expect("cube labels").iter().enumerate().map(|(j, f)| (f, j)).collect();
                    homs[r][m].iter().map(|f| phi.apply(m, pos[f])).collect()
                })
                .collect();
            elems.push(value);
        }
        elems.sort();
        levels.push(elems);
    }
    let name = |v: &Vec<Vec<usize>>| {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .map(|(m, l)| l.iter().map(|&s| String::from(xk.name(m, s))).collect::<Vec<_>>().join(" "))
            .collect();
        format!("<{}>", parts.join(" | "))
    };
    let names: Vec<Vec<String>> = levels.iter().map(|l| unique_names(l.iter().map(name).collect())).collect();
    let positions: Vec<BTreeMap<&Vec<Vec<usize>>, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(j, v)| (v, j)).collect()).collect();
    let p = Presheaf::from_fn(site, Kind::Truncated, up_to, names, |g, s| {
        let h = g.morphism();
        let (a, r) = (h.src(), h.dst());
        let phi = &levels[r][s];
        let psi: Vec<Vec<usize>> = (0..=k)
            .map(|m| homs[a][m].iter().map(|f| phi[m][index[r][m][&h.compose(f).expect("composable")]]).collect())
            .collect();
        positions[a][&psi]
    });
    Ok(p)
}

/// `(epi, rep)` with `epi^* rep = x` and `rep` nondegenerate.
pub fn ez_decompose_section(x: &Presheaf, level: usize, s: usize) -> Result<(Morphism, usize)> {
    let ext = x.extend_to(level)?;
    if s >= ext.len(level) {
        return Err(Error::IndexOutOfRange { what: "section", index: s, bound: ext.len(level) });
    }
    let (epi, rep) = ext.decomposition(level, s);
    Ok((epi.clone(), rep))
}

/// Nondegenerate sections at level `k`; empty above the truncation of a skeletal presheaf.
pub fn nondegenerate_sections(x: &Presheaf, k: usize) -> Result<Vec<usize>> {
    if k > x.truncation() {
        return match x.kind() {
            Kind::Skeletal => Ok(Vec::new()),
            Kind::Truncated => Err(Error::BeyondTruncation { level: k, truncation: x.truncation() }),
        };
    }
    Ok(x.nondegenerate(k))
}

/// The subgroup of `Aut(⟦level⟧)` fixing a section.
pub fn stabilizer(x: &Presheaf, level: usize, s: usize) -> Result<SubgroupSpec> {
    let ext = x.extend_to(level)?;
    if s >= ext.len(level) {
        return Err(Error::IndexOutOfRange { what: "section", index: s, bound: ext.len(level) });
    }
    let elements: Vec<Permutation> = ext.automorphisms(level).into_iter().filter(|t| ext.act_perm(t, s) == s).collect();
    let generators = elements.iter().filter(|t| !t.is_identity()).cloned().collect();
    Ok(SubgroupSpec { n: level, generators, elements })
}

fn check_group(n: usize, h: &SubgroupSpec, site: Site) -> Result<()> {
    if h.n != n {
        return Err(Error::InvalidPermutation(format!("subgroup of Σ_{} used on ⟦{n}⟧", h.n)));
    }
    if site == Site::Q && !h.is_trivial() {
        return Err(Error::InvalidPresheaf("Q has no nontrivial cosymmetries".into()));
    }
    Ok(())
}

fn orbit_min(h: &SubgroupSpec, f: &Morphism) -> Morphism {
    h.elements
        .iter()
        .map(|p| Morphism::cosymmetry(p).compose(f).expect("automorphism of the target"))
        .min()
        .expect("group is nonempty")
}

fn orbit_levels(n: usize, top: usize, h: &SubgroupSpec, site: Site) -> Result<Vec<Vec<Morphism>>> {
    Ok(hom_levels(top, n, site, |_| true)?
        .into_iter()
        .map(|l| l.iter().map(|f| orbit_min(h, f)).collect::<BTreeSet<_>>().into_iter().collect())
        .collect())
}

/// `H\□ⁿ` with the orbit projection from `□ⁿ`.
pub fn quotient_by_group(n: usize, h: &SubgroupSpec, site: Site) -> Result<(Arc<Presheaf>, PresheafMap)> {
    check_group(n, h, site)?;
    let q = Arc::new(labelled(site, n, orbit_levels(n, n, h, site)?, |f| orbit_min(h, f))?);
    let cube = Arc::new(representable(n, site)?);
    let proj = label_map(cube, q.clone(), |f| orbit_min(h, f))?;
    Ok((q, proj))
}

/// `H\∂□ⁿ` with its inclusion into `H\□ⁿ`; for `n = 0` the empty presheaf.
pub fn quotient_boundary(n: usize, h: &SubgroupSpec, site: Site) -> Result<(Arc<Presheaf>, PresheafMap)> {
    let (q, _) = quotient_by_group(n, h, site)?;
    if n == 0 {
        let e = Arc::new(Presheaf::empty(site).with_labels(alloc::vec![Vec::new()]));
        let inc = PresheafMap::new(e.clone(), q, alloc::vec![Vec::new()])?;
        return Ok((e, inc));
    }
    let b = Arc::new(labelled(site, n - 1, orbit_levels(n, n - 1, h, site)?, |f| orbit_min(h, f))?);
    let inc = label_map(b.clone(), q, Morphism::clone)?;
    Ok((b, inc))
}

fn common_kind(kinds: impl IntoIterator<Item = Kind>) -> Kind {
    if kinds.into_iter().all(|k| k == Kind::Skeletal) {
        Kind::Skeletal
    } else {
        Kind::Truncated
    }
}

fn mismatch(e: Error) -> Error {
    match e {
        Error::BeyondTruncation { level, truncation } => Error::TruncationMismatch(format!(
            "a truncated input stops at level {truncation} but level {level} is needed"
        )),
        e => e,
    }
}

/// A pushout `B → P ← C` of a span `B ← A → C`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<Presheaf>,
    pub left: PresheafMap,
    pub right: PresheafMap,
}

impl Pushout {
    /// The map `P → T` induced by `via_left: B → T` and `via_right: C → T`.
    pub fn induced(&self, via_left: &PresheafMap, via_right: &PresheafMap) -> Result<PresheafMap> {
        let top = self.object.truncation();
        let (left, right) = (self.left.extend(top)?, self.right.extend(top)?);
        let (vl, vr) = (via_left.extend(top)?, via_right.extend(top)?);
        if (0..=top).any(|k| vl.dst().names(k) != vr.dst().names(k)) {
            return Err(Error::InvalidMap("induced legs have different targets".into()));
        }
        let mut comps: Vec<Vec<Option<usize>>> = (0..=top).map(|k| alloc::vec![None; self.object.len(k)]).collect();
        for k in 0..=top {
            let legs = [(&left, &vl), (&right, &vr)];
            for (leg, via) in legs {
                for s in 0..leg.src().len(k) {
                    let slot = &mut comps[k][leg.apply(k, s)];
                    let v = via.apply(k, s);
                    match *slot {
                        Some(w) if w != v => {
                            return Err(Error::InvalidMap("induced legs disagree on the span".into()));
                        }
                        _ => *slot = Some(v),
                    }
                }
            }
        }
        let comps = comps
            .into_iter()
            .map(|l| {
                l.into_iter()
                    .map(|v| v.ok_or_else(|| Error::InvalidMap("pushout class without preimage".into())))
                    .collect()
            })
            .collect::<Result<_>>()?;
        PresheafMap::new(self.object.clone(), vl.dst().clone(), comps)
    }
}

/// Levelwise pushout; classes are represented by their least member, `B` before `C`.
pub fn pushout(f: &PresheafMap, g: &PresheafMap) -> Result<Pushout> {
    let (a, b, c) = (f.src(), f.dst(), g.dst());
    if a.site() != g.src().site() || b.site() != c.site() {
        return Err(Error::InvalidMap("pushout legs live over different sites".into()));
    }
    let shared = a.truncation().min(g.src().truncation());
    if (0..=shared).any(|k| a.names(k) != g.src().names(k)) {
        return Err(Error::InvalidMap("pushout legs have different sources".into()));
    }
    let top = b.truncation().max(c.truncation()).max(a.truncation()).max(g.src().truncation());
    let f2 = f.extend(top).map_err(mismatch)?;
    let g2 = g.extend(top).map_err(mismatch)?;
    let bx = f2.dst().extend_to(top).map_err(mismatch)?;
    let cx = g2.dst().extend_to(top).map_err(mismatch)?;
    let mut class_of = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut names = Vec::new();
    for k in 0..=top {
        let nb = bx.len(k);
        let mut uf = UnionFind::new(nb + cx.len(k));
        for s in 0..f2.src().len(k) {
            uf.union(f2.apply(k, s), nb + g2.apply(k, s));
        }
        let (classes, count) = uf.classes();
        let mut first = alloc::vec![usize::MAX; count];
        for (e, &q) in classes.iter().enumerate() {
            if first[q] == usize::MAX {
                first[q] = e;
            }
        }
        let level_names = first
            .iter()
            .map(|&e| if e < nb { bx.name(k, e).into() } else { String::from(cx.name(k, e - nb)) })
            .collect();
        names.push(unique_names(level_names));
        class_of.push(classes);
        members.push(first);
    }
    let kind = common_kind([a.kind(), b.kind(), c.kind()]);
    let object = Arc::new(Presheaf::from_fn(b.site(), kind, top, names, |gen, q| {
        let (from, to) = (gen.from_level(), gen.to_level());
        let e = members[from][q];
        let nb_from = bx.len(from);
        let image = if e < nb_from { bx.act_gen(&gen, e) } else { bx.len(to) + cx.act_gen(&gen, e - nb_from) };
        class_of[to][image]
    }));
    let left_comps = (0..=b.truncation()).map(|k| (0..b.len(k)).map(|s| class_of[k][s]).collect()).collect();
    let right_comps =
        (0..=c.truncation()).map(|k| (0..c.len(k)).map(|s| class_of[k][bx.len(k) + s]).collect()).collect();
    let left = PresheafMap::new(b.clone(), object.clone(), left_comps)?;
    let right = PresheafMap::new(c.clone(), object.clone(), right_comps)?;
    Ok(Pushout { object, left, right })
}

/// A finite coproduct with its injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: Arc<Presheaf>,
    pub injections: Vec<PresheafMap>,
    offsets: Vec<Vec<usize>>,
}

impl Coproduct {
    /// The copairing `[f_1, …, f_r]` of maps out of the summands into a common target.
    pub fn copair(&self, maps: &[PresheafMap]) -> Result<PresheafMap> {
        if maps.len() != self.injections.len() {
            return Err(Error::InvalidMap("one map per summand is required".into()));
        }
        let top = self.object.truncation();
        let ext: Vec<PresheafMap> = maps.iter().map(|m| m.extend(top)).collect::<Result<_>>()?;
        let Some(first) = ext.first() else {
            return Err(Error::InvalidMap("copairing of no maps has no target".into()));
        };
        let dst = first.dst().clone();
        for m in &ext {
            if (0..=top).any(|k| m.dst().names(k) != dst.names(k)) {
                return Err(Error::InvalidMap("copaired maps have different targets".into()));
            }
        }
        let components =
            (0..=top).map(|k| ext.iter().flat_map(|m| m.components()[k].iter().copied()).collect()).collect();
        PresheafMap::new(self.object.clone(), dst, components)
    }

    /// Offset of summand `i` at level `k`.
    pub fn offset(&self, i: usize, k: usize) -> usize {
        self.offsets[i][k]
    }
}

/// `X_1 ⊔ … ⊔ X_r`, levelwise disjoint union in order.
pub fn coproduct(site: Site, xs: &[Arc<Presheaf>]) -> Result<Coproduct> {
    if xs.iter().any(|x| x.site() != site) {
        return Err(Error::InvalidMap("summands live over different sites".into()));
    }
    let top = xs.iter().map(|x| x.truncation()).max().unwrap_or(0);
    let ext: Vec<Presheaf> = xs.iter().map(|x| x.extend_to(top).map_err(mismatch)).collect::<Result<_>>()?;
    let mut offsets = alloc::vec![alloc::vec![0; top + 1]; xs.len()];
    let mut names = Vec::new();
    for k in 0..=top {
        let mut total = 0;
        let mut level = Vec::new();
        for (i, x) in ext.iter().enumerate() {
            offsets[i][k] = total;
            total += x.len(k);
            level.extend(x.names(k).iter().cloned());
        }
        names.push(unique_names(level));
    }
    let kind = common_kind(xs.iter().map(|x| x.kind()));
    let owner = |k: usize, s: usize| -> usize {
        (0..ext.len()).rev().find(|&i| offsets[i][k] <= s && ext[i].len(k) > 0).unwrap()
    };
    let object = Arc::new(Presheaf::from_fn(site, kind, top, names, |g, s| {
        let (from, to) = (g.from_level(), g.to_level());
        let i = owner(from, s);
        offsets[i][to] + ext[i].act_gen(&g, s - offsets[i][from])
    }));
    let injections = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let comps = (0..=x.truncation()).map(|k| (0..x.len(k)).map(|s| offsets[i][k] + s).collect()).collect();
            PresheafMap::new(x.clone(), object.clone(), comps)
        })
        .collect::<Result<_>>()?;
    Ok(Coproduct { object, injections, offsets })
}

/// `⨿ f_i : ⨿ A_i → ⨿ B_i`.
pub fn sum_maps(site: Site, maps: &[PresheafMap]) -> Result<(Coproduct, Coproduct, PresheafMap)> {
    let srcs: Vec<Arc<Presheaf>> = maps.iter().map(|m| m.src().clone()).collect();
    let dsts: Vec<Arc<Presheaf>> = maps.iter().map(|m| m.dst().clone()).collect();
    let a = coproduct(site, &srcs)?;
    let b = coproduct(site, &dsts)?;
    let legs: Vec<PresheafMap> = maps.iter().zip(&b.injections).map(|(m, inj)| m.then(inj)).collect::<Result<_>>()?;
    let sum = if legs.is_empty() {
        let comps = (0..=a.object.truncation()).map(|_| Vec::new()).collect();
        PresheafMap::new(a.object.clone(), b.object.clone(), comps)?
    } else {
        a.copair(&legs)?
    };
    Ok((a, b, sum))
}
