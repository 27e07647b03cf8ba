//! Lifting problems, fibrancy against caps, `□ⁿ`-homotopies and the
//! conjunction contraction of a cube.

use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::monoidal::{convolve, symmetrize_map, Convolution};
use crate::presheaf::{cap, find_map, for_each_map, representable, MapConstraints, Presheaf, PresheafMap};
use crate::site::{Entry, Morphism, Site};

fn same_object(a: &Presheaf, b: &Presheaf) -> bool {
    let top = a.truncation().min(b.truncation());
    a.site() == b.site() && (0..=top).all(|k| a.names(k) == b.names(k))
}

fn agree(f: &PresheafMap, g: &PresheafMap) -> Result<bool> {
    let top = f.src().truncation().max(g.src().truncation());
    let (f, g) = (f.extend(top)?, g.extend(top)?);
    Ok(f.components() == g.components())
}

/// A commuting square
///
/// ```text
/// A --top--> X
/// |          |
/// left     right
/// v          v
/// B -bottom> Y
/// ```
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub left: PresheafMap,
    pub right: PresheafMap,
    pub top: PresheafMap,
    pub bottom: PresheafMap,
}

impl LiftingProblem {
    /// Checks that the four maps fit together and the square commutes.
    pub fn new(left: PresheafMap, right: PresheafMap, top: PresheafMap, bottom: PresheafMap) -> Result<LiftingProblem> {
        let fits = same_object(left.src(), top.src())
            && same_object(left.dst(), bottom.src())
            && same_object(top.dst(), right.src())
            && same_object(right.dst(), bottom.dst());
        if !fits {
            return Err(Error::InvalidMap("the four maps do not form a square".into()));
        }
        if !agree(&top.then(&right)?, &left.then(&bottom)?)? {
            return Err(Error::InvalidMap("the square does not commute".into()));
        }
        Ok(LiftingProblem { left, right, top, bottom })
    }

    /// Both triangles commute for `filler: B → X`.
    pub fn is_filler(&self, filler: &PresheafMap) -> Result<bool> {
        Ok(agree(&self.left.then(filler)?, &self.top)? && agree(&filler.then(&self.right)?, &self.bottom)?)
    }
}

/// The first filler `B → X` in canonical order, or `None` when none exists.
pub fn solve_lifting(p: &LiftingProblem) -> Result<Option<PresheafMap>> {
    let t =
        [p.left.src(), p.left.dst(), p.right.src(), p.right.dst()].iter().map(|x| x.truncation()).max().unwrap_or(0);
    let left = p.left.extend(t)?;
    let top = p.top.extend(t)?;
    let right = p.right.extend(t)?;
    let bottom = p.bottom.extend(t)?;
    let b = left.dst().clone();
    let x = top.dst().clone();
    let mut fixed = Vec::new();
    for k in 0..=left.src().truncation() {
        for a in 0..left.src().len(k) {
            fixed.push((k, left.apply(k, a), top.apply(k, a)));
        }
    }
    let filter = |level: usize, rep: usize, v: usize| right.apply(level, v) == bottom.apply(level, rep);
    let constraints = MapConstraints { fixed, filter: Some(Box::new(filter)) };
    let filler = find_map(&b, &x, &constraints)?;
    if let Some(f) = &filler {
        if !p.is_filler(f)? {
            return Err(Error::InvalidMap("search returned a map that is not a filler".into()));
        }
    }
    Ok(filler)
}

/// Whether the maps out of one cap extend to the whole cube.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CapCheck {
    pub n: usize,
    pub i: usize,
    pub eps: bool,
    /// Number of maps from the cap.
    pub maps: usize,
    /// How many of them extend.
    pub extendable: usize,
}

impl CapCheck {
    pub fn passed(&self) -> bool {
        self.maps == self.extendable
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FibrancyReport {
    pub checks: Vec<CapCheck>,
}

impl FibrancyReport {
    pub fn fibrant(&self) -> bool {
        self.checks.iter().all(CapCheck::passed)
    }
}

/// The cap inclusion `⊓ⁿ_{i,ε} → □ⁿ` over `site`, transported by `i_!` for `QΣ`.
pub fn cap_inclusion(n: usize, i: usize, eps: bool, site: Site) -> Result<PresheafMap> {
    let (_, inc) = cap(n, i, eps)?;
    match site {
        Site::Q => Ok(inc),
        Site::QSigma => symmetrize_map(&inc),
    }
}

/// For `1 ≤ n ≤ up_to` and every cap, counts the maps `⊓ⁿ_{i,ε} → X` that
/// extend along the cap inclusion. At most `limit` maps are examined per cap.
pub fn is_fibrant(x: &Arc<Presheaf>, up_to: usize, limit: u128) -> Result<FibrancyReport> {
    let mut checks = Vec::new();
    for n in 1..=up_to {
        for i in 1..=n {
            for eps in [false, true] {
                let inc = cap_inclusion(n, i, eps, x.site())?;
                let (maps, extendable) = count_extensions(&inc, x, limit)?;
                checks.push(CapCheck { n, i, eps, maps, extendable });
            }
        }
    }
    Ok(FibrancyReport { checks })
}

/// Counts the maps `A → X` out of the source of `inc: A → B` and how many
/// of them extend along `inc`, i.e. lift against `X → *`.
pub fn count_extensions(inc: &PresheafMap, x: &Arc<Presheaf>, limit: u128) -> Result<(usize, usize)> {
    let inc = inc.extend(inc.dst().truncation().max(inc.src().truncation()))?;
    let (mut maps, mut extendable) = (0usize, 0usize);
    for_each_map(inc.src(), x, &MapConstraints::default(), |a| {
        maps += 1;
        if maps as u128 > limit {
            return Err(Error::ResourceBound { what: "maps out of the source", count: maps as u128, limit });
        }
        let mut fixed = Vec::new();
        for k in 0..=a.src().truncation() {
            for s in 0..a.src().len(k) {
                fixed.push((k, inc.apply(k, s), a.apply(k, s)));
            }
        }
        let constraints = MapConstraints { fixed, filter: None };
        if find_map(inc.dst(), a.dst(), &constraints)?.is_some() {
            extendable += 1;
        }
        Ok(true)
    })?;
    Ok((maps, extendable))
}

/// A map `h: X ⊗ □ⁿ → Y` read as a homotopy between its two endpoint restrictions.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub n: usize,
    pub h: PresheafMap,
    cylinder: Convolution,
}

/// The vertex `(ε, …, ε)` of `□ⁿ`.
fn corner(cube: &Presheaf, n: usize, eps: bool) -> usize {
    let c = if eps { Entry::One } else { Entry::Zero };
    let v = Morphism::new(0, vec![c; n]).expect("constant product");
    cube.labels(0).expect("cube labels").iter().position(|f| *f == v).expect("every vertex is present")
}

impl Homotopy {
    /// `X ⊗ □ⁿ`.
    pub fn cylinder(&self) -> &Convolution {
        &self.cylinder
    }

    /// The restriction along `id ⊗ {ε}: X ≅ X ⊗ □⁰ → X ⊗ □ⁿ`.
    pub fn endpoint(&self, eps: bool) -> Result<PresheafMap> {
        let x = self.cylinder.left();
        let v = corner(self.cylinder.right(), self.n, eps);
        let comps = (0..=x.truncation())
            .map(|m| {
                (0..x.len(m))
                    .map(|s| Ok(self.h.apply(m, self.cylinder.class(m, &Morphism::identity(m), (m, s), (0, v))?)))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        PresheafMap::new(x.clone(), self.h.dst().clone(), comps)
    }

    /// `f ∘ π` for the projection `π: X ⊗ □ⁿ → X`.
    pub fn constant(f: &PresheafMap, n: usize) -> Result<Homotopy> {
        let x = f.src();
        let cube = Arc::new(representable(n, x.site())?);
        let cylinder = convolve(x, &cube)?;
        let top = cylinder.product.truncation();
        let f = f.extend(top)?;
        let xe = f.src();
        let comps = (0..=top)
            .map(|k| {
                (0..cylinder.product.len(k))
                    .map(|q| {
                        let (h, (i, a), (j, _)) = cylinder.representative(k, q);
                        let proj = Morphism::new(i + j, (1..=i).map(|s| Entry::Conj(vec![s])).collect())?;
                        Ok(f.apply(k, xe.act(&proj.compose(&h)?, a)?))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        let h = PresheafMap::new(cylinder.product.clone(), f.dst().clone(), comps)?;
        Ok(Homotopy { n, h, cylinder })
    }
}

/// The first `□ⁿ`-homotopy from `f` to `g` in canonical order, or `None`.
pub fn find_homotopy(f: &PresheafMap, g: &PresheafMap, n: usize) -> Result<Option<Homotopy>> {
    if !same_object(f.src(), g.src()) || !same_object(f.dst(), g.dst()) {
        return Err(Error::InvalidMap("endpoints must be parallel maps".into()));
    }
    let x = f.src();
    let cube = Arc::new(representable(n, x.site())?);
    let cylinder = convolve(x, &cube)?;
    let (v0, v1) = (corner(&cube, n, false), corner(&cube, n, true));
    let mut fixed = Vec::new();
    for m in 0..=x.truncation() {
        let id = Morphism::identity(m);
        for s in 0..x.len(m) {
            fixed.push((m, cylinder.class(m, &id, (m, s), (0, v0))?, f.apply(m, s)));
            fixed.push((m, cylinder.class(m, &id, (m, s), (0, v1))?, g.apply(m, s)));
        }
    }
    let y = if f.dst().truncation() >= g.dst().truncation() { f.dst() } else { g.dst() };
    let constraints = MapConstraints { fixed, filter: None };
    let found = find_map(&cylinder.product, y, &constraints)?;
    Ok(found.map(|h| Homotopy { n, h, cylinder }))
}

/// `H = (x₁∧x_{n+1}, …, x_n∧x_{2n})` with its endpoint composites.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Contraction {
    pub n: usize,
    pub h: Morphism,
    /// `H ∘ (x₁, …, x_n, 0, …, 0)`.
    pub at_zero: Morphism,
    /// `H ∘ (x₁, …, x_n, 1, …, 1)`.
    pub at_one: Morphism,
    /// `at_zero` is the constant `0` product.
    pub zero_ok: bool,
    /// `at_one` is the identity.
    pub one_ok: bool,
}

impl Contraction {
    pub fn passed(&self) -> bool {
        self.zero_ok && self.one_ok
    }
}

/// The contraction of `□ⁿ` onto its `0` vertex.
pub fn contraction_h(n: usize) -> Result<Contraction> {
    if n == 0 {
        return Err(Error::BadDimension(0));
    }
    let h = Morphism::new(2 * n, (1..=n).map(|i| Entry::Conj(vec![i, n + i])).collect())?;
    let end = |c: Entry| Morphism::new(n, (1..=n).map(|i| Entry::Conj(vec![i])).chain(vec![c; n]).collect());
    let at_zero = h.compose(&end(Entry::Zero)?)?;
    let at_one = h.compose(&end(Entry::One)?)?;
    let zero_ok = at_zero == Morphism::new(n, vec![Entry::Zero; n])?;
    let one_ok = at_one == Morphism::identity(n);
    Ok(Contraction { n, h, at_zero, at_one, zero_ok, one_ok })
}

/// `H` as a homotopy `□ⁿ ⊗ □ⁿ → □ⁿ` over `QΣ`, `[h, a, b] ↦ H∘(a ⊕ b)∘h`.
pub fn contraction_homotopy(n: usize) -> Result<Homotopy> {
    let c = contraction_h(n)?;
    let cube = Arc::new(representable(n, Site::QSigma)?);
    let id = label_index(&cube, n, &Morphism::identity(n))?;
    let cylinder = convolve(&cube, &cube)?;
    let top = cylinder.product.truncation();
    let target = Arc::new(cube.extend_to(top)?);
    let comps = (0..=top)
        .map(|k| {
            (0..cylinder.product.len(k))
                .map(|q| {
                    let (h, (i, a), (j, b)) = cylinder.representative(k, q);
                    let la = &cube.labels(i).expect("cube labels")[a];
                    let lb = &cube.labels(j).expect("cube labels")[b];
                    let section = c.h.compose(&la.tensor(lb).compose(&h)?)?;
                    target.act(&section, id)
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    let h = PresheafMap::new(cylinder.product.clone(), target, comps)?;
    Ok(Homotopy { n, h, cylinder })
}

fn label_index(cube: &Presheaf, k: usize, f: &Morphism) -> Result<usize> {
    cube.labels(k)
        .and_then(|ls| ls.iter().position(|l| l == f))
        .ok_or_else(|| Error::InvalidMorphism(format!("{f} is not a section of the cube")))
}
