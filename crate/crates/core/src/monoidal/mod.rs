//! Day convolution, pushout-products and the adjunction `i_! ⊣ i*` between
//! cubical sets over `Q` and extended cubical sets over `QΣ`.
//!
//! Every construction is a levelwise coend computed by union-find over the
//! stored levels of its skeletal inputs. Classes are numbered by their least
//! member in degree-first order, so enlarging the stored range of an input
//! leaves the names and order of the output sections unchanged.

mod coend;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use coend::{Arrow, Diagram, Level};

use crate::error::{Error, Result};
use crate::presheaf::{pushout, Gen, Kind, Presheaf, PresheafMap};
use crate::site::{Morphism, Site};

/// `X ⊗ Y` together with the coend data identifying its sections.
#[derive(Clone, Debug)]
pub struct Convolution {
    pub product: Arc<Presheaf>,
    left: Arc<Presheaf>,
    right: Arc<Presheaf>,
    diagram: Diagram,
    levels: Vec<Level>,
    index: BTreeMap<(usize, usize), usize>,
    pairs: Vec<(usize, usize)>,
}

impl Convolution {
    pub fn left(&self) -> &Arc<Presheaf> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Presheaf> {
        &self.right
    }

    /// The class `[h, x, y]` at level `k ≤ N_X + N_Y`, for `h: ⟦k⟧ → ⟦i+j⟧`,
    /// `x ∈ X_i` and `y ∈ Y_j`.
    pub fn class(&self, k: usize, h: &Morphism, (i, x): (usize, usize), (j, y): (usize, usize)) -> Result<usize> {
        let level =
            self.levels.get(k).ok_or(Error::BeyondTruncation { level: k, truncation: self.levels.len() - 1 })?;
        let d = *self.index.get(&(i, j)).ok_or(Error::BeyondTruncation { level: i.max(j), truncation: k })?;
        let ny = self.right.len(j);
        if x >= self.left.len(i) || y >= ny {
            return Err(Error::IndexOutOfRange { what: "section", index: x.max(y), bound: self.left.len(i).max(ny) });
        }
        level
            .class(&self.diagram, d, h, x * ny + y)
            .ok_or_else(|| Error::InvalidMorphism(format!("{h} is not an arrow into ⟦{}⟧", i + j)))
    }

    /// The least member `(h, (i, x), (j, y))` of class `q` at level `k`.
    pub fn representative(&self, k: usize, q: usize) -> (Morphism, (usize, usize), (usize, usize)) {
        let (d, h, s) = &self.levels[k].reps[q];
        let (i, j) = self.split(*d);
        let ny = self.right.len(j);
        (h.clone(), (i, s / ny), (j, s % ny))
    }

    fn split(&self, d: usize) -> (usize, usize) {
        self.pairs[d]
    }
}

fn require_skeletal(x: &Presheaf) -> Result<()> {
    match x.kind() {
        Kind::Skeletal => Ok(()),
        Kind::Truncated => Err(Error::TruncationMismatch(format!(
            "convolution needs skeletal inputs; a truncated input stops at level {}",
            x.truncation()
        ))),
    }
}

fn same_site(a: Site, b: Site) -> Result<()> {
    if a != b {
        return Err(Error::TruncationMismatch(format!("inputs live over {a} and {b}")));
    }
    Ok(())
}

/// Day convolution of skeletal presheaves over the same site.
pub fn convolve(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<Convolution> {
    same_site(x.site(), y.site())?;
    require_skeletal(x)?;
    require_skeletal(y)?;
    let site = x.site();
    let (nx, ny) = (x.truncation(), y.truncation());
    let (mut index, mut pairs) = (BTreeMap::new(), Vec::new());
    let (mut degrees, mut sizes) = (Vec::new(), Vec::new());
    for deg in 0..=nx + ny {
        for i in deg.saturating_sub(ny)..=deg.min(nx) {
            index.insert((i, deg - i), degrees.len());
            pairs.push((i, deg - i));
            degrees.push(deg);
            sizes.push(x.len(i) * y.len(deg - i));
        }
    }
    let mut arrows = Vec::new();
    for g in Gen::all(site, nx) {
        let (a, b) = (g.to_level(), g.from_level());
        let table = x.gen_table(&g).expect("stored generator");
        for j in 0..=ny {
            let m = y.len(j);
            let action = (0..x.len(b) * m).map(|s| table[s / m] * m + s % m).collect();
            let morphism = g.morphism().tensor(&Morphism::identity(j));
            arrows.push(Arrow { src: index[&(a, j)], dst: index[&(b, j)], morphism, action });
        }
    }
    for g in Gen::all(site, ny) {
        let (a, b) = (g.to_level(), g.from_level());
        let table = y.gen_table(&g).expect("stored generator");
        for i in 0..=nx {
            let (mb, ma) = (y.len(b), y.len(a));
            let action = (0..x.len(i) * mb).map(|s| (s / mb) * ma + table[s % mb]).collect();
            let morphism = Morphism::identity(i).tensor(&g.morphism());
            arrows.push(Arrow { src: index[&(i, a)], dst: index[&(i, b)], morphism, action });
        }
    }
    let diagram = Diagram { site, degrees, sizes, arrows };
    let (product, levels) = diagram.presheaf(Kind::Skeletal, nx + ny, |d, h, s| {
        let (i, j) = pairs[d];
        let m = y.len(j);
        format!("[{h}|{}|{}]", x.name(i, s / m), y.name(j, s % m))
    })?;
    let product = match (0..=nx).map(|i| x.labels(i)).collect::<Option<Vec<_>>>() {
        Some(lx) => match (0..=ny).map(|j| y.labels(j)).collect::<Option<Vec<_>>>() {
            Some(ly) => {
                let labels = levels
                    .iter()
                    .map(|l| {
                        l.reps
                            .iter()
                            .map(|(d, h, s)| {
                                let (i, j) = pairs[*d];
                                let m = y.len(j);
                                lx[i][s / m].tensor(&ly[j][s % m]).compose(h).expect("labels compose")
                            })
                            .collect()
                    })
                    .collect();
                product.with_labels(labels)
            }
            None => product,
        },
        None => product,
    };
    Ok(Convolution { product: Arc::new(product), left: x.clone(), right: y.clone(), diagram, levels, index, pairs })
}

/// `f` with source and target stored to the same level.
fn level_map(f: &PresheafMap) -> Result<PresheafMap> {
    f.extend(f.src().truncation().max(f.dst().truncation()))
}

/// `f ⊗ g` between convolutions of prepared maps.
fn tensor_between(src: &Convolution, dst: &Convolution, f: &PresheafMap, g: &PresheafMap) -> Result<PresheafMap> {
    let comps = (0..=src.product.truncation())
        .map(|k| {
            (0..src.product.len(k))
                .map(|q| {
                    let (h, (i, x), (j, y)) = src.representative(k, q);
                    dst.class(k, &h, (i, f.apply(i, x)), (j, g.apply(j, y)))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    PresheafMap::new(src.product.clone(), dst.product.clone(), comps)
}

/// `f ⊗ g : X ⊗ Y → X' ⊗ Y'`, with `[h, x, y] ↦ [h, f(x), g(y)]`.
pub fn tensor_maps(f: &PresheafMap, g: &PresheafMap) -> Result<PresheafMap> {
    same_site(f.src().site(), g.src().site())?;
    let (f, g) = (level_map(f)?, level_map(g)?);
    let src = convolve(f.src(), g.src())?;
    let dst = convolve(f.dst(), g.dst())?;
    tensor_between(&src, &dst, &f, &g)
}

/// The corner map `f ⊙ g` from the pushout of `A⊗L ← A⊗K → B⊗K` into `B⊗L`,
/// for `f: A → B` and `g: K → L`.
pub fn pushout_product(f: &PresheafMap, g: &PresheafMap) -> Result<PresheafMap> {
    same_site(f.src().site(), g.src().site())?;
    let (f, g) = (level_map(f)?, level_map(g)?);
    let id_a = PresheafMap::identity(f.src().clone());
    let id_b = PresheafMap::identity(f.dst().clone());
    let id_k = PresheafMap::identity(g.src().clone());
    let id_l = PresheafMap::identity(g.dst().clone());
    let ak = convolve(f.src(), g.src())?;
    let al = convolve(f.src(), g.dst())?;
    let bk = convolve(f.dst(), g.src())?;
    let bl = convolve(f.dst(), g.dst())?;
    let f_k = tensor_between(&ak, &bk, &f, &id_k)?;
    let a_g = tensor_between(&ak, &al, &id_a, &g)?;
    let b_g = tensor_between(&bk, &bl, &id_b, &g)?;
    let f_l = tensor_between(&al, &bl, &f, &id_l)?;
    pushout(&f_k, &a_g)?.induced(&b_g, &f_l)
}

/// The symmetry `X ⊗ Y → Y ⊗ X`, `[h, x, y] ↦ [τ∘h, y, x]`.
pub fn symmetry_map(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<PresheafMap> {
    if x.site() != Site::QSigma {
        return Err(Error::InvalidMorphism(String::from("the symmetry is not an arrow of Q")));
    }
    let xy = convolve(x, y)?;
    let yx = convolve(y, x)?;
    let comps = (0..=xy.product.truncation())
        .map(|k| {
            (0..xy.product.len(k))
                .map(|q| {
                    let (h, (i, a), (j, b)) = xy.representative(k, q);
                    yx.class(k, &Morphism::symmetry(i, j).compose(&h)?, (j, b), (i, a))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    PresheafMap::new(xy.product.clone(), yx.product.clone(), comps)
}

/// The unit isomorphism `X ⊗ □⁰ → X`, `[h, x, *] ↦ h^* x`.
pub fn right_unitor(x: &Arc<Presheaf>) -> Result<PresheafMap> {
    let point = Arc::new(Presheaf::point(x.site()));
    let c = convolve(x, &point)?;
    let comps = (0..=c.product.truncation())
        .map(|k| {
            (0..c.product.len(k))
                .map(|q| {
                    let (h, (_, a), _) = c.representative(k, q);
                    x.act(&h, a)
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    PresheafMap::new(c.product.clone(), x.clone(), comps)
}

/// `i_! X` together with the coend data identifying its sections.
#[derive(Clone, Debug)]
pub struct Symmetrization {
    pub object: Arc<Presheaf>,
    source: Arc<Presheaf>,
    diagram: Diagram,
    levels: Vec<Level>,
}

impl Symmetrization {
    pub fn source(&self) -> &Arc<Presheaf> {
        &self.source
    }

    /// The class `[f, x]` at level `k ≤ N`, for `f: ⟦k⟧ → ⟦m⟧` in `QΣ` and `x ∈ X_m`.
    pub fn class(&self, k: usize, f: &Morphism, (m, x): (usize, usize)) -> Result<usize> {
        let top = self.levels.len() - 1;
        let level = self.levels.get(k).ok_or(Error::BeyondTruncation { level: k, truncation: top })?;
        if m > top {
            return Err(Error::BeyondTruncation { level: m, truncation: top });
        }
        if x >= self.source.len(m) {
            return Err(Error::IndexOutOfRange { what: "section", index: x, bound: self.source.len(m) });
        }
        level
            .class(&self.diagram, m, f, x)
            .ok_or_else(|| Error::InvalidMorphism(format!("{f} is not an arrow into ⟦{m}⟧")))
    }

    /// The least member `(f, (m, x))` of class `q` at level `k`.
    pub fn representative(&self, k: usize, q: usize) -> (Morphism, (usize, usize)) {
        let (m, f, x) = &self.levels[k].reps[q];
        (f.clone(), (*m, *x))
    }
}

fn require_site(x: &Presheaf, site: Site) -> Result<()> {
    if x.site() != site {
        return Err(Error::InvalidPresheaf(format!("expected a presheaf over {site}, found one over {}", x.site())));
    }
    Ok(())
}

/// `i_! X` for `X` over `Q`, with its coend data.
///
/// A truncated input gives a truncated output agreeing with `i_!` of any
/// extension of the input at the stored levels.
pub fn symmetrization(x: &Arc<Presheaf>) -> Result<Symmetrization> {
    require_site(x, Site::Q)?;
    let n = x.truncation();
    let arrows = Gen::all(Site::Q, n)
        .into_iter()
        .map(|g| Arrow {
            src: g.to_level(),
            dst: g.from_level(),
            morphism: g.morphism(),
            action: x.gen_table(&g).expect("stored generator").to_vec(),
        })
        .collect();
    let diagram = Diagram { site: Site::QSigma, degrees: (0..=n).collect(), sizes: x.level_sizes(), arrows };
    let (object, levels) = diagram.presheaf(x.kind(), n, |m, f, s| format!("[{f}|{}]", x.name(m, s)))?;
    let object = match (0..=n).map(|m| x.labels(m)).collect::<Option<Vec<_>>>() {
        Some(lx) => {
            let labels = levels
                .iter()
                .map(|l| l.reps.iter().map(|(m, f, s)| lx[*m][*s].compose(f).expect("labels compose")).collect())
                .collect();
            object.with_labels(labels)
        }
        None => object,
    };
    Ok(Symmetrization { object: Arc::new(object), source: x.clone(), diagram, levels })
}

/// The left Kan extension `i_! X` of a presheaf over `Q` to `QΣ`.
pub fn symmetrize(x: &Arc<Presheaf>) -> Result<Presheaf> {
    Ok(Arc::unwrap_or_clone(symmetrization(x)?.object))
}

/// `i_! f`, `[h, a] ↦ [h, f(a)]`.
pub fn symmetrize_map(f: &PresheafMap) -> Result<PresheafMap> {
    require_site(f.src(), Site::Q)?;
    let f = level_map(f)?;
    let sa = symmetrization(f.src())?;
    let sb = symmetrization(f.dst())?;
    let comps = (0..=sa.object.truncation())
        .map(|k| {
            (0..sa.object.len(k))
                .map(|q| {
                    let (h, (m, a)) = sa.representative(k, q);
                    sb.class(k, &h, (m, f.apply(m, a)))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    PresheafMap::new(sa.object.clone(), sb.object.clone(), comps)
}

/// `Y` stored to exactly `up_to`, extending or cutting as needed.
fn stored_to(y: &Presheaf, up_to: usize) -> Result<Presheaf> {
    if y.truncation() < up_to {
        y.extend_to(up_to)
    } else {
        Ok(y.restrict_levels(up_to, Kind::Truncated))
    }
}

/// The restriction `i* Y` of a presheaf over `QΣ`, truncated at `up_to`.
pub fn restrict(y: &Presheaf, up_to: usize) -> Result<Presheaf> {
    require_site(y, Site::QSigma)?;
    let ye = stored_to(y, up_to)?;
    let names = (0..=up_to).map(|k| ye.names(k).to_vec()).collect();
    let p = Presheaf::from_fn(Site::Q, Kind::Truncated, up_to, names, |g, s| {
        ye.act(&g.morphism(), s).expect("stored level")
    });
    Ok(match (0..=up_to).map(|k| ye.labels(k).map(<[Morphism]>::to_vec)).collect::<Option<Vec<_>>>() {
        Some(labels) => p.with_labels(labels),
        None => p,
    })
}

/// `i* f` on levels `≤ up_to`.
pub fn restrict_map(f: &PresheafMap, up_to: usize) -> Result<PresheafMap> {
    let fe = f.extend(up_to)?;
    let src = Arc::new(restrict(f.src(), up_to)?);
    let dst = Arc::new(restrict(f.dst(), up_to)?);
    PresheafMap::new(src, dst, fe.components()[..=up_to].to_vec())
}

/// The unit `X → i* i_! X` on levels `≤ up_to`, `x ↦ [id, x]`.
pub fn adjunction_unit(x: &Arc<Presheaf>, up_to: usize) -> Result<PresheafMap> {
    require_site(x, Site::Q)?;
    let xe = Arc::new(if x.truncation() < up_to { x.extend_to(up_to)? } else { (**x).clone() });
    let s = symmetrization(&xe)?;
    let target = Arc::new(restrict(&s.object, up_to)?);
    let src = Arc::new(xe.restrict_levels(up_to, Kind::Truncated));
    let comps = (0..=up_to)
        .map(|n| (0..src.len(n)).map(|a| s.class(n, &Morphism::identity(n), (n, a))).collect::<Result<Vec<usize>>>())
        .collect::<Result<_>>()?;
    PresheafMap::new(src, target, comps)
}

/// The counit `i_! i* Y → Y` on levels `≤ up_to`, `[f, y] ↦ f^* y`.
pub fn adjunction_counit(y: &Arc<Presheaf>, up_to: usize) -> Result<PresheafMap> {
    require_site(y, Site::QSigma)?;
    let ye = Arc::new(if y.truncation() < up_to { y.extend_to(up_to)? } else { (**y).clone() });
    let s = symmetrization(&Arc::new(restrict(&ye, up_to)?))?;
    let comps = (0..=up_to)
        .map(|k| {
            (0..s.object.len(k))
                .map(|q| {
                    let (f, (_, b)) = s.representative(k, q);
                    ye.act(&f, b)
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    PresheafMap::new(s.object.clone(), ye, comps)
}

fn is_identity(m: &PresheafMap, up_to: usize) -> bool {
    m.components()[..=up_to].iter().all(|c| c.iter().enumerate().all(|(x, &v)| x == v))
}

/// `(i*ε) ∘ (η i*) = id` on `i* Y` at levels `≤ up_to`.
pub fn unit_triangle(y: &Arc<Presheaf>, up_to: usize) -> Result<bool> {
    let restricted = Arc::new(restrict(y, up_to)?);
    let eta = adjunction_unit(&restricted, up_to)?;
    let eps = restrict_map(&adjunction_counit(y, up_to)?, up_to)?;
    Ok(is_identity(&eta.then(&eps)?, up_to))
}

/// `ε i_! ∘ i_!(η) = id` on `i_! X` at levels `≤ up_to`.
pub fn counit_triangle(x: &Arc<Presheaf>, up_to: usize) -> Result<bool> {
    let eta = adjunction_unit(x, up_to)?;
    let lifted = symmetrize_map(&eta)?;
    let eps = adjunction_counit(lifted.src(), up_to)?;
    Ok(is_identity(&lifted.then(&eps)?, up_to))
}
