//! Simplicial realization and integral homology.
//!
//! A `k`-simplex of `Δ[1]^m` is an `m`-tuple of thresholds `t ∈ 0..=k+1`,
//! each encoding the monotone map `[k] → {0, 1}` that is `1` from position `t`
//! on. Formal cubical products act by constants and pointwise minima, which on
//! thresholds is a maximum. The realization of `X` is the coend of
//! `X_n × Δ[1]^n`, computed levelwise by union-find.

mod homology;
mod simplicial;
mod snf;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use homology::{
    chain_homology, normalized_chains, simplicial_homology, ChainComplex, HomologyGroup, HomologyResult,
};
pub use simplicial::SimplicialSet;
pub use snf::{smith_normal_form, Matrix, SmithForm};

use crate::error::{Error, Result};
use crate::presheaf::{Gen, Kind, Presheaf, PresheafMap};
use crate::site::{resource_limit, Entry, Morphism};
use crate::unionfind::UnionFind;

/// Image of the simplex `t` of `Δ[1]^m` under `f: ⟦m⟧ → ⟦n⟧`, at level `k`.
pub fn act_on_simplex(f: &Morphism, t: &[usize], k: usize) -> Vec<usize> {
    f.entries()
        .iter()
        .map(|e| match e {
            Entry::Zero => k + 1,
            Entry::One => 0,
            Entry::Conj(syms) => syms.iter().map(|&s| t[s - 1]).max().expect("conjunctions are nonempty"),
        })
        .collect()
}

/// Index of a threshold tuple in `(Δ[1]^m)_k`.
pub fn simplex_index(t: &[usize], k: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * (k + 2) + x)
}

/// The threshold tuple with a given index in `(Δ[1]^m)_k`.
pub fn simplex_at(m: usize, k: usize, mut index: usize) -> Vec<usize> {
    let mut t = alloc::vec![0; m];
    for slot in t.iter_mut().rev() {
        *slot = index % (k + 2);
        index /= k + 2;
    }
    t
}

/// The function `(Δ[1]^m)_k → (Δ[1]^n)_k` of `f`, as a table on simplex indices.
pub fn act_on_cube(f: &Morphism, k: usize) -> Vec<usize> {
    let m = f.src();
    simplicial::tuples(m, k).iter().map(|t| simplex_index(&act_on_simplex(f, t, k), k)).collect()
}

fn power(base: usize, exp: usize) -> Option<usize> {
    base.checked_pow(exp as u32)
}

/// `|X|` with the coend data identifying its simplices.
#[derive(Clone, Debug)]
pub struct Realization {
    pub simplicial: Arc<SimplicialSet>,
    source: Arc<Presheaf>,
    offsets: Vec<Vec<usize>>,
    classes: Vec<Vec<usize>>,
    reps: Vec<Vec<(usize, usize, usize)>>,
}

impl Realization {
    pub fn source(&self) -> &Arc<Presheaf> {
        &self.source
    }

    /// Class of the simplex `t` of `Δ[1]^n` in the copy of `x ∈ X_n`, at level `k`.
    pub fn class(&self, k: usize, (n, x): (usize, usize), t: &[usize]) -> Result<usize> {
        let top = self.simplicial.truncation();
        if k > top || n > self.source.truncation() {
            return Err(Error::BeyondTruncation { level: k.max(n), truncation: top });
        }
        if t.len() != n || t.iter().any(|&v| v > k + 1) || x >= self.source.len(n) {
            return Err(Error::InvalidMap(format!("no simplex {t:?} of Δ[1]^{n} at level {k}")));
        }
        let size = (k + 2).pow(n as u32);
        Ok(self.classes[k][self.offsets[k][n] + x * size + simplex_index(t, k)])
    }

    /// The least member `((n, x), t)` of class `q` at level `k`.
    pub fn representative(&self, k: usize, q: usize) -> ((usize, usize), Vec<usize>) {
        let (n, x, s) = self.reps[k][q];
        ((n, x), simplex_at(n, k, s))
    }
}

/// The realization of a skeletal presheaf on simplicial levels `0..=N`.
pub fn realize(x: &Arc<Presheaf>) -> Result<Realization> {
    realize_to(x, x.truncation())
}

/// The realization on simplicial levels `0..=top`.
pub fn realize_to(x: &Arc<Presheaf>, top: usize) -> Result<Realization> {
    if x.kind() == Kind::Truncated {
        return Err(Error::TruncationMismatch(format!(
            "realization needs a skeletal presheaf; this one stops at level {}",
            x.truncation()
        )));
    }
    let n_top = x.truncation();
    let gens = Gen::all(x.site(), n_top);
    let mut offsets = Vec::new();
    let mut classes = Vec::new();
    let mut reps = Vec::new();
    for k in 0..=top {
        let mut off = Vec::with_capacity(n_top + 1);
        let mut total: u128 = 0;
        for n in 0..=n_top {
            off.push(total as usize);
            let size = power(k + 2, n).ok_or(Error::Overflow)? as u128;
            total += x.len(n) as u128 * size;
        }
        if total > resource_limit() {
            return Err(Error::ResourceBound { what: "realization simplices", count: total, limit: resource_limit() });
        }
        let size = |n: usize| (k + 2).pow(n as u32);
        let mut uf = UnionFind::new(total as usize);
        for g in &gens {
            let (a, b) = (g.to_level(), g.from_level());
            let image = act_on_cube(&g.morphism(), k);
            let table = x.gen_table(g).expect("stored generator");
            for xb in 0..x.len(b) {
                let xa = table[xb];
                for (s, &gs) in image.iter().enumerate() {
                    uf.union(off[a] + xa * size(a) + s, off[b] + xb * size(b) + gs);
                }
            }
        }
        let (cls, count) = uf.classes();
        let mut level_reps = alloc::vec![None; count];
        for n in 0..=n_top {
            for xn in 0..x.len(n) {
                for s in 0..size(n) {
                    let q = cls[off[n] + xn * size(n) + s];
                    if level_reps[q].is_none() {
                        level_reps[q] = Some((n, xn, s));
                    }
                }
            }
        }
        offsets.push(off);
        classes.push(cls);
        reps.push(level_reps.into_iter().map(|r| r.expect("every class has a member")).collect::<Vec<_>>());
    }
    let lookup = |k: usize, n: usize, xn: usize, t: &[usize]| {
        classes[k][offsets[k][n] + xn * (k + 2).pow(n as u32) + simplex_index(t, k)]
    };
    let names = (0..=top)
        .map(|k| reps[k].iter().map(|&(n, xn, s)| format!("{}@{:?}", x.name(n, xn), simplex_at(n, k, s))).collect())
        .collect();
    let faces = (0..=top)
        .map(|k| {
            if k == 0 {
                return Vec::new();
            }
            (0..=k)
                .map(|i| {
                    reps[k]
                        .iter()
                        .map(|&(n, xn, s)| {
                            let t: Vec<usize> = simplex_at(n, k, s).iter().map(|&v| simplicial::face(v, i)).collect();
                            lookup(k - 1, n, xn, &t)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..top)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    reps[k]
                        .iter()
                        .map(|&(n, xn, s)| {
                            let t: Vec<usize> =
                                simplex_at(n, k, s).iter().map(|&v| simplicial::degeneracy(v, i)).collect();
                            lookup(k + 1, n, xn, &t)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let simplicial = Arc::new(SimplicialSet::unchecked(names, faces, degeneracies));
    Ok(Realization { simplicial, source: x.clone(), offsets, classes, reps })
}

/// A simplicial map stored by its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    src: Arc<SimplicialSet>,
    dst: Arc<SimplicialSet>,
    components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// Checks typing and commutation with faces and degeneracies.
    pub fn new(src: Arc<SimplicialSet>, dst: Arc<SimplicialSet>, components: Vec<Vec<usize>>) -> Result<SimplicialMap> {
        let top = src.truncation();
        if dst.truncation() < top || components.len() != top + 1 {
            return Err(Error::InvalidMap("simplicial map components do not match the levels".into()));
        }
        for (k, c) in components.iter().enumerate() {
            if c.len() != src.len(k) || c.iter().any(|&v| v >= dst.len(k)) {
                return Err(Error::InvalidMap(format!("component {k} is malformed")));
            }
        }
        for k in 0..=top {
            for s in 0..src.len(k) {
                let v = components[k][s];
                if k > 0 && (0..=k).any(|i| components[k - 1][src.face(k, i, s)] != dst.face(k, i, v)) {
                    return Err(Error::InvalidMap(format!("not simplicial on faces at level {k}")));
                }
                if k < top && (0..=k).any(|i| components[k + 1][src.degeneracy(k, i, s)] != dst.degeneracy(k, i, v)) {
                    return Err(Error::InvalidMap(format!("not simplicial on degeneracies at level {k}")));
                }
            }
        }
        Ok(SimplicialMap { src, dst, components })
    }

    pub fn src(&self) -> &Arc<SimplicialSet> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<SimplicialSet> {
        &self.dst
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, k: usize, s: usize) -> usize {
        self.components[k][s]
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().enumerate().all(|(k, c)| {
            let mut seen = alloc::vec![false; self.dst.len(k)];
            c.iter().all(|&v| !core::mem::replace(&mut seen[v], true)) && c.len() == self.dst.len(k)
        })
    }
}

/// `|f| : |X| → |Y|` on simplicial levels `0..=top`.
pub fn realize_map(f: &PresheafMap, top: usize) -> Result<(Realization, Realization, SimplicialMap)> {
    let rx = realize_to(f.src(), top)?;
    let ry = realize_to(f.dst(), top)?;
    let comps = (0..=top)
        .map(|k| {
            (0..rx.simplicial.len(k))
                .map(|q| {
                    let ((n, xn), t) = rx.representative(k, q);
                    ry.class(k, (n, f.apply(n, xn)), &t)
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    let map = SimplicialMap::new(rx.simplicial.clone(), ry.simplicial.clone(), comps)?;
    Ok((rx, ry, map))
}

/// Integral homology of `|X|`.
pub fn homology(x: &Arc<Presheaf>) -> Result<HomologyResult> {
    simplicial_homology(&realize(x)?.simplicial)
}

/// One law of the cubical monoid `Δ[1]` at one simplicial level.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonoidCheck {
    pub law: String,
    pub level: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonoidReport {
    pub checks: Vec<MonoidCheck>,
}

impl MonoidReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks that `Δ[1]` with `μ = |x1∧x2|` is a cubical monoid with unit `d₁`,
/// absorbing `d₀` and `s` a monoid map, at simplicial levels `0..=up_to`.
pub fn verify_cubical_monoid_delta1(up_to: usize) -> MonoidReport {
    let p = |s: &str| -> Morphism { s.parse().expect("fixed morphism") };
    let mu = p("(x1^x2):2->1");
    let d0 = p("(0):0->1");
    let d1 = p("(1):0->1");
    let s = p("():1->0");
    let id1 = Morphism::identity(1);
    let mut checks = Vec::new();
    for k in 0..=up_to {
        let ev = |f: &Morphism, t: &[usize]| act_on_simplex(f, t, k);
        let then = |f: &Morphism, g: &Morphism, t: &[usize]| ev(g, &ev(f, t));
        let mut check = |law: &str, passed: bool| checks.push(MonoidCheck { law: law.into(), level: k, passed });
        let singles = simplicial::tuples(1, k);
        let pairs = simplicial::tuples(2, k);
        let triples = simplicial::tuples(3, k);
        let point: [usize; 0] = [];
        check(
            "associativity",
            triples.iter().all(|t| then(&mu.tensor(&id1), &mu, t) == then(&id1.tensor(&mu), &mu, t)),
        );
        let unit = ev(&d1, &point);
        let zero = ev(&d0, &point);
        check("left unit", singles.iter().all(|t| ev(&mu, &[unit[0], t[0]]) == *t));
        check("right unit", singles.iter().all(|t| ev(&mu, &[t[0], unit[0]]) == *t));
        check(
            "s is a monoid map",
            pairs.iter().all(|t| then(&mu, &s, t) == ev(&s.tensor(&s), t))
                && ev(&s, &unit).is_empty()
                && ev(&s.tensor(&s), &[unit[0], unit[0]]).is_empty(),
        );
        check(
            "d0 absorbing",
            singles.iter().all(|t| {
                let through_point = then(&s, &d0, t);
                ev(&mu, &[zero[0], t[0]]) == through_point && ev(&mu, &[t[0], zero[0]]) == through_point
            }),
        );
        let natural = k == 0
            || pairs.iter().all(|t| {
                (0..=k).all(|i| {
                    let dt: Vec<usize> = t.iter().map(|&v| simplicial::face(v, i)).collect();
                    let lhs = simplicial::face(ev(&mu, t)[0], i);
                    lhs == act_on_simplex(&mu, &dt, k - 1)[0]
                }) && (0..=k).all(|i| {
                    let st: Vec<usize> = t.iter().map(|&v| simplicial::degeneracy(v, i)).collect();
                    simplicial::degeneracy(ev(&mu, t)[0], i) == act_on_simplex(&mu, &st, k + 1)[0]
                })
            });
        check("μ simplicial", natural);
    }
    MonoidReport { checks }
}
