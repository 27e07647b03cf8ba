//! Levels above the truncation of a skeletal presheaf.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Decomp, Gen, Kind, Presheaf};
use crate::error::{Error, Result};
use crate::site::{self, Morphism};
use crate::unionfind::UnionFind;

impl Presheaf {
    /// `f^* rep` for an arbitrary arrow `f` into the level of an orbit representative,
    /// as a canonical cell `(epi, rep')`.
    pub(crate) fn resolve(&self, f: &Morphism, rep: usize) -> (Morphism, usize) {
        let (epi, mono) = site::ez_factor(f);
        let z = self.act_word(&super::word(&mono), rep);
        let d = &self.decomp[mono.src()][z];
        let e = d.epi.compose(&epi).expect("ez factors compose");
        (self.canonical_cell(&e, d.rep), d.rep)
    }

    /// The same presheaf with levels stored up to `level`.
    ///
    /// Skeletal presheaves gain the cells `epi^* y` of their left Kan extension;
    /// truncated ones fail with [`Error::BeyondTruncation`].
    pub fn extend_to(&self, level: usize) -> Result<Presheaf> {
        let top = self.truncation;
        if level <= top {
            return Ok(self.clone());
        }
        if self.kind == Kind::Truncated {
            return Err(Error::BeyondTruncation { level, truncation: top });
        }
        let mut estimate: u128 = 0;
        for n in top + 1..=level {
            for m in 0..=top {
                let cells = site::hom_count(n, m, self.site).saturating_mul(self.stabilizers[m].len() as u128);
                estimate = estimate.saturating_add(cells);
            }
        }
        if estimate > site::resource_limit() {
            return Err(Error::ResourceBound {
                what: "skeletal extension",
                count: estimate,
                limit: site::resource_limit(),
            });
        }
        let mut cells: Vec<Vec<(Morphism, usize)>> = Vec::new();
        let mut index: Vec<BTreeMap<(Morphism, usize), usize>> = Vec::new();
        for n in top + 1..=level {
            let mut level_cells = Vec::new();
            for m in 0..=top {
                let reps = self.representatives(m);
                if reps.is_empty() {
                    continue;
                }
                for e in site::enumerate_minus(n, m, self.site, site::resource_limit())? {
                    for &y in &reps {
                        level_cells.push((self.canonical_cell(&e, y), y));
                    }
                }
            }
            level_cells.sort_by(|a, b| (a.0.dst(), a.1, &a.0).cmp(&(b.0.dst(), b.1, &b.0)));
            level_cells.dedup();
            index.push(level_cells.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect());
            cells.push(level_cells);
        }
        let lookup = |n: usize, cell: (Morphism, usize)| -> usize { index[n - top - 1][&cell] };
        let mut names = self.names.clone();
        let mut decomp = self.decomp.clone();
        let mut stabilizers = self.stabilizers.clone();
        for level_cells in &cells {
            names.push(level_cells.iter().map(|(e, y)| format!("{e}*{}", self.names[e.dst()][*y])).collect());
            decomp.push(level_cells.iter().map(|(e, y)| Decomp { epi: e.clone(), rep: *y }).collect());
            stabilizers.push(BTreeMap::new());
        }
        let mut actions = BTreeMap::new();
        for g in Gen::all(self.site, level) {
            let (from, to) = (g.from_level(), g.to_level());
            if from <= top && to <= top {
                actions.insert(g, self.actions[&g].clone());
                continue;
            }
            let h = g.morphism();
            let size = names[from].len();
            let mut table = Vec::with_capacity(size);
            for x in 0..size {
                let d = &decomp[from][x];
                let f = d.epi.compose(&h).expect("generator matches the level");
                let value = if to <= top {
                    self.act_word(&super::word(&f), d.rep)
                } else {
                    lookup(to, self.resolve(&f, d.rep))
                };
                table.push(value);
            }
            actions.insert(g, table);
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            for level_cells in &cells {
                l.push(level_cells.iter().map(|(e, y)| l[e.dst()][*y].compose(e).expect("label composes")).collect());
            }
            l
        });
        Ok(Presheaf {
            site: self.site,
            kind: self.kind,
            truncation: level,
            names,
            actions,
            labels,
            decomp,
            stabilizers,
        })
    }

    /// Stored levels up to at least `level`, extending if skeletal.
    pub fn reaching(&self, level: usize) -> Result<Presheaf> {
        self.extend_to(level)
    }
}

/// Level `n` of a skeletal extension computed twice: as a coend quotient and
/// by EZ classification of cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelExtension {
    pub level: usize,
    /// Number of classes of the coend quotient of `⨿_m Hom(⟦n⟧,⟦m⟧) × X_m`.
    pub coend_size: usize,
    /// Number of canonical cells `(epi, y)`.
    pub cell_size: usize,
    /// Every coend class evaluates to a single cell.
    pub well_defined: bool,
    /// Distinct classes give distinct cells and every cell is reached.
    pub bijective: bool,
    /// Names of the cells.
    pub names: Vec<String>,
}

impl LevelExtension {
    pub fn agrees(&self) -> bool {
        self.well_defined && self.bijective && self.coend_size == self.cell_size
    }
}

/// Computes level `n` of the skeletal extension of `x` by both methods.
pub fn extend_level(x: &Presheaf, n: usize) -> Result<LevelExtension> {
    let top = x.truncation;
    if x.kind == Kind::Truncated && n > top {
        return Err(Error::BeyondTruncation { level: n, truncation: top });
    }
    let mut homs: Vec<Vec<Morphism>> = Vec::new();
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for m in 0..=top {
        let h = site::enumerate_hom(n, m, x.site, site::resource_limit())?;
        offsets.push(total);
        total = total.checked_add(h.len().checked_mul(x.len(m)).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
        homs.push(h);
    }
    if total as u128 > site::resource_limit() {
        return Err(Error::ResourceBound {
            what: "coend elements",
            count: total as u128,
            limit: site::resource_limit(),
        });
    }
    let hom_index: Vec<BTreeMap<&Morphism, usize>> =
        homs.iter().map(|h| h.iter().enumerate().map(|(k, f)| (f, k)).collect()).collect();
    let element = |m: usize, f: usize, s: usize| offsets[m] + f * x.len(m) + s;
    let mut uf = UnionFind::new(total);
    for g in Gen::all(x.site, top) {
        // g: ⟦p⟧ → ⟦m⟧ acting X_m → X_p; (f, g^* s) ~ (g ∘ f, s)
        let u = g.morphism();
        let (p, m) = (u.src(), u.dst());
        for (fi, f) in homs[p].iter().enumerate() {
            let uf_index = hom_index[m][&u.compose(f)?];
            for s in 0..x.len(m) {
                uf.union(element(p, fi, x.act_gen(&g, s)), element(m, uf_index, s));
            }
        }
    }
    let (classes, count) = uf.classes();
    let ext = x.extend_to(n.max(top))?;
    let mut value = alloc::vec![usize::MAX; count];
    let mut well_defined = true;
    for m in 0..=top {
        for (fi, f) in homs[m].iter().enumerate() {
            let w = super::word(f);
            for s in 0..x.len(m) {
                let v = ext.act_word(&w, s);
                let c = classes[element(m, fi, s)];
                if value[c] == usize::MAX {
                    value[c] = v;
                } else if value[c] != v {
                    well_defined = false;
                }
            }
        }
    }
    let cell_size = ext.len(n);
    let mut hit = alloc::vec![false; cell_size];
    let mut bijective = true;
    for &v in &value {
        if v == usize::MAX || hit[v] {
            bijective = false;
        } else {
            hit[v] = true;
        }
    }
    bijective &= hit.iter().all(|&h| h);
    Ok(LevelExtension { level: n, coend_size: count, cell_size, well_defined, bijective, names: ext.names[n].clone() })
}
