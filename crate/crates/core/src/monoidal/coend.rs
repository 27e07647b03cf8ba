//! Levelwise coends `∫^d Hom(⟦k⟧, ⟦deg d⟧) × S_d` by union-find.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::presheaf::{Kind, Presheaf};
use crate::site::{self, resource_limit, Morphism, Site};
use crate::unionfind::UnionFind;

/// A generating arrow `d' → d` of the indexing diagram.
#[derive(Clone, Debug)]
pub(crate) struct Arrow {
    pub src: usize,
    pub dst: usize,
    /// `⟦deg d'⟧ → ⟦deg d⟧`.
    pub morphism: Morphism,
    /// `S_d → S_{d'}`.
    pub action: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Diagram {
    pub site: Site,
    pub degrees: Vec<usize>,
    pub sizes: Vec<usize>,
    pub arrows: Vec<Arrow>,
}

#[derive(Clone, Debug)]
pub(crate) struct Level {
    homs: BTreeMap<usize, (Vec<Morphism>, BTreeMap<Morphism, usize>)>,
    offsets: Vec<usize>,
    classes: Vec<usize>,
    /// `(d, f, s)` of the least member of each class.
    pub reps: Vec<(usize, Morphism, usize)>,
}

impl Level {
    /// Class of `(f, s)` over index `d`.
    pub fn class(&self, diagram: &Diagram, d: usize, f: &Morphism, s: usize) -> Option<usize> {
        let fi = *self.homs.get(&diagram.degrees[d])?.1.get(f)?;
        Some(self.classes[self.offsets[d] + fi * diagram.sizes[d] + s])
    }
}

impl Diagram {
    pub fn level(&self, k: usize) -> Result<Level> {
        let mut homs = BTreeMap::new();
        for &deg in &self.degrees {
            if let alloc::collections::btree_map::Entry::Vacant(e) = homs.entry(deg) {
                let list = site::enumerate_hom(k, deg, self.site, resource_limit())?;
                let index: BTreeMap<Morphism, usize> = list.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
                e.insert((list, index));
            }
        }
        let mut offsets = Vec::with_capacity(self.degrees.len());
        let mut total: u128 = 0;
        for (d, &deg) in self.degrees.iter().enumerate() {
            offsets.push(total as usize);
            total += homs[&deg].0.len() as u128 * self.sizes[d] as u128;
        }
        if total > resource_limit() {
            return Err(Error::ResourceBound { what: "coend elements", count: total, limit: resource_limit() });
        }
        let elem = |d: usize, fi: usize, s: usize| offsets[d] + fi * self.sizes[d] + s;
        let mut uf = UnionFind::new(total as usize);
        for a in &self.arrows {
            let (src_homs, _) = &homs[&self.degrees[a.src]];
            let (_, dst_index) = &homs[&self.degrees[a.dst]];
            for (fi, f) in src_homs.iter().enumerate() {
                let gi = dst_index[&a.morphism.compose(f)?];
                for s in 0..self.sizes[a.dst] {
                    uf.union(elem(a.src, fi, a.action[s]), elem(a.dst, gi, s));
                }
            }
        }
        let (classes, count) = uf.classes();
        let mut reps: Vec<Option<(usize, Morphism, usize)>> = alloc::vec![None; count];
        for (d, &deg) in self.degrees.iter().enumerate() {
            for (fi, f) in homs[&deg].0.iter().enumerate() {
                for s in 0..self.sizes[d] {
                    let c = classes[elem(d, fi, s)];
                    if reps[c].is_none() {
                        reps[c] = Some((d, f.clone(), s));
                    }
                }
            }
        }
        let reps = reps.into_iter().map(|r| r.expect("every class has a member")).collect();
        Ok(Level { homs, offsets, classes, reps })
    }

    /// The presheaf of classes on levels `0..=top`.
    pub fn presheaf(
        &self,
        kind: Kind,
        top: usize,
        name: impl Fn(usize, &Morphism, usize) -> String,
    ) -> Result<(Presheaf, Vec<Level>)> {
        let levels: Vec<Level> = (0..=top).map(|k| self.level(k)).collect::<Result<_>>()?;
        let names = levels.iter().map(|l| l.reps.iter().map(|(d, f, s)| name(*d, f, *s)).collect()).collect();
        let p = Presheaf::from_fn(self.site, kind, top, names, |g, q| {
            let (d, f, s) = &levels[g.from_level()].reps[q];
            let h = f.compose(&g.morphism()).expect("generator precomposes");
            levels[g.to_level()].class(self, *d, &h, *s).expect("class exists")
        });
        Ok((p, levels))
    }
}
