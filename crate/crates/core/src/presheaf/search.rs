//! Exhaustive search for natural transformations between finite presheaves.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Gen, Presheaf, PresheafMap};
use crate::error::{Error, Result};
use crate::site::{self, resource_limit, Morphism, Site};

/// Restrictions on the maps produced by [`find_map`] and [`hom_set`].
#[derive(Default)]
pub struct MapConstraints<'a> {
    /// `(level, section, value)`: the map must send `section` to `value`.
    pub fixed: Vec<(usize, usize, usize)>,
    /// Extra test on the value `v` chosen for an orbit representative `(level, rep)`.
    pub filter: Option<Box<dyn Fn(usize, usize, usize) -> bool + 'a>>,
}


struct Slot {
    level: usize,
    rep: usize,
    stab: Vec<Vec<Gen>>,
    /// `(face generator, epi, lower slot)` with `face^* rep = epi^* lower`.
    faces: Vec<(Gen, Vec<Gen>, usize)>,
    /// `(epi word, value)` from fixed sections over this representative.
    fixed: Vec<(Vec<Gen>, usize)>,
}

struct Search<'a, 'c> {
    x: &'a Presheaf,
    y: &'a Presheaf,
    slots: Vec<Slot>,
    values: Vec<usize>,
    constraints: &'a MapConstraints<'c>,
}

fn perm_word(theta: &crate::perm::Permutation) -> Vec<Gen> {
    let n = theta.len();
    theta.adjacent_word().into_iter().map(|i| Gen::Swap { n, i }).collect()
}

impl<'a, 'c> Search<'a, 'c> {
    fn new(x: &'a Presheaf, y: &'a Presheaf, constraints: &'a MapConstraints<'c>) -> Result<Self> {
        let mut slots = Vec::new();
        let mut slot_of = BTreeMap::new();
        for k in 0..=x.truncation() {
            for rep in x.representatives(k) {
                let stab = x.rep_stabilizer(k, rep).iter().filter(|t| !t.is_identity()).map(perm_word).collect();
                let mut faces = Vec::new();
                if k > 0 {
                    for i in 1..=k {
                        for eps in [false, true] {
                            let g = Gen::Delta { n: k - 1, i, eps };
                            let (epi, lower) = x.decomposition(k - 1, x.act_gen(&g, rep));
                            faces.push((g, super::word(epi), slot_of[&(epi.dst(), lower)]));
                        }
                    }
                }
                slot_of.insert((k, rep), slots.len());
                slots.push(Slot { level: k, rep, stab, faces, fixed: Vec::new() });
            }
        }
        for &(level, s, v) in &constraints.fixed {
            if level > x.truncation() || s >= x.len(level) || v >= y.len(level) {
                return Err(Error::InvalidMap("fixed value outside the stored levels".into()));
            }
            let (epi, rep) = x.decomposition(level, s);
            let slot = slot_of[&(epi.dst(), rep)];
            slots[slot].fixed.push((super::word(epi), v));
        }
        Ok(Search { x, y, slots, values: Vec::new(), constraints })
    }

    fn admissible(&self, slot: &Slot, v: usize) -> bool {
        let y = self.y;
        slot.stab.iter().all(|w| y.act_word(w, v) == v)
            && slot.faces.iter().all(|(g, epi, lower)| y.act_gen(g, v) == y.act_word(epi, self.values[*lower]))
            && slot.fixed.iter().all(|(epi, value)| y.act_word(epi, v) == *value)
            && self.constraints.filter.as_ref().is_none_or(|f| f(slot.level, slot.rep, v))
    }

    fn build(&self) -> Vec<Vec<usize>> {
        let x = self.x;
        let mut value_of = BTreeMap::new();
        for (slot, &v) in self.slots.iter().zip(&self.values) {
            value_of.insert((slot.level, slot.rep), v);
        }
        (0..=x.truncation())
            .map(|k| {
                (0..x.len(k))
                    .map(|s| {
                        let (epi, rep) = x.decomposition(k, s);
                        self.y.act_word(&super::word(epi), value_of[&(epi.dst(), rep)])
                    })
                    .collect()
            })
            .collect()
    }

    /// Visits every admissible natural map; `visit` returns `false` to stop.
    fn run(&mut self, visit: &mut dyn FnMut(Vec<Vec<usize>>) -> Result<bool>) -> Result<bool> {
        let depth = self.values.len();
        if depth == self.slots.len() {
            let comps = self.build();
            if natural(self.x, self.y, &comps) {
                return visit(comps);
            }
            return Ok(true);
        }
        let level = self.slots[depth].level;
        for v in 0..self.y.len(level) {
            if !self.admissible(&self.slots[depth], v) {
                continue;
            }
            self.values.push(v);
            let go_on = self.run(visit)?;
            self.values.pop();
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn natural(x: &Presheaf, y: &Presheaf, comps: &[Vec<usize>]) -> bool {
    Gen::all(x.site(), x.truncation()).iter().all(|g| {
        (0..x.len(g.from_level()))
            .all(|s| comps[g.to_level()][x.act_gen(g, s)] == y.act_gen(g, comps[g.from_level()][s]))
    })
}

fn prepare(x: &Presheaf, y: &Arc<Presheaf>) -> Result<Arc<Presheaf>> {
    if x.site() != y.site() {
        return Err(Error::InvalidMap("source and target live over different sites".into()));
    }
    if y.truncation() < x.truncation() {
        Ok(Arc::new(y.extend_to(x.truncation())?))
    } else {
        Ok(y.clone())
    }
}

/// Calls `visit` on every map `x → y` satisfying the constraints, in canonical
/// order, until it returns `false`.
pub fn for_each_map(
    x: &Arc<Presheaf>,
    y: &Arc<Presheaf>,
    constraints: &MapConstraints<'_>,
    mut visit: impl FnMut(PresheafMap) -> Result<bool>,
) -> Result<()> {
    let target = prepare(x, y)?;
    let mut search = Search::new(x, &target, constraints)?;
    search.run(&mut |comps| visit(PresheafMap::unchecked(x.clone(), target.clone(), comps)?))?;
    Ok(())
}

/// The first map in canonical order satisfying the constraints.
pub fn find_map(x: &Arc<Presheaf>, y: &Arc<Presheaf>, constraints: &MapConstraints<'_>) -> Result<Option<PresheafMap>> {
    let mut found = None;
    for_each_map(x, y, constraints, |m| {
        found = Some(m);
        Ok(false)
    })?;
    Ok(found)
}

/// Every natural map `x → y`, failing once more than `limit` exist.
pub fn hom_set(x: &Arc<Presheaf>, y: &Arc<Presheaf>, limit: u128) -> Result<Vec<PresheafMap>> {
    let mut out = Vec::new();
    for_each_map(x, y, &MapConstraints::default(), |m| {
        if out.len() as u128 >= limit {
            return Err(Error::ResourceBound { what: "presheaf maps", count: out.len() as u128 + 1, limit });
        }
        out.push(m);
        Ok(true)
    })?;
    Ok(out)
}

/// `|Hom(x, y)|`.
pub fn count_maps(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<u128> {
    let mut n: u128 = 0;
    for_each_map(x, y, &MapConstraints::default(), |_| {
        n += 1;
        if n > resource_limit() {
            return Err(Error::ResourceBound { what: "presheaf maps", count: n, limit: resource_limit() });
        }
        Ok(true)
    })?;
    Ok(n)
}

/// A section `s` of the epimorphism `e`, with `e ∘ s = id`.
fn section(e: &Morphism, site: Site) -> Result<Morphism> {
    site::enumerate_plus(e.dst(), e.src(), site, resource_limit())?
        .into_iter()
        .find(|s| e.compose(s).is_ok_and(|x| x.is_identity()))
        .ok_or(Error::NotEpi)
}

/// Top-down search for isomorphisms: the value on a cell forces the values
/// on the orbit representatives of its faces.
struct IsoSearch<'a> {
    x: &'a Presheaf,
    y: &'a Presheaf,
    /// `(level, rep)` in decreasing level.
    order: Vec<(usize, usize)>,
    slot_of: BTreeMap<(usize, usize), usize>,
    /// `(face generator, section word of the epi, lower slot)`.
    faces: Vec<Vec<(Gen, Vec<Gen>, Vec<Gen>, usize)>>,
    stab: Vec<Vec<Vec<Gen>>>,
    orbit_size: Vec<usize>,
    values: Vec<Option<usize>>,
    used: Vec<BTreeSet<usize>>,
}

impl<'a> IsoSearch<'a> {
    fn new(x: &'a Presheaf, y: &'a Presheaf) -> Result<Self> {
        let mut order = Vec::new();
        for k in (0..=x.truncation()).rev() {
            for rep in x.representatives(k) {
                order.push((k, rep));
            }
        }
        let slot_of: BTreeMap<(usize, usize), usize> = order.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut faces = Vec::new();
        let mut stab = Vec::new();
        let mut orbit_size = Vec::new();
        for &(k, rep) in &order {
            let mut f = Vec::new();
            for i in 1..=k {
                for eps in [false, true] {
                    let g = Gen::Delta { n: k - 1, i, eps };
                    let (epi, lower) = x.decomposition(k - 1, x.act_gen(&g, rep));
                    let sec = section(epi, x.site())?;
                    f.push((g, super::word(epi), super::word(&sec), slot_of[&(epi.dst(), lower)]));
                }
            }
            faces.push(f);
            let st = x.rep_stabilizer(k, rep);
            stab.push(st.iter().filter(|t| !t.is_identity()).map(perm_word).collect());
            orbit_size.push(x.automorphisms(k).len() / st.len());
        }
        let n = order.len();
        Ok(IsoSearch {
            x,
            y,
            order,
            slot_of,
            faces,
            stab,
            orbit_size,
            values: alloc::vec![None; n],
            used: alloc::vec![BTreeSet::new(); x.truncation() + 1],
        })
    }

    fn orbit(&self, k: usize, v: usize) -> BTreeSet<usize> {
        self.y.automorphisms(k).iter().map(|t| self.y.act_perm(t, v)).collect()
    }

    /// Assigns `v` to slot `i` and everything it forces; returns the slots set, or `None` on conflict.
    fn assign(&mut self, i: usize, v: usize, trail: &mut Vec<usize>) -> bool {
        let (k, _) = self.order[i];
        if let Some(w) = self.values[i] {
            return w == v;
        }
        if !self.y.is_nondegenerate(k, v) || !self.stab[i].iter().all(|w| self.y.act_word(w, v) == v) {
            return false;
        }
        let orbit = self.orbit(k, v);
        if orbit.len() != self.orbit_size[i] || orbit.iter().any(|o| self.used[k].contains(o)) {
            return false;
        }
        self.used[k].extend(orbit);
        self.values[i] = Some(v);
        trail.push(i);
        let faces = self.faces[i].clone();
        for (g, epi, sec, lower) in faces {
            let image = self.y.act_gen(&g, v);
            let forced = self.y.act_word(&sec, image);
            if self.y.act_word(&epi, forced) != image || !self.assign(lower, forced, trail) {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, trail: &[usize]) {
        for &i in trail {
            if let Some(v) = self.values[i].take() {
                let k = self.order[i].0;
                for o in self.orbit(k, v) {
                    self.used[k].remove(&o);
                }
            }
        }
    }

    fn run(&mut self, depth: usize) -> Option<Vec<Vec<usize>>> {
        let Some(i) = (depth..self.order.len()).find(|&i| self.values[i].is_none()) else {
            let comps = self.components(&self.values);
            let bijective = comps.iter().enumerate().all(|(k, c)| {
                let set: BTreeSet<usize> = c.iter().copied().collect();
                set.len() == self.y.len(k)
            });
            return (bijective && natural(self.x, self.y, &comps)).then_some(comps);
        };
        let k = self.order[i].0;
        for v in self.y.nondegenerate(k) {
            let mut trail = Vec::new();
            let ok = self.assign(i, v, &mut trail);
            if ok {
                if let Some(found) = self.run(i + 1) {
                    return Some(found);
                }
            }
            self.undo(&trail);
        }
        None
    }

    fn components(&self, values: &[Option<usize>]) -> Vec<Vec<usize>> {
        (0..=self.x.truncation())
            .map(|k| {
                (0..self.x.len(k))
                    .map(|s| {
                        let (epi, rep) = self.x.decomposition(k, s);
                        let v = values[self.slot_of[&(epi.dst(), rep)]].expect("every slot is assigned");
                        self.y.act_word(&super::word(epi), v)
                    })
                    .collect()
            })
            .collect()
    }
}

/// An isomorphism `x → y`, if one exists.
pub fn find_isomorphism(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<Option<PresheafMap>> {
    if x.site() != y.site() {
        return Err(Error::InvalidMap("source and target live over different sites".into()));
    }
    let top = x.truncation().max(y.truncation());
    let xs = Arc::new(x.extend_to(top)?);
    let ys = Arc::new(y.extend_to(top)?);
    if xs.level_sizes() != ys.level_sizes() || xs.nondegenerate_counts() != ys.nondegenerate_counts() {
        return Ok(None);
    }
    let mut search = IsoSearch::new(&xs, &ys)?;
    match search.run(0) {
        Some(comps) => Ok(Some(PresheafMap::unchecked(xs, ys, comps)?)),
        None => Ok(None),
    }
}
