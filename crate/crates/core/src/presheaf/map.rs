use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Gen, Presheaf};
use crate::error::{Error, Result};

/// A natural transformation stored by its components on the source's levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMap {
    src: Arc<Presheaf>,
    dst: Arc<Presheaf>,
    components: Vec<Vec<usize>>,
}

impl PresheafMap {
    /// Checks typing and naturality against every stored generator.
    pub fn new(src: Arc<Presheaf>, dst: Arc<Presheaf>, components: Vec<Vec<usize>>) -> Result<PresheafMap> {
        let map = PresheafMap::unchecked(src, dst, components)?;
        map.check_naturality()?;
        Ok(map)
    }

    /// Typing checks only.
    pub(crate) fn unchecked(
        src: Arc<Presheaf>,
        dst: Arc<Presheaf>,
        components: Vec<Vec<usize>>,
    ) -> Result<PresheafMap> {
        if src.site() != dst.site() {
            return Err(Error::InvalidMap(format!("sites differ: {} and {}", src.site(), dst.site())));
        }
        let dst = if dst.truncation() < src.truncation() { Arc::new(dst.extend_to(src.truncation())?) } else { dst };
        if components.len() != src.truncation() + 1 {
            return Err(Error::InvalidMap(format!(
                "expected {} components, found {}",
                src.truncation() + 1,
                components.len()
            )));
        }
        for (k, c) in components.iter().enumerate() {
            if c.len() != src.len(k) {
                return Err(Error::InvalidMap(format!(
                    "component {k} has {} entries, level has {}",
                    c.len(),
                    src.len(k)
                )));
            }
            if let Some(&v) = c.iter().find(|&&v| v >= dst.len(k)) {
                return Err(Error::InvalidMap(format!("component {k} sends a section to {v}, out of range")));
            }
        }
        Ok(PresheafMap { src, dst, components })
    }

    fn check_naturality(&self) -> Result<()> {
        for g in Gen::all(self.src.site(), self.src.truncation()) {
            let (from, to) = (g.from_level(), g.to_level());
            for x in 0..self.src.len(from) {
                let lhs = self.components[to][self.src.act_gen(&g, x)];
                let rhs = self.dst.act_gen(&g, self.components[from][x]);
                if lhs != rhs {
                    return Err(Error::InvalidMap(format!(
                        "not natural for {g} at section {}",
                        self.src.name(from, x)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: Arc<Presheaf>) -> PresheafMap {
        let components = (0..=x.truncation()).map(|k| (0..x.len(k)).collect()).collect();
        PresheafMap { src: x.clone(), dst: x, components }
    }

    pub fn src(&self) -> &Arc<Presheaf> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Presheaf> {
        &self.dst
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, level: usize, x: usize) -> usize {
        self.components[level][x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PresheafMap) -> Result<PresheafMap> {
        let top = self.src.truncation();
        let next = if next.src.truncation() < top { next.extend(top)? } else { next.clone() };
        let same = (0..=top).all(|k| next.src.names.get(k) == self.dst.names.get(k));
        if !same || next.src.site() != self.dst.site() {
            return Err(Error::InvalidMap("composite of maps whose middle objects differ".into()));
        }
        let components =
            (0..=top).map(|k| self.components[k].iter().map(|&x| next.components[k][x]).collect()).collect();
        Ok(PresheafMap { src: self.src.clone(), dst: next.dst.clone(), components })
    }

    /// The same map with source and target extended to `level`.
    pub fn extend(&self, level: usize) -> Result<PresheafMap> {
        let top = self.src.truncation();
        if level <= top {
            return Ok(self.clone());
        }
        let src = Arc::new(self.src.extend_to(level)?);
        let dst = if self.dst.truncation() < level { Arc::new(self.dst.extend_to(level)?) } else { self.dst.clone() };
        let mut components = self.components.clone();
        for n in top + 1..=level {
            let c = (0..src.len(n))
                .map(|x| {
                    let (epi, rep) = src.decomposition(n, x);
                    dst.act_word(&super::word(epi), self.components[epi.dst()][rep])
                })
                .collect();
            components.push(c);
        }
        Ok(PresheafMap { src, dst, components })
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|c| {
            let mut sorted = c.clone();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Surjective on every level of the source's truncation.
    pub fn is_surjective(&self) -> bool {
        self.components.iter().enumerate().all(|(k, c)| {
            let mut hit = alloc::vec![false; self.dst.len(k)];
            for &v in c {
                hit[v] = true;
            }
            hit.into_iter().all(|h| h)
        })
    }

    /// Levelwise bijective up to the larger of the two truncations.
    pub fn is_iso(&self) -> Result<bool> {
        let top = self.src.truncation().max(self.dst.truncation());
        let m = self.extend(top)?;
        Ok(m.is_injective() && m.is_surjective())
    }
}
