//! The orbit cellular filtration `sk_{k-1} X → sk_k X`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::build::{pushout, quotient_boundary, quotient_by_group, skeleton, sum_maps, SubgroupSpec};
use super::{Presheaf, PresheafMap};
use crate::error::Result;

/// Outcome of checking that attaching the `k`-cells of `X` along their
/// boundaries reproduces `sk_k X`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CellularReport {
    pub k: usize,
    /// Stabilizer order of each orbit of nondegenerate `k`-sections.
    pub orbits: Vec<(String, usize)>,
    /// Level sizes of the pushout.
    pub pushout_sizes: Vec<usize>,
    /// Level sizes of `sk_k X` up to level `k`.
    pub skeleton_sizes: Vec<usize>,
    /// The comparison map is well defined and natural.
    pub natural: bool,
    /// The comparison map is bijective at every level `≤ k`.
    pub bijective: bool,
    pub detail: String,
}

impl CellularReport {
    pub fn passed(&self) -> bool {
        self.natural && self.bijective
    }
}

/// `[f] ↦ f^* y` on `H\Y` for `Y = ∂□ᵏ` or `□ᵏ`, landing in `target`.
fn attach(cell: &Arc<Presheaf>, target: &Arc<Presheaf>, x: &Presheaf, y: usize) -> Result<PresheafMap> {
    let comps = (0..=cell.truncation())
        .map(|m| cell.labels(m).expect("orbit labels").iter().map(|f| x.act(f, y)).collect::<Result<Vec<usize>>>())
        .collect::<Result<_>>()?;
    PresheafMap::new(cell.clone(), target.clone(), comps)
}

/// Checks that `⨿ H_y\∂□ᵏ → ⨿ H_y\□ᵏ` pushed out along the attaching maps
/// into `sk_{k-1} X` is `sk_k X`, with `y` running over orbit representatives
/// of nondegenerate `k`-sections and `H_y` their stabilizers.
pub fn verify_skeletal_pushout(x: &Arc<Presheaf>, k: usize) -> Result<CellularReport> {
    let site = x.site();
    let xk = Arc::new(x.extend_to(k)?);
    let (sk, _) = skeleton(&xk, k)?;
    let (lower, lower_inc) = if k == 0 {
        let e = Arc::new(Presheaf::empty(site));
        (e.clone(), PresheafMap::new(e, xk.clone(), alloc::vec![Vec::new()])?)
    } else {
        skeleton(&xk, k - 1)?
    };
    let lower_inc = lower_inc.extend(k)?;
    let mut orbits = Vec::new();
    let mut boundaries = Vec::new();
    let mut attaching = Vec::new();
    let mut characteristic = Vec::new();
    for y in xk.representatives(k) {
        let stab = xk.rep_stabilizer(k, y).to_vec();
        orbits.push((String::from(xk.name(k, y)), stab.len()));
        let h = SubgroupSpec::new(k, stab)?;
        let (cell, _) = quotient_by_group(k, &h, site)?;
        let (bdry, inc) = quotient_boundary(k, &h, site)?;
        attaching.push(attach(&bdry, &lower, &xk, y)?);
        characteristic.push(attach(&cell, &sk, &xk, y)?);
        boundaries.push(inc);
    }
    let (bdry_sum, cells_sum, inclusion) = sum_maps(site, &boundaries)?;
    let attach_sum = if attaching.is_empty() {
        let comps = (0..=bdry_sum.object.truncation()).map(|_| Vec::new()).collect();
        PresheafMap::new(bdry_sum.object.clone(), lower.clone(), comps)?
    } else {
        bdry_sum.copair(&attaching)?
    };
    let po = pushout(&inclusion, &attach_sum)?;
    let p = po.object.extend_to(k)?;
    let mut comps: Vec<Vec<Option<usize>>> = (0..=k).map(|m| alloc::vec![None; p.len(m)]).collect();
    let mut natural = true;
    let mut detail = String::new();
    let cells_ext: Vec<PresheafMap> = characteristic.iter().map(|c| c.extend(k)).collect::<Result<_>>()?;
    let left = po.left.extend(k)?;
    let right = po.right.extend(k)?;
    for m in 0..=k {
        for (i, c) in cells_ext.iter().enumerate() {
            for s in 0..c.src().len(m) {
                let target = left.apply(m, cells_sum.offset(i, m) + s);
                let value = c.apply(m, s);
                match comps[m][target] {
                    Some(v) if v != value => natural = false,
                    _ => comps[m][target] = Some(value),
                }
            }
        }
        for s in 0..right.src().len(m) {
            let target = right.apply(m, s);
            let value = lower_inc.apply(m, s);
            match comps[m][target] {
                Some(v) if v != value => natural = false,
                _ => comps[m][target] = Some(value),
            }
        }
    }
    if !natural {
        detail = String::from("comparison map is not well defined on pushout classes");
    }
    let mut bijective = false;
    if comps.iter().all(|l| l.iter().all(Option::is_some)) {
        let comps: Vec<Vec<usize>> = comps.into_iter().map(|l| l.into_iter().map(Option::unwrap).collect()).collect();
        let sk_k = Arc::new(sk.extend_to(k)?);
        match PresheafMap::new(Arc::new(p.clone()), sk_k, comps) {
            Ok(cmp) => bijective = cmp.is_injective() && cmp.is_surjective(),
            Err(e) => {
                natural = false;
                detail = format!("{e}");
            }
        }
    } else {
        natural = false;
        detail = String::from("some pushout class has no preimage");
    }
    if natural && !bijective {
        detail = String::from("comparison map is not bijective");
    }
    Ok(CellularReport {
        k,
        orbits,
        pushout_sizes: p.level_sizes(),
        skeleton_sizes: (0..=k).map(|m| sk.extend_to(k).map(|s| s.len(m)).unwrap_or(0)).collect(),
        natural,
        bijective,
        detail,
    })
}
