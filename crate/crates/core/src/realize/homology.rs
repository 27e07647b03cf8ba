use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::simplicial::SimplicialSet;
use super::snf::{smith_normal_form, Matrix};
use crate::error::{Error, Result};

/// Normalized chains: bases are nondegenerate simplices, `differentials[k]: C_k → C_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub bases: Vec<Vec<usize>>,
    pub differentials: Vec<Matrix>,
}

impl ChainComplex {
    pub fn rank(&self, k: usize) -> usize {
        self.bases.get(k).map_or(0, Vec::len)
    }

    /// `∂_{k-1} ∂_k = 0` at every stored degree.
    pub fn check_square_zero(&self) -> Result<()> {
        for k in 1..self.differentials.len() {
            if !self.differentials[k - 1].mul(&self.differentials[k])?.is_zero() {
                return Err(Error::InvalidMap(format!("∂∂ ≠ 0 in degree {k}")));
            }
        }
        Ok(())
    }
}

/// Normalized chain complex of a simplicial set.
pub fn normalized_chains(s: &SimplicialSet) -> Result<ChainComplex> {
    let top = s.truncation();
    let bases: Vec<Vec<usize>> = (0..=top).map(|k| s.nondegenerate(k)).collect();
    let position: Vec<Vec<Option<usize>>> = (0..=top)
        .map(|k| {
            let mut p = alloc::vec![None; s.len(k)];
            for (i, &x) in bases[k].iter().enumerate() {
                p[x] = Some(i);
            }
            p
        })
        .collect();
    let mut differentials = alloc::vec![Matrix::zeros(0, bases[0].len())];
    for k in 1..=top {
        let mut m = Matrix::zeros(bases[k - 1].len(), bases[k].len());
        for (col, &x) in bases[k].iter().enumerate() {
            for i in 0..=k {
                if let Some(row) = position[k - 1][s.face(k, i, x)] {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m.set(row, col, m.get(row, col) + sign);
                }
            }
        }
        differentials.push(m);
    }
    let c = ChainComplex { bases, differentials };
    c.check_square_zero()?;
    Ok(c)
}

/// `ℤ^rank ⊕ ⨁ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomologyGroup {
    pub rank: usize,
    /// Torsion coefficients, each at least 2 and dividing the next.
    pub torsion: Vec<i128>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.groups.iter().enumerate().map(|(k, g)| if k % 2 == 0 { g.rank as i128 } else { -(g.rank as i128) }).sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.groups.iter().enumerate() {
            writeln!(f, "H_{k} = {g}")?;
        }
        Ok(())
    }
}

/// Homology of a chain complex, with `C_{K+1} = 0` above the top degree.
pub fn chain_homology(c: &ChainComplex) -> Result<HomologyResult> {
    let top = c.differentials.len() - 1;
    let forms = c.differentials.iter().map(smith_normal_form).collect::<Result<Vec<_>>>()?;
    let groups = (0..=top)
        .map(|k| {
            let rank_out = forms[k].rank();
            let (rank_in, torsion) = match forms.get(k + 1) {
                Some(f) => (f.rank(), f.invariant_factors().into_iter().filter(|&t| t > 1).collect()),
                None => (0, Vec::new()),
            };
            HomologyGroup { rank: c.rank(k) - rank_out - rank_in, torsion }
        })
        .collect();
    Ok(HomologyResult { groups })
}

/// Integral homology of a simplicial set through normalized chains.
pub fn simplicial_homology(s: &SimplicialSet) -> Result<HomologyResult> {
    chain_homology(&normalized_chains(s)?)
}
