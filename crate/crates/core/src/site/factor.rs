//! The canonical normal form `δ…δ γ…γ π σ…σ` of a formal cubical product.

use alloc::vec::Vec;
use core::fmt;

use super::morphism::{compose_word, delta, gamma, sigma, Entry, Morphism};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Normal form of an arrow `⟦src⟧ → ⟦dst⟧`.
///
/// Reading outermost first, the arrow is
/// `δ^{faces[0]} ∘ … ∘ γ^{conjs[0]} ∘ … ∘ π_perm ∘ σ^{degens[0]} ∘ …`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Factorization {
    pub src: usize,
    pub dst: usize,
    /// `(i, ε)` pairs, strictly decreasing in `i`.
    pub faces: Vec<(usize, bool)>,
    /// Strictly increasing.
    pub conjs: Vec<usize>,
    pub perm: Permutation,
    /// Strictly increasing.
    pub degens: Vec<usize>,
}

impl Factorization {
    /// Number of coordinates after the degeneracies (the degree of `π`).
    pub fn ell(&self) -> usize {
        self.perm.len()
    }

    /// Degree of the object between the conjunctions and the faces.
    pub fn middle(&self) -> usize {
        self.ell() - self.conjs.len()
    }

    /// Checks the index-ordering invariants and arity bookkeeping.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidMorphism(alloc::format!("ill-formed factorization: {msg}")));
        if self.degens.len() > self.src || self.src - self.degens.len() != self.ell() {
            return bad("degeneracy count does not match the permutation degree");
        }
        if !self.degens.windows(2).all(|w| w[0] < w[1]) || self.degens.iter().any(|&j| j == 0 || j > self.src) {
            return bad("degeneracy indices must be strictly increasing within 1..=src");
        }
        if !self.conjs.windows(2).all(|w| w[0] < w[1]) || self.conjs.iter().any(|&k| k == 0 || k >= self.ell()) {
            return bad("conjunction indices must be strictly increasing within 1..ell");
        }
        if self.middle() + self.faces.len() != self.dst {
            return bad("face count does not match the target");
        }
        if !self.faces.windows(2).all(|w| w[0].0 > w[1].0) || self.faces.iter().any(|&(i, _)| i == 0 || i > self.dst) {
            return bad("face indices must be strictly decreasing within 1..=dst");
        }
        Ok(())
    }

    /// The generator word, outermost first.
    pub fn generators(&self) -> Result<Vec<Morphism>> {
        self.validate()?;
        let mut word = Vec::new();
        let r = self.faces.len();
        for (t, &(i, eps)) in self.faces.iter().enumerate() {
            // δ at position t maps ⟦middle + r - t - 1⟧ → ⟦middle + r - t⟧
            word.push(delta(self.middle() + r - t - 1, i, eps)?);
        }
        let c = self.conjs.len();
        for (t, &k) in self.conjs.iter().enumerate() {
            word.push(gamma(self.middle() + t, k)?);
        }
        debug_assert_eq!(self.middle() + c, self.ell());
        word.push(Morphism::cosymmetry(&self.perm));
        let d = self.degens.len();
        for (t, &j) in self.degens.iter().enumerate() {
            word.push(sigma(self.ell() + t, j)?);
        }
        debug_assert_eq!(self.ell() + d, self.src);
        Ok(word)
    }

    /// Composes the generators back into a formal product.
    pub fn evaluate(&self) -> Result<Morphism> {
        compose_word(&self.generators()?)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        for &(i, e) in &self.faces {
            parts.push(alloc::format!("d{i},{}", u8::from(e)));
        }
        for &k in &self.conjs {
            parts.push(alloc::format!("g{k}"));
        }
        if !self.perm.is_identity() {
            parts.push(alloc::format!("pi{}", self.perm.cycle_string()));
        }
        for &j in &self.degens {
            parts.push(alloc::format!("s{j}"));
        }
        if parts.is_empty() {
            write!(f, "id_{}", self.src)
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Reads off the unique normal form of `f`.
pub fn factor(f: &Morphism) -> Factorization {
    let m = f.src();
    let sequence = f.symbol_sequence();
    let mut used = alloc::vec![false; m + 1];
    for &x in &sequence {
        used[x] = true;
    }
    let degens: Vec<usize> = (1..=m).filter(|&j| !used[j]).collect();
    // rename surviving symbols to 1..ell in increasing order
    let mut rename = alloc::vec![0; m + 1];
    let mut next = 0;
    for j in 1..=m {
        if used[j] {
            next += 1;
            rename[j] = next;
        }
    }
    // π_p = (x_{p⁻¹(1)}, …): p⁻¹ is the renamed concatenation
    let inv: Vec<usize> = sequence.iter().map(|&x| rename[x]).collect();
    let perm = Permutation::new(inv).expect("symbol sequence is a bijection").inverse();
    let mut conjs = Vec::new();
    let mut pos = 0;
    for e in f.entries() {
        if let Entry::Conj(s) = e {
            for k in 1..s.len() {
                conjs.push(pos + k);
            }
            pos += s.len();
        }
    }
    let faces: Vec<(usize, bool)> = f
        .entries()
        .iter()
        .enumerate()
        .rev()
        .filter_map(|(k, e)| match e {
            Entry::Zero => Some((k + 1, false)),
            Entry::One => Some((k + 1, true)),
            Entry::Conj(_) => None,
        })
        .collect();
    Factorization { src: m, dst: f.dst(), faces, conjs, perm, degens }
}

/// Every well-formed factorization with the given arities, in canonical order.
pub fn enumerate_factorizations(m: usize, n: usize) -> Vec<Factorization> {
    let mut out = Vec::new();
    for ell in 0..=m {
        for degens in subsets(m, m - ell) {
            for perm in Permutation::all(ell) {
                let max_conj = ell.saturating_sub(1);
                for nconj in 0..=max_conj {
                    let mid = ell - nconj;
                    if mid > n {
                        continue;
                    }
                    for conjs in subsets(max_conj, nconj) {
                        for positions in subsets(n, n - mid) {
                            let r = positions.len();
                            for bits in 0..(1u32 << r) {
                                let faces: Vec<(usize, bool)> = positions
                                    .iter()
                                    .rev()
                                    .enumerate()
                                    .map(|(t, &i)| (i, bits & (1 << t) != 0))
                                    .collect();
                                out.push(Factorization {
                                    src: m,
                                    dst: n,
                                    faces,
                                    conjs: conjs.clone(),
                                    perm: perm.clone(),
                                    degens: degens.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// All `k`-element subsets of `1..=n`, each sorted increasingly.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}
