//! Hom-set enumeration, membership tests and classification of arrows.

use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use super::factor::factor;
use super::morphism::{Entry, Morphism};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the size of any enumerated hom-set.
pub const DEFAULT_LIMIT: u128 = 1_000_000;

static LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_LIMIT as u64);

/// The bound applied by constructions that enumerate internally.
pub fn resource_limit() -> u128 {
    u128::from(LIMIT.load(Ordering::Relaxed))
}

/// Replaces [`resource_limit`] for the whole process.
pub fn set_resource_limit(limit: u128) {
    LIMIT.store(u64::try_from(limit).unwrap_or(u64::MAX), Ordering::Relaxed);
}

/// Which cubical site a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Site {
    /// The box category: faces and degeneracies only.
    Q,
    /// The symmetric cubical site with conjunctions and cosymmetries.
    QSigma,
}

impl Site {
    pub fn name(self) -> &'static str {
        match self {
            Site::Q => "Q",
            Site::QSigma => "QSigma",
        }
    }

    pub fn contains(self, f: &Morphism) -> bool {
        match self {
            Site::Q => in_q(f),
            Site::QSigma => true,
        }
    }
}

impl core::fmt::Display for Site {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Site {
    type Err = Error;

    fn from_str(s: &str) -> Result<Site> {
        match s.trim() {
            "Q" | "q" => Ok(Site::Q),
            "QSigma" | "qsigma" | "QΣ" => Ok(Site::QSigma),
            other => Err(Error::Parse(alloc::format!("unknown site {other:?}"))),
        }
    }
}

/// A box-category arrow: no conjunction of length ≥ 2 and symbols strictly
/// increasing left to right.
pub fn in_q(f: &Morphism) -> bool {
    f.entries().iter().all(|e| e.symbols().len() <= 1) && f.symbol_sequence().windows(2).all(|w| w[0] < w[1])
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn factorial(n: u128) -> u128 {
    (1..=n).fold(1u128, |a, b| a.saturating_mul(b))
}

/// Closed-form size of `Hom(⟦m⟧, ⟦n⟧)` in the given site (saturating).
pub fn hom_count(m: usize, n: usize, site: Site) -> u128 {
    let (m, n) = (m as u128, n as u128);
    let pow2 = |e: u128| -> u128 {
        if e >= 127 {
            u128::MAX
        } else {
            1u128 << e
        }
    };
    match site {
        Site::Q => (0..=m.min(n)).fold(0u128, |acc, j| {
            acc.saturating_add(binom(n, j).saturating_mul(binom(m, j)).saturating_mul(pow2(n - j)))
        }),
        Site::QSigma => {
            let mut total = pow2(n);
            for k in 1..=m {
                let mut inner: u128 = 0;
                for j in 1..=k.min(n) {
                    let term = binom(n, j)
                        .saturating_mul(pow2(n - j))
                        .saturating_mul(factorial(k))
                        .saturating_mul(binom(k - 1, j - 1));
                    inner = inner.saturating_add(term);
                }
                total = total.saturating_add(binom(m, k).saturating_mul(inner));
            }
            total
        }
    }
}

/// The complete hom-set in canonical (lexicographic) order.
pub fn enumerate_hom(m: usize, n: usize, site: Site, limit: u128) -> Result<Vec<Morphism>> {
    let count = hom_count(m, n, site);
    if count > limit {
        return Err(Error::ResourceBound { what: "hom-set enumeration", count, limit });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = Vec::with_capacity(n);
    match site {
        Site::QSigma => {
            let mut used = alloc::vec![false; m + 1];
            enum_sigma(m, n, &mut cur, &mut used, &mut out);
        }
        Site::Q => enum_q(m, n, 1, &mut cur, &mut out),
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn enum_sigma(m: usize, n: usize, cur: &mut Vec<Entry>, used: &mut Vec<bool>, out: &mut Vec<Morphism>) {
    if cur.len() == n {
        out.push(Morphism::new_unchecked(m, cur.clone()));
        return;
    }
    for c in [Entry::Zero, Entry::One] {
        cur.push(c);
        enum_sigma(m, n, cur, used, out);
        cur.pop();
    }
    let mut seq = Vec::new();
    conj_sequences(m, n, cur, used, &mut seq, out);
}

/// Extends the conjunction `seq` at the current position in lexicographic order.
fn conj_sequences(
    m: usize,
    n: usize,
    cur: &mut Vec<Entry>,
    used: &mut Vec<bool>,
    seq: &mut Vec<usize>,
    out: &mut Vec<Morphism>,
) {
    for s in 1..=m {
        if used[s] {
            continue;
        }
        used[s] = true;
        seq.push(s);
        cur.push(Entry::Conj(seq.clone()));
        enum_sigma(m, n, cur, used, out);
        cur.pop();
        conj_sequences(m, n, cur, used, seq, out);
        seq.pop();
        used[s] = false;
    }
}

fn enum_q(m: usize, n: usize, next_sym: usize, cur: &mut Vec<Entry>, out: &mut Vec<Morphism>) {
    if cur.len() == n {
        out.push(Morphism::new_unchecked(m, cur.clone()));
        return;
    }
    for c in [Entry::Zero, Entry::One] {
        cur.push(c);
        enum_q(m, n, next_sym, cur, out);
        cur.pop();
    }
    for s in next_sym..=m {
        cur.push(Entry::var(s));
        enum_q(m, n, s + 1, cur, out);
        cur.pop();
    }
}

/// Flags describing where an arrow sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Classification {
    pub in_q: bool,
    pub in_plus: bool,
    pub in_minus: bool,
    pub is_mono: bool,
    pub is_epi: bool,
    pub is_iso: bool,
}

pub fn classify(f: &Morphism) -> Classification {
    let nf = factor(f);
    let in_plus = nf.conjs.is_empty() && nf.degens.is_empty();
    let in_minus = nf.faces.is_empty();
    Classification { in_q: in_q(f), in_plus, in_minus, is_mono: in_plus, is_epi: in_minus, is_iso: in_plus && in_minus }
}

pub fn is_plus(f: &Morphism) -> bool {
    f.entries().iter().all(|e| e.symbols().len() <= 1) && f.symbol_sequence().len() == f.src()
}

pub fn is_minus(f: &Morphism) -> bool {
    f.entries().iter().all(|e| !e.is_constant())
}

/// Monomorphisms `⟦m⟧ → ⟦n⟧` of the site.
pub fn enumerate_plus(m: usize, n: usize, site: Site, limit: u128) -> Result<Vec<Morphism>> {
    Ok(enumerate_hom(m, n, site, limit)?.into_iter().filter(is_plus).collect())
}

/// Epimorphisms `⟦m⟧ → ⟦n⟧` of the site.
pub fn enumerate_minus(m: usize, n: usize, site: Site, limit: u128) -> Result<Vec<Morphism>> {
    Ok(enumerate_hom(m, n, site, limit)?.into_iter().filter(is_minus).collect())
}

/// `Aut(⟦n⟧)` in the site, as cosymmetries ordered like the morphisms.
pub fn automorphisms(n: usize, site: Site) -> Vec<Morphism> {
    match site {
        Site::Q => alloc::vec![Morphism::identity(n)],
        Site::QSigma => {
            let mut v: Vec<Morphism> = Permutation::all(n).iter().map(Morphism::cosymmetry).collect();
            v.sort();
            v
        }
    }
}

/// Inverse of an automorphism (a cosymmetry).
pub fn inverse_iso(f: &Morphism) -> Option<Morphism> {
    if !(is_plus(f) && is_minus(f)) {
        return None;
    }
    let mut entries = alloc::vec![Entry::Zero; f.src()];
    for (k, s) in f.symbol_sequence().into_iter().enumerate() {
        entries[s - 1] = Entry::var(k + 1);
    }
    Some(Morphism::new_unchecked(f.dst(), entries))
}

/// Table of the action on vertices `{0,1}^m → {0,1}^n`, conjunction as minimum.
pub fn vertices_action(f: &Morphism) -> Vec<(Vec<bool>, Vec<bool>)> {
    let m = f.src();
    (0..(1u64 << m))
        .map(|code| {
            let v: Vec<bool> = (0..m).map(|k| code & (1 << (m - 1 - k)) != 0).collect();
            let image = f.compose(&Morphism::constant(0, &v)).expect("vertex has matching arity");
            let w = image.entries().iter().map(|e| matches!(e, Entry::One)).collect();
            (v, w)
        })
        .collect()
}

/// Epi–mono factorization `f = mono ∘ epi` read off the normal form.
pub fn ez_factor(f: &Morphism) -> (Morphism, Morphism) {
    let mut epi_entries = Vec::new();
    let mut mono_entries = Vec::new();
    for e in f.entries() {
        match e {
            Entry::Conj(s) => {
                epi_entries.push(Entry::Conj(s.clone()));
                mono_entries.push(Entry::var(epi_entries.len()));
            }
            c => mono_entries.push(c.clone()),
        }
    }
    let r = epi_entries.len();
    (Morphism::new_unchecked(f.src(), epi_entries), Morphism::new_unchecked(r, mono_entries))
}
