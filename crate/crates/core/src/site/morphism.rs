use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// One coordinate of a formal cubical product.
///
/// The derived order (`Zero < One < Conj`, conjunctions lexicographic) is the
/// canonical order used for enumerated hom-sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Entry {
    Zero,
    One,
    /// Ordered conjunction of 1-based symbol indices; never empty.
    Conj(Vec<usize>),
}

impl Entry {
    pub fn constant(bit: bool) -> Entry {
        if bit {
            Entry::One
        } else {
            Entry::Zero
        }
    }

    pub fn var(i: usize) -> Entry {
        Entry::Conj(alloc::vec![i])
    }

    pub fn is_constant(&self) -> bool {
        !matches!(self, Entry::Conj(_))
    }

    pub fn symbols(&self) -> &[usize] {
        match self {
            Entry::Conj(s) => s,
            _ => &[],
        }
    }
}

/// A formal cubical `(m, n)`-product: an arrow `⟦m⟧ → ⟦n⟧` of the symmetric cubical site.
///
/// Ordering compares the source first and then the entry list, so within a
/// hom-set it is the lexicographic order on entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    src: usize,
    entries: Vec<Entry>,
}

impl Morphism {
    pub fn new(src: usize, entries: Vec<Entry>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &entries {
            if let Entry::Conj(s) = e {
                if s.is_empty() {
                    return Err(Error::InvalidMorphism("empty conjunction".into()));
                }
                for &x in s {
                    if x == 0 || x > src {
                        return Err(Error::InvalidMorphism(format!("symbol x{x} outside x1..x{src}")));
                    }
                    if !seen.insert(x) {
                        return Err(Error::InvalidMorphism(format!("symbol x{x} occurs more than once")));
                    }
                }
            }
        }
        Ok(Morphism { src, entries })
    }

    pub(crate) fn new_unchecked(src: usize, entries: Vec<Entry>) -> Self {
        debug_assert!(Morphism::new(src, entries.clone()).is_ok());
        Morphism { src, entries }
    }

    pub fn identity(n: usize) -> Self {
        Morphism { src: n, entries: (1..=n).map(Entry::var).collect() }
    }

    /// The constant map `⟦m⟧ → ⟦n⟧` onto a vertex.
    pub fn constant(m: usize, bits: &[bool]) -> Self {
        Morphism { src: m, entries: bits.iter().map(|&b| Entry::constant(b)).collect() }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// `self ∘ f`: substitute, drop units inside long conjunctions, collapse zeros.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if f.dst() != self.src {
            return Err(Error::CompositionMismatch { left_src: self.src, right_dst: f.dst() });
        }
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                Entry::Zero => Entry::Zero,
                Entry::One => Entry::One,
                Entry::Conj(syms) => {
                    let mut out = Vec::new();
                    let mut zero = false;
                    for &s in syms {
                        match &f.entries[s - 1] {
                            Entry::Zero => zero = true,
                            Entry::One => {}
                            Entry::Conj(t) => out.extend_from_slice(t),
                        }
                    }
                    if zero {
                        Entry::Zero
                    } else if out.is_empty() {
                        Entry::One
                    } else {
                        Entry::Conj(out)
                    }
                }
            })
            .collect();
        Ok(Morphism { src: f.src, entries })
    }

    /// Monoidal product `self ⊕ other`.
    pub fn tensor(&self, other: &Morphism) -> Morphism {
        let shift = self.src;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|e| match e {
            Entry::Conj(s) => Entry::Conj(s.iter().map(|x| x + shift).collect()),
            c => c.clone(),
        }));
        Morphism { src: self.src + other.src, entries }
    }

    /// Symmetry `⟦m⟧ ⊕ ⟦n⟧ → ⟦n⟧ ⊕ ⟦m⟧`.
    pub fn symmetry(m: usize, n: usize) -> Morphism {
        let entries = (m + 1..=m + n).chain(1..=m).map(Entry::var).collect();
        Morphism { src: m + n, entries }
    }

    /// Cosymmetry `π_p = (x_{p⁻¹(1)}, ..., x_{p⁻¹(n)})`.
    pub fn cosymmetry(p: &Permutation) -> Morphism {
        let inv = p.inverse();
        Morphism { src: p.len(), entries: inv.one_line().iter().map(|&v| Entry::var(v)).collect() }
    }

    /// Symbols in order of appearance across the concatenated entries.
    pub fn symbol_sequence(&self) -> Vec<usize> {
        self.entries.iter().flat_map(|e| e.symbols().iter().copied()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Morphism::identity(self.src)
    }
}

/// The generating maps of the site.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GeneratorKind {
    /// `δ^{i,ε}_n : ⟦n⟧ → ⟦n+1⟧`, `1 <= i <= n+1`.
    Delta { i: usize, eps: bool },
    /// `σ^i_n : ⟦n+1⟧ → ⟦n⟧`, `1 <= i <= n+1`.
    Sigma { i: usize },
    /// `γ^i_n : ⟦n+1⟧ → ⟦n⟧`, `1 <= i <= n`.
    Gamma { i: usize },
    /// `π_p : ⟦n⟧ → ⟦n⟧`.
    Pi(Permutation),
}

/// Literal transcription of a generator at dimension index `n`.
pub fn generator(kind: &GeneratorKind, n: usize) -> Result<Morphism> {
    match kind {
        GeneratorKind::Delta { i, eps } => delta(n, *i, *eps),
        GeneratorKind::Sigma { i } => sigma(n, *i),
        GeneratorKind::Gamma { i } => gamma(n, *i),
        GeneratorKind::Pi(p) => {
            if p.len() != n {
                return Err(Error::IndexOutOfRange { what: "permutation degree", index: p.len(), bound: n });
            }
            Ok(Morphism::cosymmetry(p))
        }
    }
}

pub fn delta(n: usize, i: usize, eps: bool) -> Result<Morphism> {
    if i == 0 || i > n + 1 {
        return Err(Error::IndexOutOfRange { what: "delta", index: i, bound: n + 1 });
    }
    let mut entries: Vec<Entry> = (1..=n).map(Entry::var).collect();
    entries.insert(i - 1, Entry::constant(eps));
    Ok(Morphism { src: n, entries })
}

pub fn sigma(n: usize, i: usize) -> Result<Morphism> {
    if i == 0 || i > n + 1 {
        return Err(Error::IndexOutOfRange { what: "sigma", index: i, bound: n + 1 });
    }
    let entries = (1..=n + 1).filter(|&k| k != i).map(Entry::var).collect();
    Ok(Morphism { src: n + 1, entries })
}

pub fn gamma(n: usize, i: usize) -> Result<Morphism> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { what: "gamma", index: i, bound: n });
    }
    let mut entries = Vec::with_capacity(n);
    for k in 1..i {
        entries.push(Entry::var(k));
    }
    entries.push(Entry::Conj(alloc::vec![i, i + 1]));
    for k in i + 2..=n + 1 {
        entries.push(Entry::var(k));
    }
    Ok(Morphism { src: n + 1, entries })
}

/// Adjacent transposition `π_{(i i+1)}` on `⟦n⟧`.
pub fn swap(n: usize, i: usize) -> Result<Morphism> {
    Ok(Morphism::cosymmetry(&Permutation::transposition(n, i)?))
}

/// Composes a word of morphisms written outermost first: `w[0] ∘ w[1] ∘ ...`.
pub fn compose_word(word: &[Morphism]) -> Result<Morphism> {
    let mut it = word.iter().rev();
    let Some(first) = it.next() else {
        return Err(Error::InvalidMorphism("empty word".into()));
    };
    let mut acc = first.clone();
    for g in it {
        acc = g.compose(&acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::site::syntax::parse_morphism;
    use alloc::vec;

    fn m(s: &str) -> Morphism {
        parse_morphism(s).unwrap()
    }

    #[test]
    fn paper_compositions() {
        assert_eq!(m("(x3,x1^x2):3->2").compose(&m("(0,x1,x5):5->3")).unwrap(), m("(x5,0):5->2"));
        assert_eq!(m("(x2^x1):2->1").compose(&m("(x1^x2,x3):3->2")).unwrap(), m("(x3^x1^x2):3->1"));
        assert_eq!(m("(x1^x2):2->1").compose(&m("(1,1):0->2")).unwrap(), m("(1):0->1"));
        assert_eq!(m("(0,x1^x4):5->2").compose(&m("(x10,0,0,1,x3):10->5")).unwrap(), m("(0,x10):10->2"));
    }

    #[test]
    fn tensor_example_and_symmetry() {
        assert_eq!(m("(x1^x2):2->1").tensor(&m("(0,x1):1->2")), m("(x1^x2,0,x3):3->3"));
        assert_eq!(Morphism::symmetry(1, 1), m("(x2,x1):2->2"));
        let f = m("(x1^x2):2->1");
        assert_eq!(f.tensor(&Morphism::identity(0)), f);
    }

    #[test]
    fn generator_transcriptions() {
        assert_eq!(delta(2, 2, true).unwrap(), m("(x1,1,x2):2->3"));
        assert_eq!(gamma(1, 1).unwrap(), m("(x1^x2):2->1"));
        let p = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(generator(&GeneratorKind::Pi(p), 2).unwrap(), m("(x2,x1):2->2"));
        assert!(matches!(delta(2, 4, false), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(gamma(2, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(sigma(1, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn composition_mismatch() {
        let e = m("(x1):1->1").compose(&m("(x1,x2):2->2"));
        assert_eq!(e, Err(Error::CompositionMismatch { left_src: 1, right_dst: 2 }));
    }

    #[test]
    fn rejects_repeated_symbols() {
        assert!(Morphism::new(1, vec![Entry::var(1), Entry::var(1)]).is_err());
        assert!(Morphism::new(1, vec![Entry::Conj(vec![])]).is_err());
        assert!(Morphism::new(1, vec![Entry::var(2)]).is_err());
    }

    #[test]
    fn cosymmetry_is_functorial() {
        for p in Permutation::all(3) {
            for q in Permutation::all(3) {
                let lhs = Morphism::cosymmetry(&p).compose(&Morphism::cosymmetry(&q)).unwrap();
                assert_eq!(lhs, Morphism::cosymmetry(&p.compose(&q)));
            }
        }
    }
}
