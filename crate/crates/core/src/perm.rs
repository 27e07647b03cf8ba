//! Permutations in one-line notation, acting on `1..=n`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A bijection of `{1, ..., n}` stored as `[p(1), ..., p(n)]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { one_line: (1..=n).collect() }
    }

    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = alloc::vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{one_line:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    /// Builds a permutation of `n` letters from disjoint or overlapping cycles,
    /// composed right to left as written.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Permutation::identity(n);
        for cycle in cycles.iter().rev() {
            let mut c = Permutation::identity(n);
            let mut distinct = BTreeSet::new();
            for &v in cycle {
                if v == 0 || v > n || !distinct.insert(v) {
                    return Err(Error::InvalidPermutation(format!("cycle {cycle:?} on {n} letters")));
                }
            }
            for (k, &v) in cycle.iter().enumerate() {
                c.one_line[v - 1] = cycle[(k + 1) % cycle.len()];
            }
            acc = c.compose(&acc);
        }
        Ok(acc)
    }

    /// Adjacent transposition exchanging `i` and `i + 1`.
    pub fn transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { what: "transposition", index: i, bound: n.saturating_sub(1) });
        }
        let mut p = Permutation::identity(n);
        p.one_line.swap(i - 1, i);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// `p(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.len()];
        for (k, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { one_line: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation { one_line: other.one_line.iter().map(|&v| self.one_line[v - 1]).collect() }
    }

    /// Cycle decomposition, fixed points omitted, each cycle starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = alloc::vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("id");
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|v| format!("{v}")).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        s
    }

    /// Indices `a_1, ..., a_k` with `self = s_{a_1} ∘ ... ∘ s_{a_k}` for adjacent
    /// transpositions `s_a = (a a+1)`.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut p = self.one_line.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
            p.swap(i, i + 1);
            word.push(i + 1);
        }
        word.reverse();
        word
    }

    /// All permutations of `n` letters in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = alloc::vec![Permutation { one_line: cur.clone() }];
        loop {
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Permutation { one_line: cur.clone() });
        }
    }

    /// Block sum: `self` on the first letters, `other` shifted onto the rest.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.len();
        let mut one_line = self.one_line.clone();
        one_line.extend(other.one_line.iter().map(|v| v + shift));
        Permutation { one_line }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.one_line.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Subgroup of `Σ_n` generated by a list of permutations, closed under composition.
pub fn subgroup_closure(n: usize, generators: &[Permutation]) -> Result<Vec<Permutation>> {
    for g in generators {
        if g.len() != n {
            return Err(Error::InvalidPermutation(format!("{g} is not a permutation of {n} letters")));
        }
    }
    let mut group: BTreeSet<Permutation> = BTreeSet::new();
    group.insert(Permutation::identity(n));
    let mut frontier: Vec<Permutation> = alloc::vec![Permutation::identity(n)];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = g.compose(&p);
            if group.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    Ok(group.into_iter().collect())
}

/// Parses `[2,4,1,3]` (one-line) or `(1 2 4 3)(5 6)` / `id` (cycles) on `n` letters.
pub fn parse_permutation(text: &str, n: usize) -> Result<Permutation> {
    let t = text.trim();
    if t == "id" || t == "()" {
        return Ok(Permutation::identity(n));
    }
    if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let vals = parse_numbers(inner)?;
        let p = Permutation::new(vals)?;
        if p.len() != n {
            return Err(Error::InvalidPermutation(format!("{t} has {} letters, expected {n}", p.len())));
        }
        return Ok(p);
    }
    let mut cycles = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {t}")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {t}")))?;
        cycles.push(parse_numbers(&open[..close])?);
        rest = open[close + 1..].trim_start();
    }
    Permutation::from_cycles(n, &cycles)
}

fn parse_numbers(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(|w| w.parse::<usize>().map_err(|_| Error::Parse(format!("not a number: {w}"))))
        .collect()
}
