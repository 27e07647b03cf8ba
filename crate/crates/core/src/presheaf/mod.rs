//! Finite cubical and extended cubical sets.
//!
//! A [`Presheaf`] stores its sections up to a truncation level `N` together
//! with the action of every generator `δ`, `σ`, `γ` and adjacent cosymmetry
//! between stored levels. A skeletal presheaf denotes the left Kan extension
//! of that data, so levels above `N` can be produced on demand with
//! [`Presheaf::extend_to`]; a truncated presheaf refuses to go beyond `N`.

mod build;
mod cellular;
mod extend;
mod map;
mod search;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::site::{self, factor, Morphism, Site};

pub use build::{
    boundary, cap, coproduct, coskeleton, ez_decompose_section, nondegenerate_sections, pushout, quotient_boundary,
    quotient_by_group, representable, skeleton, stabilizer, sum_maps, Coproduct, Pushout, SubgroupSpec,
};
pub use cellular::{verify_skeletal_pushout, CellularReport};
pub use extend::{extend_level, LevelExtension};
pub use map::PresheafMap;
pub use search::{count_maps, find_isomorphism, find_map, for_each_map, hom_set, MapConstraints};

/// Whether levels above the truncation are determined by the stored data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Kind {
    Skeletal,
    Truncated,
}

/// A generating arrow, named by the dimension index of the paper's notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Gen {
    /// `δ^{i,ε}_n : ⟦n⟧ → ⟦n+1⟧`, acting `X_{n+1} → X_n`.
    Delta { n: usize, i: usize, eps: bool },
    /// `σ^i_n : ⟦n+1⟧ → ⟦n⟧`, acting `X_n → X_{n+1}`.
    Sigma { n: usize, i: usize },
    /// `γ^i_n : ⟦n+1⟧ → ⟦n⟧`, acting `X_n → X_{n+1}`.
    Gamma { n: usize, i: usize },
    /// Adjacent cosymmetry `π_{(i i+1)}` on `⟦n⟧`.
    Swap { n: usize, i: usize },
}

impl Gen {
    pub fn morphism(&self) -> Morphism {
        match *self {
            Gen::Delta { n, i, eps } => site::delta(n, i, eps),
            Gen::Sigma { n, i } => site::sigma(n, i),
            Gen::Gamma { n, i } => site::gamma(n, i),
            Gen::Swap { n, i } => site::swap(n, i),
        }
        .expect("generator indices are validated on construction")
    }

    /// Level of the sections acted on.
    pub fn from_level(&self) -> usize {
        match *self {
            Gen::Delta { n, .. } => n + 1,
            Gen::Sigma { n, .. } | Gen::Gamma { n, .. } | Gen::Swap { n, .. } => n,
        }
    }

    /// Level of the resulting sections.
    pub fn to_level(&self) -> usize {
        match *self {
            Gen::Delta { n, .. } | Gen::Swap { n, .. } => n,
            Gen::Sigma { n, .. } | Gen::Gamma { n, .. } => n + 1,
        }
    }

    /// Every generator acting between levels `≤ truncation`, in canonical order.
    pub fn all(site: Site, truncation: usize) -> Vec<Gen> {
        let mut v = Vec::new();
        for n in 0..=truncation {
            if n < truncation {
                for i in 1..=n + 1 {
                    v.push(Gen::Delta { n, i, eps: false });
                    v.push(Gen::Delta { n, i, eps: true });
                }
                for i in 1..=n + 1 {
                    v.push(Gen::Sigma { n, i });
                }
                if site == Site::QSigma {
                    for i in 1..=n {
                        v.push(Gen::Gamma { n, i });
                    }
                }
            }
            if site == Site::QSigma {
                for i in 1..n {
                    v.push(Gen::Swap { n, i });
                }
            }
        }
        v
    }

    pub fn is_valid(&self, site: Site, truncation: usize) -> bool {
        let lv = self.from_level().max(self.to_level()) <= truncation;
        lv && match *self {
            Gen::Delta { n, i, .. } | Gen::Sigma { n, i } => (1..=n + 1).contains(&i),
            Gen::Gamma { n, i } => site == Site::QSigma && (1..=n).contains(&i),
            Gen::Swap { n, i } => site == Site::QSigma && i >= 1 && i < n,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::Delta { n, i, eps } => write!(f, "delta({i},{})@{n}", u8::from(eps)),
            Gen::Sigma { n, i } => write!(f, "sigma({i})@{n}"),
            Gen::Gamma { n, i } => write!(f, "gamma({i})@{n}"),
            Gen::Swap { n, i } => write!(f, "swap({i})@{n}"),
        }
    }
}

impl core::str::FromStr for Gen {
    type Err = Error;

    /// Parses the printed form, e.g. `delta(2,1)@1` or `swap(1)@2`.
    fn from_str(text: &str) -> Result<Gen> {
        let bad = || Error::Parse(format!("malformed generator {text:?}"));
        let t = text.trim();
        let (head, level) = t.rsplit_once('@').ok_or_else(bad)?;
        let n: usize = level.trim().parse().map_err(|_| bad())?;
        let (name, args) = head.trim().strip_suffix(')').and_then(|h| h.split_once('(')).ok_or_else(bad)?;
        let args: Vec<usize> = args.split(',').map(|a| a.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
        match (name.trim(), args.as_slice()) {
            ("delta", &[i, e]) if e <= 1 => Ok(Gen::Delta { n, i, eps: e == 1 }),
            ("sigma", &[i]) => Ok(Gen::Sigma { n, i }),
            ("gamma", &[i]) => Ok(Gen::Gamma { n, i }),
            ("swap", &[i]) => Ok(Gen::Swap { n, i }),
            _ => Err(bad()),
        }
    }
}

/// The generator word of `f` from its normal form, outermost first.
pub fn word(f: &Morphism) -> Vec<Gen> {
    let nf = factor(f);
    let (r, middle, ell) = (nf.faces.len(), nf.middle(), nf.ell());
    let mut w = Vec::new();
    for (t, &(i, eps)) in nf.faces.iter().enumerate() {
        w.push(Gen::Delta { n: middle + r - t - 1, i, eps });
    }
    for (t, &k) in nf.conjs.iter().enumerate() {
        w.push(Gen::Gamma { n: middle + t, i: k });
    }
    for a in nf.perm.adjacent_word() {
        w.push(Gen::Swap { n: ell, i: a });
    }
    for (t, &j) in nf.degens.iter().enumerate() {
        w.push(Gen::Sigma { n: ell + t, i: j });
    }
    w
}

/// A section written as `epi^* rep` with `rep` a nondegenerate orbit representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Decomp {
    pub epi: Morphism,
    pub rep: usize,
}

/// A finite (extended) cubical set given by truncated level data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    site: Site,
    kind: Kind,
    truncation: usize,
    names: Vec<Vec<String>>,
    actions: BTreeMap<Gen, Vec<usize>>,
    labels: Option<Vec<Vec<Morphism>>>,
    decomp: Vec<Vec<Decomp>>,
    stabilizers: Vec<BTreeMap<usize, Vec<Permutation>>>,
}

impl Presheaf {
    /// Validated construction from explicit generator tables.
    pub fn new(
        site: Site,
        kind: Kind,
        truncation: usize,
        names: Vec<Vec<String>>,
        actions: BTreeMap<Gen, Vec<usize>>,
    ) -> Result<Presheaf> {
        let mut p = Presheaf {
            site,
            kind,
            truncation,
            names,
            actions,
            labels: None,
            decomp: Vec::new(),
            stabilizers: Vec::new(),
        };
        p.check_shape()?;
        p.check_functoriality()?;
        p.compute_ez();
        Ok(p)
    }

    /// Trusted construction: `act(g, x)` gives `g^* x`.
    pub(crate) fn from_fn(
        site: Site,
        kind: Kind,
        truncation: usize,
        names: Vec<Vec<String>>,
        mut act: impl FnMut(Gen, usize) -> usize,
    ) -> Presheaf {
        let mut actions = BTreeMap::new();
        for g in Gen::all(site, truncation) {
            let table = (0..names[g.from_level()].len()).map(|x| act(g, x)).collect();
            actions.insert(g, table);
        }
        let mut p = Presheaf {
            site,
            kind,
            truncation,
            names,
            actions,
            labels: None,
            decomp: Vec::new(),
            stabilizers: Vec::new(),
        };
        debug_assert!(p.check_shape().is_ok());
        p.compute_ez();
        p
    }

    /// Builds a presheaf whose sections are labelled by values of `T`.
    pub(crate) fn from_labels<T: Ord + Clone>(
        site: Site,
        kind: Kind,
        truncation: usize,
        levels: &[Vec<T>],
        name: impl Fn(&T) -> String,
        act: impl Fn(Gen, &T) -> T,
    ) -> Result<Presheaf> {
        let index: Vec<BTreeMap<&T, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(k, t)| (t, k)).collect()).collect();
        let names = levels.iter().map(|l| l.iter().map(&name).collect()).collect();
        let mut missing = None;
        let p = Presheaf::from_fn(site, kind, truncation, names, |g, x| {
            let image = act(g, &levels[g.from_level()][x]);
            match index[g.to_level()].get(&image) {
                Some(&y) => y,
                None => {
                    missing.get_or_insert_with(|| format!("{g} leaves the section set"));
                    0
                }
            }
        });
        match missing {
            Some(m) => Err(Error::InvalidPresheaf(m)),
            None => Ok(p),
        }
    }

    /// The empty presheaf.
    pub fn empty(site: Site) -> Presheaf {
        Presheaf::from_fn(site, Kind::Skeletal, 0, alloc::vec![Vec::new()], |_, _| 0)
    }

    /// The terminal presheaf `□⁰`.
    pub fn point(site: Site) -> Presheaf {
        build::representable(0, site).expect("□⁰ is small")
    }

    pub fn site(&self) -> Site {
        self.site
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Number of sections at a stored level.
    pub fn len(&self, level: usize) -> usize {
        self.names.get(level).map_or(0, Vec::len)
    }

    /// True when no level has a section.
    pub fn is_empty(&self) -> bool {
        self.names.iter().all(Vec::is_empty)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn names(&self, level: usize) -> &[String] {
        &self.names[level]
    }

    pub fn name(&self, level: usize, x: usize) -> &str {
        &self.names[level][x]
    }

    pub fn find(&self, level: usize, name: &str) -> Option<usize> {
        self.names.get(level)?.iter().position(|s| s == name)
    }

    /// Underlying cube maps of representable-derived presheaves.
    pub fn labels(&self, level: usize) -> Option<&[Morphism]> {
        self.labels.as_ref().and_then(|l| l.get(level)).map(Vec::as_slice)
    }

    pub(crate) fn with_labels(mut self, labels: Vec<Vec<Morphism>>) -> Presheaf {
        self.labels = Some(labels);
        self
    }

    /// Attaches cube maps to the sections, checking that level `k` carries
    /// arrows out of `⟦k⟧` into one common cube and that `label(x) ∘ g`, when
    /// it labels anything, labels `g^* x`. Quotients label orbits by
    /// representatives, so `label(x) ∘ g` need not be a label.
    pub fn labelled(self, labels: Vec<Vec<Morphism>>) -> Result<Presheaf> {
        let bad = |m: String| Err(Error::InvalidPresheaf(m));
        if labels.len() != self.names.len() || labels.iter().zip(&self.names).any(|(l, n)| l.len() != n.len()) {
            return bad(String::from("one label per section is required"));
        }
        let target = labels.iter().flatten().map(Morphism::dst).next();
        for (k, level) in labels.iter().enumerate() {
            if let Some(f) = level.iter().find(|f| f.src() != k || Some(f.dst()) != target) {
                return bad(format!("label {f} does not fit level {k}"));
            }
        }
        // label -> section, or None when the label is shared
        let mut index: Vec<BTreeMap<&Morphism, Option<usize>>> = Vec::new();
        for level in &labels {
            let mut m = BTreeMap::new();
            for (i, f) in level.iter().enumerate() {
                m.entry(f).and_modify(|v| *v = None).or_insert(Some(i));
            }
            index.push(m);
        }
        for (g, table) in &self.actions {
            let gm = g.morphism();
            for (x, &y) in table.iter().enumerate() {
                let composite = labels[g.from_level()][x].compose(&gm)?;
                if index[g.to_level()].get(&composite).is_some_and(|&z| z.is_some_and(|z| z != y)) {
                    return bad(format!("labels are not compatible with {g}"));
                }
            }
        }
        Ok(self.with_labels(labels))
    }

    /// Stored generator tables.
    pub fn actions(&self) -> &BTreeMap<Gen, Vec<usize>> {
        &self.actions
    }

    pub fn gen_table(&self, g: &Gen) -> Option<&[usize]> {
        self.actions.get(g).map(Vec::as_slice)
    }

    pub(crate) fn act_gen(&self, g: &Gen, x: usize) -> usize {
        self.actions[g][x]
    }

    pub(crate) fn act_word(&self, w: &[Gen], mut x: usize) -> usize {
        for g in w {
            x = self.actions[g][x];
        }
        x
    }

    fn check_levels(&self, f: &Morphism) -> Result<()> {
        let top = f.src().max(f.dst());
        if top > self.truncation {
            return Err(Error::BeyondTruncation { level: top, truncation: self.truncation });
        }
        if self.site == Site::Q && !site::in_q(f) {
            return Err(Error::InvalidMorphism(format!("{f} is not an arrow of Q")));
        }
        Ok(())
    }

    /// `f^* x` for `f: ⟦m⟧ → ⟦n⟧` and `x ∈ X_n`.
    pub fn act(&self, f: &Morphism, x: usize) -> Result<usize> {
        self.check_levels(f)?;
        if x >= self.len(f.dst()) {
            return Err(Error::IndexOutOfRange { what: "section", index: x, bound: self.len(f.dst()) });
        }
        Ok(self.act_word(&word(f), x))
    }

    /// The whole function `f^*: X_n → X_m`.
    pub fn table(&self, f: &Morphism) -> Result<Vec<usize>> {
        self.check_levels(f)?;
        let w = word(f);
        Ok((0..self.len(f.dst())).map(|x| self.act_word(&w, x)).collect())
    }

    /// `Aut(⟦k⟧)` of the site as permutations.
    pub(crate) fn automorphisms(&self, k: usize) -> Vec<Permutation> {
        match self.site {
            Site::Q => alloc::vec![Permutation::identity(k)],
            Site::QSigma => Permutation::all(k),
        }
    }

    /// `(π_θ)^* x`.
    pub fn act_perm(&self, theta: &Permutation, x: usize) -> usize {
        let n = theta.len();
        let w: Vec<Gen> = theta.adjacent_word().into_iter().map(|i| Gen::Swap { n, i }).collect();
        self.act_word(&w, x)
    }

    /// `(epi, rep)` with `epi^* rep = x` and `rep` a nondegenerate orbit representative.
    pub fn decomposition(&self, level: usize, x: usize) -> (&Morphism, usize) {
        let d = &self.decomp[level][x];
        (&d.epi, d.rep)
    }

    pub fn is_nondegenerate(&self, level: usize, x: usize) -> bool {
        let e = &self.decomp[level][x].epi;
        e.src() == e.dst()
    }

    /// Nondegenerate sections at a stored level.
    pub fn nondegenerate(&self, level: usize) -> Vec<usize> {
        (0..self.len(level)).filter(|&x| self.is_nondegenerate(level, x)).collect()
    }

    /// Representatives of the `Aut(⟦level⟧)`-orbits of nondegenerate sections.
    pub fn representatives(&self, level: usize) -> Vec<usize> {
        self.stabilizers[level].keys().copied().collect()
    }

    /// Stabilizer of an orbit representative.
    pub fn rep_stabilizer(&self, level: usize, rep: usize) -> &[Permutation] {
        &self.stabilizers[level][&rep]
    }

    /// Number of nondegenerate sections of each stored level.
    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.truncation).map(|k| self.nondegenerate(k).len()).collect()
    }

    /// The first `level + 1` levels, with the given kind.
    pub fn restrict_levels(&self, level: usize, kind: Kind) -> Presheaf {
        let top = level.min(self.truncation);
        let actions =
            self.actions.iter().filter(|(g, _)| g.from_level().max(g.to_level()) <= top).map(|(g, t)| (*g, t.clone()));
        Presheaf {
            site: self.site,
            kind,
            truncation: top,
            names: self.names[..=top].to_vec(),
            actions: actions.collect(),
            labels: self.labels.as_ref().map(|l| l[..=top].to_vec()),
            decomp: self.decomp[..=top].to_vec(),
            stabilizers: self.stabilizers[..=top].to_vec(),
        }
    }

    /// Same data, relabelled as truncated or skeletal.
    pub fn with_kind(mut self, kind: Kind) -> Presheaf {
        self.kind = kind;
        self
    }

    /// Renames every section `x` at level `k` to `name(k, x)`.
    pub fn renamed(mut self, name: impl Fn(usize, usize) -> String) -> Presheaf {
        for (k, level) in self.names.iter_mut().enumerate() {
            for (x, s) in level.iter_mut().enumerate() {
                *s = name(k, x);
            }
        }
        self
    }

    fn check_shape(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPresheaf(m));
        if self.names.len() != self.truncation + 1 {
            return bad(format!("expected {} levels, found {}", self.truncation + 1, self.names.len()));
        }
        for (k, level) in self.names.iter().enumerate() {
            let mut seen = alloc::collections::BTreeSet::new();
            for s in level {
                if !seen.insert(s) {
                    return bad(format!("section name {s} repeated at level {k}"));
                }
            }
        }
        for g in self.actions.keys() {
            if !g.is_valid(self.site, self.truncation) {
                return bad(format!(
                    "generator {g} is not part of site {} truncated at {}",
                    self.site, self.truncation
                ));
            }
        }
        for g in Gen::all(self.site, self.truncation) {
            let Some(t) = self.actions.get(&g) else {
                return bad(format!("missing action of {g}"));
            };
            if t.len() != self.len(g.from_level()) {
                return bad(format!(
                    "action of {g} has {} entries, level {} has {}",
                    t.len(),
                    g.from_level(),
                    self.len(g.from_level())
                ));
            }
            if let Some(&y) = t.iter().find(|&&y| y >= self.len(g.to_level())) {
                return bad(format!("action of {g} has target {y} outside level {}", g.to_level()));
            }
        }
        Ok(())
    }

    /// Checks the site relations on every stored section, then the full
    /// composition law `F(g∘f) = F(f)F(g)` over all generators `g` and arrows `f`.
    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        self.check_functoriality()
    }

    fn check_functoriality(&self) -> Result<()> {
        let n = self.truncation;
        let report = site::verify_relations(n.max(1));
        for inst in &report.instances {
            if self.site == Site::Q && !["dd", "sd", "ss"].contains(&inst.family.as_str()) {
                continue;
            }
            if inst.lhs.src().max(inst.lhs.dst()) > n {
                continue;
            }
            let lw: Vec<Gen> = inst.lhs_word.iter().flat_map(word).collect();
            let rw: Vec<Gen> = inst.rhs_word.iter().flat_map(word).collect();
            if lw.iter().chain(&rw).any(|g| !self.actions.contains_key(g)) {
                continue;
            }
            for x in 0..self.len(inst.lhs.dst()) {
                if self.act_word(&lw, x) != self.act_word(&rw, x) {
                    return Err(Error::InvalidPresheaf(format!(
                        "relation {} fails at section {}",
                        inst.label,
                        self.name(inst.lhs.dst(), x)
                    )));
                }
            }
        }
        let gens = Gen::all(self.site, n);
        for a in 0..=n {
            for b in 0..=n {
                for f in site::enumerate_hom(a, b, self.site, site::resource_limit())? {
                    let wf = word(&f);
                    for g in gens.iter().filter(|g| g.morphism().src() == b) {
                        let gf = g.morphism().compose(&f)?;
                        let wgf = word(&gf);
                        for y in 0..self.len(g.from_level()) {
                            if self.act_word(&wgf, y) != self.act_word(&wf, self.act_gen(g, y)) {
                                return Err(Error::InvalidPresheaf(format!(
                                    "action of {g} composed with {f} disagrees at section {}",
                                    self.name(g.from_level(), y)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Degeneracy generators out of `⟦k⟧` paired with a section.
    fn degeneracies(&self, k: usize) -> Vec<(Gen, Gen)> {
        let mut v = Vec::new();
        if k == 0 {
            return v;
        }
        let n = k - 1;
        for i in 1..=k {
            v.push((Gen::Sigma { n, i }, Gen::Delta { n, i, eps: false }));
        }
        if self.site == Site::QSigma {
            for i in 1..k {
                v.push((Gen::Gamma { n, i }, Gen::Delta { n, i, eps: true }));
            }
        }
        v
    }

    /// Fills `decomp` and `stabilizers` level by level.
    fn compute_ez(&mut self) {
        let top = self.truncation;
        self.decomp = Vec::with_capacity(top + 1);
        self.stabilizers = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let size = self.len(k);
            let autos = self.automorphisms(k);
            let perm_tables: Vec<Vec<usize>> =
                autos.iter().map(|t| (0..size).map(|x| self.act_perm(t, x)).collect()).collect();
            let degens = self.degeneracies(k);
            let mut level: Vec<Option<Decomp>> = alloc::vec![None; size];
            for x in 0..size {
                'search: for (t, theta) in autos.iter().enumerate() {
                    let u = perm_tables[t][x];
                    for (g, d) in &degens {
                        let w = self.act_gen(d, u);
                        if self.act_gen(g, w) == u {
                            let inner = &self.decomp[k - 1][w];
                            let twist = Morphism::cosymmetry(&theta.inverse());
                            let epi = inner
                                .epi
                                .compose(&g.morphism())
                                .and_then(|e| e.compose(&twist))
                                .expect("degeneracy word is composable");
                            level[x] = Some(Decomp { epi, rep: inner.rep });
                            break 'search;
                        }
                    }
                }
            }
            let mut stabs = BTreeMap::new();
            for x in 0..size {
                if level[x].is_some() {
                    continue;
                }
                let mut stab = Vec::new();
                for (t, theta) in autos.iter().enumerate() {
                    let y = perm_tables[t][x];
                    if y == x {
                        stab.push(theta.clone());
                    }
                    if level[y].is_none() {
                        level[y] = Some(Decomp { epi: Morphism::cosymmetry(theta), rep: x });
                    }
                }
                stabs.insert(x, stab);
            }
            self.decomp.push(level.into_iter().map(|d| d.expect("every section classified")).collect());
            self.stabilizers.push(stabs);
        }
    }

    /// Canonical form of the cell `(epi, rep)` under the stabilizer of `rep`.
    pub(crate) fn canonical_cell(&self, epi: &Morphism, rep: usize) -> Morphism {
        let m = epi.dst();
        self.stabilizers[m][&rep]
            .iter()
            .map(|t| Morphism::cosymmetry(t).compose(epi).expect("automorphism of the target"))
            .min()
            .expect("stabilizer contains the identity")
    }
}

impl fmt::Display for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} presheaf over {} truncated at {}, sizes {:?}",
            match self.kind {
                Kind::Skeletal => "skeletal",
                Kind::Truncated => "truncated",
            },
            self.site,
            self.truncation,
            self.level_sizes()
        )
    }
}
