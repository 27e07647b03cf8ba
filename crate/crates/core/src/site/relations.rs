//! Exhaustive checking of the cocubical and conjunction relations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::morphism::{compose_word, delta, gamma, sigma, Morphism};
use crate::error::Result;

/// One instantiated relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RelationInstance {
    pub family: String,
    pub label: String,
    pub lhs: Morphism,
    pub rhs: Morphism,
    /// Generator words, outermost first; empty means an identity.
    pub lhs_word: Vec<Morphism>,
    pub rhs_word: Vec<Morphism>,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RelationReport {
    pub n_max: usize,
    pub instances: Vec<RelationInstance>,
}

impl RelationReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelationInstance> {
        self.instances.iter().filter(|r| !r.holds)
    }

    pub fn passed(&self) -> bool {
        self.instances.iter().all(|r| r.holds)
    }
}

// Generators indexed by their source object.
fn d(src: usize, i: usize, e: bool) -> Result<Morphism> {
    delta(src, i, e)
}

fn s(src: usize, i: usize) -> Result<Morphism> {
    sigma(src - 1, i)
}

fn g(src: usize, i: usize) -> Result<Morphism> {
    gamma(src - 1, i)
}

fn after(outer: impl Fn(usize) -> Result<Morphism>, inner: Result<Morphism>) -> Result<Vec<Morphism>> {
    let inner = inner?;
    Ok(alloc::vec![outer(inner.dst())?, inner])
}

fn id_word() -> Result<Vec<Morphism>> {
    Ok(Vec::new())
}

fn bit(e: bool) -> u8 {
    u8::from(e)
}

struct Collector {
    n_max: usize,
    out: Vec<RelationInstance>,
}

impl Collector {
    fn push(
        &mut self,
        family: &str,
        label: String,
        lhs: Result<Vec<Morphism>>,
        rhs: Result<Vec<Morphism>>,
        src: usize,
    ) {
        let lhs_word = lhs.expect("relation left side is well typed");
        let lhs = compose_word(&lhs_word).expect("relation left side composes");
        if lhs.src() > self.n_max || lhs.dst() > self.n_max {
            return;
        }
        let evaluated = rhs.and_then(|w| {
            let m = if w.is_empty() { Morphism::identity(src) } else { compose_word(&w)? };
            Ok((m, w))
        });
        let (rhs, rhs_word, holds) = match evaluated {
            Ok((r, w)) => {
                let h = r == lhs;
                (r, w, h)
            }
            Err(_) => (lhs.clone(), Vec::new(), false),
        };
        self.out.push(RelationInstance { family: family.into(), label, lhs, rhs, lhs_word, rhs_word, holds });
    }
}

/// Instantiates every relation whose objects all have degree at most `n_max`.
pub fn verify_relations(n_max: usize) -> RelationReport {
    let mut c = Collector { n_max, out: Vec::new() };
    for p in 0..=n_max + 2 {
        cocubical(&mut c, p);
        conjunction(&mut c, p);
    }
    RelationReport { n_max, instances: c.out }
}

fn cocubical(c: &mut Collector, p: usize) {
    for i in 1..=p + 1 {
        for e in [false, true] {
            for j in i + 1..=p + 2 {
                for h in [false, true] {
                    c.push(
                        "dd",
                        format!("d{j},{} d{i},{} on [{p}]", bit(h), bit(e)),
                        after(|n| d(n, j, h), d(p, i, e)),
                        after(|n| d(n, i, e), d(p, j - 1, h)),
                        p,
                    );
                }
            }
            for j in 1..=p + 1 {
                let rhs = if i < j {
                    after(|n| d(n, i, e), s(p, j - 1))
                } else if i == j {
                    id_word()
                } else {
                    after(|n| d(n, i - 1, e), s(p, j))
                };
                c.push("sd", format!("s{j} d{i},{} on [{p}]", bit(e)), after(|n| s(n, j), d(p, i, e)), rhs, p);
            }
        }
    }
    if p >= 2 {
        for i in 1..=p {
            for j in i..=p - 1 {
                c.push(
                    "ss",
                    format!("s{j} s{i} on [{p}]"),
                    after(|n| s(n, j), s(p, i)),
                    after(|n| s(n, i), s(p, j + 1)),
                    p,
                );
            }
        }
    }
}

fn conjunction(c: &mut Collector, p: usize) {
    if p >= 3 {
        for i in 1..=p - 1 {
            for j in i..=p - 2 {
                let rhs = if j > i { after(|n| g(n, i), g(p, j + 1)) } else { after(|n| g(n, i), g(p, i + 1)) };
                c.push("gg", format!("g{j} g{i} on [{p}]"), after(|n| g(n, j), g(p, i)), rhs, p);
            }
        }
    }
    if p >= 2 {
        for i in 1..=p - 1 {
            for j in 1..=p - 1 {
                let rhs = if j < i {
                    after(|n| g(n, i - 1), s(p, j))
                } else if j == i {
                    after(|n| s(n, i), s(p, i))
                } else {
                    after(|n| g(n, i), s(p, j + 1))
                };
                c.push("sg", format!("s{j} g{i} on [{p}]"), after(|n| s(n, j), g(p, i)), rhs, p);
            }
        }
    }
    if p >= 1 {
        for i in 1..=p + 1 {
            for e in [false, true] {
                for j in 1..=p {
                    let rhs = if j + 1 < i {
                        after(|n| d(n, i - 1, e), g(p, j))
                    } else if j + 1 == i || j == i {
                        if e {
                            id_word()
                        } else {
                            after(|n| d(n, j, false), s(p, j))
                        }
                    } else {
                        after(|n| d(n, i, e), g(p, j - 1))
                    };
                    c.push("gd", format!("g{j} d{i},{} on [{p}]", bit(e)), after(|n| g(n, j), d(p, i, e)), rhs, p);
                }
            }
        }
    }
}
