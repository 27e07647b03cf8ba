use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite simplicial set stored on levels `0..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    names: Vec<Vec<String>>,
    /// `faces[k][i][s] = d_i s` for `1 ≤ k ≤ K`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[k][i][s] = s_i s` for `k < K`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSet {
    pub fn new(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<SimplicialSet> {
        let s = SimplicialSet { names, faces, degeneracies };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn unchecked(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> SimplicialSet {
        SimplicialSet { names, faces, degeneracies }
    }

    /// The simplicial set `Δ[1]^m` on levels `0..=top`.
    pub fn cube_power(m: usize, top: usize) -> SimplicialSet {
        let levels: Vec<Vec<Vec<usize>>> = (0..=top).map(|k| tuples(m, k)).collect();
        let index = |k: usize, t: &[usize]| t.iter().fold(0, |acc, &x| acc * (k + 2) + x);
        let names = levels.iter().map(|l| l.iter().map(|t| format!("{t:?}")).collect()).collect();
        let faces = (0..=top)
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                (0..=k)
                    .map(|i| {
                        levels[k]
                            .iter()
                            .map(|t| index(k - 1, &t.iter().map(|&x| face(x, i)).collect::<Vec<_>>()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degeneracies = (0..top)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        levels[k]
                            .iter()
                            .map(|t| index(k + 1, &t.iter().map(|&x| degeneracy(x, i)).collect::<Vec<_>>()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SimplicialSet { names, faces, degeneracies }
    }

    pub fn truncation(&self) -> usize {
        self.names.len() - 1
    }

    pub fn len(&self, k: usize) -> usize {
        self.names.get(k).map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.names.iter().all(Vec::is_empty)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn name(&self, k: usize, s: usize) -> &str {
        &self.names[k][s]
    }

    /// `d_i s` for a `k`-simplex `s`.
    pub fn face(&self, k: usize, i: usize, s: usize) -> usize {
        self.faces[k][i][s]
    }

    /// `s_i s` for a `k`-simplex `s`, `k < K`.
    pub fn degeneracy(&self, k: usize, i: usize, s: usize) -> usize {
        self.degeneracies[k][i][s]
    }

    pub fn is_degenerate(&self, k: usize, s: usize) -> bool {
        k > 0 && (0..k).any(|i| self.degeneracies[k - 1][i][self.faces[k][i][s]] == s)
    }

    pub fn nondegenerate(&self, k: usize) -> Vec<usize> {
        (0..self.len(k)).filter(|&s| !self.is_degenerate(k, s)).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.truncation()).map(|k| self.nondegenerate(k).len()).collect()
    }

    /// Alternating sum of nondegenerate simplex counts.
    pub fn euler_characteristic(&self) -> i128 {
        self.nondegenerate_counts()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i128 } else { -(c as i128) })
            .sum()
    }

    /// Checks table shapes and the simplicial identities at stored levels.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPresheaf(m));
        let top = self.names.len().checked_sub(1).ok_or_else(|| Error::InvalidPresheaf("no levels".into()))?;
        if self.faces.len() != top + 1 || self.degeneracies.len() != top {
            return bad(String::from("face or degeneracy tables have the wrong number of levels"));
        }
        for k in 1..=top {
            if self.faces[k].len() != k + 1 {
                return bad(format!("level {k} needs {} faces", k + 1));
            }
            for t in &self.faces[k] {
                if t.len() != self.len(k) || t.iter().any(|&v| v >= self.len(k - 1)) {
                    return bad(format!("malformed face table at level {k}"));
                }
            }
        }
        for k in 0..top {
            if self.degeneracies[k].len() != k + 1 {
                return bad(format!("level {k} needs {} degeneracies", k + 1));
            }
            for t in &self.degeneracies[k] {
                if t.len() != self.len(k) || t.iter().any(|&v| v >= self.len(k + 1)) {
                    return bad(format!("malformed degeneracy table at level {k}"));
                }
            }
        }
        let (d, s) = (&self.faces, &self.degeneracies);
        for k in 2..=top {
            for x in 0..self.len(k) {
                for j in 1..=k {
                    for i in 0..j {
                        if d[k - 1][i][d[k][j][x]] != d[k - 1][j - 1][d[k][i][x]] {
                            return bad(format!("d_{i} d_{j} ≠ d_{} d_{i} at level {k}", j - 1));
                        }
                    }
                }
            }
        }
        for k in 0..top {
            for x in 0..self.len(k) {
                for j in 0..=k {
                    let y = s[k][j][x];
                    for i in 0..=k + 1 {
                        let lhs = d[k + 1][i][y];
                        let rhs = if i < j {
                            if k == 0 {
                                continue;
                            }
                            s[k - 1][j - 1][d[k][i][x]]
                        } else if i == j || i == j + 1 {
                            x
                        } else {
                            if k == 0 {
                                continue;
                            }
                            s[k - 1][j][d[k][i - 1][x]]
                        };
                        if lhs != rhs {
                            return bad(format!("d_{i} s_{j} fails at level {k}"));
                        }
                    }
                    if k + 1 < top {
                        for i in 0..=j {
                            if s[k + 1][i][s[k][j][x]] != s[k + 1][j + 1][s[k][i][x]] {
                                return bad(format!("s_{i} s_{j} fails at level {k}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Every `m`-tuple of thresholds in `0..=k+1`, in lexicographic order.
pub(crate) fn tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=k + 1).map(move |x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

/// Threshold of `d_i` applied to the monotone map with threshold `t`.
pub(crate) fn face(t: usize, i: usize) -> usize {
    if t <= i {
        t
    } else {
        t - 1
    }
}

/// Threshold of `s_i` applied to the monotone map with threshold `t`.
pub(crate) fn degeneracy(t: usize, i: usize) -> usize {
    if t <= i {
        t
    } else {
        t + 1
    }
}
