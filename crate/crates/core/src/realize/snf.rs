use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<i128>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, entries: alloc::vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: &[Vec<i128>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("matrix rows have different lengths".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, entries: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// `self · other` with overflow detection.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidMap("matrix shapes do not compose".into()));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a.checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    let v = out.get(i, j).checked_add(p).ok_or(Error::Overflow)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q · row[src]`.
    fn sub_row(&mut self, dst: usize, src: usize, q: i128) -> Result<()> {
        for j in 0..self.cols {
            let p = q.checked_mul(self.get(src, j)).ok_or(Error::Overflow)?;
            let v = self.get(dst, j).checked_sub(p).ok_or(Error::Overflow)?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// `col[dst] -= q · col[src]`.
    fn sub_col(&mut self, dst: usize, src: usize, q: i128) -> Result<()> {
        for i in 0..self.rows {
            let p = q.checked_mul(self.get(i, src)).ok_or(Error::Overflow)?;
            let v = self.get(i, dst).checked_sub(p).ok_or(Error::Overflow)?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            let v = self.get(i, j).checked_neg().ok_or(Error::Overflow)?;
            self.set(i, j, v);
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// `U · M · V = D` with `D` diagonal, `d_1 | d_2 | …`, and `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<i128> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i)).filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by elimination on the smallest nonzero pivot.
pub fn smith_normal_form(m: &Matrix) -> Result<SmithForm> {
    let mut d = m.clone();
    let mut u = Matrix::identity(m.rows);
    let mut v = Matrix::identity(m.cols);
    let (r, c) = (m.rows, m.cols);
    'outer: for t in 0..r.min(c) {
        loop {
            let mut pivot = None;
            for i in t..r {
                for j in t..c {
                    let x = d.get(i, j);
                    if x != 0
                        && pivot.is_none_or(|(_, _, p): (usize, usize, i128)| x.unsigned_abs() < p.unsigned_abs())
                    {
                        pivot = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else {
                break 'outer;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = d.get(t, t);
            let mut clean = true;
            for i in t + 1..r {
                let q = d.get(i, t).checked_div_euclid(p).ok_or(Error::Overflow)?;
                if q != 0 {
                    d.sub_row(i, t, q)?;
                    u.sub_row(i, t, q)?;
                }
                clean &= d.get(i, t) == 0;
            }
            for j in t + 1..c {
                let q = d.get(t, j).checked_div_euclid(p).ok_or(Error::Overflow)?;
                if q != 0 {
                    d.sub_col(j, t, q)?;
                    v.sub_col(j, t, q)?;
                }
                clean &= d.get(t, j) == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| d.get(i, j).checked_rem(p) != Some(0)));
            match bad {
                Some(i) => {
                    d.sub_row(t, i, -1)?;
                    u.sub_row(t, i, -1)?;
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t)?;
            u.negate_row(t)?;
        }
    }
    Ok(SmithForm { d, u, v })
}
