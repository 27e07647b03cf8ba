//! Disjoint-set forest whose representatives are always the least element.

use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let gp = self.parent[self.parent[x]];
            self.parent[x] = gp;
            x = gp;
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Dense class ids numbered by least member, and the number of classes.
    pub fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = alloc::vec![usize::MAX; n];
        let mut out = alloc::vec![0; n];
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            out[x] = id[r];
        }
        (out, count)
    }
}
