//! Union-find, plain and with a parity bit relative to the root.

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so class representatives are minimal.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    bad: Vec<bool>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![false; n], bad: vec![false; n] }
    }

    /// Root and parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // walk back from the node nearest the root, accumulating parity
        let mut acc = false;
        for &y in path.iter().rev() {
            acc ^= self.parity[y];
            self.parity[y] = acc;
            self.parent[y] = r;
        }
        (r, if path.is_empty() { false } else { self.parity[x] })
    }

    /// Records `parity(a) xor parity(b) == rel`.
    pub fn union(&mut self, a: usize, b: usize, rel: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != rel {
                self.bad[ra] = true;
            }
            return;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        self.parity[hi] = pa ^ pb ^ rel;
        self.bad[lo] |= self.bad[hi];
    }

    /// Whether the class of root `r` received inconsistent constraints.
    pub fn contradicted(&mut self, x: usize) -> bool {
        let (r, _) = self.find(x);
        self.bad[r]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_contradiction() {
        let mut u = ParityUnionFind::new(3);
        u.union(0, 1, true);
        u.union(1, 2, true);
        assert!(!u.find(2).1);
        assert!(!u.contradicted(0));
        u.union(0, 2, true);
        assert!(u.contradicted(2));
    }
}
