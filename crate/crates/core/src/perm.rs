//! Permutations of `{0, .., d-1}` and transpositions, the monodromy
//! alphabet of every covering in the crate.

use serde::{Deserialize, Serialize};

/// A transposition `(a b)` in the symmetric group on `{0, .., d-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Transposition(pub usize, pub usize);

impl Transposition {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "transposition must move two distinct symbols");
        Transposition(a.min(b), a.max(b))
    }

    pub fn apply(&self, s: usize) -> usize {
        if s == self.0 {
            self.1
        } else if s == self.1 {
            self.0
        } else {
            s
        }
    }

    pub fn moves(&self, s: usize) -> bool {
        s == self.0 || s == self.1
    }

    /// Conjugate `self` by `g`, i.e. `g self g^-1`.
    pub fn conj_by(&self, g: Transposition) -> Transposition {
        Transposition::new(g.apply(self.0), g.apply(self.1))
    }
}

/// Dense permutation of `{0, .., d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm { map: (0..d).collect() }
    }

    pub fn from_transposition(t: Transposition, d: usize) -> Self {
        let mut p = Perm::identity(d);
        p.map.swap(t.0, t.1);
        p
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }

    /// `self` then `next`, as functions applied in temporal order.
    pub fn then(&self, next: &Perm) -> Perm {
        assert_eq!(self.degree(), next.degree());
        Perm { map: self.map.iter().map(|&s| next.map[s]).collect() }
    }

    pub fn apply_transposition(&mut self, t: Transposition) {
        for v in self.map.iter_mut() {
            *v = t.apply(*v);
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Cycle decomposition including fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut t = self.map[s];
            while t != s {
                seen[t] = true;
                cyc.push(t);
                t = self.map[t];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        sizes
    }
}

/// True iff the group generated by `ts` acts transitively on `{0, .., d-1}`.
pub fn transitive(d: usize, ts: &[Transposition]) -> bool {
    if d == 0 {
        return true;
    }
    // union-find over sheets
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for t in ts {
        let (a, b) = (find(&mut parent, t.0), find(&mut parent, t.1));
        if a != b {
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (0..d).all(|s| find(&mut parent, s) == root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_product_cycles() {
        let d = 3;
        let mut p = Perm::identity(d);
        p.apply_transposition(Transposition::new(0, 1));
        p.apply_transposition(Transposition::new(1, 2));
        // crossing (0 1) then (1 2) carries sheet 0 to sheet 2
        assert_eq!(p.apply(0), 2);
        assert_eq!(p.cycle_type(), vec![3]);
    }

    #[test]
    fn transitivity() {
        assert!(transitive(3, &[Transposition::new(0, 1), Transposition::new(1, 2)]));
        assert!(!transitive(4, &[Transposition::new(0, 1), Transposition::new(2, 3)]));
    }
}
