//! Integer matrices, Smith normal form, and finitely generated abelian
//! groups presented as cokernels.

use std::fmt;

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].checked_add(a.checked_mul(other[(k, j)]).unwrap()).unwrap();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] += other[(i, j)];
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMat {
        let mut out = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Diagonal of the Smith normal form, each entry dividing the next,
/// padded with zeros up to `min(rows, cols)`.
pub fn smith_diagonal(m: &IntMat) -> Vec<i64> {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let n = r.min(c);
    let mut diag = Vec::with_capacity(n);
    let mut top = 0usize;
    while top < n {
        // find pivot: smallest nonzero absolute value in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        let mut best = i64::MAX;
        for i in top..r {
            for j in top..c {
                let v = a[(i, j)].abs();
                if v != 0 && v < best {
                    best = v;
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        // move pivot to (top, top)
        for j in 0..c {
            let (x, y) = (a[(pi, j)], a[(top, j)]);
            a[(pi, j)] = y;
            a[(top, j)] = x;
        }
        for i in 0..r {
            let (x, y) = (a[(i, pj)], a[(i, top)]);
            a[(i, pj)] = y;
            a[(i, top)] = x;
        }
        // clear row and column; restart if a remainder shrinks the pivot
        let mut clean = true;
        for i in top + 1..r {
            let q = a[(i, top)].div_euclid(a[(top, top)]);
            if q != 0 {
                for j in 0..c {
                    a[(i, j)] -= q * a[(top, j)];
                }
            }
            if a[(i, top)] != 0 {
                clean = false;
            }
        }
        for j in top + 1..c {
            let q = a[(top, j)].div_euclid(a[(top, top)]);
            if q != 0 {
                for i in 0..r {
                    a[(i, j)] -= q * a[(i, top)];
                }
            }
            if a[(top, j)] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility sweep: pivot must divide every remaining entry
        let p = a[(top, top)];
        let mut fixed = false;
        'outer: for i in top + 1..r {
            for j in top + 1..c {
                if a[(i, j)] % p != 0 {
                    for jj in 0..c {
                        a[(top, jj)] += a[(i, jj)];
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        diag.push(p.abs());
        top += 1;
    }
    diag.resize(n, 0);
    diag
}

/// Finitely generated abelian group in invariant factor form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    /// Torsion invariant factors, each > 1, each dividing the next.
    pub torsion: Vec<i64>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { torsion: Vec::new(), free_rank: 0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn order(&self) -> Option<i64> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        for _ in 0..self.free_rank {
            parts.push("Z".to_string());
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of the map given by `m` acting on column vectors:
/// `Z^rows / im(m)`.
pub fn cokernel(m: &IntMat) -> AbelianGroup {
    let diag = smith_diagonal(m);
    let nonzero = diag.iter().filter(|&&d| d != 0).count();
    let torsion: Vec<i64> = diag.iter().copied().filter(|&d| d > 1).collect();
    AbelianGroup { torsion, free_rank: m.rows - nonzero }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_small() {
        let m = IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        assert_eq!(smith_diagonal(&m), vec![2, 2, 156]);
    }

    #[test]
    fn cokernel_surgery_matrices() {
        // unknot with framing -2
        let g = cokernel(&IntMat::from_rows(&[vec![-2]]));
        assert_eq!(g, AbelianGroup { torsion: vec![2], free_rank: 0 });
        // two tb=-1 unknots with linking 1
        let g = cokernel(&IntMat::from_rows(&[vec![-2, 1], vec![1, -2]]));
        assert_eq!(g, AbelianGroup { torsion: vec![3], free_rank: 0 });
        // empty matrix: S^3
        let g = cokernel(&IntMat::zeros(0, 0));
        assert!(g.is_trivial());
    }

    #[test]
    fn cokernel_free_part() {
        let g = cokernel(&IntMat::from_rows(&[vec![0, 0], vec![0, 3]]));
        assert_eq!(g, AbelianGroup { torsion: vec![3], free_rank: 1 });
    }
}
