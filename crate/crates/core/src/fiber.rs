//! Combinatorial branched covers of the disk: the regular fiber, its
//! homology, and vanishing-cycle classes lifted from bands.
//!
//! The fiber of a degree-d cover branched over k points with
//! transposition monodromies deformation retracts onto a ribbon graph
//! with d sheet-vertices and one band-edge per branch point, the bands
//! attached around each sheet in branch-point order. All homology and
//! curve lifting happens on that graph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{transitive, Perm, Transposition};
use crate::snf::IntMat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzCover {
    pub degree: usize,
    pub branch: Vec<Transposition>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FiberError {
    #[error("transposition ({0} {1}) out of range for degree {2}")]
    OutOfRange(usize, usize, usize),
    #[error("band endpoints carry unequal monodromies {0:?} and {1:?}")]
    IncompatibleBand(Transposition, Transposition),
    #[error("cannot plumb: the fiber boundary is already connected")]
    BoundaryConnected,
}

impl HurwitzCover {
    pub fn new(degree: usize, branch: Vec<Transposition>) -> Result<Self, FiberError> {
        for t in &branch {
            if t.0 >= degree || t.1 >= degree {
                return Err(FiberError::OutOfRange(t.0, t.1, degree));
            }
        }
        Ok(HurwitzCover { degree, branch })
    }

    pub fn transitive(&self) -> bool {
        transitive(self.degree, &self.branch)
    }

    /// Product of the branch transpositions in order; its cycles are the
    /// boundary components of the fiber.
    pub fn boundary_permutation(&self) -> Perm {
        let mut p = Perm::identity(self.degree);
        for t in &self.branch {
            p.apply_transposition(*t);
        }
        p
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degree as i64 - self.branch.len() as i64
    }

    pub fn boundary_components(&self) -> usize {
        self.boundary_permutation().cycles().len()
    }

    /// Boundary count from the ribbon-graph model by tracing face
    /// cycles; must agree with [`Self::boundary_components`].
    pub fn boundary_components_model(&self) -> usize {
        // darts 2j (a->b) and 2j+1 (b->a); sigma rotates out-darts at a
        // vertex in branch-point order, alpha reverses
        let k = self.branch.len();
        if k == 0 {
            return self.degree;
        }
        let mut outs: Vec<Vec<usize>> = vec![Vec::new(); self.degree];
        for (j, t) in self.branch.iter().enumerate() {
            outs[t.0].push(2 * j);
            outs[t.1].push(2 * j + 1);
        }
        let vertex_of = |d: usize| {
            let t = self.branch[d / 2];
            if d % 2 == 0 {
                t.0
            } else {
                t.1
            }
        };
        let sigma = |d: usize| {
            let v = vertex_of(d);
            let pos = outs[v].iter().position(|&x| x == d).unwrap();
            outs[v][(pos + 1) % outs[v].len()]
        };
        let alpha = |d: usize| d ^ 1;
        let mut seen = vec![false; 2 * k];
        let mut faces = 0usize;
        for start in 0..2 * k {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = sigma(alpha(d));
            }
        }
        // isolated sheets (no bands) each add one boundary circle
        let isolated = outs.iter().filter(|o| o.is_empty()).count();
        faces + isolated
    }

    fn connected_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for t in &self.branch {
            let (a, b) = (find(&mut parent, t.0), find(&mut parent, t.1));
            if a != b {
                parent[a] = b;
            }
        }
        let mut roots: Vec<usize> = (0..self.degree).map(|s| find(&mut parent, s)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

/// First homology of the fiber with an explicit intersection form.
/// `H_1(F, dF)` is carried in the Lefschetz-dual basis, so the pairing
/// between the two is the identity matrix and the natural map
/// `j: H_1(F) -> H_1(F, dF)` is the Gram matrix of the form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceHomology {
    pub chi: i64,
    pub boundary: usize,
    pub components: usize,
    /// Total genus over the components.
    pub genus: i64,
    pub rank: usize,
    /// Intersection form on the H_1(F) basis.
    pub gram: IntMat,
    /// Indices of the non-forest branch points whose loops form the
    /// basis, parallel to the homology coordinates.
    basis_edges: Vec<usize>,
    /// For each branch point, the forest path data used to close loops.
    tree_parent: Vec<Option<(usize, usize)>>, // per sheet: (parent sheet, edge)
    cover: HurwitzCover,
}

pub fn build_fiber(h: &HurwitzCover) -> SurfaceHomology {
    let d = h.degree;
    let k = h.branch.len();
    let chi = h.euler_characteristic();
    let boundary = h.boundary_components();
    let components = h.connected_components();
    // chi = 2 * components - 2 * genus_total - boundary
    let genus = (2 * components as i64 - boundary as i64 - chi) / 2;

    // spanning forest by BFS over the sheet graph
    let mut tree_parent: Vec<Option<(usize, usize)>> = vec![None; d];
    let mut visited = vec![false; d];
    let mut tree_edge = vec![false; k];
    for root in 0..d {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (j, t) in h.branch.iter().enumerate() {
                if tree_edge[j] || !t.moves(v) {
                    continue;
                }
                let w = t.apply(v);
                if !visited[w] {
                    visited[w] = true;
                    tree_edge[j] = true;
                    tree_parent[w] = Some((v, j));
                    queue.push_back(w);
                }
            }
        }
    }
    let basis_edges: Vec<usize> = (0..k).filter(|&j| !tree_edge[j]).collect();
    let rank = basis_edges.len();

    let mut sh = SurfaceHomology {
        chi,
        boundary,
        components,
        genus,
        rank,
        gram: IntMat::zeros(rank, rank),
        basis_edges,
        tree_parent,
        cover: h.clone(),
    };
    let mut gram = IntMat::zeros(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            if i != j {
                let x = sh.basis_loop(sh.basis_edges[i]);
                let y = sh.basis_loop(sh.basis_edges[j]);
                gram[(i, j)] = sh.intersection_of_flows(&x, &y);
            }
        }
    }
    sh.gram = gram;
    sh
}

/// A 1-cycle as an integer flow over the branch-band edges, each edge
/// oriented from the smaller to the larger sheet of its transposition.
type EdgeFlow = Vec<i64>;

impl SurfaceHomology {
    pub fn cover(&self) -> &HurwitzCover {
        &self.cover
    }

    /// Walk the forest from `sheet` to its root, adding `sign` times
    /// each traversed edge (oriented toward the root) into `flow`.
    fn add_path_to_root(&self, flow: &mut EdgeFlow, mut sheet: usize, sign: i64) {
        while let Some((parent, j)) = self.tree_parent[sheet] {
            let t = self.cover.branch[j];
            // edge oriented t.0 -> t.1
            let dir = if sheet == t.0 && parent == t.1 { 1 } else { -1 };
            flow[j] += sign * dir;
            sheet = parent;
        }
    }

    /// The basis loop of a non-forest edge as an edge flow.
    fn basis_loop(&self, j: usize) -> EdgeFlow {
        let mut flow = vec![0i64; self.cover.branch.len()];
        let t = self.cover.branch[j];
        flow[j] += 1; // t.0 -> t.1
        self.add_path_to_root(&mut flow, t.1, 1);
        self.add_path_to_root(&mut flow, t.0, -1);
        flow
    }

    /// Express a cycle flow in the homology basis: the coordinates are
    /// simply the coefficients on the non-forest edges.
    fn class_of_flow(&self, flow: &EdgeFlow) -> Vec<i64> {
        self.basis_edges.iter().map(|&j| flow[j]).collect()
    }

    /// Algebraic intersection number of two flows, computed by routing
    /// both through every vertex disk and counting signed chord
    /// crossings. The value only depends on the homology classes.
    fn intersection_of_flows(&self, x: &EdgeFlow, y: &EdgeFlow) -> i64 {
        let d = self.cover.degree;
        let k = self.cover.branch.len();
        // slots around vertex v: for each incident edge-end (in branch
        // order), first the x strands then the y strands. Strand order
        // along an edge reverses between its two ends.
        #[derive(Clone, Copy, PartialEq)]
        enum Which {
            X,
            Y,
        }
        let mut total = 0i64;
        for v in 0..d {
            // gather slot list: (which, direction sign). The strand
            // bundle of an edge is laid out x-block then y-block at the
            // tail end and mirrored at the head end, so parallel strands
            // never cross inside the edge band.
            let mut slots: Vec<(Which, i64)> = Vec::new();
            for j in 0..k {
                let t = self.cover.branch[j];
                if !t.moves(v) {
                    continue;
                }
                let out_sign = if v == t.0 { 1 } else { -1 };
                let push = |slots: &mut Vec<(Which, i64)>, which: Which, count: i64| {
                    for _ in 0..count.abs() {
                        slots.push((which, out_sign * count.signum()));
                    }
                };
                if v == t.0 {
                    push(&mut slots, Which::X, x[j]);
                    push(&mut slots, Which::Y, y[j]);
                } else {
                    push(&mut slots, Which::Y, y[j]);
                    push(&mut slots, Which::X, x[j]);
                }
            }
            // chords: pair the inbound and outbound strand endpoints of
            // each flow in slot order
            let chords = |which: Which, slots: &[(Which, i64)]| -> Vec<(usize, usize)> {
                let mut ins = Vec::new();
                let mut outs = Vec::new();
                for (pos, &(w, dirsign)) in slots.iter().enumerate() {
                    if w != which {
                        continue;
                    }
                    if dirsign > 0 {
                        outs.push(pos);
                    } else {
                        ins.push(pos);
                    }
                }
                assert_eq!(ins.len(), outs.len(), "flow not conserved at a vertex");
                ins.into_iter().zip(outs).collect()
            };
            let xc = chords(Which::X, &slots);
            let yc = chords(Which::Y, &slots);
            let n = slots.len() as i64;
            let between = |a: i64, b: i64, c: i64| -> bool {
                // c strictly inside the ccw arc from a to b
                let span = (b - a).rem_euclid(n);
                let off = (c - a).rem_euclid(n);
                off > 0 && off < span
            };
            for &(xi, xo) in &xc {
                for &(yi, yo) in &yc {
                    let (a, b) = (xi as i64, xo as i64);
                    let (c, e) = (yi as i64, yo as i64);
                    let c_in = between(a, b, c);
                    let e_in = between(a, b, e);
                    if c_in != e_in {
                        // the chords cross; sign by which side y enters
                        total += if e_in { 1 } else { -1 };
                    }
                }
            }
        }
        total
    }

    /// Pairing of two classes in basis coordinates.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.gram[(i, j)] * b[j];
            }
        }
        s
    }
}

/// An arc between two branch points `from` and `to`, recording for each
/// strictly intermediate branch point passed whether the arc runs below
/// it (crossing its cut) or above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandArc {
    pub from: usize,
    pub to: usize,
    pub route: Vec<(usize, bool)>, // (branch point, crosses_cut)
}

impl BandArc {
    /// Straight arc between adjacent conjugated points: every
    /// intermediate point is passed according to `unders`.
    pub fn with_route(from: usize, to: usize, route: Vec<(usize, bool)>) -> Self {
        BandArc { from, to, route }
    }

    /// Monodromy transported along the arc from `from`.
    pub fn transported(&self, h: &HurwitzCover) -> Transposition {
        let mut m = h.branch[self.from];
        for &(p, under) in &self.route {
            if under {
                m = m.conj_by(h.branch[p]);
            }
        }
        m
    }
}

/// Homology class of the unique closed component of the preimage of a
/// band arc, the vanishing cycle of the corresponding half twist.
pub fn lift_band_curve(s: &SurfaceHomology, arc: &BandArc) -> Result<Vec<i64>, FiberError> {
    let h = &s.cover;
    let m = arc.transported(h);
    let target = h.branch[arc.to];
    if m != target {
        return Err(FiberError::IncompatibleBand(m, target));
    }
    let mut flow = vec![0i64; h.branch.len()];
    let start = h.branch[arc.from].0;
    let mut sheet = start;
    let mut record = |flow: &mut EdgeFlow, j: usize, s: usize| -> usize {
        let t = h.branch[j];
        let dir = if s == t.0 { 1 } else { -1 };
        flow[j] += dir;
        t.apply(s)
    };
    // forward pass in the start sheet
    for &(p, under) in &arc.route {
        if under && h.branch[p].moves(sheet) {
            sheet = record(&mut flow, p, sheet);
        }
    }
    // half twist around the far branch point
    sheet = record(&mut flow, arc.to, sheet);
    // return pass
    for &(p, under) in arc.route.iter().rev() {
        if under && h.branch[p].moves(sheet) {
            sheet = record(&mut flow, p, sheet);
        }
    }
    // close through the near branch point
    sheet = record(&mut flow, arc.from, sheet);
    debug_assert_eq!(sheet, start, "band lift failed to close");
    Ok(s.class_of_flow(&flow))
}

/// Homological action of a Dehn twist along `class` with the given
/// sign: the absolute transvection and the relative lift rule.
pub struct Transvection {
    /// Action on H_1(F).
    pub absolute: IntMat,
    /// Relative difference map `y -> sign * y(c) * c`.
    pub psi: IntMat,
}

pub fn transvection(s: &SurfaceHomology, class: &[i64], sign: i64) -> Transvection {
    let r = s.rank;
    let mut absolute = IntMat::identity(r);
    let mut psi = IntMat::zeros(r, r);
    // gc = G * c, so <x, c> = x^T gc
    let mut gc = vec![0i64; r];
    for i in 0..r {
        for j in 0..r {
            gc[i] += s.gram[(i, j)] * class[j];
        }
    }
    for i in 0..r {
        for j in 0..r {
            absolute[(i, j)] += sign * class[i] * gc[j];
            psi[(i, j)] = sign * class[i] * class[j];
        }
    }
    Transvection { absolute, psi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn t(a: usize, b: usize) -> Transposition {
        Transposition::new(a, b)
    }

    #[test]
    fn annulus() {
        let h = HurwitzCover::new(2, vec![t(0, 1), t(0, 1)]).unwrap();
        assert_eq!(h.euler_characteristic(), 0);
        assert_eq!(h.boundary_components(), 2);
        assert_eq!(h.boundary_components_model(), 2);
        let s = build_fiber(&h);
        assert_eq!(s.genus, 0);
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn punctured_torus() {
        let h = HurwitzCover::new(3, vec![t(0, 1), t(1, 2), t(0, 1), t(1, 2)]).unwrap();
        assert_eq!(h.euler_characteristic(), -1);
        assert_eq!(h.boundary_components(), 1);
        assert_eq!(h.boundary_components_model(), 1);
        let s = build_fiber(&h);
        assert_eq!(s.genus, 1);
        assert_eq!(s.rank, 2);
        // the intersection form of a once-punctured torus is unimodular
        let det = s.gram[(0, 1)] * s.gram[(1, 0)] - s.gram[(0, 0)] * s.gram[(1, 1)];
        assert_eq!(det.abs(), 1);
        assert_eq!(s.gram[(0, 1)], -s.gram[(1, 0)]);
    }

    #[test]
    fn disk_fiber() {
        // pattern of the one-cusp covering: the fiber over the base is a disk
        let h = HurwitzCover::new(3, vec![t(0, 1), t(1, 2)]).unwrap();
        assert_eq!(h.euler_characteristic(), 1);
        assert_eq!(h.boundary_components(), 1);
        let s = build_fiber(&h);
        assert_eq!((s.genus, s.rank), (0, 0));
        assert!(h.transitive());
    }

    #[test]
    fn riemann_hurwitz_random() {
        // chi = d - k and the two boundary counts agree
        let mut rng = Rng::new(0x5eed);
        for _ in 0..200 {
            let d = 2 + rng.below(5);
            let k = 1 + rng.below(10);
            let mut branch = Vec::new();
            for _ in 0..k {
                let a = rng.below(d);
                let mut b = rng.below(d);
                while b == a {
                    b = rng.below(d);
                }
                branch.push(t(a, b));
            }
            let h = HurwitzCover::new(d, branch).unwrap();
            assert_eq!(h.euler_characteristic(), d as i64 - k as i64);
            assert_eq!(h.boundary_components(), h.boundary_components_model());
            let s = build_fiber(&h);
            assert_eq!(s.chi, 2 * s.components as i64 - 2 * s.genus - s.boundary as i64);
        }
    }

    #[test]
    fn annulus_band_lift() {
        let h = HurwitzCover::new(2, vec![t(0, 1), t(0, 1)]).unwrap();
        let s = build_fiber(&h);
        let arc = BandArc::with_route(0, 1, vec![]);
        let class = lift_band_curve(&s, &arc).unwrap();
        assert_eq!(class, vec![1]); // the annulus core
    }

    #[test]
    fn incompatible_band() {
        let h = HurwitzCover::new(3, vec![t(0, 1), t(1, 2)]).unwrap();
        let s = build_fiber(&h);
        let arc = BandArc::with_route(0, 1, vec![]);
        assert!(matches!(lift_band_curve(&s, &arc), Err(FiberError::IncompatibleBand(_, _))));
    }

    #[test]
    fn transvection_matrices() {
        let h = HurwitzCover::new(3, vec![t(0, 1), t(1, 2), t(0, 1), t(1, 2)]).unwrap();
        let s = build_fiber(&h);
        // twist along the first basis loop: symplectic, fixes the loop
        let a = vec![1, 0];
        let tv = transvection(&s, &a, 1);
        // preserves the intersection form: A^T G A = G
        let atga = tv.absolute.transpose().mul(&s.gram).mul(&tv.absolute);
        assert_eq!(atga, s.gram);
        // det = 1
        let m = &tv.absolute;
        assert_eq!(m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)], 1);
        // fixes a
        let fixed: Vec<i64> = (0..2).map(|i| m[(i, 0)] * a[0] + m[(i, 1)] * a[1]).collect();
        assert_eq!(fixed, a);
    }

    #[test]
    fn annulus_twist_is_homologically_trivial() {
        let h = HurwitzCover::new(2, vec![t(0, 1), t(0, 1)]).unwrap();
        let s = build_fiber(&h);
        let tv = transvection(&s, &[1], 1);
        assert_eq!(tv.absolute, IntMat::identity(1)); // <core, core> = 0
        assert_eq!(tv.psi[(0, 0)], 1); // relative rule: arc -> core
    }
}
