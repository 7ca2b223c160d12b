//! Rectilinear link diagrams with over/under data, their classical
//! Legendrian invariants, and the two global oracles: the Kauffman
//! bracket state sum and surgery homology via Smith normal form.
//!
//! A diagram is a union of closed axis-parallel polygons in the integer
//! lattice. Edges alternate horizontal/vertical along each component and
//! at every crossing the vertical edge passes in front, except for the
//! crossings listed in the exception set. Orientation is the traversal
//! order of each component's vertex cycle.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::LaurentPoly;
use crate::snf::{cokernel, AbelianGroup, IntMat};

pub type Point = (i64, i64);

/// Edge `idx` of component `comp` runs from vertex `idx` to vertex
/// `idx + 1 (mod len)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub comp: usize,
    pub idx: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: Point,
    pub b: Point,
}

impl Edge {
    pub fn is_vertical(&self) -> bool {
        self.a.0 == self.b.0
    }

    pub fn col(&self) -> i64 {
        debug_assert!(self.is_vertical());
        self.a.0
    }

    pub fn row(&self) -> i64 {
        debug_assert!(!self.is_vertical());
        self.a.1
    }

    /// Span of the varying coordinate, (min, max).
    pub fn span(&self) -> (i64, i64) {
        if self.is_vertical() {
            (self.a.1.min(self.b.1), self.a.1.max(self.b.1))
        } else {
            (self.a.0.min(self.b.0), self.a.0.max(self.b.0))
        }
    }

    /// Unit direction of traversal.
    pub fn dir(&self) -> (i64, i64) {
        ((self.b.0 - self.a.0).signum(), (self.b.1 - self.a.1).signum())
    }
}

/// One 1-handle drawn as a pair of adjacent dotted vertical lines.
/// Horizontal edges whose row is in `behind_rows` pass through the
/// handle (behind both lines); every other crossing is in front.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DottedPair {
    pub col_left: i64,
    pub col_right: i64,
    pub row_lo: i64,
    pub row_hi: i64,
    pub behind_rows: BTreeSet<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleDecoration {
    pub pairs: Vec<DottedPair>,
}

impl HandleDecoration {
    pub fn none() -> Self {
        HandleDecoration { pairs: Vec::new() }
    }

    pub fn count(&self) -> usize {
        self.pairs.len()
    }
}

/// A crossing of a vertical edge over/under a horizontal edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub vertical: EdgeRef,
    pub horizontal: EdgeRef,
    pub at: Point,
    pub vertical_over: bool,
}

impl Crossing {
    pub fn over(&self) -> EdgeRef {
        if self.vertical_over {
            self.vertical
        } else {
            self.horizontal
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("component {0} has fewer than 4 vertices")]
    TooSmall(usize),
    #[error("component {comp} does not alternate horizontal/vertical at vertex {idx}")]
    NonAlternating { comp: usize, idx: usize },
    #[error("degenerate edge at component {comp} vertex {idx}")]
    DegenerateEdge { comp: usize, idx: usize },
    #[error("two parallel edges overlap near ({0}, {1})")]
    ParallelOverlap(i64, i64),
    #[error("non-transverse intersection at ({0}, {1})")]
    NonTransverse(i64, i64),
    #[error("exception ({0}, {1}) does not name a crossing")]
    BadException(i64, i64),
    #[error("dotted pair {0} is malformed")]
    BadDottedPair(usize),
    #[error("strand at row {row} crosses only one line of dotted pair {pair}")]
    HalfThreadedHandle { pair: usize, row: i64 },
    #[error("crossing cap exceeded: {crossings} crossings > cap {cap}")]
    CrossingCapExceeded { crossings: usize, cap: usize },
}

/// Rectilinear link diagram. Construct with [`RectDiagram::new`] which
/// validates every structural invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectDiagram {
    components: Vec<Vec<Point>>,
    /// Crossing points where the horizontal edge passes in front.
    exceptions: BTreeSet<Point>,
}

impl RectDiagram {
    pub fn new(components: Vec<Vec<Point>>, exceptions: BTreeSet<Point>) -> Result<Self, DiagramError> {
        let d = RectDiagram { components, exceptions };
        d.validate(&HandleDecoration::none())?;
        Ok(d)
    }

    pub fn new_with_handles(
        components: Vec<Vec<Point>>,
        exceptions: BTreeSet<Point>,
        handles: &HandleDecoration,
    ) -> Result<Self, DiagramError> {
        let d = RectDiagram { components, exceptions };
        d.validate(handles)?;
        Ok(d)
    }

    /// Bypasses validation; for internal rewriting steps that re-validate
    /// when they finish.
    pub(crate) fn raw(components: Vec<Vec<Point>>, exceptions: BTreeSet<Point>) -> Self {
        RectDiagram { components, exceptions }
    }

    pub fn components(&self) -> usize {
        self.components.len()
    }

    pub fn component_vertices(&self, comp: usize) -> &[Point] {
        &self.components[comp]
    }

    pub(crate) fn components_mut(&mut self) -> &mut Vec<Vec<Point>> {
        &mut self.components
    }

    pub fn exceptions(&self) -> &BTreeSet<Point> {
        &self.exceptions
    }

    pub(crate) fn exceptions_mut(&mut self) -> &mut BTreeSet<Point> {
        &mut self.exceptions
    }

    pub fn edge(&self, e: EdgeRef) -> Edge {
        let vs = &self.components[e.comp];
        let a = vs[e.idx];
        let b = vs[(e.idx + 1) % vs.len()];
        Edge { a, b }
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeRef, Edge)> + '_ {
        self.components.iter().enumerate().flat_map(move |(c, vs)| {
            (0..vs.len()).map(move |i| {
                let r = EdgeRef { comp: c, idx: i };
                (r, self.edge(r))
            })
        })
    }

    pub fn vertical_edges(&self) -> Vec<(EdgeRef, Edge)> {
        self.edges().filter(|(_, e)| e.is_vertical()).collect()
    }

    pub fn horizontal_edges(&self) -> Vec<(EdgeRef, Edge)> {
        self.edges().filter(|(_, e)| !e.is_vertical()).collect()
    }

    /// Neighbouring edges around edge `e` in traversal order
    /// (previous, next).
    pub fn neighbors(&self, e: EdgeRef) -> (EdgeRef, EdgeRef) {
        let n = self.components[e.comp].len();
        (
            EdgeRef { comp: e.comp, idx: (e.idx + n - 1) % n },
            EdgeRef { comp: e.comp, idx: (e.idx + 1) % n },
        )
    }

    fn validate(&self, handles: &HandleDecoration) -> Result<(), DiagramError> {
        for (c, vs) in self.components.iter().enumerate() {
            if vs.len() < 4 {
                return Err(DiagramError::TooSmall(c));
            }
            if vs.len() % 2 != 0 {
                return Err(DiagramError::NonAlternating { comp: c, idx: 0 });
            }
            for i in 0..vs.len() {
                let a = vs[i];
                let b = vs[(i + 1) % vs.len()];
                let horiz = a.1 == b.1 && a.0 != b.0;
                let vert = a.0 == b.0 && a.1 != b.1;
                if !horiz && !vert {
                    return Err(DiagramError::DegenerateEdge { comp: c, idx: i });
                }
                let n = vs[(i + 2) % vs.len()];
                let next_vert = b.0 == n.0;
                if vert == next_vert {
                    return Err(DiagramError::NonAlternating { comp: c, idx: i });
                }
            }
        }
        // parallel edges in one column/row must be disjoint as closed segments
        let verticals = self.vertical_edges();
        for (i, (_, e1)) in verticals.iter().enumerate() {
            for (_, e2) in verticals.iter().skip(i + 1) {
                if e1.col() == e2.col() {
                    let (a1, b1) = e1.span();
                    let (a2, b2) = e2.span();
                    if a1 <= b2 && a2 <= b1 {
                        return Err(DiagramError::ParallelOverlap(e1.col(), a1.max(a2)));
                    }
                }
            }
        }
        let horizontals = self.horizontal_edges();
        for (i, (_, e1)) in horizontals.iter().enumerate() {
            for (_, e2) in horizontals.iter().skip(i + 1) {
                if e1.row() == e2.row() {
                    let (a1, b1) = e1.span();
                    let (a2, b2) = e2.span();
                    if a1 <= b2 && a2 <= b1 {
                        return Err(DiagramError::ParallelOverlap(a1.max(a2), e1.row()));
                    }
                }
            }
        }
        // every V/H intersection is either a corner of consecutive edges
        // or a transverse interior crossing
        for (vr, v) in &verticals {
            let (vlo, vhi) = v.span();
            for (hr, h) in &horizontals {
                let (hlo, hhi) = h.span();
                let x = v.col();
                let y = h.row();
                if x < hlo || x > hhi || y < vlo || y > vhi {
                    continue;
                }
                let x_interior = x > hlo && x < hhi;
                let y_interior = y > vlo && y < vhi;
                if x_interior && y_interior {
                    continue; // transverse crossing
                }
                if !x_interior && !y_interior {
                    // endpoint of both: must be the shared corner of
                    // consecutive edges of one component
                    let consecutive = vr.comp == hr.comp && {
                        let n = self.components[vr.comp].len();
                        (vr.idx + 1) % n == hr.idx || (hr.idx + 1) % n == vr.idx
                    };
                    let shared = (v.a == h.a) || (v.a == h.b) || (v.b == h.a) || (v.b == h.b);
                    if consecutive && shared {
                        continue;
                    }
                }
                return Err(DiagramError::NonTransverse(x, y));
            }
        }
        // exceptions must name actual crossings
        let crossing_points: BTreeSet<Point> = self.crossings().iter().map(|c| c.at).collect();
        for p in &self.exceptions {
            if !crossing_points.contains(p) {
                return Err(DiagramError::BadException(p.0, p.1));
            }
        }
        // dotted pairs
        for (k, p) in handles.pairs.iter().enumerate() {
            if p.col_left >= p.col_right || p.row_lo >= p.row_hi {
                return Err(DiagramError::BadDottedPair(k));
            }
            for (_, v) in &verticals {
                if (v.col() == p.col_left || v.col() == p.col_right)
                    || (v.col() > p.col_left && v.col() < p.col_right)
                {
                    let (lo, hi) = v.span();
                    if lo <= p.row_hi && p.row_lo <= hi {
                        return Err(DiagramError::BadDottedPair(k));
                    }
                }
            }
            for (_, h) in &horizontals {
                let y = h.row();
                if y <= p.row_lo || y >= p.row_hi {
                    continue;
                }
                let (lo, hi) = h.span();
                let crosses_left = lo < p.col_left && p.col_left < hi;
                let crosses_right = lo < p.col_right && p.col_right < hi;
                if crosses_left != crosses_right {
                    return Err(DiagramError::HalfThreadedHandle { pair: k, row: y });
                }
            }
            for &r in &p.behind_rows {
                let threaded = horizontals.iter().any(|(_, h)| {
                    h.row() == r && r > p.row_lo && r < p.row_hi && {
                        let (lo, hi) = h.span();
                        lo < p.col_left && p.col_right < hi
                    }
                });
                if !threaded {
                    return Err(DiagramError::HalfThreadedHandle { pair: k, row: r });
                }
            }
        }
        Ok(())
    }

    /// All transverse crossings, sorted by position.
    pub fn crossings(&self) -> Vec<Crossing> {
        let mut out = Vec::new();
        for (vr, v) in self.vertical_edges() {
            let (vlo, vhi) = v.span();
            for (hr, h) in self.horizontal_edges() {
                let (hlo, hhi) = h.span();
                let x = v.col();
                let y = h.row();
                if x > hlo && x < hhi && y > vlo && y < vhi {
                    let at = (x, y);
                    out.push(Crossing {
                        vertical: vr,
                        horizontal: hr,
                        at,
                        vertical_over: !self.exceptions.contains(&at),
                    });
                }
            }
        }
        out.sort_by_key(|c| c.at);
        out
    }

    /// Crossing sign from the over/under traversal directions:
    /// `sign = sgn(o_x * u_y - o_y * u_x)`.
    pub fn crossing_sign(&self, c: &Crossing) -> i64 {
        let v = self.edge(c.vertical).dir();
        let h = self.edge(c.horizontal).dir();
        let (o, u) = if c.vertical_over { (v, h) } else { (h, v) };
        (o.0 * u.1 - o.1 * u.0).signum()
    }

    /// Total writhe over all crossings, self and mixed.
    pub fn writhe(&self) -> i64 {
        self.crossings().iter().map(|c| self.crossing_sign(c)).sum()
    }

    /// Writhe restricted to self-crossings of one component.
    pub fn self_writhe(&self, comp: usize) -> i64 {
        self.crossings()
            .iter()
            .filter(|c| c.vertical.comp == comp && c.horizontal.comp == comp)
            .map(|c| self.crossing_sign(c))
            .sum()
    }

    /// Extract one component as a standalone diagram, keeping its
    /// self-crossing exceptions.
    pub fn component_diagram(&self, comp: usize) -> RectDiagram {
        let keep: BTreeSet<Point> = self
            .crossings()
            .iter()
            .filter(|c| c.vertical.comp == comp && c.horizontal.comp == comp)
            .map(|c| c.at)
            .filter(|p| self.exceptions.contains(p))
            .collect();
        RectDiagram { components: vec![self.components[comp].clone()], exceptions: keep }
    }

    /// Reverse the traversal orientation of one component.
    pub fn reverse_component(&mut self, comp: usize) {
        self.components[comp].reverse();
        self.components[comp].rotate_right(1);
    }

    /// Shift all columns >= `at` east by `width`, opening a gap of fresh
    /// columns. Exceptions and decoration move along.
    pub fn open_col_gap(&mut self, at: i64, width: i64, handles: &mut HandleDecoration) {
        for vs in &mut self.components {
            for p in vs.iter_mut() {
                if p.0 >= at {
                    p.0 += width;
                }
            }
        }
        self.exceptions = self
            .exceptions
            .iter()
            .map(|&(x, y)| (if x >= at { x + width } else { x }, y))
            .collect();
        for pair in &mut handles.pairs {
            if pair.col_left >= at {
                pair.col_left += width;
            }
            if pair.col_right >= at {
                pair.col_right += width;
            }
        }
    }

    /// Shift all rows >= `at` up by `width`.
    pub fn open_row_gap(&mut self, at: i64, width: i64, handles: &mut HandleDecoration) {
        for vs in &mut self.components {
            for p in vs.iter_mut() {
                if p.1 >= at {
                    p.1 += width;
                }
            }
        }
        self.exceptions = self
            .exceptions
            .iter()
            .map(|&(x, y)| (x, if y >= at { y + width } else { y }))
            .collect();
        for pair in &mut handles.pairs {
            if pair.row_lo >= at {
                pair.row_lo += width;
            }
            if pair.row_hi >= at {
                pair.row_hi += width;
            }
            pair.behind_rows = pair
                .behind_rows
                .iter()
                .map(|&r| if r >= at { r + width } else { r })
                .collect();
        }
    }

    /// Compact coordinates to consecutive integers starting at 0,
    /// preserving order.
    pub fn renormalize(&mut self, handles: &mut HandleDecoration) {
        let mut xs = BTreeSet::new();
        let mut ys = BTreeSet::new();
        for vs in &self.components {
            for &(x, y) in vs {
                xs.insert(x);
                ys.insert(y);
            }
        }
        for pair in &handles.pairs {
            xs.insert(pair.col_left);
            xs.insert(pair.col_right);
            ys.insert(pair.row_lo);
            ys.insert(pair.row_hi);
            for &r in &pair.behind_rows {
                ys.insert(r);
            }
        }
        let xmap: BTreeMap<i64, i64> = xs.iter().enumerate().map(|(i, &x)| (x, i as i64)).collect();
        let ymap: BTreeMap<i64, i64> = ys.iter().enumerate().map(|(i, &y)| (y, i as i64)).collect();
        for vs in &mut self.components {
            for p in vs.iter_mut() {
                *p = (xmap[&p.0], ymap[&p.1]);
            }
        }
        self.exceptions = self.exceptions.iter().map(|&(x, y)| (xmap[&x], ymap[&y])).collect();
        for pair in &mut handles.pairs {
            pair.col_left = xmap[&pair.col_left];
            pair.col_right = xmap[&pair.col_right];
            pair.row_lo = ymap[&pair.row_lo];
            pair.row_hi = ymap[&pair.row_hi];
            pair.behind_rows = pair.behind_rows.iter().map(|r| ymap[r]).collect();
        }
    }

    pub fn col_range(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for vs in &self.components {
            for &(x, _) in vs {
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        (lo, hi)
    }

    pub fn row_range(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for vs in &self.components {
            for &(_, y) in vs {
                lo = lo.min(y);
                hi = hi.max(y);
            }
        }
        (lo, hi)
    }
}

/// Local type of a vertical edge: both neighbouring horizontals leave
/// east (a left cusp, type 1), both leave west (a right cusp, type 3),
/// or one each way (type 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerticalType {
    Type1,
    Type2,
    Type3,
}

impl RectDiagram {
    pub fn vertical_type(&self, e: EdgeRef) -> VerticalType {
        let edge = self.edge(e);
        assert!(edge.is_vertical());
        let (prev, next) = self.neighbors(e);
        let col = edge.col();
        let east = |h: Edge, at: Point| -> bool {
            let other = if h.a == at { h.b } else { h.a };
            other.0 > col
        };
        let pe = self.edge(prev);
        let ne = self.edge(next);
        let p_east = east(pe, edge.a);
        let n_east = east(ne, edge.b);
        match (p_east, n_east) {
            (true, true) => VerticalType::Type1,
            (false, false) => VerticalType::Type3,
            _ => VerticalType::Type2,
        }
    }

    /// Vertical edges of the given type in one component.
    pub fn verticals_of_type(&self, comp: usize, t: VerticalType) -> Vec<EdgeRef> {
        let n = self.components[comp].len();
        (0..n)
            .map(|i| EdgeRef { comp, idx: i })
            .filter(|&r| self.edge(r).is_vertical() && self.vertical_type(r) == t)
            .collect()
    }
}

/// Classical invariants of an oriented rectilinear Legendrian diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInvariants {
    pub writhe: i64,
    pub left_cusps: usize,
    pub right_cusps: usize,
    pub tb: i64,
    pub rot: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendrianInvariants {
    pub per_component: Vec<ComponentInvariants>,
    /// Symmetric linking matrix; diagonal entries are zero.
    pub linking: Vec<Vec<i64>>,
}

pub fn legendrian_invariants(d: &RectDiagram) -> LegendrianInvariants {
    let m = d.components();
    let mut linking = vec![vec![0i64; m]; m];
    for c in d.crossings() {
        let (i, j) = (c.vertical.comp, c.horizontal.comp);
        if i != j {
            let s = d.crossing_sign(&c);
            linking[i][j] += s;
            linking[j][i] += s;
        }
    }
    for row in &mut linking {
        for v in row.iter_mut() {
            debug_assert!(*v % 2 == 0);
            *v /= 2;
        }
    }
    let per_component = (0..m)
        .map(|comp| {
            let w = d.self_writhe(comp);
            let left = d.verticals_of_type(comp, VerticalType::Type1).len();
            let right = d.verticals_of_type(comp, VerticalType::Type3).len();
            // rotation number: half the signed count of cusps, counted by
            // whether the strand runs downward or upward through them
            let mut signed = 0i64;
            for t in [VerticalType::Type1, VerticalType::Type3] {
                for r in d.verticals_of_type(comp, t) {
                    let e = d.edge(r);
                    signed += if e.dir().1 < 0 { 1 } else { -1 };
                }
            }
            ComponentInvariants {
                writhe: w,
                left_cusps: left,
                right_cusps: right,
                tb: w - right as i64,
                rot: signed / 2,
            }
        })
        .collect();
    LegendrianInvariants { per_component, linking }
}

// ---------------------------------------------------------------------
// Kauffman bracket
// ---------------------------------------------------------------------

/// Bracket and its writhe-normalized form.
///
/// Conventions, pinned by the positive-kink relation
/// `<kink+> = -A^3 <strand>`: crossing sign is
/// `sgn(o_x u_y - o_y u_x)` for over direction `o` and under direction
/// `u`; the A-smoothing of a vertical-over crossing joins the north stub
/// to the east stub.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketValue {
    /// `<D>` normalized so the 0-crossing unknot evaluates to 1.
    pub bracket: LaurentPoly,
    /// `f(D) = (-A^3)^{-w} <D>`, invariant under all Reidemeister moves.
    pub normalized: LaurentPoly,
    pub writhe: i64,
    pub crossings: usize,
}

impl BracketValue {
    /// Jones polynomial in `t` when all exponents permit `t = A^{-4}`.
    pub fn jones_in_t(&self) -> Option<LaurentPoly> {
        if !self.normalized.exponents_divisible_by(4) {
            return None;
        }
        let mut out = LaurentPoly::zero();
        for (e, c) in self.normalized.terms() {
            out.add_term(-e / 4, c);
        }
        Some(out)
    }
}

pub const DEFAULT_BRACKET_CAP: usize = 14;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Full state-sum Kauffman bracket. `cap` bounds the crossing count.
pub fn kauffman_bracket(d: &RectDiagram, cap: usize) -> Result<BracketValue, DiagramError> {
    let crossings = d.crossings();
    let n = crossings.len();
    if n > cap {
        return Err(DiagramError::CrossingCapExceeded { crossings: n, cap });
    }
    // ports: 4 per crossing, order N, S, E, W
    const N: usize = 0;
    const S: usize = 1;
    const E: usize = 2;
    const W: usize = 3;
    let port = |ci: usize, which: usize| ci * 4 + which;
    // corner nodes, one per vertex
    let mut corner_base = vec![0usize; d.components() + 1];
    for c in 0..d.components() {
        corner_base[c + 1] = corner_base[c] + d.component_vertices(c).len();
    }
    let corners: usize = corner_base[d.components()];
    let corner = |c: usize, v: usize| 4 * n + corner_base[c] + v;
    let total_nodes = 4 * n + corners;

    // fixed chain unions: walk each edge through its crossings in order
    let mut fixed: Vec<(usize, usize)> = Vec::new();
    for (er, edge) in d.edges() {
        let mut on_edge: Vec<(i64, usize, usize)> = Vec::new(); // (position along edge, near port, far port)
        for (ci, c) in crossings.iter().enumerate() {
            let (lo_port, hi_port) = if edge.is_vertical() {
                (port(ci, S), port(ci, N))
            } else {
                (port(ci, W), port(ci, E))
            };
            let on = if edge.is_vertical() { c.vertical == er } else { c.horizontal == er };
            if on {
                let pos = if edge.is_vertical() { c.at.1 } else { c.at.0 };
                on_edge.push((pos, lo_port, hi_port));
            }
        }
        on_edge.sort_by_key(|&(p, _, _)| p);
        // traversal may run high-to-low; orient the chain accordingly
        let ascending = if edge.is_vertical() { edge.dir().1 > 0 } else { edge.dir().0 > 0 };
        let chain: Vec<(usize, usize)> = if ascending {
            on_edge.iter().map(|&(_, lo, hi)| (lo, hi)).collect()
        } else {
            on_edge.iter().rev().map(|&(_, lo, hi)| (hi, lo)).collect()
        };
        let vs_len = d.component_vertices(er.comp).len();
        let start = corner(er.comp, er.idx);
        let end = corner(er.comp, (er.idx + 1) % vs_len);
        let mut prev = start;
        for &(near, far) in &chain {
            fixed.push((prev, near));
            prev = far;
        }
        fixed.push((prev, end));
    }

    // delta powers
    let delta = LaurentPoly::from_terms(&[(2, -1), (-2, -1)]);
    let max_loops = n + d.components() + 1;
    let mut delta_pow = vec![LaurentPoly::one()];
    for k in 1..=max_loops {
        delta_pow.push(delta_pow[k - 1].mul(&delta));
    }

    let mut bracket = LaurentPoly::zero();
    for state in 0u64..(1u64 << n) {
        let mut uf = UnionFind::new(total_nodes);
        for &(a, b) in &fixed {
            uf.union(a, b);
        }
        let mut a_count = 0i64;
        for (ci, c) in crossings.iter().enumerate() {
            let use_a = state & (1 << ci) == 0;
            if use_a {
                a_count += 1;
            }
            // A-smoothing of vertical-over: {N-E, S-W}; horizontal-over: {N-W, S-E}
            let a_pairs = if c.vertical_over {
                [(N, E), (S, W)]
            } else {
                [(N, W), (S, E)]
            };
            let b_pairs = if c.vertical_over {
                [(N, W), (S, E)]
            } else {
                [(N, E), (S, W)]
            };
            let pairs = if use_a { a_pairs } else { b_pairs };
            for (p, q) in pairs {
                uf.union(port(ci, p), port(ci, q));
            }
        }
        let mut roots = BTreeSet::new();
        for node in 0..total_nodes {
            roots.insert(uf.find(node));
        }
        let loops = roots.len();
        let exp = 2 * a_count - n as i64;
        bracket = bracket.add(&delta_pow[loops - 1].scale(exp, 1));
    }

    let w = d.writhe();
    // (-A^3)^{-w} = (-1)^w A^{-3w}
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = bracket.scale(-3 * w, sign);
    Ok(BracketValue { bracket, normalized, writhe: w, crossings: n })
}

// ---------------------------------------------------------------------
// Surgery homology oracle
// ---------------------------------------------------------------------

/// Presentation matrix for the first homology of the boundary of the
/// handlebody: attaching knots framed `tb - 1`, dotted components
/// 0-framed, off-diagonal entries the linking numbers.
pub fn surgery_matrix(d: &RectDiagram, handles: &HandleDecoration) -> IntMat {
    let inv = legendrian_invariants(d);
    let m = d.components();
    let n = handles.count();
    let mut mat = IntMat::zeros(m + n, m + n);
    for i in 0..m {
        mat[(i, i)] = inv.per_component[i].tb - 1;
        for j in 0..m {
            if i != j {
                mat[(i, j)] = inv.linking[i][j];
            }
        }
    }
    // linking of a knot with a dotted circle: signed passages through it
    for (k, pair) in handles.pairs.iter().enumerate() {
        for (hr, h) in d.horizontal_edges() {
            if pair.behind_rows.contains(&h.row()) {
                let (lo, hi) = h.span();
                if lo < pair.col_left && pair.col_right < hi && h.row() > pair.row_lo && h.row() < pair.row_hi {
                    let s = h.dir().0; // eastward passage counts +1
                    mat[(hr.comp, m + k)] += s;
                    mat[(m + k, hr.comp)] += s;
                }
            }
        }
    }
    mat
}

pub fn surgery_h1(d: &RectDiagram, handles: &HandleDecoration) -> AbelianGroup {
    cokernel(&surgery_matrix(d, handles))
}

// ---------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------

pub mod fixtures {
    use super::*;

    /// Minimal 2-column unknot, tb = -1. Oriented clockwise so the right
    /// cusp is traversed upward.
    pub fn unknot() -> RectDiagram {
        RectDiagram::new(vec![vec![(0, 0), (1, 0), (1, 1), (0, 1)]], BTreeSet::new()).unwrap()
    }

    /// Once-stabilized unknot in 3 columns: w = 0, c = 2, tb = -2.
    pub fn stabilized_unknot() -> RectDiagram {
        RectDiagram::new(
            vec![vec![
                (0, 0),
                (0, 3),
                (2, 3),
                (2, 2),
                (1, 2),
                (1, 1),
                (2, 1),
                (2, 0),
            ]],
            BTreeSet::new(),
        )
        .unwrap()
    }

    /// Left-handed trefoil on a 5x5 grid (w = -3).
    pub fn left_trefoil() -> RectDiagram {
        RectDiagram::new(
            vec![vec![
                (1, 0),
                (1, 2),
                (3, 2),
                (3, 4),
                (0, 4),
                (0, 1),
                (2, 1),
                (2, 3),
                (4, 3),
                (4, 0),
            ]],
            BTreeSet::new(),
        )
        .unwrap()
    }

    /// Right-handed trefoil: mirror image of [`left_trefoil`],
    /// w = 3, c = 2, tb = 1.
    pub fn right_trefoil() -> RectDiagram {
        let l = left_trefoil();
        let vs: Vec<Point> = l.component_vertices(0).iter().map(|&(x, y)| (4 - x, y)).collect();
        RectDiagram::new(vec![vs], BTreeSet::new()).unwrap()
    }

    /// Two tb = -1 unknots with linking number +1.
    pub fn hopf_link() -> RectDiagram {
        RectDiagram::new(
            vec![
                vec![(0, 0), (2, 0), (2, 2), (0, 2)],
                vec![(1, 1), (1, 3), (3, 3), (3, 1)],
            ],
            BTreeSet::new(),
        )
        .unwrap()
    }

    /// One-handle fixture: an unknot passing once through a dotted pair.
    pub fn handle_unknot() -> (RectDiagram, HandleDecoration) {
        let d = RectDiagram::new(vec![vec![(0, 0), (5, 0), (5, 1), (0, 1)]], BTreeSet::new()).unwrap();
        let handles = HandleDecoration {
            pairs: vec![DottedPair {
                col_left: 2,
                col_right: 3,
                row_lo: -1,
                row_hi: 2,
                behind_rows: [0].into_iter().collect(),
            }],
        };
        d.validate(&handles).unwrap();
        (d, handles)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn unknot_invariants() {
        let d = unknot();
        let inv = legendrian_invariants(&d);
        assert_eq!(inv.per_component[0].writhe, 0);
        assert_eq!(inv.per_component[0].left_cusps, 1);
        assert_eq!(inv.per_component[0].right_cusps, 1);
        assert_eq!(inv.per_component[0].tb, -1);
    }

    #[test]
    fn stabilized_unknot_invariants() {
        let d = stabilized_unknot();
        let inv = legendrian_invariants(&d);
        assert_eq!(inv.per_component[0].writhe, 0);
        assert_eq!(inv.per_component[0].left_cusps, 2);
        assert_eq!(inv.per_component[0].right_cusps, 2);
        assert_eq!(inv.per_component[0].tb, -2);
        assert_eq!(d.crossings().len(), 0);
    }

    #[test]
    fn trefoil_invariants() {
        let d = right_trefoil();
        let inv = legendrian_invariants(&d);
        assert_eq!(d.crossings().len(), 3);
        assert_eq!(inv.per_component[0].writhe, 3);
        assert_eq!(inv.per_component[0].left_cusps, 2);
        assert_eq!(inv.per_component[0].right_cusps, 2);
        assert_eq!(inv.per_component[0].tb, 1);
    }

    #[test]
    fn hopf_invariants() {
        let d = hopf_link();
        let inv = legendrian_invariants(&d);
        assert_eq!(inv.per_component[0].tb, -1);
        assert_eq!(inv.per_component[1].tb, -1);
        assert_eq!(inv.linking[0][1], 1);
    }

    #[test]
    fn cusp_alternation() {
        // #type-1 = #type-3 on every fixture component
        for d in [unknot(), stabilized_unknot(), right_trefoil(), hopf_link()] {
            for c in 0..d.components() {
                assert_eq!(
                    d.verticals_of_type(c, VerticalType::Type1).len(),
                    d.verticals_of_type(c, VerticalType::Type3).len()
                );
            }
        }
    }

    #[test]
    fn bracket_unknot() {
        let b = kauffman_bracket(&unknot(), DEFAULT_BRACKET_CAP).unwrap();
        assert_eq!(b.bracket, LaurentPoly::one());
        assert_eq!(b.normalized, LaurentPoly::one());
        assert_eq!(b.jones_in_t().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn bracket_hopf() {
        // 4-state sum: -A^4 - A^-4
        let b = kauffman_bracket(&hopf_link(), DEFAULT_BRACKET_CAP).unwrap();
        assert_eq!(b.bracket, LaurentPoly::from_terms(&[(4, -1), (-4, -1)]));
        assert_eq!(b.writhe, 2);
    }

    #[test]
    fn bracket_trefoils() {
        // 8-state sums; left trefoil Jones is -t^-4 + t^-3 + t^-1
        let left = kauffman_bracket(&left_trefoil(), DEFAULT_BRACKET_CAP).unwrap();
        assert_eq!(left.writhe, -3);
        assert_eq!(
            left.jones_in_t().unwrap(),
            LaurentPoly::from_terms(&[(-4, -1), (-3, 1), (-1, 1)])
        );
        let right = kauffman_bracket(&right_trefoil(), DEFAULT_BRACKET_CAP).unwrap();
        assert_eq!(right.writhe, 3);
        assert_eq!(
            right.jones_in_t().unwrap(),
            LaurentPoly::from_terms(&[(4, -1), (3, 1), (1, 1)])
        );
    }

    #[test]
    fn bracket_cap() {
        let err = kauffman_bracket(&right_trefoil(), 2).unwrap_err();
        assert_eq!(err, DiagramError::CrossingCapExceeded { crossings: 3, cap: 2 });
    }

    #[test]
    fn surgery_oracle() {
        // unknot tb=-1: [-2] -> Z/2
        let g = surgery_h1(&unknot(), &HandleDecoration::none());
        assert_eq!(g, AbelianGroup { torsion: vec![2], free_rank: 0 });
        // hopf fixture: [[-2,1],[1,-2]] -> Z/3
        let g = surgery_h1(&hopf_link(), &HandleDecoration::none());
        assert_eq!(g, AbelianGroup { torsion: vec![3], free_rank: 0 });
    }

    #[test]
    fn surgery_relabel_invariance() {
        let d = hopf_link();
        let swapped = RectDiagram::new(
            vec![
                d.component_vertices(1).to_vec(),
                d.component_vertices(0).to_vec(),
            ],
            BTreeSet::new(),
        )
        .unwrap();
        assert_eq!(
            surgery_h1(&d, &HandleDecoration::none()),
            surgery_h1(&swapped, &HandleDecoration::none())
        );
    }

    #[test]
    fn handle_fixture_validates() {
        let (d, h) = handle_unknot();
        let mat = surgery_matrix(&d, &h);
        // unknot tb -1 framed -2, one passage through the 0-framed handle
        assert_eq!(mat[(0, 0)], -2);
        assert_eq!(mat[(1, 1)], 0);
        assert_eq!(mat[(0, 1)].abs(), 1);
    }

    #[test]
    fn validation_rejects_overlap() {
        let r = RectDiagram::new(
            vec![
                vec![(0, 0), (1, 0), (1, 1), (0, 1)],
                vec![(1, 0), (2, 0), (2, 1), (1, 1)],
            ],
            BTreeSet::new(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn validation_rejects_bad_exception() {
        let r = RectDiagram::new(
            vec![vec![(0, 0), (1, 0), (1, 1), (0, 1)]],
            [(5, 5)].into_iter().collect(),
        );
        assert_eq!(r.unwrap_err(), DiagramError::BadException(5, 5));
    }
}
