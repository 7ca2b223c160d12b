//! The diagram rewriting pipeline: insert a negative kink at each right
//! cusp, move every cusp vertical to the extreme columns in the
//! prescribed registry order, then attach a companion unknot to each
//! component through a vertical band.
//!
//! Rewrites are splices into freshly opened lattice gaps. Every crossing
//! a rewrite creates is either a same-sign replacement of an old
//! crossing or one half of a cancelling pair, so knot type, writhe and
//! linking are preserved; the bracket oracle certifies this on every
//! fixture that fits under the state-sum cap.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::diagram::{
    legendrian_invariants, DiagramError, Edge, EdgeRef, HandleDecoration, Point, RectDiagram,
    VerticalType,
};

#[derive(Debug, Error)]
pub enum NormalizeError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("component {0} has no cusps")]
    NoCusps(usize),
    #[error("cusp registry does not alternate on component {0}")]
    BrokenAlternation(usize),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// Position record of a tracked vertical edge, kept in sync through all
/// coordinate shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertRecord {
    pub col: i64,
    pub lo: i64,
    pub hi: i64,
}

impl VertRecord {
    pub fn of(e: Edge) -> Self {
        let (lo, hi) = e.span();
        VertRecord { col: e.col(), lo, hi }
    }

    fn shift(&mut self, is_col: bool, at: i64, width: i64) {
        if is_col {
            if self.col >= at {
                self.col += width;
            }
        } else {
            if self.lo >= at {
                self.lo += width;
            }
            if self.hi >= at {
                self.hi += width;
            }
        }
    }
}

type Shifts = Vec<(bool, i64, i64)>; // (is_col, at, width)

/// Registry of one component after sorting: cusp verticals
/// `V_1, .., V_{2c}` in traversal order starting from the uppermost left
/// cusp (odd local indices type 1, even type 3), joined after the
/// companion stage by `V'_1, .., V'_{2c}`.
#[derive(Debug, Clone)]
pub struct ComponentRegistry {
    pub cusps: usize,
    pub verticals: Vec<VertRecord>,
    pub companions: Vec<VertRecord>,
    /// The single vertical arc the component shares with its first line
    /// after the band splice.
    pub merged: Option<VertRecord>,
    pub band_col: Option<i64>,
}

/// Diagram plus cusp registries, components in canonical order.
#[derive(Debug, Clone)]
pub struct NormalizedDiagram {
    pub diagram: RectDiagram,
    pub handles: HandleDecoration,
    pub registries: Vec<ComponentRegistry>,
}

impl NormalizedDiagram {
    /// Offsets `s_0 = 0, s_j = c_1 + .. + c_j`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut s = vec![0usize];
        for r in &self.registries {
            s.push(s.last().unwrap() + r.cusps);
        }
        s
    }
}

/// Locate the vertical edge of `comp` at the recorded position.
fn find_vertical(d: &RectDiagram, comp: usize, rec: VertRecord) -> Option<EdgeRef> {
    let n = d.component_vertices(comp).len();
    (0..n).map(|i| EdgeRef { comp, idx: i }).find(|&r| {
        let e = d.edge(r);
        e.is_vertical() && VertRecord::of(e) == rec
    })
}

/// Replace `window` consecutive vertices starting at `start` by `mid`.
fn splice(verts: &[Point], start: usize, window: usize, mid: &[Point]) -> Vec<Point> {
    let n = verts.len();
    let mut rotated: Vec<Point> = Vec::with_capacity(n);
    for k in 0..n {
        rotated.push(verts[(start + k) % n]);
    }
    let mut out: Vec<Point> = mid.to_vec();
    out.extend_from_slice(&rotated[window..]);
    out
}

fn extents(d: &RectDiagram, hs: &HandleDecoration) -> (i64, i64, i64, i64) {
    let (mut cl, mut ch) = d.col_range();
    let (mut rl, mut rh) = d.row_range();
    for p in &hs.pairs {
        cl = cl.min(p.col_left);
        ch = ch.max(p.col_right);
        rl = rl.min(p.row_lo);
        rh = rh.max(p.row_hi);
    }
    (cl, ch, rl, rh)
}

// ---------------------------------------------------------------------
// Stage E: negative kinks
// ---------------------------------------------------------------------

/// Insert one negative kink adjacent to every right cusp, so the
/// blackboard framing of the output represents the Legendrian framing:
/// `writhe(out) = writhe(in) - c = tb` per component.
pub fn insert_negative_kinks(
    d: &RectDiagram,
    handles: &HandleDecoration,
) -> Result<(RectDiagram, HandleDecoration), NormalizeError> {
    let before = legendrian_invariants(d);
    let mut work = d.clone();
    let mut hs = handles.clone();

    let mut pending: Vec<(usize, VertRecord)> = Vec::new();
    for comp in 0..d.components() {
        for r in d.verticals_of_type(comp, VerticalType::Type3) {
            pending.push((comp, VertRecord::of(d.edge(r))));
        }
    }

    while let Some((comp, rec)) = pending.pop() {
        let shifts = insert_one_kink(&mut work, &mut hs, comp, rec)?;
        for (_, p) in pending.iter_mut() {
            for &(is_col, at, width) in &shifts {
                p.shift(is_col, at, width);
            }
        }
    }

    let comps = work.components_mut().clone();
    let out = RectDiagram::new_with_handles(comps, work.exceptions().clone(), &hs)?;
    let after = legendrian_invariants(&out);
    for (b, a) in before.per_component.iter().zip(after.per_component.iter()) {
        if a.writhe != b.tb {
            return Err(NormalizeError::Postcondition(format!(
                "kinked writhe {} != tb {}",
                a.writhe, b.tb
            )));
        }
        if a.left_cusps != b.left_cusps || a.right_cusps != b.right_cusps {
            return Err(NormalizeError::Postcondition("kink changed cusp count".into()));
        }
    }
    if after.linking != before.linking {
        return Err(NormalizeError::Postcondition("kink changed linking".into()));
    }
    Ok((out, hs))
}

fn insert_one_kink(
    work: &mut RectDiagram,
    hs: &mut HandleDecoration,
    comp: usize,
    rec: VertRecord,
) -> Result<Shifts, NormalizeError> {
    let er = find_vertical(work, comp, rec)
        .ok_or_else(|| NormalizeError::Postcondition("lost track of a cusp".into()))?;
    let upward = work.edge(er).dir().1 > 0;
    let (c, r1, r2) = (rec.col, rec.lo, rec.hi);

    // fresh columns west of the cusp, one fresh row above its top
    let width = if upward { 2 } else { 3 };
    let shifts: Shifts = vec![(true, c, width), (false, r2 + 1, 1)];
    work.open_col_gap(c, width, hs);
    work.open_row_gap(r2 + 1, 1, hs);
    let cc = c + width;
    let phi = r2 + 1;

    let er = find_vertical(work, comp, VertRecord { col: cc, lo: r1, hi: r2 })
        .ok_or_else(|| NormalizeError::Postcondition("cusp vanished during shift".into()))?;
    let verts = work.component_vertices(comp).to_vec();
    let n = verts.len();
    let i = er.idx;
    let a = verts[i];

    if upward {
        // traversal enters along the bottom leg. The incoming strand
        // rises at p0 and re-attaches to the cusp top; the outgoing
        // strand leaves the bottom and climbs over the incoming stub at
        // (p1, r2): that crossing is the negative kink. The outgoing
        // west course moves up to the fresh row, so the corner after the
        // old top leg is rewritten too.
        debug_assert_eq!(a, (cc, r1));
        let after = verts[(i + 2) % n];
        let mid = vec![
            (c, r1),
            (c, r2),
            (cc, r2),
            (cc, r1),
            (c + 1, r1),
            (c + 1, phi),
            (after.0, phi),
        ];
        work.components_mut()[comp] = splice(&verts, i, 3, &mid);
    } else {
        // traversal enters along the top leg, which dives below via the
        // fresh row detour and re-attaches to the cusp bottom; the
        // outgoing stub at r2 passes under the dive at (p2, r2).
        debug_assert_eq!(a, (cc, r2));
        let mid = vec![
            (c, r2),
            (c, phi),
            (c + 2, phi),
            (c + 2, r1),
            (cc, r1),
            (cc, r2),
            (c + 1, r2),
            (c + 1, r1),
        ];
        work.components_mut()[comp] = splice(&verts, i, 2, &mid);
    }
    Ok(shifts)
}

// ---------------------------------------------------------------------
// Stage G: sorting cusp verticals to the extreme columns
// ---------------------------------------------------------------------

struct RegistrySketch {
    /// (original component, traversal-ordered cusp records), canonical order
    comps: Vec<(usize, Vec<VertRecord>)>,
}

/// Reorient components so the uppermost left cusp runs downward, order
/// the cusps along each component starting there, and order components
/// by the height of their first edges, bottom first.
fn compute_registry(d: &mut RectDiagram) -> Result<RegistrySketch, NormalizeError> {
    let mut comps: Vec<(usize, Vec<VertRecord>)> = Vec::new();
    for comp in 0..d.components() {
        let uppermost = |d: &RectDiagram| -> Option<EdgeRef> {
            d.verticals_of_type(comp, VerticalType::Type1)
                .into_iter()
                .max_by_key(|&r| {
                    let e = d.edge(r);
                    (e.span().1, -e.col())
                })
        };
        let v1 = uppermost(d).ok_or(NormalizeError::NoCusps(comp))?;
        if d.edge(v1).dir().1 > 0 {
            d.reverse_component(comp);
        }
        let v1 = uppermost(d).unwrap();
        let n = d.component_vertices(comp).len();
        let mut order: Vec<VertRecord> = Vec::new();
        let mut expect_type1 = true;
        for step in 0..n {
            let r = EdgeRef { comp, idx: (v1.idx + step) % n };
            let e = d.edge(r);
            if !e.is_vertical() {
                continue;
            }
            match d.vertical_type(r) {
                VerticalType::Type2 => continue,
                VerticalType::Type1 => {
                    if !expect_type1 {
                        return Err(NormalizeError::BrokenAlternation(comp));
                    }
                    order.push(VertRecord::of(e));
                    expect_type1 = false;
                }
                VerticalType::Type3 => {
                    if expect_type1 {
                        return Err(NormalizeError::BrokenAlternation(comp));
                    }
                    order.push(VertRecord::of(e));
                    expect_type1 = true;
                }
            }
        }
        comps.push((comp, order));
    }
    comps.sort_by_key(|(_, order)| order[0].hi);
    Ok(RegistrySketch { comps })
}

/// Prescribed west-to-east order of the left cusp columns: the first
/// edges of all components, then the remaining odd-index cusps of
/// component 1, of component 2, and so on. Returns indices into the
/// flattened registry.
fn left_order(sketch: &RegistrySketch) -> Vec<(usize, usize)> {
    let mut order: Vec<(usize, usize)> = (0..sketch.comps.len()).map(|c| (c, 0)).collect();
    for (cpos, (_, cusps)) in sketch.comps.iter().enumerate() {
        for li in (2..cusps.len()).step_by(2) {
            order.push((cpos, li));
        }
    }
    order
}

/// Right side: even local indices in global index order.
fn right_order(sketch: &RegistrySketch) -> Vec<(usize, usize)> {
    let mut order = Vec::new();
    for (cpos, (_, cusps)) in sketch.comps.iter().enumerate() {
        for li in (1..cusps.len()).step_by(2) {
            order.push((cpos, li));
        }
    }
    order
}

/// Move every cusp vertical to the extreme columns. Each relocation
/// routes the cusp over the top of the diagram: the two tower verticals
/// pass in front of every horizontal they meet, replacing the old cusp
/// crossings with equal signs and adding cancelling pairs elsewhere.
pub fn sort_vertical_edges(
    d: &RectDiagram,
    handles: &HandleDecoration,
) -> Result<NormalizedDiagram, NormalizeError> {
    let before = legendrian_invariants(d);
    let mut work = d.clone();
    let mut hs = handles.clone();
    let sketch = compute_registry(&mut work)?;
    let mut records: Vec<Vec<VertRecord>> =
        sketch.comps.iter().map(|(_, order)| order.clone()).collect();
    let lefts = left_order(&sketch);
    let rights = right_order(&sketch);

    if !already_sorted(&work, &hs, &records, &lefts, &rights) {
        // left columns are preassigned west to east. Rows stack in
        // relocation order: each component's remaining left cusps go
        // below its first edge, and first edges stack bottom-to-top by
        // component, which keeps their over-the-top legs clear of every
        // later band splice.
        let (cl, _, _, _) = extents(&work, &hs);
        let mut target_of: std::collections::BTreeMap<(usize, usize), i64> =
            std::collections::BTreeMap::new();
        for (pos, &(cpos, li)) in lefts.iter().enumerate() {
            target_of.insert((cpos, li), cl - lefts.len() as i64 + pos as i64);
        }
        for cpos in 0..records.len() {
            for li in (2..records[cpos].len()).step_by(2) {
                relocate(&mut work, &mut hs, &mut records, cpos, li, Some(target_of[&(cpos, li)]))?;
            }
            relocate(&mut work, &mut hs, &mut records, cpos, 0, Some(target_of[&(cpos, 0)]))?;
        }
        for &(cpos, li) in rights.iter() {
            relocate(&mut work, &mut hs, &mut records, cpos, li, None)?;
        }
    }

    // reorder components canonically
    let perm: Vec<usize> = sketch.comps.iter().map(|&(orig, _)| orig).collect();
    let comps_new: Vec<Vec<Point>> = perm
        .iter()
        .map(|&orig| work.component_vertices(orig).to_vec())
        .collect();
    let out = RectDiagram::new_with_handles(comps_new, work.exceptions().clone(), &hs)?;

    let registries: Vec<ComponentRegistry> = records
        .iter()
        .map(|order| ComponentRegistry {
            cusps: order.len() / 2,
            verticals: order.clone(),
            companions: Vec::new(),
            merged: None,
            band_col: None,
        })
        .collect();

    let nd = NormalizedDiagram { diagram: out, handles: hs, registries };
    let after = legendrian_invariants(&nd.diagram);
    for (cpos, &orig) in perm.iter().enumerate() {
        let b = &before.per_component[orig];
        let a = &after.per_component[cpos];
        if a.writhe != b.writhe || a.left_cusps != b.left_cusps || a.right_cusps != b.right_cusps {
            return Err(NormalizeError::Postcondition(format!(
                "sort changed invariants of component {cpos}"
            )));
        }
    }
    verify_sorted(&nd)?;
    Ok(nd)
}

fn columns_ordered(
    d: &RectDiagram,
    hs: &HandleDecoration,
    records: &[Vec<VertRecord>],
    lefts: &[(usize, usize)],
    rights: &[(usize, usize)],
) -> bool {
    let flat: Vec<VertRecord> = records.iter().flatten().copied().collect();
    let members: BTreeSet<i64> = flat.iter().map(|r| r.col).collect();
    if members.len() != flat.len() {
        return false;
    }
    let mut other = (i64::MAX, i64::MIN);
    for (_, e) in d.vertical_edges() {
        if !members.contains(&e.col()) {
            other.0 = other.0.min(e.col());
            other.1 = other.1.max(e.col());
        }
    }
    for p in &hs.pairs {
        other.0 = other.0.min(p.col_left);
        other.1 = other.1.max(p.col_right);
    }
    let mut prev = i64::MIN;
    for &(c, l) in lefts {
        if records[c][l].col <= prev {
            return false;
        }
        prev = records[c][l].col;
    }
    if other.0 != i64::MAX && prev >= other.0 {
        return false;
    }
    let mut prev = if other.1 == i64::MIN { prev } else { other.1 };
    for &(c, l) in rights {
        if records[c][l].col <= prev {
            return false;
        }
        prev = records[c][l].col;
    }
    true
}

/// Relocation is skipped only when the cusp columns are already extreme
/// in the prescribed order and every first-edge column is completely
/// clear for the later band splice.
fn already_sorted(
    d: &RectDiagram,
    hs: &HandleDecoration,
    records: &[Vec<VertRecord>],
    lefts: &[(usize, usize)],
    rights: &[(usize, usize)],
) -> bool {
    if !columns_ordered(d, hs, records, lefts, rights) {
        return false;
    }
    for rec in records.iter().map(|o| o[0]) {
        for (_, h) in d.horizontal_edges() {
            let (lo, hi) = h.span();
            if lo < rec.col && rec.col < hi {
                return false;
            }
        }
        for (_, v) in d.vertical_edges() {
            if v.col() == rec.col && VertRecord::of(v) != rec {
                return false;
            }
        }
        for p in &hs.pairs {
            if p.col_left <= rec.col && rec.col <= p.col_right {
                return false;
            }
        }
    }
    true
}

fn verify_sorted(nd: &NormalizedDiagram) -> Result<(), NormalizeError> {
    for (cpos, reg) in nd.registries.iter().enumerate() {
        for (li, rec) in reg.verticals.iter().enumerate() {
            let Some(er) = find_vertical(&nd.diagram, cpos, *rec) else {
                return Err(NormalizeError::Postcondition(format!(
                    "registry record {rec:?} missing in component {cpos}"
                )));
            };
            let want = if li % 2 == 0 { VerticalType::Type1 } else { VerticalType::Type3 };
            if nd.diagram.vertical_type(er) != want {
                return Err(NormalizeError::Postcondition(format!(
                    "registry entry {li} of component {cpos} has the wrong type"
                )));
            }
        }
    }
    let sketch = RegistrySketch {
        comps: nd.registries.iter().enumerate().map(|(c, r)| (c, r.verticals.clone())).collect(),
    };
    let records: Vec<Vec<VertRecord>> = nd.registries.iter().map(|r| r.verticals.clone()).collect();
    if !columns_ordered(&nd.diagram, &nd.handles, &records, &left_order(&sketch), &right_order(&sketch)) {
        return Err(NormalizeError::Postcondition("ordering predicate fails".into()));
    }
    Ok(())
}

fn relocate(
    work: &mut RectDiagram,
    hs: &mut HandleDecoration,
    records: &mut [Vec<VertRecord>],
    cpos: usize,
    li: usize,
    west_target: Option<i64>,
) -> Result<(), NormalizeError> {
    let to_west = west_target.is_some();
    let rec = records[cpos][li];
    let mut found: Option<EdgeRef> = None;
    for comp in 0..work.components() {
        if let Some(r) = find_vertical(work, comp, rec) {
            found = Some(r);
            break;
        }
    }
    let er = found.ok_or_else(|| NormalizeError::Postcondition("lost a cusp during sort".into()))?;
    let comp = er.comp;
    let (v, r1, r2) = (rec.col, rec.lo, rec.hi);

    // two fresh tower columns beside the cusp; the tall tower carries
    // the top leg, the short tower the bottom leg
    let gap_at = if to_west { v } else { v + 1 };
    work.open_col_gap(gap_at, 2, hs);
    for o in records.iter_mut().flatten() {
        o.shift(true, gap_at, 2);
    }
    let (tall, short, cusp_col) = if to_west { (v + 1, v, v + 2) } else { (v + 1, v + 2, v) };

    let (_, ch, _, rh) = extents(work, hs);
    let rho0 = rh + 1;
    let rho1 = rh + 2;
    // the fresh tower columns may lie outside every vertex; keep the
    // target strictly beyond them
    let target = match west_target {
        Some(t) => t,
        None => ch.max(short) + 1,
    };

    let er = find_vertical(work, comp, VertRecord { col: cusp_col, lo: r1, hi: r2 })
        .ok_or_else(|| NormalizeError::Postcondition("cusp vanished during gap".into()))?;
    let verts = work.component_vertices(comp).to_vec();
    let i = er.idx;
    let top_first = verts[i].1 == r2;

    let route = vec![
        (tall, r2),
        (tall, rho1),
        (target, rho1),
        (target, rho0),
        (short, rho0),
        (short, r1),
    ];
    let mid: Vec<Point> = if top_first { route } else { route.into_iter().rev().collect() };
    work.components_mut()[comp] = splice(&verts, i, 2, &mid);

    records[cpos][li] = VertRecord { col: target, lo: rho0, hi: rho1 };
    Ok(())
}

// ---------------------------------------------------------------------
// Stage H: companion unknots joined by vertical bands
// ---------------------------------------------------------------------

/// Attach to each component its companion unknot: verticals `V'_i`
/// collinear with `V_i`, all above the rest of the diagram, joined to
/// the component through a vertical band just east of `V_1`, so the
/// component meets its first line in a single vertical arc.
pub fn attach_companions(nd: &NormalizedDiagram) -> Result<NormalizedDiagram, NormalizeError> {
    let before = legendrian_invariants(&nd.diagram);
    let mut work = nd.diagram.clone();
    let mut hs = nd.handles.clone();
    let mut regs = nd.registries.clone();

    // last component first: component 1 receives the topmost zone, so
    // its zigzag clears every other component's merged vertical
    for cpos in (0..regs.len()).rev() {
        let v1 = regs[cpos].verticals[0];
        let beta = v1.col + 1;
        work.open_col_gap(beta, 1, &mut hs);
        for reg in regs.iter_mut() {
            for r in reg.verticals.iter_mut().chain(reg.companions.iter_mut()) {
                r.shift(true, beta, 1);
            }
            if let Some(m) = reg.merged.as_mut() {
                m.shift(true, beta, 1);
            }
            if let Some(b) = reg.band_col.as_mut() {
                if *b >= beta {
                    *b += 1;
                }
            }
        }

        let cusps = regs[cpos].cusps;
        let vrecs = regs[cpos].verticals.clone();
        let (_, _, _, rh) = extents(&work, &hs);
        let big_b = rh + 1;
        let big_t = big_b + 2 * cusps as i64 - 1;
        // zone rows t_1 = T down to t_{2c} = B
        let t_row = |i: usize| big_t - (i as i64 - 1);

        let mut comps_new: Vec<VertRecord> = Vec::with_capacity(2 * cusps);
        comps_new.push(VertRecord { col: vrecs[0].col, lo: big_b, hi: big_t });
        for i in 2..=2 * cusps {
            comps_new.push(VertRecord { col: vrecs[i - 1].col, lo: t_row(i), hi: t_row(i - 1) });
        }

        let v1er = find_vertical(&work, cpos, vrecs[0])
            .ok_or_else(|| NormalizeError::Postcondition("V1 lost before splice".into()))?;
        let verts = work.component_vertices(cpos).to_vec();
        let i = v1er.idx;
        let top_first = verts[i].1 == vrecs[0].hi;

        // band down the fresh column, east along the zone bottom, zigzag
        // up through V'_{2c} .. V'_2, then down the merged vertical
        let mut route: Vec<Point> = vec![(beta, vrecs[0].hi), (beta, big_b)];
        for i in (2..=2 * cusps).rev() {
            route.push((comps_new[i - 1].col, comps_new[i - 1].lo));
            route.push((comps_new[i - 1].col, comps_new[i - 1].hi));
        }
        route.push((vrecs[0].col, big_t));
        route.push((vrecs[0].col, vrecs[0].lo));
        // consecutive V' tops/bottoms at equal rows form the horizontal
        // zigzag edges implicitly via the vertex chain
        let mid: Vec<Point> = if top_first { route } else { route.into_iter().rev().collect() };
        work.components_mut()[cpos] = splice(&verts, i, 2, &mid);

        let reg = &mut regs[cpos];
        reg.companions = comps_new;
        reg.merged = Some(VertRecord { col: vrecs[0].col, lo: vrecs[0].lo, hi: big_t });
        reg.band_col = Some(beta);
    }

    let comps = work.components_mut().clone();
    let out = RectDiagram::new_with_handles(comps, work.exceptions().clone(), &hs)?;
    let after = legendrian_invariants(&out);
    for (cpos, (b, a)) in before
        .per_component
        .iter()
        .zip(after.per_component.iter())
        .enumerate()
    {
        if a.writhe != b.writhe {
            return Err(NormalizeError::Postcondition(format!(
                "companion changed writhe of component {cpos}: {} -> {}",
                b.writhe, a.writhe
            )));
        }
    }
    if after.linking != before.linking {
        return Err(NormalizeError::Postcondition("companion changed linking".into()));
    }
    Ok(NormalizedDiagram { diagram: out, handles: hs, registries: regs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures;
    use crate::diagram::kauffman_bracket;

    fn jones(d: &RectDiagram, cap: usize) -> crate::poly::LaurentPoly {
        kauffman_bracket(d, cap).unwrap().normalized
    }

    #[test]
    fn kink_unknot() {
        let d = fixtures::unknot();
        let (e, _) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        assert_eq!(e.crossings().len(), 1);
        assert_eq!(e.writhe(), -1);
        // both diagrams are unknots
        assert_eq!(jones(&e, 14), jones(&d, 14));
    }

    #[test]
    fn kink_trefoil() {
        let d = fixtures::right_trefoil();
        let (e, _) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        assert_eq!(e.self_writhe(0), 1); // = tb
        assert_eq!(jones(&e, 16), jones(&d, 14));
    }

    #[test]
    fn kink_both_orientations() {
        // counterclockwise unknot exercises the downward-cusp case
        let d = RectDiagram::new(vec![vec![(0, 0), (0, 1), (1, 1), (1, 0)]], BTreeSet::new()).unwrap();
        let (e, _) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        assert_eq!(e.writhe(), -1);
        assert_eq!(jones(&e, 14), jones(&d, 14));
    }

    #[test]
    fn sort_unknot_identity() {
        let d = fixtures::unknot();
        let (e, hs) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        let nd = sort_vertical_edges(&e, &hs).unwrap();
        // already sorted: same crossing count, writhe, bracket
        assert_eq!(nd.diagram.crossings().len(), e.crossings().len());
        assert_eq!(nd.registries[0].cusps, 1);
        assert_eq!(jones(&nd.diagram, 14), jones(&e, 14));
    }

    #[test]
    fn sort_stabilized_unknot() {
        let d = fixtures::stabilized_unknot();
        let (e, hs) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        let nd = sort_vertical_edges(&e, &hs).unwrap();
        assert_eq!(nd.registries[0].cusps, 2);
        // V1, V3 westmost in order; V2, V4 eastmost in order
        let v = &nd.registries[0].verticals;
        assert!(v[0].col < v[2].col);
        assert!(v[1].col < v[3].col);
        assert_eq!(nd.diagram.self_writhe(0), -2);
        assert_eq!(jones(&nd.diagram, 18), jones(&d, 14));
    }

    #[test]
    fn sort_trefoil_oracle() {
        let d = fixtures::right_trefoil();
        let (e, hs) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        let nd = sort_vertical_edges(&e, &hs).unwrap();
        assert_eq!(nd.diagram.self_writhe(0), 1);
        assert_eq!(jones(&nd.diagram, 22), jones(&d, 14));
    }

    #[test]
    fn sort_idempotent() {
        let d = fixtures::stabilized_unknot();
        let (e, hs) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        let nd = sort_vertical_edges(&e, &hs).unwrap();
        let nd2 = sort_vertical_edges(&nd.diagram, &nd.handles).unwrap();
        assert_eq!(nd.diagram.crossings().len(), nd2.diagram.crossings().len());
        assert_eq!(
            nd.registries[0].verticals.len(),
            nd2.registries[0].verticals.len()
        );
    }

    #[test]
    fn companions_unknot() {
        let d = fixtures::unknot();
        let (e, hs) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        let nd = sort_vertical_edges(&e, &hs).unwrap();
        let h = attach_companions(&nd).unwrap();
        let reg = &h.registries[0];
        assert_eq!(reg.companions.len(), 2);
        let merged = reg.merged.unwrap();
        // the component meets the first line in exactly the merged arc:
        // no other edge lives in that column
        let col_hits: Vec<_> = h
            .diagram
            .vertical_edges()
            .into_iter()
            .filter(|(_, e)| e.col() == merged.col)
            .collect();
        assert_eq!(col_hits.len(), 1);
        assert_eq!(h.diagram.self_writhe(0), -1);
        assert_eq!(jones(&h.diagram, 14), jones(&d, 14));
    }

    #[test]
    fn companions_trefoil() {
        let d = fixtures::right_trefoil();
        let (e, hs) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        let nd = sort_vertical_edges(&e, &hs).unwrap();
        let h = attach_companions(&nd).unwrap();
        assert_eq!(h.diagram.self_writhe(0), 1);
        assert_eq!(jones(&h.diagram, 22), jones(&d, 14));
    }

    #[test]
    fn companions_hopf_disjoint() {
        let d = fixtures::hopf_link();
        let (e, hs) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        let nd = sort_vertical_edges(&e, &hs).unwrap();
        let h = attach_companions(&nd).unwrap();
        // companions of the two components share no crossings with each
        // other: every crossing between distinct components involves only
        // pre-companion rows
        let zones: Vec<(i64, i64)> = h
            .registries
            .iter()
            .map(|r| {
                let lo = r.companions.iter().map(|c| c.lo).min().unwrap();
                let hi = r.companions.iter().map(|c| c.hi).max().unwrap();
                (lo, hi)
            })
            .collect();
        for c in h.diagram.crossings() {
            let (i, j) = (c.vertical.comp, c.horizontal.comp);
            if i != j {
                // a crossing with both edges inside companion zones would
                // mean the companions intersect
                let in_zone = |comp: usize, y: i64| zones[comp].0 <= y && y <= zones[comp].1;
                assert!(!(in_zone(i, c.at.1) && in_zone(j, c.at.1)));
            }
        }
        // per-component blackboard framing still equals tb
        assert_eq!(h.diagram.self_writhe(0), -1);
        assert_eq!(h.diagram.self_writhe(1), -1);
        // canonical reorientation may flip the linking sign
        let inv = legendrian_invariants(&h.diagram);
        assert_eq!(inv.linking[0][1].abs(), 1);
    }

    #[test]
    fn pipeline_jones_preserved_per_component() {
        // end to end D -> E -> G -> H on the multi-component fixture
        let d = fixtures::hopf_link();
        let (e, hs) = insert_negative_kinks(&d, &HandleDecoration::none()).unwrap();
        let nd = sort_vertical_edges(&e, &hs).unwrap();
        let h = attach_companions(&nd).unwrap();
        for comp in 0..h.diagram.components() {
            let sub = h.diagram.component_diagram(comp);
            assert_eq!(jones(&sub, 18), jones(&fixtures::unknot(), 14));
        }
    }

    #[test]
    fn handle_fixture_pipeline() {
        let (d, hs) = fixtures::handle_unknot();
        let (e, hs) = insert_negative_kinks(&d, &hs).unwrap();
        let nd = sort_vertical_edges(&e, &hs).unwrap();
        let h = attach_companions(&nd).unwrap();
        assert_eq!(h.diagram.self_writhe(0), -1); // = tb
        assert_eq!(h.handles.count(), 1);
    }
}
