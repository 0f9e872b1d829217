//! Exterior extraction, arc completion, annular monodromy, and boundary
//! gluing of arced diagrams.
//!
//! The monodromy power of an annular arced diagram is computed by carrying
//! the c arc over the gamma curves until it is disjoint from alpha (giving
//! the return arc), passing to the page, and counting signed crossings with
//! the a arc after bigon reduction. Positive power is calibrated so the
//! projective-line exterior reports +1.

use crate::cellmap::{CellMap, Dart, EdgeLabel, Family, ParallelSide, Route, RouteEnd, Sign};
use crate::diagram::{page_of, Diagram, DiagramKind};
use crate::error::{Error, Result};
use crate::moves::{arc_slide_map, Corridor};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Pairing of boundary circles for a gluing (m1 circle, m2 circle).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluePlan {
    pub circle_pairs: Vec<(u32, u32)>,
}

/// Page data of an annular arced diagram.
#[derive(Debug, Clone)]
pub struct AnnularData {
    pub page: CellMap,
    pub power: i64,
}

/// Puncture both marked points of a doubly pointed diagram: the relative
/// diagram of the knot exterior.
pub fn puncture(d: &Diagram) -> Result<Diagram> {
    if d.kind != DiagramKind::DoublyPointed {
        return Err(Error::InvalidOperand("puncture needs a doubly pointed diagram".into()));
    }
    let m = d.map.cut_disk_at(Sign::Plus)?;
    let m = m.cut_disk_at(Sign::Minus)?;
    Diagram::new(m, DiagramKind::Relative)
}

/// A corner at a new vertex on the given boundary edge, opening into the
/// interior (non-cap) side.
pub(crate) fn boundary_attach_corner(
    w: &mut crate::cellmap::Work,
    boundary_dart: Dart,
    cap_side: bool,
) -> Dart {
    let (p, q) = w.subdivide(boundary_dart);
    // corners at the new vertex: corner(p) opens into the face of the
    // original dart, corner(q) into the other side
    let in_cap = |work: &crate::cellmap::Work, corner: Dart| {
        let f = work.face_darts(work.corner_face_dart(corner));
        f.iter().all(|&x| work.label(x).family == Family::Boundary)
    };
    let pick_cap = cap_side;
    if in_cap(w, p) == pick_cap {
        p
    } else {
        q
    }
}

/// Find a route for an arc from one boundary circle to another crossing only
/// the allowed families (plus scaffold), by BFS over faces.
fn find_arc_route(
    map: &CellMap,
    from_circle: u32,
    to_circle: u32,
    crossable: &[Family],
) -> Result<(Dart, Vec<Dart>, Dart)> {
    // start corners: interior corners of boundary edges on the from-circle
    let caps = map.cap_faces();
    let cap_of = |comp: u32| -> Option<Vec<Dart>> {
        caps.iter()
            .find(|f| map.label(f[0]).component == comp)
            .cloned()
    };
    let start_cap = cap_of(from_circle).ok_or(Error::InvalidOperand("no such circle".into()))?;
    let end_cap = cap_of(to_circle).ok_or(Error::InvalidOperand("no such circle".into()))?;
    // interior darts of the circles: partners of cap darts
    let start_faces: Vec<Dart> = start_cap.iter().map(|&x| map.face_id(map.alpha(x))).collect();
    let end_faces: std::collections::BTreeSet<Dart> =
        end_cap.iter().map(|&x| map.face_id(map.alpha(x))).collect();
    // BFS over faces
    let mut prev: BTreeMap<Dart, (Dart, Dart)> = BTreeMap::new(); // face -> (from face, crossed dart)
    let mut queue = std::collections::VecDeque::new();
    let mut seen = std::collections::BTreeSet::new();
    for &f in &start_faces {
        if seen.insert(f) {
            queue.push_back(f);
        }
    }
    let mut goal: Option<Dart> = None;
    'bfs: while let Some(f) = queue.pop_front() {
        if end_faces.contains(&f) {
            goal = Some(f);
            break 'bfs;
        }
        // expand: darts of this face we may cross
        let face = map.faces().into_iter().find(|ff| map.face_id(ff[0]) == f).unwrap();
        for &s in &face {
            let fam = map.label(s).family;
            if fam == Family::Boundary {
                continue;
            }
            if fam != Family::Scaffold && !crossable.contains(&fam) {
                continue;
            }
            let other = map.face_id(map.alpha(s));
            if seen.insert(other) {
                prev.insert(other, (f, s));
                queue.push_back(other);
            }
        }
    }
    let Some(goal) = goal else {
        return Err(Error::BudgetExhausted);
    };
    // reconstruct crossings goal -> start
    let mut crossings_rev: Vec<Dart> = Vec::new();
    let mut cur = goal;
    while let Some(&(pf, s)) = prev.get(&cur) {
        crossings_rev.push(s);
        cur = pf;
    }
    crossings_rev.reverse();
    // attach darts: boundary edges of the caps bounding the chosen faces
    let first_face = cur;
    let start_dart = start_cap
        .iter()
        .map(|&x| map.alpha(x))
        .find(|&x| map.face_id(x) == first_face)
        .ok_or(Error::InvalidMap("arc route start".into()))?;
    let end_dart = end_cap
        .iter()
        .map(|&x| map.alpha(x))
        .find(|&x| map.face_id(x) == goal)
        .ok_or(Error::InvalidMap("arc route end".into()))?;
    Ok((start_dart, crossings_rev, end_dart))
}

/// Draw an arc between two boundary circles avoiding the given families.
fn draw_boundary_arc(
    map: &CellMap,
    from_circle: u32,
    to_circle: u32,
    crossable: &[Family],
    label: EdgeLabel,
) -> Result<CellMap> {
    let (sd, crossings, ed) = find_arc_route(map, from_circle, to_circle, crossable)?;
    let mut w = map.to_work();
    let sc = boundary_attach_corner(&mut w, sd, false);
    let ec = boundary_attach_corner(&mut w, ed, false);
    let route = Route { start: RouteEnd::Corner(sc), crossings, end: RouteEnd::Corner(ec) };
    w.draw(&route, label)?;
    w.finish()
}

/// Parallel copy of an arc with fresh endpoints beside the original's. The
/// boundary edges hosting the new endpoints are chosen so the copy closes
/// up on the requested side.
pub(crate) fn parallel_arc(
    map: &CellMap,
    family: Family,
    component: u32,
    side: ParallelSide,
    label: EdgeLabel,
) -> Result<CellMap> {
    match parallel_arc_one_side(map, family, component, side, label) {
        Ok(m) => Ok(m),
        Err(_) => {
            let other = match side {
                ParallelSide::Left => ParallelSide::Right,
                ParallelSide::Right => ParallelSide::Left,
            };
            parallel_arc_one_side(map, family, component, other, label)
        }
    }
}

fn parallel_arc_one_side(
    map: &CellMap,
    family: Family,
    component: u32,
    side: ParallelSide,
    label: EdgeLabel,
) -> Result<CellMap> {
    let (walk, closed) = map.walk_component(family, component)?;
    if closed {
        return Err(Error::InvalidOperand("not an arc".into()));
    }
    let mut crossings = Vec::new();
    for p in map.passages(&walk, false) {
        for s in map.passage_stubs(&p, side) {
            crossings.push(map.alpha(s));
        }
    }
    let first = walk[0];
    let last = map.alpha(*walk.last().unwrap());
    let boundary_candidates = |end_dart: Dart| -> Vec<Dart> {
        let v = map.vertex_id(end_dart);
        let mut x = v;
        let mut out = Vec::new();
        loop {
            if map.label(x).family == Family::Boundary {
                out.push(x);
            }
            x = map.sigma(x);
            if x == v {
                break;
            }
        }
        out
    };
    let starts = boundary_candidates(first);
    let ends = boundary_candidates(last);
    for &sb in &starts {
        for &eb in &ends {
            let mut w = map.to_work();
            let sc = boundary_attach_corner(&mut w, sb, false);
            let ec = boundary_attach_corner(&mut w, eb, false);
            let route = Route {
                start: RouteEnd::Corner(sc),
                crossings: crossings.clone(),
                end: RouteEnd::Corner(ec),
            };
            if w.draw(&route, label).is_err() {
                continue;
            }
            if let Ok(m) = w.finish() {
                return Ok(m);
            }
        }
    }
    Err(Error::InvalidOperand("no parallel arc placement".into()))
}

/// Slide an arc over curves of `slide_family` until it has no crossings with
/// `avoid_family`, by bounded best-first search. Returns the rewritten map.
pub fn disjoin_arc_by_slides(
    map: &CellMap,
    arc: (Family, u32),
    slide_family: Family,
    avoid_family: Family,
    budget: usize,
) -> Result<CellMap> {
    // pulling the arc across anything except the avoided family, the
    // boundary, and itself is an isotopy of the diagram pair
    let transparent: Vec<Family> = [
        Family::Alpha,
        Family::Beta,
        Family::Gamma,
        Family::ArcA,
        Family::ArcB,
        Family::ArcC,
        Family::Scaffold,
    ]
    .into_iter()
    .filter(|&f| f != arc.0 && f != avoid_family)
    .collect();
    let reduce = |m: &CellMap| -> Result<CellMap> {
        m.reduce_pair(arc.0, avoid_family, &transparent)
    };
    let cost = |m: &CellMap| -> Result<u64> {
        let idx = m.components(arc.0).iter().position(|&c| c == arc.1);
        let Some(i) = idx else { return Ok(u64::MAX) };
        let avoid = m.components(avoid_family);
        if avoid.is_empty() {
            return Ok(0);
        }
        let g = m.geometric_intersections(arc.0, avoid_family);
        Ok(g[i].iter().sum())
    };

    let start = reduce(map)?;
    if cost(&start)? == 0 {
        return Ok(start);
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(u64, usize, Vec<u32>)>> =
        std::collections::BinaryHeap::new();
    let mut states: Vec<CellMap> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let c0 = cost(&start)?;
    seen.insert(start.renumbered().canonical_encoding());
    states.push(start);
    heap.push(std::cmp::Reverse((c0, 0, Vec::new())));
    let mut expanded = 0usize;
    while let Some(std::cmp::Reverse((c, idx, _))) = heap.pop() {
        let m = states[idx].clone();
        if c == 0 {
            return Ok(m);
        }
        expanded += 1;
        if expanded > budget {
            return Err(Error::BudgetExhausted);
        }
        for over in m.components(slide_family) {
            for corridor in enumerate_corridors(&m, arc, (slide_family, over), 4, 320)? {
                let Ok(next) = arc_slide_map(&m, arc.0, arc.1, slide_family, over, &corridor)
                else {
                    continue;
                };
                let Ok(next) = reduce(&next) else { continue };
                let key = next.renumbered().canonical_encoding();
                if !seen.insert(key) {
                    continue;
                }
                let Ok(nc) = cost(&next) else { continue };
                let sidx = states.len();
                states.push(next);
                heap.push(std::cmp::Reverse((nc, sidx, Vec::new())));
            }
        }
    }
    Err(Error::BudgetExhausted)
}

/// Boundary attach debug hook.
pub fn battach(w: &mut crate::cellmap::Work, boundary_dart: Dart) -> Dart {
    boundary_attach_corner(w, boundary_dart, false)
}

/// Route construction debug hook.
pub fn band_route_raw(
    map: &CellMap,
    family: Family,
    moving: u32,
    over: u32,
    corridor: &Corridor,
    arc_ends: Option<(Dart, Dart)>,
) -> Result<crate::cellmap::Route> {
    crate::moves::band_sum_route(map, family, moving, over, corridor, arc_ends)
}

/// Raw arc slide with explicit families (debug hook).
pub fn arc_slide_raw(
    map: &CellMap,
    arc_family: Family,
    moving: u32,
    curve_family: Family,
    over: u32,
    corridor: &Corridor,
) -> Result<CellMap> {
    arc_slide_map(map, arc_family, moving, curve_family, over, corridor)
}

/// Enumerate short corridors from a component to another: face paths
/// starting beside `from`, crossing at most `max_cross` transversal edges,
/// arriving beside `to`.
pub fn enumerate_corridors(
    map: &CellMap,
    from: (Family, u32),
    to: (Family, u32),
    max_cross: usize,
    max_count: usize,
) -> Result<Vec<Corridor>> {
    let from_label = EdgeLabel::new(from.0, from.1);
    let to_label = EdgeLabel::new(to.0, to.1);
    let mut out = Vec::new();
    // BFS states: (face id, crossing list); seeds: faces beside `from`
    #[derive(Clone)]
    struct State {
        face: Dart,
        start: Dart,
        crossings: Vec<Dart>,
    }
    let mut queue = std::collections::VecDeque::new();
    let mut seen: std::collections::BTreeSet<(Dart, Dart)> = std::collections::BTreeSet::new();
    for d in map.darts() {
        if map.label(d) != from_label {
            continue;
        }
        let f = map.face_id(d);
        if seen.insert((d, f)) {
            queue.push_back(State { face: f, start: d, crossings: vec![] });
        }
    }
    while let Some(st) = queue.pop_front() {
        if out.len() >= max_count {
            break;
        }
        let face = map
            .faces()
            .into_iter()
            .find(|f| map.face_id(f[0]) == st.face)
            .unwrap();
        // arrivals: one corridor per side/flip variant
        for &s in &face {
            if map.label(s) == to_label {
                out.extend(Corridor::variants(st.start, st.crossings.clone(), s));
                if out.len() >= max_count {
                    break;
                }
            }
        }
        if st.crossings.len() >= max_cross {
            continue;
        }
        for &s in &face {
            let fam = map.label(s).family;
            if fam == Family::Boundary || map.label(s) == from_label {
                continue;
            }
            // do not cross the moving or target family
            if fam == from.0 || map.label(s) == to_label {
                continue;
            }
            let nf = map.face_id(map.alpha(s));
            if seen.insert((st.start, nf)) {
                let mut crossings = st.crossings.clone();
                crossings.push(s);
                queue.push_back(State { face: nf, start: st.start, crossings });
            }
        }
    }
    Ok(out)
}

/// Complete a relative diagram with b = 2 to an arced diagram following the
/// standard procedure: connect the circles by an arc avoiding alpha and
/// beta, copy it beside itself, and slide the copy over beta until disjoint
/// from gamma.
pub fn complete_arcs(d: &Diagram, budget: usize) -> Result<Diagram> {
    if d.kind != DiagramKind::Relative {
        return Err(Error::InvalidOperand("complete_arcs needs a relative diagram".into()));
    }
    let (_, b) = d.map.genus_boundary()?;
    if b != 2 {
        return Err(Error::InvalidOperand("arc completion needs two boundary circles".into()));
    }
    let circles = d.map.components(Family::Boundary);
    let (c0, c1) = (circles[0], circles[1]);
    // the a arc avoids alpha and beta (it may cross gamma)
    let arc_a = EdgeLabel::new(Family::ArcA, 0);
    let m = draw_boundary_arc(&d.map, c0, c1, &[Family::Gamma], arc_a)
        .map_err(|e| Error::InvalidMap(format!("arc a: {e}")))?;
    // b arc: parallel copy of a (also disjoint from alpha and beta)
    let m = parallel_arc(&m, Family::ArcA, 0, ParallelSide::Left, EdgeLabel::new(Family::ArcB, 0))
        .map_err(|e| Error::InvalidMap(format!("arc b: {e}")))?;
    // c arc: copy of b slid over beta until disjoint from gamma
    let m = parallel_arc(&m, Family::ArcB, 0, ParallelSide::Left, EdgeLabel::new(Family::ArcC, 0))
        .map_err(|e| Error::InvalidMap(format!("arc c: {e}")))?;
    let m = disjoin_arc_by_slides(&m, (Family::ArcC, 0), Family::Beta, Family::Gamma, budget)
        .map_err(|e| Error::InvalidMap(format!("arc c slides: {e}")))?;
    // reduce stray bigons of the new arcs against the other families
    let mut m = m;
    for (arc, fam) in [
        (Family::ArcA, Family::Gamma),
        (Family::ArcB, Family::Gamma),
        (Family::ArcC, Family::Alpha),
        (Family::ArcC, Family::Beta),
    ] {
        m = m.remove_bigons(arc, fam)?;
    }
    Diagram::new(m, DiagramKind::Arced)
}

/// Debug hook: the map of a relative diagram after drawing the a, b, and
/// c arc copies, before the c slides.
pub fn complete_arcs_debug(d: &Diagram) -> Result<CellMap> {
    let circles = d.map.components(Family::Boundary);
    let (c0, c1) = (circles[0], circles[1]);
    let arc_a = EdgeLabel::new(Family::ArcA, 0);
    let m = draw_boundary_arc(&d.map, c0, c1, &[Family::Gamma], arc_a)?;
    let m = parallel_arc(&m, Family::ArcA, 0, ParallelSide::Left, EdgeLabel::new(Family::ArcB, 0))?;
    parallel_arc(&m, Family::ArcB, 0, ParallelSide::Left, EdgeLabel::new(Family::ArcC, 0))
}

/// Compute the return arc and the annular monodromy power of an arced
/// diagram whose page is an annulus.
pub fn annular_monodromy(d: &Diagram, budget: usize) -> Result<AnnularData> {
    if d.kind != DiagramKind::Arced && d.kind != DiagramKind::Core {
        return Err(Error::InvalidOperand("monodromy needs an arced diagram".into()));
    }
    // the page must be an annulus
    let bare_page = page_of(&d.map, &[Family::ArcA])?;
    if bare_page.genus_boundary()? != (0, 2) {
        return Err(Error::PageNotAnnulus);
    }
    // return arc: copy of c slid over gamma until disjoint from alpha
    let star = EdgeLabel::new(Family::ArcA, 1);
    let m = parallel_arc(&d.map, Family::ArcC, 0, ParallelSide::Left, star)?;
    let m = disjoin_arc_by_slides(&m, (Family::ArcA, 1), Family::Gamma, Family::Alpha, budget)?;
    // pass to the page carrying both ArcA components
    let page = page_of(&m, &[Family::ArcA])?;
    let page = page.remove_bigons(Family::ArcA, Family::ArcA)?;
    // signed crossings of the two arcs
    let power = signed_arc_crossings(&page, (Family::ArcA, 0), (Family::ArcA, 1))?;
    Ok(AnnularData { page, power })
}

/// Monodromy power of an arced diagram (page must be an annulus).
pub fn monodromy_power(d: &Diagram, budget: usize) -> Result<i64> {
    Ok(annular_monodromy(d, budget)?.power)
}

/// Signed count of crossings between two arcs, both oriented from the
/// lower-indexed boundary circle. Positive crossings are those whose
/// (first, second) direction frame is counterclockwise.
fn signed_arc_crossings(map: &CellMap, a: (Family, u32), b: (Family, u32)) -> Result<i64> {
    let oriented_walk = |fam: Family, comp: u32| -> Result<Vec<Dart>> {
        let (walk, closed) = map.walk_component(fam, comp)?;
        if closed {
            return Err(Error::InvalidOperand("expected an arc".into()));
        }
        // circle at the start endpoint
        let start_v = map.vertex_id(walk[0]);
        let circle_at = |v: Dart| -> Option<u32> {
            let mut x = v;
            loop {
                if map.label(x).family == Family::Boundary {
                    return Some(map.label(x).component);
                }
                x = map.sigma(x);
                if x == v {
                    return None;
                }
            }
        };
        let c_start = circle_at(start_v).ok_or(Error::InvalidMap("arc endpoint off boundary".into()))?;
        let end_v = map.vertex_id(map.alpha(*walk.last().unwrap()));
        let c_end = circle_at(end_v).ok_or(Error::InvalidMap("arc endpoint off boundary".into()))?;
        if c_start <= c_end {
            Ok(walk)
        } else {
            Ok(walk.iter().rev().map(|&x| map.alpha(x)).collect())
        }
    };
    let wa = oriented_walk(a.0, a.1)?;
    let wb = oriented_walk(b.0, b.1)?;
    let la = EdgeLabel::new(a.0, a.1);
    let lb = EdgeLabel::new(b.0, b.1);
    let mut total = 0i64;
    for v in map.vertices() {
        if v.len() != 4 {
            continue;
        }
        let labs: Vec<EdgeLabel> = v.iter().map(|&x| map.label(x)).collect();
        if !(labs.contains(&la) && labs.contains(&lb)) || la == lb && labs.iter().filter(|&&l| l == la).count() != 4 {
            if !(labs.contains(&la) && labs.contains(&lb)) {
                continue;
            }
        }
        // direction darts at this vertex: outgoing darts of each walk
        let out_a = v
            .iter()
            .copied()
            .find(|&x| map.label(x) == la && wa.contains(&x));
        let out_b = v
            .iter()
            .copied()
            .find(|&x| map.label(x) == lb && wb.contains(&x));
        let (Some(oa), Some(ob)) = (out_a, out_b) else { continue };
        // incoming partners at this vertex
        let ia = v
            .iter()
            .copied()
            .find(|&x| map.label(x) == la && x != oa)
            .unwrap();
        // sign: +1 if ccw order (oa, ob, ia, ib)
        let pos: BTreeMap<Dart, usize> = v.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let n = v.len();
        let between = |s: usize, e: usize, x: usize| -> bool {
            // x strictly inside ccw interval (s, e)
            let rel = |y: usize| (y + n - s) % n;
            rel(x) > 0 && rel(x) < rel(e)
        };
        let sign = if between(pos[&oa], pos[&ia], pos[&ob]) { 1 } else { -1 };
        total += sign;
    }
    Ok(total * MONODROMY_SIGN)
}

/// Global sign calibration: fixed so the projective-line exterior is
/// (+1)-annular.
const MONODROMY_SIGN: i64 = -1;

/// Canonical gluing plan: circles are paired by matching opposite endpoint
/// order types (the counterclockwise a-b-c circle of one diagram glues to
/// the clockwise circle of the other).
pub fn canonical_plan(m1: &CellMap, m2: &CellMap) -> Result<GluePlan> {
    let t1 = circle_order_types(m1)?;
    let t2 = circle_order_types(m2)?;
    let pick = |ts: &[(u32, bool)], abc: bool| -> Result<u32> {
        ts.iter()
            .find(|&&(_, t)| t == abc)
            .map(|&(c, _)| c)
            .ok_or_else(|| Error::InvalidMap("missing endpoint order type".into()))
    };
    Ok(GluePlan {
        circle_pairs: vec![
            (pick(&t1, true)?, pick(&t2, false)?),
            (pick(&t1, false)?, pick(&t2, true)?),
        ],
    })
}

/// For each boundary circle: true when the arc endpoints appear in the cap
/// orbit in family order a, b, c.
fn circle_order_types(m: &CellMap) -> Result<Vec<(u32, bool)>> {
    let mut out = Vec::new();
    for cap in m.cap_faces() {
        let comp = m.label(cap[0]).component;
        let mut fams = Vec::new();
        for &x in &cap {
            // attachment at the tail vertex of x
            let v = m.vertex_id(x);
            let mut y = v;
            loop {
                let f = m.label(y).family;
                if f.is_arc() {
                    fams.push(f);
                }
                y = m.sigma(y);
                if y == v {
                    break;
                }
            }
        }
        if fams.len() != 3 {
            return Err(Error::InvalidMap(format!(
                "circle {comp} carries {} arc endpoints, expected 3",
                fams.len()
            )));
        }
        let rot = fams.iter().position(|&f| f == Family::ArcA).unwrap();
        let rotated: Vec<Family> = (0..3).map(|i| fams[(rot + i) % 3]).collect();
        out.push((comp, rotated == [Family::ArcA, Family::ArcB, Family::ArcC]));
    }
    Ok(out)
}

/// Glue two arced diagrams along their boundary circles (canonical plan).
/// The monodromy powers must cancel.
pub fn glue(d1: &Diagram, d2: &Diagram, budget: usize) -> Result<Diagram> {
    let p1 = monodromy_power(d1, budget)?;
    let p2 = monodromy_power(d2, budget)?;
    if p1 + p2 != 0 {
        return Err(Error::MonodromyMismatch(p1, p2));
    }
    glue_unchecked(d1, d2)
}

/// Glue without the monodromy guard (used by surgery with pseudo-pieces).
pub fn glue_unchecked(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    let plan = canonical_plan(&d1.map, &d2.map)?;
    let map = glue_maps(&d1.map, &d2.map, &plan)?;
    let kind = if map.marked_points().len() == 2 {
        DiagramKind::DoublyPointed
    } else {
        DiagramKind::Closed
    };
    Diagram::new(map.normalize_scaffold()?.renumbered(), kind)
}

/// Glue a core diagram to a 0-annular arced diagram: the doubly pointed
/// diagram of the dual 2-knot.
pub fn glue_core(d: &Diagram, core: &Diagram, budget: usize) -> Result<Diagram> {
    if core.kind != DiagramKind::Core {
        return Err(Error::InvalidOperand("second argument must be a core diagram".into()));
    }
    let out = glue(d, core, budget)?;
    if out.kind != DiagramKind::DoublyPointed {
        return Err(Error::InvalidMap("core gluing lost its marked points".into()));
    }
    Ok(out)
}

/// The combinatorial gluing: boundary circles are replaced by scaffold
/// circles through the matched arc endpoints, arcs of matching families
/// join into closed curves, and stranded scaffold stubs ride along.
pub fn glue_maps(m1: &CellMap, m2: &CellMap, plan: &GluePlan) -> Result<CellMap> {
    let shift = m1.dart_count() as Dart;
    let mut w = m1.to_work();
    w.append_shifted(m2, shift);

    // collect circle data before destroying anything
    struct CircleInfo {
        // entries around the circle in cap-orbit order: (vertex key dart,
        // attachment dart or none)
        entries: Vec<(Dart, Option<Dart>)>,
    }
    let circle_info = |w: &crate::cellmap::Work, m: &CellMap, comp: u32, off: Dart| -> Result<CircleInfo> {
        let cap = m
            .cap_faces()
            .into_iter()
            .find(|f| m.label(f[0]).component == comp)
            .ok_or_else(|| Error::InvalidOperand("no such boundary circle".into()))?;
        let mut entries = Vec::new();
        for &x in &cap {
            let v = m.vertex_id(x) + off;
            // attachment dart at this vertex (non-boundary)
            let vd = w.vertex_darts(v);
            let att: Vec<Dart> = vd
                .iter()
                .copied()
                .filter(|&y| w.label(y).family != Family::Boundary)
                .collect();
            if att.len() > 1 {
                return Err(Error::InvalidMap("boundary vertex with several attachments".into()));
            }
            entries.push((x + off, att.first().copied()));
        }
        Ok(CircleInfo { entries })
    };

    for &(c1, c2) in &plan.circle_pairs {
        let info1 = circle_info(&w, m1, c1, 0)?;
        let info2 = circle_info(&w, m2, c2, shift)?;
        // delete boundary edges of both circles
        for info in [&info1, &info2] {
            for &(cap_dart, _) in &info.entries {
                if w.alive(cap_dart) {
                    w.delete_edge(cap_dart);
                }
            }
        }
        // arc endpoints by family
        let arc_end = |info: &CircleInfo, fam: Family| -> Result<usize> {
            info.entries
                .iter()
                .position(|&(_, att)| att.is_some_and(|a| w.label(a).family == fam))
                .ok_or_else(|| Error::InvalidMap(format!("missing {fam} endpoint")))
        };
        // merged circle vertex list: walk info1 in cap order; at each arc
        // endpoint merge with the matching endpoint of info2; m2's stubs are
        // spliced into the segment following the matching endpoint,
        // traversed against info2's cap order (orientation reversal)
        let n1 = info1.entries.len();
        let n2 = info2.entries.len();
        let a1 = arc_end(&info1, Family::ArcA)?;
        let a2 = arc_end(&info2, Family::ArcA)?;
        // nodes: (m1 attachment, optional m2 attachment) per merged vertex,
        // plus interleaved m2 stub nodes
        enum Node {
            Merge(Dart, Dart),
            Stub1(Dart),
            Stub2(Dart),
        }
        let mut nodes: Vec<Node> = Vec::new();
        // position of each m2 entry, walked in reverse from a2
        let mut i2 = a2;
        for k in 0..n1 {
            let idx1 = (a1 + k) % n1;
            let (_, att1) = info1.entries[idx1];
            match att1 {
                Some(att) if w.label(att).family.is_arc() => {
                    // find matching family endpoint in info2
                    let fam = w.label(att).family;
                    let idx2 = arc_end(&info2, fam)?;
                    // consume m2 stubs between the previous m2 anchor and
                    // this one, walking against info2's order
                    let mut j = (i2 + n2 - 1) % n2;
                    let mut pending: Vec<Dart> = Vec::new();
                    while j != idx2 {
                        if let (_, Some(st)) = info2.entries[j] {
                            pending.push(st);
                        }
                        j = (j + n2 - 1) % n2;
                    }
                    nodes.extend(pending.into_iter().map(Node::Stub2));
                    let (_, att2) = info2.entries[idx2];
                    let att2 = att2.ok_or_else(|| Error::InvalidMap("missing arc end".into()))?;
                    nodes.push(Node::Merge(att, att2));
                    i2 = idx2;
                }
                Some(att) => nodes.push(Node::Stub1(att)),
                None => {}
            }
        }
        // trailing m2 stubs between the last anchor and a2
        let mut j = (i2 + n2 - 1) % n2;
        let mut pending: Vec<Dart> = Vec::new();
        while j != a2 {
            if let (_, Some(st)) = info2.entries[j] {
                pending.push(st);
            }
            j = (j + n2 - 1) % n2;
        }
        nodes.extend(pending.into_iter().map(Node::Stub2));

        // build the scaffold circle through the nodes
        let scaf = EdgeLabel::new(Family::Scaffold, w.fresh_component(Family::Scaffold));
        let k = nodes.len();
        if k == 0 {
            return Err(Error::InvalidMap("glued circle carries nothing".into()));
        }
        let mut seg: Vec<(Dart, Dart)> = Vec::with_capacity(k);
        for _ in 0..k {
            seg.push(w.new_edge_raw(scaf));
        }
        for (i, node) in nodes.iter().enumerate() {
            let prev = (i + k - 1) % k;
            let s_out = seg[i].0;
            let s_in = seg[prev].1;
            // pre-glue, an attachment u at a circle vertex sits in rotation
            // (incoming, outgoing, u) with the cap in the (incoming ->
            // outgoing) corner; the m2 side rides backward, so its
            // attachments take the former cap corner
            match node {
                Node::Merge(u1, u2) => {
                    for &dd in &[*u1, *u2] {
                        w.unsplice_raw(dd);
                    }
                    w.make_cycle(&[s_out, *u1, s_in, *u2]);
                }
                Node::Stub1(u) => {
                    w.unsplice_raw(*u);
                    w.make_cycle(&[s_out, *u, s_in]);
                }
                Node::Stub2(u) => {
                    w.unsplice_raw(*u);
                    w.make_cycle(&[s_out, s_in, *u]);
                }
            }
        }
    }
    // join matched arcs into closed curves
    for (arc_fam, curve_fam) in [
        (Family::ArcA, Family::Alpha),
        (Family::ArcB, Family::Beta),
        (Family::ArcC, Family::Gamma),
    ] {
        let mut comps: Vec<u32> = Vec::new();
        for d in w.darts() {
            let l = w.label(d);
            if l.family == arc_fam && !comps.contains(&l.component) {
                comps.push(l.component);
            }
        }
        if comps.len() != 2 {
            return Err(Error::InvalidMap(
                "gluing expects one arc per family on each side".into(),
            ));
        }
        let fresh = w.fresh_component(curve_fam);
        for d in w.darts() {
            if w.label(d).family == arc_fam {
                w.set_label(d, EdgeLabel::new(curve_fam, fresh));
            }
        }
    }
    w.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::mark_in_face;
    use crate::cellmap::tests::doubly_pointed_sphere;
    use crate::invariants::{euler_char, homology_h1};
    use crate::snf::AbelianGroupDecomp;

    /// The unknot's doubly pointed genus-0 diagram.
    fn unknot() -> Diagram {
        Diagram::new(doubly_pointed_sphere(), DiagramKind::DoublyPointed).unwrap()
    }

    /// The standard annulus piece: exterior of the unknot, three parallel arcs.
    pub fn b3s1_like() -> Diagram {
        let rel = puncture(&unknot()).unwrap();
        complete_arcs(&rel, 10_000).unwrap()
    }

    #[test]
    fn unknot_exterior_is_annular_zero() {
        let e = b3s1_like();
        assert_eq!(e.map.genus_boundary().unwrap(), (0, 2));
        let data = annular_monodromy(&e, 10_000).unwrap();
        assert_eq!(data.power, 0);
        assert_eq!(data.page.genus_boundary().unwrap(), (0, 2));
    }

    #[test]
    fn sphere_surgery_on_unknot_gives_s3s1() {
        let e = b3s1_like();
        let glued = glue(&e, &e, 10_000).unwrap();
        let t = glued.infer_type().unwrap();
        assert_eq!((t.g, t.k), (1, [1, 1, 1]), "{t}");
        assert_eq!(euler_char(&t), 0);
        assert_eq!(homology_h1(&glued).unwrap(), AbelianGroupDecomp::free(1));
    }

    #[test]
    fn puncture_of_marked_torus() {
        // a doubly pointed diagram on the torus punctures to (1, b=2)
        let m = crate::builder::closed_surface(1);
        let m = mark_in_face(&m, 0, Sign::Plus).unwrap();
        let m = mark_in_face(&m, 0, Sign::Minus).unwrap();
        let d = Diagram::new(m, DiagramKind::DoublyPointed).unwrap();
        let rel = puncture(&d).unwrap();
        assert_eq!(rel.map.genus_boundary().unwrap(), (1, 2));
    }

    #[test]
    fn glue_mismatch_guard() {
        let e = b3s1_like();
        let twisted = crate::pieces::twisted_annulus(Family::ArcA, 1).unwrap();
        let p = monodromy_power(&twisted, 10_000).unwrap();
        assert_ne!(p, 0);
        let err = glue(&e, &twisted, 10_000).unwrap_err();
        assert!(matches!(err, Error::MonodromyMismatch(_, _)));
    }
}
