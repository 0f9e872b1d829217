//! The elementary move calculus: handleslides, arc slides, Dehn twists,
//! stabilization and destabilization, mirroring, connected sums, and
//! replayable move scripts.
//!
//! Every public move consumes and produces canonical, renumbered diagrams,
//! so a recorded operand always refers to the canonical numbering of the
//! diagram it is applied to and scripts replay bit-identically.

use crate::cellmap::{CellMap, Dart, EdgeLabel, Family, ParallelSide, Route, RouteEnd};
use crate::diagram::{Diagram, DiagramKind};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Face-corner path operand of a slide: the band leaves the moving
/// component beside `start`, crosses the listed edges transversally, and
/// arrives beside the target component at `end`. The side flags pin which
/// way the copy and the wrap run and which half of each corridor edge the
/// return strand crosses, so a recorded slide replays bit-identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corridor {
    pub start: Dart,
    pub crossings: Vec<Dart>,
    pub end: Dart,
    pub side_moving: ParallelSide,
    pub side_target: ParallelSide,
    pub return_flip: bool,
    pub wrap_reverse: bool,
}

impl Corridor {
    /// All side/flip/direction variants of a corridor path.
    pub fn variants(start: Dart, crossings: Vec<Dart>, end: Dart) -> Vec<Corridor> {
        let mut out = Vec::with_capacity(16);
        for side_moving in [ParallelSide::Left, ParallelSide::Right] {
            for side_target in [ParallelSide::Left, ParallelSide::Right] {
                for return_flip in [false, true] {
                    for wrap_reverse in [false, true] {
                        out.push(Corridor {
                            start,
                            crossings: crossings.clone(),
                            end,
                            side_moving,
                            side_target,
                            return_flip,
                            wrap_reverse,
                        });
                    }
                }
            }
        }
        out
    }
}

/// Destabilization certificate: x crosses y and z once each; y and z are
/// parallel; all three are disjoint from every other component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabCert {
    pub x: (Family, u32),
    pub y: (Family, u32),
    pub z: (Family, u32),
}

/// One replayable move with fully addressed operands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveRecord {
    HandleSlide {
        family: Family,
        moving: u32,
        over: u32,
        corridor: Corridor,
    },
    ArcSlide {
        arc_family: Family,
        moving: u32,
        curve_family: Family,
        over: u32,
        corridor: Corridor,
    },
    DehnTwist {
        family: Family,
        component: u32,
        sign: i8,
    },
    Stabilize {
        color: u8,
        corner: Dart,
    },
    Destabilize {
        cert: DestabCert,
    },
    Mirror,
    RemoveBigons {
        fam_a: Family,
        fam_b: Family,
    },
}

/// Ordered, replayable sequence of moves.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MoveScript {
    pub moves: Vec<MoveRecord>,
}

impl MoveScript {
    pub fn new() -> Self {
        MoveScript { moves: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn destabilization_count(&self) -> usize {
        self.moves
            .iter()
            .filter(|m| matches!(m, MoveRecord::Destabilize { .. }))
            .count()
    }
}

/// Apply one move; the result is canonically renumbered.
pub fn apply(d: &Diagram, mv: &MoveRecord) -> Result<Diagram> {
    let map = match mv {
        MoveRecord::HandleSlide { family, moving, over, corridor } => {
            handleslide_map(&d.map, *family, *moving, *over, corridor)?
        }
        MoveRecord::ArcSlide { arc_family, moving, curve_family, over, corridor } => {
            if !arc_family.is_arc() || !curve_family.is_curve() {
                return Err(Error::ArcOverArcForbidden);
            }
            if arc_family.partner() != Some(*curve_family) {
                return Err(Error::InvalidOperand(
                    "arcs slide over curves of the corresponding family".into(),
                ));
            }
            arc_slide_map(&d.map, *arc_family, *moving, *curve_family, *over, corridor)?
        }
        MoveRecord::DehnTwist { family, component, sign } => {
            dehn_twist_map(&d.map, *family, *component, *sign)?
        }
        MoveRecord::Stabilize { color, corner } => stabilize_map(&d.map, *color, *corner)?,
        MoveRecord::Destabilize { cert } => destabilize_map(&d.map, cert)?,
        MoveRecord::Mirror => d.map.mirror(),
        MoveRecord::RemoveBigons { fam_a, fam_b } => d.map.remove_bigons(*fam_a, *fam_b)?,
    };
    Diagram::new(map.normalize_scaffold()?.renumbered(), d.kind)
}

/// Replay a script; failures abort with the position index.
pub fn replay(d: &Diagram, script: &MoveScript) -> Result<Diagram> {
    let mut cur = d.clone();
    for (i, mv) in script.moves.iter().enumerate() {
        cur = apply(&cur, mv).map_err(|_| Error::InapplicableAt(i))?;
    }
    Ok(cur)
}

/// Handleslide: replace curve `moving` of `family` by its band sum with
/// `over` along the corridor.
pub fn handleslide(d: &Diagram, family: Family, moving: u32, over: u32, corridor: &Corridor) -> Result<Diagram> {
    apply(
        d,
        &MoveRecord::HandleSlide { family, moving, over, corridor: corridor.clone() },
    )
}

pub(crate) fn handleslide_map(
    map: &CellMap,
    family: Family,
    moving: u32,
    over: u32,
    corridor: &Corridor,
) -> Result<CellMap> {
    if moving == over {
        return Err(Error::InvalidOperand("cannot slide a curve over itself".into()));
    }
    // corridor may not cross the acting family
    for &s in &corridor.crossings {
        if (s as usize) >= map.dart_count() {
            return Err(Error::InvalidOperand("corridor crossing out of range".into()));
        }
        if map.label(s).family == family {
            return Err(Error::CorridorBlocked);
        }
    }
    if map.label(corridor.start) != EdgeLabel::new(family, moving)
        || map.label(corridor.end) != EdgeLabel::new(family, over)
    {
        return Err(Error::InvalidOperand("corridor endpoints mismatch".into()));
    }
    let gb = map.genus_boundary()?;
    let route = band_sum_route(map, family, moving, over, corridor, None)?;
    let mut w = map.to_work();
    let temp = EdgeLabel::new(family, w.fresh_component(family));
    w.draw(&route, temp)?;
    w.delete_component(family, moving);
    let m = w.finish()?;
    if m.genus_boundary()? != gb {
        return Err(Error::InvalidMap("handleslide changed the surface".into()));
    }
    let mut w = m.to_work();
    for dd in m.darts() {
        if m.label(dd) == temp {
            w.set_label(dd, EdgeLabel::new(family, moving));
        }
    }
    w.finish()
}


/// Closed route of the band sum: parallel copy of the moving component from
/// the band gap all the way around, out along the corridor, once around the
/// target in parallel, and back along the corridor. The copy and wrap sides
/// are explicit; callers probe the combinations.
pub fn band_sum_route(
    map: &CellMap,
    family: Family,
    moving: u32,
    over: u32,
    corridor: &Corridor,
    arc_ends: Option<(Dart, Dart)>,
) -> Result<Route> {
    let side_m = corridor.side_moving;
    let side_t = corridor.side_target;
    let return_flip = corridor.return_flip;
    let (walk_m, closed_m) = map.walk_component(family, moving)?;
    let is_arc = arc_ends.is_some();
    if closed_m == is_arc {
        return Err(Error::InvalidOperand("component kind mismatch".into()));
    }
    let target_family = map.label(corridor.end).family;
    let (walk_t, closed_t) = map.walk_component(target_family, over)?;
    if !closed_t {
        return Err(Error::ArcOverArcForbidden);
    }
    let start_pos = walk_m
        .iter()
        .position(|&dd| dd == corridor.start || map.alpha(dd) == corridor.start)
        .ok_or_else(|| Error::InvalidOperand("corridor start not on moving component".into()))?;
    // copy crossings, rotated to begin after the band gap
    let passages = map.passages(&walk_m, closed_m);
    let mut copy: Vec<Dart> = Vec::new();
    let order: Vec<usize> = if closed_m {
        (0..passages.len())
            .map(|i| (start_pos + i) % passages.len())
            .collect()
    } else {
        (0..passages.len()).collect()
    };
    let mut before_gap: Vec<Dart> = Vec::new();
    let mut after_gap: Vec<Dart> = Vec::new();
    for &i in &order {
        let stubs: Vec<Dart> = map
            .passage_stubs(&passages[i], side_m)
            .into_iter()
            .map(|s| map.alpha(s))
            .collect();
        if closed_m || i >= start_pos {
            after_gap.extend(stubs);
        } else {
            before_gap.extend(stubs);
        }
    }
    if closed_m {
        copy.extend(after_gap.iter().copied());
    }
    // wrap around the target, starting at the corridor arrival, on the side
    // the corridor arrives from
    let end_pos = walk_t
        .iter()
        .position(|&dd| dd == corridor.end || map.alpha(dd) == corridor.end)
        .ok_or_else(|| Error::InvalidOperand("corridor end not on target component".into()))?;
    let passages_t = map.passages(&walk_t, true);
    let mut wrap: Vec<Dart> = Vec::new();
    let n_t = passages_t.len();
    for i in 0..n_t {
        let p = if corridor.wrap_reverse {
            (end_pos + n_t - 1 - i) % n_t
        } else {
            (end_pos + i) % n_t
        };
        let mut stubs = map.passage_stubs(&passages_t[p], side_t);
        if corridor.wrap_reverse {
            stubs.reverse();
        }
        for s in stubs {
            wrap.push(map.alpha(s));
        }
    }
    let mut crossings: Vec<Dart> = Vec::new();
    if is_arc {
        crossings.extend(before_gap);
    } else {
        crossings.extend(copy);
    }
    crossings.extend(corridor.crossings.iter().copied());
    crossings.extend(wrap);
    crossings.extend(
        corridor
            .crossings
            .iter()
            .rev()
            .map(|&s| if return_flip { map.alpha(s) } else { s }),
    );
    if is_arc {
        crossings.extend(after_gap);
    }
    match arc_ends {
        None => {
            if crossings.is_empty() {
                return Err(Error::InvalidOperand(
                    "band sum route crosses nothing; unsupported".into(),
                ));
            }
            Ok(Route { start: RouteEnd::Closed, crossings, end: RouteEnd::Closed })
        }
        Some((s, e)) => Ok(Route {
            start: RouteEnd::Corner(s),
            crossings,
            end: RouteEnd::Corner(e),
        }),
    }
}

/// Arc slide: replace the arc by its band sum with a curve of the matching
/// family; endpoints on the boundary never move.
pub fn arc_slide(
    d: &Diagram,
    arc_family: Family,
    moving: u32,
    over: u32,
    corridor: &Corridor,
) -> Result<Diagram> {
    let curve_family = arc_family.partner().ok_or(Error::ArcOverArcForbidden)?;
    apply(
        d,
        &MoveRecord::ArcSlide { arc_family, moving, curve_family, over, corridor: corridor.clone() },
    )
}

pub(crate) fn arc_slide_map(
    map: &CellMap,
    arc_family: Family,
    moving: u32,
    curve_family: Family,
    over: u32,
    corridor: &Corridor,
) -> Result<CellMap> {
    for &s in &corridor.crossings {
        if map.label(s).family == arc_family {
            return Err(Error::CorridorBlocked);
        }
    }
    if map.label(corridor.start) != EdgeLabel::new(arc_family, moving)
        || map.label(corridor.end) != EdgeLabel::new(curve_family, over)
    {
        return Err(Error::InvalidOperand("corridor endpoints mismatch".into()));
    }
    // endpoints of the arc: corners at the old endpoint vertices (either
    // side of the old end dart works once the original is deleted)
    let (walk, _) = map.walk_component(arc_family, moving)?;
    let first = walk[0];
    let last = map.alpha(*walk.last().unwrap());
    let gb = map.genus_boundary()?;
    let mut combos = Vec::new();
    for sc in [map.sigma_inv(first), first] {
        for ec in [map.sigma_inv(last), last] {
            combos.push((sc, ec));
        }
    }
    for (sc, ec) in combos {
        {
            let Ok(route) =
                band_sum_route(map, arc_family, moving, over, corridor, Some((sc, ec)))
            else {
                continue;
            };
            let mut w = map.to_work();
            let temp = EdgeLabel::new(arc_family, w.fresh_component(arc_family));
            if w.draw(&route, temp).is_err() {
                continue;
            }
            w.delete_component(arc_family, moving);
            let Ok(m) = w.finish() else { continue };
            if m.genus_boundary()? != gb {
                continue;
            }
            let mut w = m.to_work();
            for dd in m.darts() {
                if m.label(dd) == temp {
                    w.set_label(dd, EdgeLabel::new(arc_family, moving));
                }
            }
            return w.finish();
        }
    }
    Err(Error::InvalidOperand("arc slide could not be drawn".into()))
}

/// Redraw one component as its image under a Dehn twist along a closed
/// component `c`. The rewiring inserts, at each crossing with `c`, a full
/// wrap crossing every transverse stub of `c` on the arrival side before
/// crossing `c`; nesting is automatic because repeated crossings of an edge
/// land on the segment nearest the named dart.
pub fn twist_component_map(
    map: &CellMap,
    c: (Family, u32),
    target: (Family, u32),
    sign: i8,
) -> Result<CellMap> {
    let (walk_c, closed_c) = map.walk_component(c.0, c.1)?;
    if !closed_c {
        return Err(Error::ComponentIsArc);
    }
    if c == target {
        return Err(Error::InvalidOperand("cannot twist a curve along itself".into()));
    }
    let (walk_t, closed_t) = map.walk_component(target.0, target.1)?;
    // crossing vertices of target with c, as positions in the target walk
    let c_label = EdgeLabel::new(c.0, c.1);
    let t_label = EdgeLabel::new(target.0, target.1);
    let passages_t = map.passages(&walk_t, closed_t);
    // passages of c indexed by vertex id
    let passages_c = map.passages(&walk_c, true);
    let vertex_of_passage_c: Vec<Dart> = passages_c
        .iter()
        .map(|p| map.vertex_id(p.outgoing))
        .collect();

    let side_copy = ParallelSide::Left;
    let mut crossings: Vec<Dart> = Vec::new();
    let mut ends: Option<(Dart, Dart)> = None;
    if !closed_t {
        let first = walk_t[0];
        let last = map.alpha(*walk_t.last().unwrap());
        ends = Some((first, last));
    }
    for (i, p) in passages_t.iter().enumerate() {
        let _ = i;
        let v = map.vertex_id(p.outgoing);
        let at_c = map.label(p.incoming) == t_label && {
            // crossing vertex of target and c?
            let mut has_c = false;
            let mut x = map.sigma(v);
            let mut all = vec![v];
            while x != v {
                all.push(x);
                x = map.sigma(x);
            }
            for &dd in &all {
                if map.label(dd) == c_label {
                    has_c = true;
                }
            }
            has_c
        };
        if !at_c {
            // ordinary passage: cross the stubs like a parallel copy
            for s in map.passage_stubs(p, side_copy) {
                crossings.push(map.alpha(s));
            }
            continue;
        }
        // twist passage: wrap once around c on the arrival side, then cross c
        // arrival side of c at this vertex: the c-passage here
        let cp_idx = vertex_of_passage_c
            .iter()
            .position(|&u| u == v)
            .ok_or_else(|| Error::InvalidMap("crossing vertex not on c walk".into()))?;
        // which side of c does the target arrive from: the incoming target
        // dart at v sits between c's outgoing and incoming darts
        let cp = &passages_c[cp_idx];
        let left_stubs = map.passage_stubs(cp, ParallelSide::Left);
        let arrives_left = left_stubs.contains(&p.incoming);
        let side_c = if arrives_left { ParallelSide::Left } else { ParallelSide::Right };
        let n = passages_c.len();
        // the handedness of the twist is the arrival side combined with the
        // travel direction, so a fixed sign travels forward on one side and
        // backward on the other
        let forward = (sign >= 0) == arrives_left;
        // wrap: stubs of every passage of c on side_c, starting from the
        // arrival passage, in travel order
        for step in 0..n {
            let q = if forward {
                (cp_idx + 1 + step) % n
            } else {
                (cp_idx + n - 1 - step) % n
            };
            let mut stubs = map.passage_stubs(&passages_c[q], side_c);
            if !forward {
                stubs.reverse();
            }
            for s in stubs {
                crossings.push(map.alpha(s));
            }
        }
        // cross c itself beside the arrival vertex
        let c_dart = if forward { cp.outgoing } else { map.alpha(cp.incoming) };
        crossings.push(if side_c == ParallelSide::Left { c_dart } else { map.alpha(c_dart) });
    }
    let gb = map.genus_boundary()?;
    let routes: Vec<Route> = match ends {
        None => {
            if crossings.is_empty() {
                return Err(Error::InvalidOperand("twist target crosses nothing".into()));
            }
            vec![Route { start: RouteEnd::Closed, crossings, end: RouteEnd::Closed }]
        }
        Some((first, last)) => {
            let mut out = Vec::new();
            for sc in [map.sigma_inv(first), first] {
                for ec in [map.sigma_inv(last), last] {
                    out.push(Route {
                        start: RouteEnd::Corner(sc),
                        crossings: crossings.clone(),
                        end: RouteEnd::Corner(ec),
                    });
                }
            }
            out
        }
    };
    for route in routes {
        let mut w = map.to_work();
        let temp = EdgeLabel::new(target.0, w.fresh_component(target.0));
        if w.draw(&route, temp).is_err() {
            continue;
        }
        w.delete_component(target.0, target.1);
        let Ok(m) = w.finish() else { continue };
        if m.genus_boundary()? != gb {
            continue;
        }
        let mut w = m.to_work();
        for dd in m.darts() {
            if m.label(dd) == temp {
                w.set_label(dd, t_label);
            }
        }
        return w.finish();
    }
    Err(Error::InvalidOperand("twist could not be drawn".into()))
}

/// Dehn twist as a global diffeomorphism: every component crossing the
/// twisting curve is rewired.
pub fn dehn_twist(d: &Diagram, family: Family, component: u32, sign: i8) -> Result<Diagram> {
    apply(d, &MoveRecord::DehnTwist { family, component, sign })
}

pub(crate) fn dehn_twist_map(map: &CellMap, family: Family, component: u32, sign: i8) -> Result<CellMap> {
    let c_label = EdgeLabel::new(family, component);
    // components crossing c, enumerated once (twisting preserves identity)
    let mut targets: Vec<(Family, u32)> = Vec::new();
    for v in map.vertices() {
        if v.len() != 4 {
            continue;
        }
        let labs: Vec<EdgeLabel> = v.iter().map(|&dd| map.label(dd)).collect();
        if !labs.contains(&c_label) {
            continue;
        }
        for l in labs {
            if l != c_label {
                targets.push((l.family, l.component));
            }
        }
    }
    targets.sort_by_key(|t| (t.0.rank(), t.1));
    targets.dedup();
    let mut m = map.clone();
    for t in targets {
        m = twist_component_map(&m, (family, component), t, sign)?;
    }
    Ok(m)
}

/// The three genus-one diagrams of the 4-sphere; diagram `color` has the
/// cut systems of pair `color` parallel and the third crossing both once.
pub fn figure4(color: u8) -> Result<CellMap> {
    let (par_a, par_b, crosser) = match color {
        1 => (Family::Alpha, Family::Beta, Family::Gamma),
        2 => (Family::Beta, Family::Gamma, Family::Alpha),
        3 => (Family::Gamma, Family::Alpha, Family::Beta),
        _ => return Err(Error::InvalidOperand("color must be 1, 2, or 3".into())),
    };
    let m = crate::builder::closed_surface(1);
    let m = crate::builder::draw_closed_curve(
        &m,
        &[crate::builder::cross(Family::Scaffold, 1)],
        EdgeLabel::new(par_a, 0),
        |_| true,
    )?;
    let m = m.with_parallel_copy(par_a, 0, ParallelSide::Left, EdgeLabel::new(par_b, 0))?;
    crate::builder::draw_closed_curve(
        &m,
        &[
            crate::builder::cross(Family::Scaffold, 0),
            crate::builder::cross(par_a, 0),
            crate::builder::cross(par_b, 0),
        ],
        EdgeLabel::new(crosser, 0),
        |mm| {
            mm.geometric_intersections(par_a, crosser) == vec![vec![1]]
                && mm.geometric_intersections(par_b, crosser) == vec![vec![1]]
        },
    )
}

/// Stabilize with the given color at an interior unmarked face corner.
pub fn stabilize(d: &Diagram, color: u8, corner: Dart) -> Result<Diagram> {
    apply(d, &MoveRecord::Stabilize { color, corner })
}

pub(crate) fn stabilize_map(map: &CellMap, color: u8, corner: Dart) -> Result<CellMap> {
    if (corner as usize) >= map.dart_count() {
        return Err(Error::InvalidOperand("corner out of range".into()));
    }
    let fig = figure4(color)?;
    // any scaffold corner of the summand
    let other = fig
        .darts()
        .find(|&dd| fig.label(dd).family == Family::Scaffold)
        .expect("figure-4 scaffold");
    map.connected_sum(corner, &fig, other)
}

/// All destabilization certificates, ordered lexicographically.
pub fn find_destabilizations(d: &Diagram) -> Result<Vec<DestabCert>> {
    let map = &d.map;
    let mut out = Vec::new();
    let comps: Vec<(Family, u32)> = Family::CURVES
        .into_iter()
        .flat_map(|f| map.components(f).into_iter().map(move |c| (f, c)))
        .collect();
    // disjointness profile: geometric intersections between curve families
    for &(fx, cx) in &comps {
        for &(fy, cy) in &comps {
            for &(fz, cz) in &comps {
                if fy.rank() >= fz.rank() || fx == fy || fx == fz {
                    continue;
                }
                if !crossing_profile_ok(map, (fx, cx), (fy, cy), (fz, cz))? {
                    continue;
                }
                if !parallel_pair(map, (fx, cx), (fy, cy), (fz, cz))? {
                    continue;
                }
                out.push(DestabCert { x: (fx, cx), y: (fy, cy), z: (fz, cz) });
            }
        }
    }
    out.sort_by_key(|c| (c.x.0.rank(), c.x.1, c.y.0.rank(), c.y.1, c.z.0.rank(), c.z.1));
    Ok(out)
}

/// x crosses y and z exactly once; x, y, z are disjoint from all other
/// curve and arc components and from each other apart from those crossings.
fn crossing_profile_ok(
    map: &CellMap,
    x: (Family, u32),
    y: (Family, u32),
    z: (Family, u32),
) -> Result<bool> {
    let mut xy = 0u64;
    let mut xz = 0u64;
    for v in map.vertices() {
        if v.len() != 4 {
            continue;
        }
        let l0 = map.label(v[0]);
        let l1 = map.label(v[1]);
        if l0 == l1 || l0.family == Family::Scaffold || l1.family == Family::Scaffold {
            continue;
        }
        let pair = ((l0.family, l0.component), (l1.family, l1.component));
        let involves = |c: (Family, u32)| pair.0 == c || pair.1 == c;
        if involves(x) && involves(y) {
            xy += 1;
        } else if involves(x) && involves(z) {
            xz += 1;
        } else if involves(x) || involves(y) || involves(z) {
            // any other crossing involving x, y, or z disqualifies
            return Ok(false);
        }
    }
    Ok(xy == 1 && xz == 1)
}

/// y and z cobound an annulus free of other components except a single
/// passage of x: surgering both on a copy with x downgraded to scaffold
/// leaves a pair of scars together on a clean genus-0 component.
fn parallel_pair(
    map: &CellMap,
    x: (Family, u32),
    y: (Family, u32),
    z: (Family, u32),
) -> Result<bool> {
    let mut w = map.to_work();
    // keep x as cell structure so the surface is unchanged
    let scaf = EdgeLabel::new(Family::Scaffold, w.fresh_component(Family::Scaffold));
    for d in map.darts() {
        if map.label(d) == EdgeLabel::new(x.0, x.1) {
            w.set_label(d, scaf);
        }
    }
    w.multi_ok = true;
    let m = w.finish()?;
    let before: Vec<u32> = m.components(Family::Scaffold);
    let m = m.surger_curve(y.0, y.1)?;
    let mid: Vec<u32> = m.components(Family::Scaffold);
    let scars_y: Vec<u32> = mid.iter().copied().filter(|c| !before.contains(c)).collect();
    let m = m.surger_curve(z.0, z.1)?;
    let after: Vec<u32> = m.components(Family::Scaffold);
    let scars_z: Vec<u32> = after.iter().copied().filter(|c| !mid.contains(c)).collect();
    let comps = m.connected_components();
    for comp in &comps {
        let scaffolds: Vec<u32> = comp
            .iter()
            .filter(|&&dd| m.label(dd).family == Family::Scaffold)
            .map(|&dd| m.label(dd).component)
            .collect();
        let has_y = scars_y.iter().any(|c| scaffolds.contains(c));
        let has_z = scars_z.iter().any(|c| scaffolds.contains(c));
        if !(has_y && has_z) {
            continue;
        }
        // region must carry no curves, arcs, or marks and have genus 0
        let clean = comp.iter().all(|&dd| {
            let f = m.label(dd).family;
            !f.is_curve() && !f.is_arc() && m.marked_sign_at(dd).is_none()
        });
        if !clean {
            continue;
        }
        let sub = submap(&m, comp)?;
        if sub.genus_boundary().map(|(g, _)| g == 0).unwrap_or(false) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn submap(m: &CellMap, darts: &[Dart]) -> Result<CellMap> {
    let mut remap = std::collections::BTreeMap::new();
    for (i, &dd) in darts.iter().enumerate() {
        remap.insert(dd, i as Dart);
    }
    let alpha = darts.iter().map(|&dd| remap[&m.alpha(dd)]).collect();
    let sigma = darts.iter().map(|&dd| remap[&m.sigma(dd)]).collect();
    let label = darts.iter().map(|&dd| m.label(dd)).collect();
    CellMap::build(alpha, sigma, label, vec![], false)
}

/// Destabilize along a certificate: delete y and z, surger along x.
pub fn destabilize(d: &Diagram, cert: &DestabCert) -> Result<Diagram> {
    apply(d, &MoveRecord::Destabilize { cert: *cert })
}

pub(crate) fn cert_valid(map: &CellMap, cert: &DestabCert) -> bool {
    let present = |c: (Family, u32)| map.components(c.0).contains(&c.1);
    present(cert.x) && present(cert.y) && present(cert.z)
        && crossing_profile_ok(map, cert.x, cert.y, cert.z).unwrap_or(false)
        && parallel_pair(map, cert.x, cert.y, cert.z).unwrap_or(false)
}

pub(crate) fn destabilize_map(map: &CellMap, cert: &DestabCert) -> Result<CellMap> {
    if !cert_valid(map, cert) {
        return Err(Error::CertificateStale);
    }
    let (g0, b0) = map.genus_boundary()?;
    // y and z become scaffold (their disks are filled by the surgery); the
    // surface itself must not change until x is surgered
    let mut w = map.to_work();
    let fresh = w.fresh_components(Family::Scaffold, 2);
    for d in map.darts() {
        let l = map.label(d);
        if (l.family, l.component) == cert.y {
            w.set_label(d, EdgeLabel::new(Family::Scaffold, fresh[0]));
        } else if (l.family, l.component) == cert.z {
            w.set_label(d, EdgeLabel::new(Family::Scaffold, fresh[1]));
        }
    }
    let m = w.finish()?;
    let m = m.surger_curve(cert.x.0, cert.x.1)?;
    if !m.is_connected() {
        return Err(Error::CertificateStale);
    }
    let (g1, b1) = m.genus_boundary()?;
    if g1 + 1 != g0 || b1 != b0 {
        return Err(Error::InvalidMap("destabilization changed the surface wrongly".into()));
    }
    Ok(m)
}

/// Mirror image of a diagram.
pub fn mirror(d: &Diagram) -> Result<Diagram> {
    apply(d, &MoveRecord::Mirror)
}

/// Interior connected sum of two diagrams at unmarked face corners.
pub fn connected_sum(d1: &Diagram, corner1: Dart, d2: &Diagram, corner2: Dart) -> Result<Diagram> {
    let map = d1.map.connected_sum(corner1, &d2.map, corner2)?;
    let kind = match (d1.kind, d2.kind) {
        (DiagramKind::Closed, DiagramKind::Closed) => DiagramKind::Closed,
        (DiagramKind::DoublyPointed, DiagramKind::Closed)
        | (DiagramKind::Closed, DiagramKind::DoublyPointed) => DiagramKind::DoublyPointed,
        (a, DiagramKind::Closed) => a,
        _ => {
            return Err(Error::InvalidOperand(
                "connected sum needs at most one non-closed side".into(),
            ))
        }
    };
    Diagram::new(map.renumbered(), kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::trivial_model;

    fn interior_corner(d: &Diagram) -> Dart {
        d.map
            .darts()
            .find(|&x| d.map.label(x).family == Family::Scaffold)
            .unwrap_or(0)
    }

    #[test]
    fn figure4_types() {
        for color in 1..=3u8 {
            let m = figure4(color).unwrap();
            let d = Diagram::new(m, DiagramKind::Closed).unwrap();
            let t = d.infer_type().unwrap();
            assert_eq!(t.g, 1);
            let mut want = [0usize; 3];
            want[(color - 1) as usize] = 1;
            assert_eq!(t.k, want, "color {color}");
        }
    }

    #[test]
    fn stabilize_then_type() {
        // empty genus-0 diagram stabilized with color 1 -> figure-4 diagram
        let s4 = Diagram::new(crate::builder::sphere(), DiagramKind::Closed).unwrap();
        let st = stabilize(&s4, 1, interior_corner(&s4)).unwrap();
        let t = st.infer_type().unwrap();
        assert_eq!((t.g, t.k), (1, [1, 0, 0]));
        let fig = Diagram::new(figure4(1).unwrap(), DiagramKind::Closed).unwrap();
        assert!(st
            .map
            .is_isomorphic(&fig.map.normalize_scaffold().unwrap().renumbered()));
    }

    #[test]
    fn three_stabilizations_balanced() {
        let mut d = Diagram::new(crate::builder::sphere(), DiagramKind::Closed).unwrap();
        for color in 1..=3u8 {
            d = stabilize(&d, color, interior_corner(&d)).unwrap();
        }
        let t = d.infer_type().unwrap();
        assert_eq!((t.g, t.k), (3, [1, 1, 1]));
        // chi = 2 + g - sum(k) is preserved by stabilization
        assert_eq!(2 + 3 - 3, 2);
    }

    #[test]
    fn figure4_has_one_destab() {
        let d = Diagram::new(figure4(1).unwrap(), DiagramKind::Closed).unwrap();
        let certs = find_destabilizations(&d).unwrap();
        assert_eq!(certs.len(), 1);
        let back = destabilize(&d, &certs[0]).unwrap();
        assert_eq!(back.infer_type().unwrap().g, 0);
    }

    #[test]
    fn stabilize_destabilize_roundtrip() {
        let d0 = trivial_model(1, 0, 0, 0).unwrap();
        let d = Diagram::new(
            d0.map.normalize_scaffold().unwrap().renumbered(),
            DiagramKind::Closed,
        )
        .unwrap();
        let st = stabilize(&d, 2, interior_corner(&d)).unwrap();
        let certs = find_destabilizations(&st).unwrap();
        assert!(!certs.is_empty());
        // the stabilization's own certificate restores the original
        let restored = certs.iter().find_map(|c| {
            let back = destabilize(&st, c).ok()?;
            back.map.is_isomorphic(&d.map).then_some(back)
        });
        assert!(restored.is_some());
    }

    #[test]
    fn trivial_slide_over_parallel() {
        // in the (1,1) model, alpha and beta are parallel; slide beta over a
        // parallel alpha: type is unchanged
        let d = trivial_model(2, 1, 0, 0).unwrap();
        let t0 = d.infer_type().unwrap();
        // moving: beta 0 (parallel pair lives on handle 0)
        let corridors = crate::gluing::enumerate_corridors(
            &d.map,
            (Family::Beta, 0),
            (Family::Beta, 1),
            4,
            64,
        )
        .unwrap();
        let mut done = false;
        for corridor in &corridors {
            if let Ok(slid) = handleslide(&d, Family::Beta, 0, 1, corridor) {
                let t1 = slid.infer_type().unwrap();
                assert_eq!(t0, t1);
                for f in Family::CURVES {
                    assert!(slid.validate_cut_system(f).unwrap());
                }
                done = true;
                break;
            }
        }
        assert!(done, "no corridor slid");
    }

    #[test]
    fn mirror_is_involution() {
        let d = trivial_model(2, 1, 0, 0).unwrap();
        let mm = mirror(&mirror(&d).unwrap()).unwrap();
        assert!(d
            .map
            .normalize_scaffold()
            .unwrap()
            .renumbered()
            .is_isomorphic(&mm.map));
    }

    #[test]
    fn script_replay_deterministic() {
        let d = Diagram::new(crate::builder::sphere(), DiagramKind::Closed).unwrap();
        let script = MoveScript {
            moves: vec![
                MoveRecord::Stabilize { color: 1, corner: 0 },
                MoveRecord::Mirror,
                MoveRecord::Mirror,
            ],
        };
        let a = replay(&d, &script).unwrap();
        let b = replay(&d, &script).unwrap();
        assert_eq!(a.map, b.map);
        // empty script is the identity
        let e = replay(&d, &MoveScript::new()).unwrap();
        assert!(e.map.is_isomorphic(&d.map));
    }
}
