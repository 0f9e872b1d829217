//! Construction helpers for standard surfaces and curve systems.
//!
//! Surfaces are built from the one-vertex polygon model (2g scaffold loops
//! with rotation x1 y1 x1 y1 x2 y2 x2 y2 ...), then curves are drawn either
//! by explicit routes or by the small route solver, which searches dart
//! choices for a prescribed sequence of label crossings and verifies each
//! candidate by drawing into a scratch copy.

use crate::cellmap::{CellMap, Dart, EdgeLabel, Family, Route, RouteEnd, Sign};
use crate::error::{Error, Result};

/// One-vertex closed genus-g surface carried by 2g scaffold loops.
/// Scaffold component 2i is the x-loop of handle i, 2i+1 the y-loop.
pub fn closed_surface(genus: usize) -> CellMap {
    if genus == 0 {
        return crate::builder::sphere();
    }
    let n = 4 * genus;
    let mut alpha = vec![0 as Dart; n];
    let mut label = Vec::with_capacity(n);
    // darts per handle i: 4i (x out), 4i+1 (y out), 4i+2 (x back), 4i+3 (y back)
    for i in 0..genus {
        let b = 4 * i;
        alpha[b] = (b + 2) as Dart;
        alpha[b + 2] = b as Dart;
        alpha[b + 1] = (b + 3) as Dart;
        alpha[b + 3] = (b + 1) as Dart;
        let x = EdgeLabel::new(Family::Scaffold, (2 * i) as u32);
        let y = EdgeLabel::new(Family::Scaffold, (2 * i + 1) as u32);
        label.extend([x, y, x, y]);
    }
    // rotation: single cycle 0, 1, 2, 3, 4, 5, ...
    let sigma: Vec<Dart> = (0..n).map(|d| ((d + 1) % n) as Dart).collect();
    CellMap::build(alpha, sigma, label, vec![], false).expect("standard surface")
}

/// Sphere: one scaffold loop, two faces.
pub fn sphere() -> CellMap {
    CellMap::build(
        vec![1, 0],
        vec![1, 0],
        vec![EdgeLabel::new(Family::Scaffold, 0); 2],
        vec![],
        false,
    )
    .expect("sphere")
}

/// A crossing request for the route solver: a family and optionally a
/// specific component of it (None allows any component).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossSpec {
    pub family: Family,
    pub component: Option<u32>,
}

pub fn cross(family: Family, component: u32) -> CrossSpec {
    CrossSpec { family, component: Some(component) }
}

pub fn cross_any(family: Family) -> CrossSpec {
    CrossSpec { family, component: None }
}

/// Search for a closed route crossing the given components in cyclic order,
/// verifying candidates by drawing into a scratch copy. Among all successful
/// dart choices the lexicographically smallest is returned, optionally
/// filtered by a validation predicate on the finished map.
pub fn solve_closed_route(
    map: &CellMap,
    seq: &[CrossSpec],
    label: EdgeLabel,
    accept: impl Fn(&CellMap) -> bool,
) -> Result<(CellMap, Route)> {
    let mut choice: Vec<Dart> = Vec::new();
    let mut results: Vec<(CellMap, Route)> = Vec::new();
    solve_rec(map, seq, label, &mut choice, &accept, &mut results, 1);
    results
        .into_iter()
        .next()
        .ok_or(Error::InvalidOperand(format!("no closed route found for {seq:?}")))
}

/// All accepted drawings for a crossing sequence, up to `cap` many, in
/// deterministic solver order.
pub fn solve_closed_routes(
    map: &CellMap,
    seq: &[CrossSpec],
    label: EdgeLabel,
    cap: usize,
    accept: impl Fn(&CellMap) -> bool,
) -> Vec<CellMap> {
    let mut choice: Vec<Dart> = Vec::new();
    let mut results: Vec<(CellMap, Route)> = Vec::new();
    solve_rec(map, seq, label, &mut choice, &accept, &mut results, cap);
    results.into_iter().map(|(m, _)| m).collect()
}

fn solve_rec(
    map: &CellMap,
    seq: &[CrossSpec],
    label: EdgeLabel,
    choice: &mut Vec<Dart>,
    accept: &impl Fn(&CellMap) -> bool,
    results: &mut Vec<(CellMap, Route)>,
    cap: usize,
) {
    if results.len() >= cap {
        return;
    }
    if choice.len() == seq.len() {
        let route = Route {
            start: RouteEnd::Closed,
            crossings: choice.clone(),
            end: RouteEnd::Closed,
        };
        let mut w = map.to_work();
        if w.draw(&route, label).is_err() {
            return;
        }
        if let Ok(m) = w.finish() {
            if accept(&m) {
                results.push((m, route));
            }
        }
        return;
    }
    let spec = seq[choice.len()];
    // candidate darts in the current partially drawn state
    let mut w = map.to_work();
    let prefix_ok = {
        let route = Route {
            start: RouteEnd::Closed,
            crossings: choice.clone(),
            end: RouteEnd::Closed,
        };
        // drawing the closing chord would fail midway; simulate prefix only
        simulate_prefix(&mut w, &route, label).is_ok()
    };
    if !prefix_ok {
        return;
    }
    let candidates: Vec<Dart> = w
        .darts()
        .into_iter()
        .filter(|&d| {
            let l = w.label(d);
            l.family == spec.family && spec.component.is_none_or(|c| l.component == c)
        })
        .collect();
    for d in candidates {
        choice.push(d);
        solve_rec(map, seq, label, choice, accept, results, cap);
        choice.pop();
        if results.len() >= cap {
            return;
        }
    }
}

/// Draw the crossings of a closed route without the final closing chord.
fn simulate_prefix(
    w: &mut crate::cellmap::Work,
    route: &Route,
    label: EdgeLabel,
) -> Result<()> {
    if route.crossings.is_empty() {
        return Ok(());
    }
    let s0 = route.crossings[0];
    if !w.alive(s0) {
        return Err(Error::InvalidOperand("dead crossing".into()));
    }
    let (_p, q) = w.subdivide(s0);
    let mut cur = q;
    for &s in &route.crossings[1..] {
        if !w.alive(s) {
            return Err(Error::InvalidOperand("dead crossing".into()));
        }
        let (p, q) = w.subdivide(s);
        w.chord_checked(cur, p, label)?;
        cur = q;
    }
    Ok(())
}

/// Draw a closed curve crossing the listed components in order, taking the
/// first route the solver accepts. The verification predicate receives the
/// finished map.
pub fn draw_closed_curve(
    map: &CellMap,
    seq: &[CrossSpec],
    label: EdgeLabel,
    accept: impl Fn(&CellMap) -> bool,
) -> Result<CellMap> {
    solve_closed_route(map, seq, label, accept).map(|(m, _)| m)
}

/// Insert a marked point inside the face at the given corner dart: a
/// scaffold chord across the face, subdivided by the marked vertex.
pub fn mark_in_face(map: &CellMap, corner: Dart, sign: Sign) -> Result<CellMap> {
    let mut w = map.to_work();
    let corner = w.attachment_corner(corner);
    let scaf = EdgeLabel::new(Family::Scaffold, w.fresh_component(Family::Scaffold));
    let (n, _) = w.chord_checked(corner, corner, scaf)?;
    let (p, _) = w.subdivide(n);
    w.add_mark(p, sign);
    w.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surfaces_have_right_genus() {
        for g in 0..4 {
            let m = closed_surface(g);
            assert_eq!(m.genus_boundary().unwrap(), (g, 0));
        }
    }

    #[test]
    fn torus_three_slopes() {
        // alpha = (1,0), beta = (0,1), gamma = (1,1): pairwise one crossing
        let m = closed_surface(1);
        let m = draw_closed_curve(
            &m,
            &[cross_any(Family::Scaffold)],
            EdgeLabel::new(Family::Alpha, 0),
            |_| true,
        )
        .unwrap();
        let m = draw_closed_curve(
            &m,
            &[cross_any(Family::Scaffold), cross(Family::Alpha, 0)],
            EdgeLabel::new(Family::Beta, 0),
            |m| {
                m.algebraic_intersections(Family::Alpha, Family::Beta)
                    .is_ok_and(|x| x[(0, 0)].abs() == 1)
            },
        )
        .unwrap();
        let m = draw_closed_curve(
            &m,
            &[
                cross_any(Family::Scaffold),
                cross_any(Family::Scaffold),
                cross(Family::Alpha, 0),
                cross(Family::Beta, 0),
            ],
            EdgeLabel::new(Family::Gamma, 0),
            |m| {
                m.algebraic_intersections(Family::Alpha, Family::Gamma)
                    .is_ok_and(|x| x[(0, 0)].abs() == 1)
                    && m.algebraic_intersections(Family::Beta, Family::Gamma)
                        .is_ok_and(|x| x[(0, 0)].abs() == 1)
            },
        )
        .unwrap();
        for (a, b) in [
            (Family::Alpha, Family::Beta),
            (Family::Beta, Family::Gamma),
            (Family::Gamma, Family::Alpha),
        ] {
            let g = m.geometric_intersections(a, b);
            assert_eq!(g, vec![vec![1]], "{a} vs {b}");
        }
        assert_eq!(m.genus_boundary().unwrap(), (1, 0));
    }
}
