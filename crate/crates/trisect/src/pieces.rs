//! Standard piece library: the annulus piece for B3 x S1, the twisted
//! annuli, core diagrams, and the doubly pointed diagrams of the example
//! 2-knots (unknot, projective line and conic, the two sphere-bundle
//! fibers). Each piece is built from the standard constructions and
//! cross-validated by its stated monodromy power and inferred type.

use crate::builder::{closed_surface, cross, cross_any, draw_closed_curve, mark_in_face, sphere};
use crate::cellmap::{CellMap, Dart, EdgeLabel, Family, Sign};
use crate::diagram::{Diagram, DiagramKind};
use crate::error::{Error, Result};
use crate::gluing::{annular_monodromy, complete_arcs, puncture};
use serde::{Deserialize, Serialize};

/// Names of the standard pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceName {
    B3S1,
    TwistedA,
    TwistedB,
    TwistedC,
    LExterior,
    ConicExterior,
    FiberF,
    FiberFtilde,
    CoreDiagram1,
    CoreDiagram2,
}

/// A standard piece: a diagram plus a pseudo flag for the twisted annuli,
/// which act like arced diagrams in surgery gluings but are not.
#[derive(Debug, Clone)]
pub struct StandardPiece {
    pub name: PieceName,
    pub diagram: Diagram,
    pub pseudo: bool,
}

const PIECE_BUDGET: usize = 20_000;

/// The unknotted 2-knot in the 4-sphere: doubly pointed genus-0 diagram.
pub fn unknot_diagram() -> Result<Diagram> {
    let m = sphere();
    let m = mark_in_face(&m, 0, Sign::Plus)?;
    let m = mark_in_face(&m, 0, Sign::Minus)?;
    Diagram::new(m, DiagramKind::DoublyPointed)
}

/// Exterior of a doubly pointed diagram as an arced diagram.
pub fn exterior(d: &Diagram) -> Result<Diagram> {
    let rel = puncture(d)?;
    complete_arcs(&rel, PIECE_BUDGET)
}

/// The annulus piece describing B3 x S1: three parallel arcs, 0-annular.
pub fn b3s1() -> Result<Diagram> {
    exterior(&unknot_diagram()?)
}

/// Insert a scaffold core circle into an annular arced diagram: a closed
/// curve parallel to one boundary circle, crossing each attachment of that
/// circle exactly once in cap order.
pub use self::with_core_circle as with_core_circle_dbg;
pub fn with_core_circle(d: &Diagram) -> Result<(CellMap, u32)> {
    let m = &d.map;
    let caps = m.cap_faces();
    let cap = caps
        .first()
        .ok_or_else(|| Error::InvalidOperand("no boundary circle".into()))?;
    // attachment dart at each boundary vertex, in cap-orbit order
    let mut crossings: Vec<Dart> = Vec::new();
    for &x in cap {
        let v = m.vertex_id(x);
        let mut y = v;
        loop {
            if m.label(y).family != Family::Boundary {
                crossings.push(y);
            }
            y = m.sigma(y);
            if y == v {
                break;
            }
        }
    }
    if crossings.is_empty() {
        return Err(Error::InvalidOperand("bare boundary circle".into()));
    }
    let comp = m.to_work().fresh_component(Family::Scaffold);
    let label = EdgeLabel::new(Family::Scaffold, comp);
    let mut reversed = crossings.clone();
    reversed.reverse();
    let out = [crossings, reversed]
        .into_iter()
        .find_map(|cr| {
            let mut w = m.to_work();
            let route = crate::cellmap::Route {
                start: crate::cellmap::RouteEnd::Closed,
                crossings: cr,
                end: crate::cellmap::RouteEnd::Closed,
            };
            w.draw(&route, label).ok()?;
            w.finish().ok()
        })
        .ok_or_else(|| Error::InvalidOperand("core circle route failed".into()))?;
    // the parallel circle must cross each proper arc exactly once
    for arc in Family::ARCS {
        let g = out.geometric_intersections(arc, Family::Scaffold);
        let comps = out.components(Family::Scaffold);
        let j = comps
            .iter()
            .position(|&c| c == comp)
            .ok_or_else(|| Error::InvalidMap("core circle lost".into()))?;
        for (i, row) in g.iter().enumerate() {
            if row[j] != 1 {
                return Err(Error::InvalidMap(format!(
                    "core circle crosses {arc}:{i} {} times",
                    row[j]
                )));
            }
        }
    }
    Ok((out, comp))
}

/// Twisted annulus: the standard annulus piece with one arc replaced by its
/// image under `sign` twists along the core circle.
pub fn twisted_annulus(arc: Family, sign: i8) -> Result<Diagram> {
    if !arc.is_arc() {
        return Err(Error::InvalidOperand("twisted annuli twist an arc family".into()));
    }
    let base = b3s1()?;
    let (with_core, core) = with_core_circle(&base)?;
    let twisted = crate::moves::twist_component_map(
        &with_core,
        (Family::Scaffold, core),
        (arc, 0),
        sign,
    )?;
    let m = twisted.normalize_scaffold()?;
    // the twisted annuli are not honest arced diagrams when the twisted arc
    // differs from its companions; they still validate structurally
    Diagram::new(m, DiagramKind::Arced)
}

/// Mirror of a piece.
pub fn mirror_piece(d: &Diagram) -> Result<Diagram> {
    Diagram::new(d.map.mirror(), d.kind)
}

/// The genus-1 diagram of the projective plane: alpha a meridian, beta and
/// gamma twisted duals of slopes differing by one twist, marked with two
/// points so the exterior has monodromy `want_power` (+1 for the line, +4
/// for the conic).
fn projective_plane_knot(want_power: i64) -> Result<Diagram> {
    for (a, c) in [(0i8, 1i8), (1, 2), (2, 3), (1, 0), (2, 1)] {
        let Ok(m) = projective_plane_curves_dbg(a, c) else { continue };
        // sweep marked-point placements over face pairs
        let faces = m.faces();
        for (i, f1) in faces.iter().enumerate() {
            for f2 in faces.iter().skip(i) {
                let Ok(m1) = mark_in_face(&m, f1[0], Sign::Plus) else { continue };
                let Ok(m2) = mark_in_face(&m1, f2[0], Sign::Minus) else { continue };
                let Ok(d) = Diagram::new(m2, DiagramKind::DoublyPointed) else { continue };
                if d.infer_type().map(|t| t.k) != Ok([0, 0, 0]) {
                    continue;
                }
                let Ok(ext) = exterior(&d) else { continue };
                let Ok(data) = annular_monodromy(&ext, PIECE_BUDGET) else { continue };
                if data.power == want_power {
                    return Ok(d);
                }
            }
        }
    }
    Err(Error::InvalidOperand(format!(
        "no projective-plane knot with monodromy {want_power}"
    )))
}

/// Unmarked projective-plane curve triple: meridian alpha plus duals
/// twisted `a` and `c` times along alpha.
pub fn projective_plane_curves_dbg(a: i8, c: i8) -> Result<CellMap> {
    let m = closed_surface(1);
    let m = draw_closed_curve(
        &m,
        &[cross_any(Family::Scaffold)],
        EdgeLabel::new(Family::Alpha, 0),
        |_| true,
    )?;
    let m = draw_closed_curve(
        &m,
        &[cross_any(Family::Scaffold), cross(Family::Alpha, 0)],
        EdgeLabel::new(Family::Beta, 0),
        |mm| {
            mm.algebraic_intersections(Family::Alpha, Family::Beta)
                .is_ok_and(|x| x[(0, 0)].abs() == 1)
        },
    )?;
    let mut m = m.with_parallel_copy(
        Family::Beta,
        0,
        crate::cellmap::ParallelSide::Left,
        EdgeLabel::new(Family::Gamma, 0),
    )?;
    for _ in 0..a.unsigned_abs() {
        m = crate::moves::twist_component_map(
            &m,
            (Family::Alpha, 0),
            (Family::Beta, 0),
            a.signum(),
        )?;
    }
    for _ in 0..c.unsigned_abs() {
        m = crate::moves::twist_component_map(
            &m,
            (Family::Alpha, 0),
            (Family::Gamma, 0),
            c.signum(),
        )?;
    }
    // pairwise unimodular check
    for (x, y) in [
        (Family::Alpha, Family::Beta),
        (Family::Beta, Family::Gamma),
        (Family::Gamma, Family::Alpha),
    ] {
        let q = m.algebraic_intersections(x, y)?;
        if q[(0, 0)].abs() != 1 {
            return Err(Error::InvalidMap(format!(
                "projective-plane triple: {x} vs {y} pairs {}",
                q[(0, 0)]
            )));
        }
    }
    Ok(m)
}

/// The projective line in the projective plane.
pub fn line_diagram() -> Result<Diagram> {
    projective_plane_knot(1)
}

/// The conic in the projective plane: obtained from a projective-plane
/// doubly pointed diagram by twisting the curve systems along an essential
/// circle passing between the marked points, searched until the exterior
/// reports monodromy +4.
pub fn conic_diagram() -> Result<Diagram> {
    let line = line_diagram()?;
    // candidate twisting circles: parallel copies of each curve
    let mut twisted_candidates: Vec<CellMap> = Vec::new();
    for fam in Family::CURVES {
        for side in [crate::cellmap::ParallelSide::Left, crate::cellmap::ParallelSide::Right] {
            let scaf_comp = line.map.to_work().fresh_component(Family::Scaffold);
            let Ok(with_c) = line.map.with_parallel_copy(
                fam,
                0,
                side,
                EdgeLabel::new(Family::Scaffold, scaf_comp),
            ) else {
                continue;
            };
            for sign in [1i8, -1] {
                for reps in 1..=2usize {
                    let mut m = with_c.clone();
                    let mut ok = true;
                    for _ in 0..reps {
                        match crate::moves::dehn_twist_map(&m, Family::Scaffold, scaf_comp, sign) {
                            Ok(next) => m = next,
                            Err(_) => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        twisted_candidates.push(m);
                    }
                }
            }
        }
    }
    for cand in twisted_candidates {
        let Ok(norm) = cand.normalize_scaffold() else { continue };
        let Ok(d) = Diagram::new(norm, DiagramKind::DoublyPointed) else { continue };
        if d.infer_type().map(|t| (t.g, t.k)) != Ok((1, [0, 0, 0])) {
            continue;
        }
        let Ok(ext) = exterior(&d) else { continue };
        let Ok(data) = annular_monodromy(&ext, PIECE_BUDGET) else { continue };
        if data.power == 4 {
            return Ok(d);
        }
    }
    Err(Error::InvalidOperand("no conic candidate with monodromy 4".into()))
}

/// Exterior of the line: the (+1)-annular torus-with-boundary piece.
pub fn l_exterior() -> Result<Diagram> {
    exterior(&line_diagram()?)
}

/// Exterior of the conic: the (+4)-annular piece with boundary L(4,1).
pub fn conic_exterior() -> Result<Diagram> {
    exterior(&conic_diagram()?)
}

/// The genus-2 diagram of the sphere bundle over the sphere with fiber
/// marked. `twisted` picks the nontrivial bundle.
fn sphere_bundle_diagram(twisted: bool) -> Result<Diagram> {
    let m = closed_surface(2);
    // alpha: meridians of the two handles
    let mut m = m;
    for i in 0..2u32 {
        m = draw_closed_curve(
            &m,
            &[cross(Family::Scaffold, 2 * i + 1)],
            EdgeLabel::new(Family::Alpha, i),
            |_| true,
        )?;
    }
    // beta: duals crossing alpha_i once
    for i in 0..2u32 {
        m = draw_closed_curve(
            &m,
            &[cross(Family::Scaffold, 2 * i), cross(Family::Alpha, i)],
            EdgeLabel::new(Family::Beta, i),
            |mm| {
                mm.algebraic_intersections(Family::Alpha, Family::Beta)
                    .is_ok_and(|x| x[(i as usize, i as usize)].abs() == 1)
            },
        )?;
    }
    if twisted {
        // gamma_i on handle i crossing alpha_i and beta_i once: a connected
        // sum of two projective-plane pieces
        for i in 0..2u32 {
            m = draw_closed_curve(
                &m,
                &[
                    cross(Family::Scaffold, 2 * i),
                    cross(Family::Scaffold, 2 * i + 1),
                    cross(Family::Alpha, i),
                    cross(Family::Beta, i),
                ],
                EdgeLabel::new(Family::Gamma, i),
                |mm| {
                    mm.algebraic_intersections(Family::Alpha, Family::Gamma)
                        .is_ok_and(|x| x[(i as usize, i as usize)].abs() == 1)
                        && mm
                            .algebraic_intersections(Family::Beta, Family::Gamma)
                            .is_ok_and(|x| x[(i as usize, i as usize)].abs() == 1)
                },
            )?;
        }
    } else {
        // gamma_i crosses alpha_i and the other handle's beta: classes
        // x_i + y_j giving the even pairing
        for i in 0..2u32 {
            let j = 1 - i;
            m = draw_closed_curve(
                &m,
                &[
                    cross(Family::Scaffold, 2 * i + 1),
                    cross(Family::Scaffold, 2 * j),
                    cross(Family::Alpha, j),
                    cross(Family::Beta, i),
                ],
                EdgeLabel::new(Family::Gamma, i),
                |mm| {
                    let ga = mm.algebraic_intersections(Family::Gamma, Family::Alpha);
                    let gb = mm.algebraic_intersections(Family::Gamma, Family::Beta);
                    let gi = i as usize;
                    ga.is_ok_and(|x| x[(gi, j as usize)].abs() == 1 && x[(gi, gi)] == 0)
                        && gb.is_ok_and(|x| x[(gi, gi)].abs() == 1 && x[(gi, j as usize)] == 0)
                },
            )?;
        }
    }
    // marked points: enumerate placements whose exterior is 0-annular
    let faces = m.faces();
    for (i, f1) in faces.iter().enumerate() {
        for f2 in faces.iter().skip(i) {
            let Ok(m1) = mark_in_face(&m, f1[0], Sign::Plus) else { continue };
            let Ok(m2) = mark_in_face(&m1, f2[0], Sign::Minus) else { continue };
            let Ok(d) = Diagram::new(m2, DiagramKind::DoublyPointed) else { continue };
            let t = d.infer_type()?;
            if t.k != [0, 0, 0] {
                continue;
            }
            let Ok(ext) = exterior(&d) else { continue };
            let Ok(data) = annular_monodromy(&ext, PIECE_BUDGET) else { continue };
            if data.power == 0 {
                return Ok(d);
            }
        }
    }
    Err(Error::InvalidOperand("no fiber placement with monodromy 0".into()))
}

/// The fiber 2-knot in the trivial sphere bundle.
pub fn fiber_f_diagram() -> Result<Diagram> {
    sphere_bundle_diagram(false)
}

/// The fiber 2-knot in the twisted sphere bundle.
pub fn fiber_ftilde_diagram() -> Result<Diagram> {
    sphere_bundle_diagram(true)
}

pub fn fiber_f_exterior() -> Result<Diagram> {
    exterior(&fiber_f_diagram()?)
}

pub fn fiber_ftilde_exterior() -> Result<Diagram> {
    exterior(&fiber_ftilde_diagram()?)
}

/// Core diagrams: a 0-annular arced diagram for the disk bundle with two
/// marked points isotopic into distinct boundary circles.
pub fn core_diagram(variant: u8) -> Result<Diagram> {
    let base = match variant {
        1 => fiber_f_exterior()?,
        2 => fiber_ftilde_exterior()?,
        _ => return Err(Error::InvalidOperand("core variant must be 1 or 2".into())),
    };
    // place the marked points beside the two boundary circles: faces
    // adjacent to each circle, reachable without crossing curves or arcs
    let m = &base.map;
    let caps = m.cap_faces();
    if caps.len() != 2 {
        return Err(Error::InvalidMap("core base must have two circles".into()));
    }
    let corner_beside = |cap: &Vec<Dart>| -> Dart { m.alpha(cap[0]) };
    let m1 = mark_in_face(m, corner_beside(&caps[0]), Sign::Plus)?;
    // cap faces may renumber darts? mark_in_face only adds darts, so cap
    // darts of the second circle are stable
    let m2 = mark_in_face(&m1, corner_beside(&caps[1]), Sign::Minus)?;
    Diagram::new(m2, DiagramKind::Core)
}

/// Build a named piece.
pub fn piece(name: PieceName) -> Result<StandardPiece> {
    let (diagram, pseudo) = match name {
        PieceName::B3S1 => (b3s1()?, false),
        PieceName::TwistedA => (twisted_annulus(Family::ArcA, -1)?, true),
        PieceName::TwistedB => (twisted_annulus(Family::ArcB, -1)?, true),
        PieceName::TwistedC => (twisted_annulus(Family::ArcC, -1)?, true),
        PieceName::LExterior => (l_exterior()?, false),
        PieceName::ConicExterior => (conic_exterior()?, false),
        PieceName::FiberF => (fiber_f_exterior()?, false),
        PieceName::FiberFtilde => (fiber_ftilde_exterior()?, false),
        PieceName::CoreDiagram1 => (core_diagram(1)?, false),
        PieceName::CoreDiagram2 => (core_diagram(2)?, false),
    };
    Ok(StandardPiece { name, diagram, pseudo })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::monodromy_power;

    #[test]
    fn b3s1_is_zero_annular() {
        let d = b3s1().unwrap();
        assert_eq!(d.map.genus_boundary().unwrap(), (0, 2));
        assert_eq!(monodromy_power(&d, 20_000).unwrap(), 0);
    }

    #[test]
    fn twisted_annulus_power() {
        for sign in [1i8, -1] {
            let t = twisted_annulus(Family::ArcA, sign).unwrap();
            let p = monodromy_power(&t, 20_000).unwrap();
            assert_eq!(p.abs(), 1, "sign {sign} gave power {p}");
        }
    }

    #[test]
    fn line_diagram_is_plus_one() {
        let d = line_diagram().unwrap();
        let t = d.infer_type().unwrap();
        assert_eq!((t.g, t.k), (1, [0, 0, 0]));
        let e = exterior(&d).unwrap();
        assert_eq!(monodromy_power(&e, 20_000).unwrap(), 1);
    }
}
