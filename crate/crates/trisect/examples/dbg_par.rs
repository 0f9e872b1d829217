use trisect::builder::{closed_surface, cross, cross_any, draw_closed_curve, mark_in_face};
use trisect::cellmap::{EdgeLabel, Family, ParallelSide, Sign, Route, RouteEnd};
use trisect::diagram::{Diagram, DiagramKind};
use trisect::gluing::puncture;

fn main() {
    let m = closed_surface(1);
    let m = draw_closed_curve(&m, &[cross_any(Family::Scaffold)], EdgeLabel::new(Family::Alpha, 0), |_| true).unwrap();
    let m = draw_closed_curve(&m, &[cross_any(Family::Scaffold), cross(Family::Alpha, 0)], EdgeLabel::new(Family::Beta, 0),
        |mm| mm.algebraic_intersections(Family::Alpha, Family::Beta).is_ok_and(|x| x[(0, 0)].abs() == 1)).unwrap();
    let m = draw_closed_curve(&m, &[cross_any(Family::Scaffold), cross_any(Family::Scaffold), cross(Family::Alpha, 0), cross(Family::Beta, 0)], EdgeLabel::new(Family::Gamma, 0),
        |mm| { mm.algebraic_intersections(Family::Alpha, Family::Gamma).is_ok_and(|x| x[(0, 0)].abs() == 1)
            && mm.algebraic_intersections(Family::Beta, Family::Gamma).is_ok_and(|x| x[(0, 0)].abs() == 1) }).unwrap();
    let faces = m.faces();
    let m1 = mark_in_face(&m, faces[2][0], Sign::Plus).unwrap();
    let m2 = mark_in_face(&m1, faces[6][0], Sign::Minus).unwrap();
    let d = Diagram::new(m2, DiagramKind::DoublyPointed).unwrap();
    let rel = puncture(&d).unwrap();
    let arcd = trisect::gluing::complete_arcs(&rel, 20_000).unwrap();
    let arc = arcd.map.clone();
    match trisect::gluing::annular_monodromy(&arcd, 20_000) {
        Ok(data) => println!("monodromy OK: power {}", data.power),
        Err(e) => println!("monodromy err: {e}"),
    }
    println!("arced ok; ArcC crossings with gamma: {:?}", arc.geometric_intersections(Family::ArcC, Family::Gamma));
    // try the a* parallel copy with step diagnosis
    let (walk, _) = arc.walk_component(Family::ArcC, 0).unwrap();
    println!("ArcC walk has {} edges", walk.len());
    for side in [ParallelSide::Left, ParallelSide::Right] {
        let mut crossings = Vec::new();
        for p in arc.passages(&walk, false) {
            for s in arc.passage_stubs(&p, side) {
                crossings.push(arc.alpha(s));
            }
        }
        println!("{side:?}: {} crossings: {crossings:?}", crossings.len());
        // endpoints
        let first = walk[0];
        let last = arc.alpha(*walk.last().unwrap());
        let bc = |end: u32| -> Vec<u32> { let _ = end; vec![] };
        let _ = bc;
        let cands = |end_dart| -> Vec<u32> {
            let v = arc.vertex_id(end_dart);
            let mut x = v; let mut out = vec![];
            loop { if arc.label(x).family == Family::Boundary { out.push(x); } x = arc.sigma(x); if x == v { break; } }
            out
        };
        for &sb in &cands(first) {
            for &eb in &cands(last) {
                let mut w = arc.to_work();
                let sc = trisect::gluing::battach(&mut w, sb);
                let ec = trisect::gluing::battach(&mut w, eb);
                let route = Route { start: RouteEnd::Corner(sc), crossings: crossings.clone(), end: RouteEnd::Corner(ec) };
                match w.draw(&route, EdgeLabel::new(Family::ArcA, 1)) {
                    Ok(_) => println!("  sb={sb} eb={eb}: OK"),
                    Err(e) => println!("  sb={sb} eb={eb}: {e}"),
                }
            }
        }
    }
}
