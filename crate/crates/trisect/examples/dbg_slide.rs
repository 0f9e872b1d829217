use trisect::builder::{closed_surface, cross, cross_any, draw_closed_curve, mark_in_face};
use trisect::cellmap::{EdgeLabel, Family, Sign};
use trisect::diagram::{Diagram, DiagramKind};
use trisect::gluing::{enumerate_corridors, puncture};
use trisect::moves::arc_slide;

fn main() {
    let m = closed_surface(1);
    let m = draw_closed_curve(&m, &[cross_any(Family::Scaffold)], EdgeLabel::new(Family::Alpha, 0), |_| true).unwrap();
    let m = draw_closed_curve(
        &m,
        &[cross_any(Family::Scaffold), cross(Family::Alpha, 0)],
        EdgeLabel::new(Family::Beta, 0),
        |mm| mm.algebraic_intersections(Family::Alpha, Family::Beta).is_ok_and(|x| x[(0, 0)].abs() == 1),
    ).unwrap();
    let m = draw_closed_curve(
        &m,
        &[cross_any(Family::Scaffold), cross_any(Family::Scaffold), cross(Family::Alpha, 0), cross(Family::Beta, 0)],
        EdgeLabel::new(Family::Gamma, 0),
        |mm| {
            mm.algebraic_intersections(Family::Alpha, Family::Gamma).is_ok_and(|x| x[(0, 0)].abs() == 1)
                && mm.algebraic_intersections(Family::Beta, Family::Gamma).is_ok_and(|x| x[(0, 0)].abs() == 1)
        },
    ).unwrap();
    let faces = m.faces();
    let m1 = mark_in_face(&m, faces[1][0], Sign::Plus).unwrap();
    let m2 = mark_in_face(&m1, faces[4][0], Sign::Minus).unwrap();
    let d = Diagram::new(m2, DiagramKind::DoublyPointed).unwrap();
    let rel = puncture(&d).unwrap();
    // manually do the a/b arc steps
    let arc = trisect::gluing::complete_arcs_debug(&rel).unwrap();
    println!("after a,b,c copies: gamma crossings of arcc: {:?}",
        arc.geometric_intersections(Family::ArcC, Family::Gamma));
    let dd = Diagram::new(arc.clone(), DiagramKind::Relative);
    println!("wrap as relative: {:?}", dd.as_ref().err());
    let cors = enumerate_corridors(&arc, (Family::ArcC, 0), (Family::Beta, 0), 4, 24).unwrap();
    println!("{} corridors", cors.len());
    let _ = arc_slide;
    for (i, c) in cors.iter().enumerate().take(24) {
        match trisect::gluing::arc_slide_raw(&arc, Family::ArcC, 0, Family::Beta, 0, c) {
            Ok(out) => {
                let g = out.geometric_intersections(Family::ArcC, Family::Gamma);
                println!("corridor {i}: ok, gamma-crossings now {:?}", g);
            }
            Err(e) => println!("corridor {i}: {e}"),
        }
    }
    match trisect::gluing::disjoin_arc_by_slides(&arc, (Family::ArcC, 0), Family::Beta, Family::Gamma, 20000) {
        Ok(_) => println!("disjoin OK"),
        Err(e) => println!("disjoin failed: {e}"),
    }
    // dissect corridor 0
    let c = &cors[0];
    println!("corridor 0: start={} crossings={:?} end={}", c.start, c.crossings, c.end);
    let (walk, closed) = arc.walk_component(Family::ArcC, 0).unwrap();
    println!("arcC walk: {walk:?} closed={closed}");
    let first = walk[0];
    let last = arc.alpha(*walk.last().unwrap());
    use trisect::cellmap::ParallelSide;
    for sm in [ParallelSide::Left, ParallelSide::Right] {
        for st in [ParallelSide::Left, ParallelSide::Right] {
            for sc in [arc.sigma_inv(first), first] {
                for ec in [arc.sigma_inv(last), last] {
                    match trisect::gluing::band_route_raw(&arc, Family::ArcC, 0, 0, c, Some((sc, ec)), sm, st, true) {
                        Ok(route) => {
                            // step-by-step draw
                            let mut w = arc.to_work();
                            let temp = EdgeLabel::new(Family::ArcC, 7);
                            let mut cur = sc;
                            let mut fail = None;
                            for (k, &cr) in route.crossings.iter().enumerate() {
                                if !w.alive(cr) { fail = Some((k, "dead".to_string())); break; }
                                let (p, q) = w.subdivide(cr);
                                if let Err(e) = w.chord_checked(cur, p, temp) { fail = Some((k, e.to_string())); break; }
                                cur = q;
                            }
                            if fail.is_none() {
                                if let Err(e) = w.chord_checked(cur, ec, temp) { fail = Some((route.crossings.len(), e.to_string())); }
                            }
                            match fail {
                                None => println!("({sm:?},{st:?},{sc},{ec}): ALL OK crossings {:?}", route.crossings),
                                Some((k, e)) => println!("({sm:?},{st:?},{sc},{ec}): step {k}/{} fail: {e} [route {:?}]", route.crossings.len(), route.crossings),
                            }
                        }
                        Err(e) => println!("({sm:?},{st:?},{sc},{ec}): route failed: {e}"),
                    }
                }
            }
        }
    }
}
