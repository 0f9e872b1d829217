use trisect::builder::{closed_surface, cross, cross_any, draw_closed_curve, mark_in_face};
use trisect::cellmap::{EdgeLabel, Family, Sign};
use trisect::diagram::{Diagram, DiagramKind};
use trisect::gluing::{enumerate_corridors, puncture};

fn main() {
    let m = closed_surface(1);
    let m = draw_closed_curve(&m, &[cross_any(Family::Scaffold)], EdgeLabel::new(Family::Alpha, 0), |_| true).unwrap();
    let m = draw_closed_curve(&m, &[cross_any(Family::Scaffold), cross(Family::Alpha, 0)], EdgeLabel::new(Family::Beta, 0),
        |mm| mm.algebraic_intersections(Family::Alpha, Family::Beta).is_ok_and(|x| x[(0, 0)].abs() == 1)).unwrap();
    let m = draw_closed_curve(&m, &[cross_any(Family::Scaffold), cross_any(Family::Scaffold), cross(Family::Alpha, 0), cross(Family::Beta, 0)], EdgeLabel::new(Family::Gamma, 0),
        |mm| { mm.algebraic_intersections(Family::Alpha, Family::Gamma).is_ok_and(|x| x[(0, 0)].abs() == 1)
            && mm.algebraic_intersections(Family::Beta, Family::Gamma).is_ok_and(|x| x[(0, 0)].abs() == 1) }).unwrap();
    let faces = m.faces();
    let m1 = mark_in_face(&m, faces[1][0], Sign::Plus).unwrap();
    let m2 = mark_in_face(&m1, faces[4][0], Sign::Minus).unwrap();
    let d = Diagram::new(m2, DiagramKind::DoublyPointed).unwrap();
    let rel = puncture(&d).unwrap();
    let arc = trisect::gluing::complete_arcs_debug(&rel).unwrap();
    println!("start gamma-crossings: {:?}", arc.geometric_intersections(Family::ArcC, Family::Gamma));
    // manual search trace: one round of slides from the start state
    let cors = enumerate_corridors(&arc, (Family::ArcC, 0), (Family::Beta, 0), 4, 2000).unwrap();
    println!("{} corridor variants", cors.len());
    let mut costs = std::collections::BTreeMap::<u64, usize>::new();
    let mut fail_steps = std::collections::BTreeMap::<String, usize>::new();
    let (walk, _) = arc.walk_component(Family::ArcC, 0).unwrap();
    let first = walk[0];
    let last = arc.alpha(*walk.last().unwrap());
    let _ = (first, last);
    let mut per_variant = std::collections::BTreeMap::<String, Vec<u64>>::new();
    for c in &cors {
        if let Ok(next) = trisect::gluing::arc_slide_raw(&arc, Family::ArcC, 0, Family::Beta, 0, c) {
            let next = next.remove_bigons(Family::ArcC, Family::Gamma).unwrap();
            let g = next.geometric_intersections(Family::ArcC, Family::Gamma);
            per_variant.entry(format!("{:?}/{:?}/f{}/w{}", c.side_moving, c.side_target, c.return_flip, c.wrap_reverse)).or_default().push(g[0].iter().sum());
        }
    }
    println!("per-variant outcomes: {per_variant:#?}");
    for c in &cors {
        if let Ok(next) = trisect::gluing::arc_slide_raw(&arc, Family::ArcC, 0, Family::Beta, 0, c) {
            let next = next.remove_bigons(Family::ArcC, Family::Gamma).unwrap();
            let g = next.geometric_intersections(Family::ArcC, Family::Gamma);
            *costs.entry(g[0].iter().sum()).or_default() += 1;
        } else {
            // diagnose: step-draw with (sigma_inv(first), sigma_inv(last))
            match trisect::gluing::band_route_raw(&arc, Family::ArcC, 0, 0, c, Some((arc.sigma_inv(first), arc.sigma_inv(last)))) {
                Err(e) => { *fail_steps.entry(format!("route: {e}")).or_default() += 1; }
                Ok(route) => {
                    let mut w = arc.to_work();
                    let temp = EdgeLabel::new(Family::ArcC, 7);
                    let mut cur = arc.sigma_inv(first);
                    let mut verdict = "end-chord".to_string();
                    for (k, &cr) in route.crossings.iter().enumerate() {
                        if !w.alive(cr) { verdict = format!("step {k}/{} dead", route.crossings.len()); break; }
                        let (p, q) = w.subdivide(cr);
                        if w.chord_checked(cur, p, temp).is_err() { verdict = format!("step {k}/{}", route.crossings.len()); break; }
                        cur = q;
                    }
                    *fail_steps.entry(verdict).or_default() += 1;
                }
            }
        }
    }
    println!("slide outcome costs: {costs:?}");
    println!("failure step histogram: {fail_steps:?}");
    // find a path that drew forward and test its reversed-wrap sibling
    for c in &cors {
        if c.wrap_reverse { continue; }
        if trisect::gluing::arc_slide_raw(&arc, Family::ArcC, 0, Family::Beta, 0, c).is_ok() {
            let mut c2 = c.clone();
            c2.wrap_reverse = true;
            println!("forward-ok variant {:?}/{:?}/f{}; reversed sibling:", c.side_moving, c.side_target, c.return_flip);
            // low-level: route + draw to see the step error
            let (walk, _) = arc.walk_component(Family::ArcC, 0).unwrap();
            let first = walk[0];
            let last = arc.alpha(*walk.last().unwrap());
            for sc in [arc.sigma_inv(first), first] {
                for ec in [arc.sigma_inv(last), last] {
                    match trisect::gluing::band_route_raw(&arc, Family::ArcC, 0, 0, &c2, Some((sc, ec))) {
                        Ok(route) => {
                            let mut w = arc.to_work();
                            match w.draw(&route, EdgeLabel::new(Family::ArcC, 7)) {
                                Ok(_) => println!("  ends({sc},{ec}): draw OK"),
                                Err(e) => println!("  ends({sc},{ec}): {e} [route {:?}]", route.crossings),
                            }
                        }
                        Err(e) => println!("  ends({sc},{ec}): route {e}"),
                    }
                }
            }
            break;
        }
    }
    // inspect one cost-2 outcome in detail
    for c in &cors {
        if let Ok(next) = trisect::gluing::arc_slide_raw(&arc, Family::ArcC, 0, Family::Beta, 0, c) {
            let red = next.remove_bigons(Family::ArcC, Family::Gamma).unwrap();
            let g = red.geometric_intersections(Family::ArcC, Family::Gamma);
            let cost: u64 = g[0].iter().sum();
            if cost == 2 {
                println!("--- inspecting a cost-2 outcome (variant {:?}/{:?}/f{}/w{})", c.side_moving, c.side_target, c.return_flip, c.wrap_reverse);
                for orbit in red.diagram_faces() {
                    let labs: Vec<String> = orbit.iter().map(|&d| format!("{:?}:{}", red.label(d).family, red.label(d).component)).collect();
                    println!("  dface: {labs:?}");
                }
                break;
            }
        }
    }
}
