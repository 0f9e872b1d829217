use trisect::builder::{closed_surface, cross, cross_any, draw_closed_curve, mark_in_face};
use trisect::cellmap::{EdgeLabel, Family, Sign};
use trisect::diagram::{Diagram, DiagramKind};
use trisect::gluing::{annular_monodromy, complete_arcs, puncture};

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
    println!("base torus diagram: darts={} faces={}", m.dart_count(), m.faces().len());
    let faces = m.faces();
    for (i, f1) in faces.iter().enumerate() {
        for (j, f2) in faces.iter().enumerate().skip(i) {
            let Ok(m1) = mark_in_face(&m, f1[0], Sign::Plus) else { println!("({i},{j}): mark1 fail"); continue };
            let Ok(m2) = mark_in_face(&m1, f2[0], Sign::Minus) else { println!("({i},{j}): mark2 fail"); continue };
            let Ok(d) = Diagram::new(m2, DiagramKind::DoublyPointed) else { println!("({i},{j}): diagram fail"); continue };
            let rel = match puncture(&d) { Ok(r) => r, Err(e) => { println!("({i},{j}): puncture {e}"); continue } };
            let arc = match complete_arcs(&rel, 20_000) { Ok(a) => a, Err(e) => { println!("({i},{j}): complete {e}"); continue } };
            match annular_monodromy(&arc, 20_000) {
                Ok(data) => println!("({i},{j}): power {}", data.power),
                Err(e) => println!("({i},{j}): monodromy {e}"),
            }
        }
    }
}
