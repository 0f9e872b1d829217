use trisect::cellmap::{CellMap, Family, Sign};
use trisect::diagram::{Diagram, DiagramKind};
use trisect::gluing::{complete_arcs, puncture};

fn dump(m: &CellMap, title: &str) {
    println!("=== {title}: darts={}", m.dart_count());
    for d in m.darts() {
        println!("  {d}: a={} s={} {:?}", m.alpha(d), m.sigma(d), m.label(d));
    }
    println!("  faces: {:?}", m.faces());
}

fn main() {
    let m = CellMap::build(
        vec![1, 0, 3, 2],
        vec![3, 2, 1, 0],
        vec![trisect::cellmap::EdgeLabel::new(Family::Scaffold, 0); 4],
        vec![(0, Sign::Plus), (1, Sign::Minus)],
        false,
    ).unwrap();
    let d = Diagram::new(m, DiagramKind::DoublyPointed).unwrap();
    let rel = puncture(&d).unwrap();
    dump(&rel.map, "punctured");
    match complete_arcs(&rel, 10_000) {
        Ok(a) => dump(&a.map, "arced"),
        Err(e) => println!("complete_arcs failed: {e:?}"),
    }
}
