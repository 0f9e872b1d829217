use trisect::cellmap::{Family};
use trisect::pieces::{b3s1};

fn main() {
    let base = b3s1().unwrap();
    let (with_core, core) = trisect::pieces::with_core_circle_dbg(&base).unwrap();
    println!("core comp {core}; darts={}", with_core.dart_count());
    for d in with_core.darts() {
        println!("  {d}: a={} s={} {:?}", with_core.alpha(d), with_core.sigma(d), with_core.label(d));
    }
    let (cwalk, closed) = with_core.walk_component(Family::Scaffold, core).unwrap();
    println!("core walk {cwalk:?} closed={closed}");
    let (awalk, _) = with_core.walk_component(Family::ArcA, 0).unwrap();
    println!("arcA walk {awalk:?}");
    match trisect::moves::twist_component_map(&with_core, (Family::Scaffold, core), (Family::ArcA, 0), 1) {
        Ok(m) => {
            println!("twist ok: arcA x arcB = {:?}", m.geometric_intersections(Family::ArcA, Family::ArcB));
            println!("         arcA x arcC = {:?}", m.geometric_intersections(Family::ArcA, Family::ArcC));
        }
        Err(e) => println!("twist failed: {e}"),
    }
}
