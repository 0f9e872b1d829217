use trisect::cellmap::{EdgeLabel, Family};
use trisect::diagram::trivial_model;
use trisect::moves::{band_sum_route, Corridor};

fn main() {
    let d = trivial_model(2, 1, 0, 0).unwrap();
    let (walk, _) = d.map.walk_component(Family::Beta, 0).unwrap();
    let end = d.map.darts().find(|&x| d.map.label(x) == EdgeLabel::new(Family::Beta, 1)).unwrap();
    for start in [walk[0], d.map.alpha(walk[0])] {
        for c in Corridor::variants(start, vec![], end) {
            match band_sum_route(&d.map, Family::Beta, 0, 1, &c, None) {
                Ok(route) => {
                    let mut w = d.map.to_work();
                    let temp = EdgeLabel::new(Family::Beta, 9);
                    let mut cur_ok = true;
                    // step draw
                    let mut cur = 0;
                    let mut fail = String::new();
                    if route.crossings.is_empty() { println!("empty route?"); continue; }
                    let s0 = route.crossings[0];
                    let (p0, q0) = w.subdivide(s0);
                    cur = q0;
                    for (k, &cr) in route.crossings.iter().enumerate().skip(1) {
                        if !w.alive(cr) { fail = format!("step {k}: dead {cr}"); cur_ok = false; break; }
                        let (p, q) = w.subdivide(cr);
                        if let Err(e) = w.chord_checked(cur, p, temp) { fail = format!("step {k}: {e}"); cur_ok = false; break; }
                        cur = q;
                    }
                    if cur_ok {
                        if let Err(e) = w.chord_checked(cur, p0, temp) { fail = format!("close: {e}"); cur_ok = false; }
                    }
                    println!("start={start} var=({:?},{:?},{}): route {:?} => {}", c.side_moving, c.side_target, c.return_flip, route.crossings, if cur_ok { "OK".to_string() } else { fail });
                }
                Err(e) => println!("start={start} var: route err {e}"),
            }
        }
    }
}
