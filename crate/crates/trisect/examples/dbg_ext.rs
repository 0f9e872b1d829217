use trisect::cellmap::{Family, Sign};
use trisect::builder::mark_in_face;
use trisect::diagram::{Diagram, DiagramKind};
use trisect::gluing::{complete_arcs, puncture};

fn main() {
    let (a, c) = (1i8, 2i8);
    let budget: usize = std::env::var("B").ok().and_then(|x| x.parse().ok()).unwrap_or(20_000);
    let m = trisect::pieces::projective_plane_curves_dbg(a, c).unwrap();
    let faces = m.faces();
    let mut reasons = std::collections::BTreeMap::<String, usize>::new();
    for (i, f1) in faces.iter().enumerate() {
        for f2 in faces.iter().skip(i) {
            let Ok(m1) = mark_in_face(&m, f1[0], Sign::Plus) else { continue };
            let Ok(m2) = mark_in_face(&m1, f2[0], Sign::Minus) else { continue };
            let Ok(d) = Diagram::new(m2, DiagramKind::DoublyPointed) else { continue };
            let rel = match puncture(&d) { Ok(r) => r, Err(e) => { *reasons.entry(format!("punct {e}")).or_default() += 1; continue } };
            match complete_arcs(&rel, budget) {
                Ok(arcd) => {
                    match trisect::gluing::annular_monodromy(&arcd, budget) {
                        Ok(data) => *reasons.entry(format!("p{}", data.power)).or_default() += 1,
                        Err(e) => *reasons.entry(format!("mono {e} (i={i})")).or_default() += 1,
                    }
                }
                Err(e) => *reasons.entry(format!("{e}")).or_default() += 1,
            }
        }
    }
    println!("{reasons:#?}");
}
