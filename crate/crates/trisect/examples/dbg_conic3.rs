use trisect::cellmap::{Family, Sign};
use trisect::builder::mark_in_face;
use trisect::diagram::{Diagram, DiagramKind};

fn main() {
    for (a, c) in [(1i8, 2i8)] {
        match trisect::pieces::projective_plane_curves_dbg(a, c) {
            Ok(m) => {
                let faces = m.faces();
                let mut powers = std::collections::BTreeMap::<String, usize>::new();
                for (i, f1) in faces.iter().enumerate() {
                    for f2 in faces.iter().skip(i) {
                        let Ok(m1) = mark_in_face(&m, f1[0], Sign::Plus) else { continue };
                        let Ok(m2) = mark_in_face(&m1, f2[0], Sign::Minus) else { continue };
                        let Ok(d) = Diagram::new(m2, DiagramKind::DoublyPointed) else { continue };
                        if d.infer_type().map(|t| t.k) != Ok([0,0,0]) { *powers.entry("k".into()).or_default() += 1; continue; }
                        let Ok(ext) = trisect::pieces::exterior(&d) else { *powers.entry("ext".into()).or_default() += 1; continue };
                        match trisect::gluing::annular_monodromy(&ext, 20_000) {
                            Ok(data) => *powers.entry(format!("p{}", data.power)).or_default() += 1,
                            Err(e) => *powers.entry(format!("err {e}")).or_default() += 1,
                        }
                    }
                }
                println!("(a={a},c={c}) faces={}: {powers:?}", faces.len());
            }
            Err(e) => println!("(a={a},c={c}): curves failed: {e}"),
        }
    }
}
