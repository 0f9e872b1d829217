use trisect::builder::{closed_surface, cross, cross_any, mark_in_face, solve_closed_routes, draw_closed_curve};
use trisect::cellmap::{EdgeLabel, Family, Sign};
use trisect::diagram::{Diagram, DiagramKind};

fn main() {
    for (wb, wg) in [(0usize, 0usize), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2), (0, 3), (0, 4)] {
        let base = closed_surface(1);
        let base = mark_in_face(&base, 0, Sign::Plus).unwrap();
        let base = mark_in_face(&base, 0, Sign::Minus).unwrap();
        let Ok(m) = draw_closed_curve(&base, &[cross_any(Family::Scaffold)], EdgeLabel::new(Family::Alpha, 0), |_| true) else { continue };
        let mut seq_b = vec![cross_any(Family::Scaffold), cross(Family::Alpha, 0)];
        for _ in 0..wb { seq_b.push(cross_any(Family::Scaffold)); }
        let Ok(m) = draw_closed_curve(&m, &seq_b, EdgeLabel::new(Family::Beta, 0), |mm| {
            mm.algebraic_intersections(Family::Alpha, Family::Beta).is_ok_and(|x| x[(0, 0)].abs() == 1)
        }) else { println!("({wb},{wg}): no beta"); continue };
        let mut seq_g = vec![cross_any(Family::Scaffold), cross_any(Family::Scaffold), cross(Family::Alpha, 0), cross(Family::Beta, 0)];
        for _ in 0..wg { seq_g.push(cross_any(Family::Scaffold)); }
        let cands = solve_closed_routes(&m, &seq_g, EdgeLabel::new(Family::Gamma, 0), 64, |mm| {
            mm.algebraic_intersections(Family::Alpha, Family::Gamma).is_ok_and(|x| x[(0, 0)].abs() == 1)
                && mm.algebraic_intersections(Family::Beta, Family::Gamma).is_ok_and(|x| x[(0, 0)].abs() == 1)
        });
        let mut powers = std::collections::BTreeMap::<String, usize>::new();
        for cand in &cands {
            let Ok(d) = Diagram::new(cand.clone(), DiagramKind::DoublyPointed) else { *powers.entry("invalid".into()).or_default() += 1; continue };
            if d.infer_type().map(|t| t.k) != Ok([0, 0, 0]) { *powers.entry("wrong-k".into()).or_default() += 1; continue }
            let Ok(ext) = trisect::pieces::exterior(&d) else { *powers.entry("ext-fail".into()).or_default() += 1; continue };
            match trisect::gluing::annular_monodromy(&ext, 20_000) {
                Ok(data) => *powers.entry(format!("p{}", data.power)).or_default() += 1,
                Err(e) => *powers.entry(format!("mono: {e}")).or_default() += 1,
            }
        }
        println!("({wb},{wg}): {} candidates: {powers:?}", cands.len());
    }
}
