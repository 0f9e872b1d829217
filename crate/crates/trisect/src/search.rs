//! Bounded best-first simplification and script replay.
//!
//! States are diagrams after canonical renumbering; the frontier is ordered
//! by (genus, crossing count, component count) and then by insertion order,
//! so identical inputs and budgets expand identically. Children are created
//! through the public move application, which guarantees that every emitted
//! script replays to its final diagram.

use crate::cellmap::Family;
use crate::diagram::{Diagram, ValidationLevel};
use crate::error::Result;
use crate::gluing::enumerate_corridors;
use crate::moves::{apply, find_destabilizations, MoveRecord, MoveScript};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

/// Search budget knobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: usize,
    /// Allowed temporary stabilizations (off by default).
    pub max_genus_increase: usize,
    /// Corridor crossing cap for slide enumeration.
    pub max_corridor_crossings: usize,
    /// Corridors kept per component pair.
    pub max_corridors: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000,
            max_genus_increase: 0,
            max_corridor_crossings: 2,
            max_corridors: 64,
        }
    }
}

impl SearchBudget {
    pub fn with_nodes(max_nodes: usize) -> Self {
        SearchBudget { max_nodes, ..Default::default() }
    }
}

/// Outcome of a simplification search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub final_diagram: Diagram,
    pub script: MoveScript,
    pub nodes_expanded: usize,
    /// True when the search reached a genus-zero diagram.
    pub succeeded: bool,
}

fn cost_of(d: &Diagram) -> (usize, usize, usize) {
    let genus = d.map.genus_boundary().map(|(g, _)| g).unwrap_or(usize::MAX);
    let crossings = d
        .map
        .vertices()
        .into_iter()
        .filter(|v| {
            v.len() == 4
                && v.iter()
                    .filter(|&&x| d.map.label(x).family.is_curve())
                    .count()
                    == 4
        })
        .count();
    let comps: usize = Family::CURVES
        .into_iter()
        .map(|f| d.map.component_count(f))
        .sum();
    (genus, crossings, comps)
}

/// Candidate moves from a state, in deterministic order.
fn candidate_moves(d: &Diagram, budget: &SearchBudget) -> Vec<MoveRecord> {
    let mut out = Vec::new();
    if let Ok(certs) = find_destabilizations(d) {
        for cert in certs {
            out.push(MoveRecord::Destabilize { cert });
        }
    }
    for (fa, fb) in [
        (Family::Alpha, Family::Beta),
        (Family::Beta, Family::Gamma),
        (Family::Gamma, Family::Alpha),
    ] {
        if d.map.find_bigon(fa, fb).is_some() {
            out.push(MoveRecord::RemoveBigons { fam_a: fa, fam_b: fb });
        }
    }
    for family in Family::CURVES {
        let comps = d.map.components(family);
        for &moving in &comps {
            for &over in &comps {
                if moving == over {
                    continue;
                }
                let corridors = enumerate_corridors(
                    &d.map,
                    (family, moving),
                    (family, over),
                    budget.max_corridor_crossings,
                    budget.max_corridors,
                )
                .unwrap_or_default();
                for corridor in corridors {
                    out.push(MoveRecord::HandleSlide { family, moving, over, corridor });
                }
            }
        }
    }
    out
}

/// Best-first simplification toward low (genus, crossings, components).
pub fn simplify(d: &Diagram, budget: &SearchBudget) -> Result<SearchResult> {
    let start = apply_identity(d)?;
    let c0 = cost_of(&start);
    let max_genus = c0.0 + budget.max_genus_increase;
    let mut heap: BinaryHeap<Reverse<((usize, usize, usize), usize)>> = BinaryHeap::new();
    let mut states: Vec<(Diagram, MoveScript)> = vec![(start.clone(), MoveScript::new())];
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(start.map.canonical_encoding());
    heap.push(Reverse((c0, 0)));
    let mut best: usize = 0;
    let mut best_cost = c0;
    let mut expanded = 0usize;
    while let Some(Reverse((cost, idx))) = heap.pop() {
        if cost < best_cost {
            best_cost = cost;
            best = idx;
        }
        if best_cost.0 == 0 {
            break;
        }
        if expanded >= budget.max_nodes {
            break;
        }
        expanded += 1;
        let (state, script) = states[idx].clone();
        for mv in candidate_moves(&state, budget) {
            let Ok(next) = apply(&state, &mv) else { continue };
            let nc = cost_of(&next);
            if nc.0 > max_genus {
                continue;
            }
            let key = next.map.canonical_encoding();
            if !seen.insert(key) {
                continue;
            }
            let mut ns = script.clone();
            ns.moves.push(mv);
            let nidx = states.len();
            states.push((next, ns));
            heap.push(Reverse((nc, nidx)));
        }
    }
    let (final_diagram, script) = states[best].clone();
    let succeeded = best_cost.0 == 0;
    Ok(SearchResult { final_diagram, script, nodes_expanded: expanded, succeeded })
}

/// Identity application: canonical renumbering via the move pipeline.
fn apply_identity(d: &Diagram) -> Result<Diagram> {
    Diagram::new(d.map.normalize_scaffold()?.renumbered(), d.kind)
}

/// Replay a script (same contract as moves::replay).
pub fn replay(d: &Diagram, script: &MoveScript) -> Result<Diagram> {
    crate::moves::replay(d, script)
}

/// Bounded search for a script taking d1 to a diagram isomorphic to d2.
pub fn equivalent_bounded(
    d1: &Diagram,
    d2: &Diagram,
    budget: &SearchBudget,
) -> Result<Option<MoveScript>> {
    let start = apply_identity(d1)?;
    let goal = apply_identity(d2)?;
    let goal_key = goal.map.canonical_encoding();
    if start.map.canonical_encoding() == goal_key {
        return Ok(Some(MoveScript::new()));
    }
    let goal_cost = cost_of(&goal);
    let h = |c: (usize, usize, usize)| -> (usize, usize, usize) {
        (
            c.0.abs_diff(goal_cost.0),
            c.1.abs_diff(goal_cost.1),
            c.2.abs_diff(goal_cost.2),
        )
    };
    let c0 = cost_of(&start);
    let mut heap: BinaryHeap<Reverse<((usize, usize, usize), usize)>> = BinaryHeap::new();
    let mut states: Vec<(Diagram, MoveScript)> = vec![(start.clone(), MoveScript::new())];
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(start.map.canonical_encoding());
    heap.push(Reverse((h(c0), 0)));
    let mut expanded = 0usize;
    while let Some(Reverse((_, idx))) = heap.pop() {
        if expanded >= budget.max_nodes {
            break;
        }
        expanded += 1;
        let (state, script) = states[idx].clone();
        for mv in candidate_moves(&state, budget) {
            let Ok(next) = apply(&state, &mv) else { continue };
            let key = next.map.canonical_encoding();
            let mut ns = script.clone();
            ns.moves.push(mv);
            if key == goal_key {
                return Ok(Some(ns));
            }
            if !seen.insert(key) {
                continue;
            }
            let nc = cost_of(&next);
            let nidx = states.len();
            states.push((next, ns));
            heap.push(Reverse((h(nc), nidx)));
        }
    }
    Ok(None)
}

/// Certified pairwise validation: search for scripts taking each pair
/// subdiagram to the matching trivial model.
pub fn certify_pairwise(d: &Diagram, budget: &SearchBudget) -> Result<Option<ValidationLevel>> {
    let report = d.validate_pairwise()?;
    if report.level != ValidationLevel::NecessaryChecked {
        return Ok(None);
    }
    let t = d.infer_type()?;
    for (i, &(fa, fb)) in crate::diagram::PAIRS.iter().enumerate() {
        let sub = pair_subdiagram(d, fa, fb)?;
        let model = crate::diagram::trivial_model(t.g, t.k[i], t.p, t.b)?;
        let model_pair = pair_subdiagram(&model, Family::Alpha, Family::Beta)?;
        if equivalent_bounded(&sub, &model_pair, budget)?.is_none() {
            return Ok(Some(ValidationLevel::NecessaryChecked));
        }
    }
    Ok(Some(ValidationLevel::Certified))
}

/// The diagram with only two families kept (renamed alpha, beta).
fn pair_subdiagram(d: &Diagram, fa: Family, fb: Family) -> Result<Diagram> {
    let mut w = d.map.to_work();
    for fam in Family::CURVES.into_iter().chain(Family::ARCS) {
        if fam == fa || fam == fb {
            continue;
        }
        for c in d.map.components(fam) {
            let fresh = w.fresh_component(Family::Scaffold);
            for dd in d.map.darts() {
                if d.map.label(dd) == crate::cellmap::EdgeLabel::new(fam, c) {
                    w.set_label(dd, crate::cellmap::EdgeLabel::new(Family::Scaffold, fresh));
                }
            }
        }
    }
    // rename to a standard pair
    for dd in d.map.darts() {
        let l = d.map.label(dd);
        if l.family == fa {
            w.set_label(dd, crate::cellmap::EdgeLabel::new(Family::Alpha, l.component));
        } else if l.family == fb {
            w.set_label(dd, crate::cellmap::EdgeLabel::new(Family::Beta, l.component));
        }
    }
    let m = w.finish()?.normalize_scaffold()?.renumbered();
    Diagram::new(m, d.kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramKind;
    use crate::moves::{figure4, stabilize};

    #[test]
    fn simplify_figure4_to_sphere() {
        let d = Diagram::new(figure4(2).unwrap(), DiagramKind::Closed).unwrap();
        let res = simplify(&d, &SearchBudget::with_nodes(1000)).unwrap();
        assert!(res.succeeded);
        assert_eq!(res.final_diagram.infer_type().unwrap().g, 0);
        assert_eq!(res.script.destabilization_count(), 1);
        // the script replays to the final diagram
        let replayed = replay(&d, &res.script).unwrap();
        assert!(replayed.map.is_isomorphic(&res.final_diagram.map));
    }

    #[test]
    fn simplify_two_stabilizations() {
        let s4 = Diagram::new(crate::builder::sphere(), DiagramKind::Closed).unwrap();
        let d1 = stabilize(&s4, 1, 0).unwrap();
        let d2 = stabilize(&d1, 3, 0).unwrap();
        assert_eq!(d2.infer_type().unwrap().g, 2);
        let res = simplify(&d2, &SearchBudget::with_nodes(2000)).unwrap();
        assert!(res.succeeded, "cost {:?}", cost_of(&res.final_diagram));
        assert_eq!(res.script.destabilization_count(), 2);
    }

    #[test]
    fn equivalent_self_is_empty() {
        let d = Diagram::new(figure4(1).unwrap(), DiagramKind::Closed).unwrap();
        let s = equivalent_bounded(&d, &d, &SearchBudget::with_nodes(10)).unwrap();
        assert_eq!(s, Some(MoveScript::new()));
    }

    #[test]
    fn s3s1_does_not_simplify() {
        let d = crate::diagram::trivial_model(1, 1, 0, 0).unwrap();
        // make it a full triple: gamma parallel to beta
        let m = d
            .map
            .with_parallel_copy(
                Family::Beta,
                0,
                crate::cellmap::ParallelSide::Left,
                crate::cellmap::EdgeLabel::new(Family::Gamma, 0),
            )
            .unwrap();
        let d = Diagram::new(m, DiagramKind::Closed).unwrap();
        assert_eq!(d.infer_type().unwrap().k, [1, 1, 1]);
        let res = simplify(&d, &SearchBudget::with_nodes(300)).unwrap();
        assert!(!res.succeeded);
        assert_eq!(res.final_diagram.infer_type().unwrap().g, 1);
    }
}
