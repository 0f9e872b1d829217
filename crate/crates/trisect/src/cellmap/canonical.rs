//! Canonical forms, deterministic renumbering, and isomorphism checking.
//!
//! Two maps are isomorphic when some dart bijection commutes with both
//! permutations, preserves families and marked signs, and maps components
//! onto components (indices may permute within a family). The canonical
//! encoding of a rooted traversal uses first-visit component numbering, so
//! minimizing over roots yields a form that is invariant under exactly
//! those relabelings.

use super::{CellMap, Dart, Family, Sign};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Code(Vec<u32>);

impl CellMap {
    /// BFS order of all darts from a root, following sigma then alpha.
    fn traversal(&self, root: Dart, darts: &[Dart]) -> Vec<Dart> {
        let mut index: BTreeMap<Dart, u32> = BTreeMap::new();
        let mut order = Vec::with_capacity(darts.len());
        let mut queue = std::collections::VecDeque::new();
        index.insert(root, 0);
        order.push(root);
        queue.push_back(root);
        while let Some(d) = queue.pop_front() {
            for nxt in [self.sigma(d), self.alpha(d)] {
                if !index.contains_key(&nxt) {
                    index.insert(nxt, order.len() as u32);
                    order.push(nxt);
                    queue.push_back(nxt);
                }
            }
        }
        debug_assert_eq!(order.len(), darts.len());
        order
    }

    fn encode_from(&self, root: Dart, darts: &[Dart]) -> (Code, Vec<Dart>) {
        let order = self.traversal(root, darts);
        let mut index: BTreeMap<Dart, u32> = BTreeMap::new();
        for (i, &d) in order.iter().enumerate() {
            index.insert(d, i as u32);
        }
        // first-visit numbering of (family, component) pairs, per family
        let mut comp_index: BTreeMap<(Family, u32), u32> = BTreeMap::new();
        let mut next_in_family: BTreeMap<Family, u32> = BTreeMap::new();
        let mut code = Vec::with_capacity(order.len() * 4);
        for &d in &order {
            let l = self.label(d);
            let canon_comp = *comp_index.entry((l.family, l.component)).or_insert_with(|| {
                let c = next_in_family.entry(l.family).or_insert(0);
                let v = *c;
                *c += 1;
                v
            });
            let mark = match self.marked_sign_at(d) {
                None => 0u32,
                Some(Sign::Plus) => 1,
                Some(Sign::Minus) => 2,
            };
            code.push(index[&self.sigma(d)]);
            code.push(index[&self.alpha(d)]);
            code.push((l.family.rank() as u32) << 8 | mark);
            code.push(canon_comp);
        }
        (Code(code), order)
    }

    /// Canonical encoding and the dart order realizing it.
    fn canonical_component(&self, darts: &[Dart]) -> (Code, Vec<Dart>) {
        let mut best: Option<(Code, Vec<Dart>)> = None;
        for &root in darts {
            let cand = self.encode_from(root, darts);
            if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                best = Some(cand);
            }
        }
        best.expect("empty component")
    }

    /// Canonical encoding of the whole map (components sorted by encoding).
    pub fn canonical_encoding(&self) -> Vec<u32> {
        let comps = self.connected_components();
        let mut encoded: Vec<(Code, Vec<Dart>)> =
            comps.iter().map(|c| self.canonical_component(c)).collect();
        encoded.sort();
        let mut out = Vec::new();
        for (Code(c), _) in encoded {
            out.push(u32::MAX); // component separator
            out.extend(c);
        }
        out
    }

    /// Canonical dart order for renumbering.
    fn canonical_order(&self) -> Vec<Dart> {
        let comps = self.connected_components();
        let mut encoded: Vec<(Code, Vec<Dart>)> =
            comps.iter().map(|c| self.canonical_component(c)).collect();
        encoded.sort();
        encoded.into_iter().flat_map(|(_, order)| order).collect()
    }

    /// Deterministically renumber darts (and component indices) into
    /// canonical order.
    pub fn renumbered(&self) -> CellMap {
        let order = self.canonical_order();
        let mut remap = vec![0 as Dart; self.dart_count()];
        for (new, &old) in order.iter().enumerate() {
            remap[old as usize] = new as Dart;
        }
        let n = self.dart_count();
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        let mut label = vec![super::EdgeLabel::new(Family::Scaffold, 0); n];
        // canonical component indices: first-visit order in the new numbering
        let mut comp_index: BTreeMap<(Family, u32), u32> = BTreeMap::new();
        let mut next_in_family: BTreeMap<Family, u32> = BTreeMap::new();
        for &old in &order {
            let l = self.label(old);
            comp_index.entry((l.family, l.component)).or_insert_with(|| {
                let c = next_in_family.entry(l.family).or_insert(0);
                let v = *c;
                *c += 1;
                v
            });
        }
        for &old in &order {
            let new = remap[old as usize] as usize;
            alpha[new] = remap[self.alpha(old) as usize];
            sigma[new] = remap[self.sigma(old) as usize];
            let l = self.label(old);
            label[new] = super::EdgeLabel::new(l.family, comp_index[&(l.family, l.component)]);
        }
        let m0 = CellMap { alpha, sigma, label, marked: Vec::new(), multi_ok: self.multi_ok };
        let mut marked: Vec<(Dart, Sign)> = self
            .marked
            .iter()
            .map(|&(d, s)| (m0.vertex_id(remap[d as usize]), s))
            .collect();
        marked.sort_unstable();
        CellMap { marked, ..m0 }
    }

    /// Label-preserving combinatorial isomorphism, as a dart relabeling from
    /// `self` to `other`, if one exists.
    pub fn iso_check(&self, other: &CellMap) -> Option<Vec<Dart>> {
        if self.dart_count() != other.dart_count() {
            return None;
        }
        if self.canonical_encoding() != other.canonical_encoding() {
            return None;
        }
        let a = self.canonical_order();
        let b = other.canonical_order();
        let mut relabel = vec![0 as Dart; self.dart_count()];
        for (i, &d) in a.iter().enumerate() {
            relabel[d as usize] = b[i];
        }
        Some(relabel)
    }

    pub fn is_isomorphic(&self, other: &CellMap) -> bool {
        self.iso_check(other).is_some()
    }
}
