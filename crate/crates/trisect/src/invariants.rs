//! Exact algebraic invariants of closed diagrams: Euler characteristic,
//! fundamental-group presentation with Tietze simplification, first
//! homology, and Betti numbers.
//!
//! The fundamental group of the closed 4-manifold of a trisection diagram
//! is the surface group modulo the normal closure of all curves of all
//! three families; its abelianization is the cokernel of the matrix of all
//! curve classes, which is also how homology_h1 is computed, so the two
//! routes cross-check each other.

use crate::cellmap::Family;
use crate::diagram::{Diagram, TrisectionType};
use crate::error::{Error, Result};
use crate::snf::{cokernel, smith_normal_form, AbelianGroupDecomp, IntMat};
use serde::{Deserialize, Serialize};

/// Group presentation: relators are words of signed 1-based generator
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationGroup {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl PresentationGroup {
    pub fn is_trivial_presentation(&self) -> bool {
        self.generators == 0
    }

    /// Abelianization as a finitely generated abelian group.
    pub fn abelianization(&self) -> AbelianGroupDecomp {
        let mut m = IntMat::zeros(self.generators, self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for &x in r {
                let i = (x.unsigned_abs() as usize) - 1;
                m[(i, j)] += if x > 0 { 1 } else { -1 };
            }
        }
        cokernel(&m)
    }
}

/// Euler characteristic of the closed 4-manifold: 2 + g - k1 - k2 - k3.
pub fn euler_char(t: &TrisectionType) -> i64 {
    2 + t.g as i64 - (t.k[0] + t.k[1] + t.k[2]) as i64
}

/// Fundamental-group presentation of the closed 4-manifold: spanning-tree
/// loop generators, face relators, and one relator per curve of each family.
pub fn pi1_presentation(d: &Diagram) -> Result<PresentationGroup> {
    let map = &d.map;
    if map.boundary_count() != 0 {
        return Err(Error::InvalidOperand(
            "group presentations are computed for closed diagrams only".into(),
        ));
    }
    let h = map.homology()?;
    let mut relators: Vec<Vec<i32>> = Vec::new();
    for face in map.faces() {
        relators.push(h.walk_word(map, &face));
    }
    for fam in Family::CURVES {
        for c in map.components(fam) {
            let (walk, closed) = map.walk_component(fam, c)?;
            if !closed {
                return Err(Error::ComponentIsArc);
            }
            relators.push(h.walk_word(map, &walk));
        }
    }
    Ok(PresentationGroup { generators: h.generator_count(), relators })
}

/// Greedy deterministic Tietze simplification: free and cyclic reduction,
/// duplicate removal, single-occurrence generator elimination, and
/// longest-match relator substitution, within a node budget.
pub fn tietze_simplify(p: &PresentationGroup, budget: usize) -> PresentationGroup {
    let mut gens = p.generators;
    let mut rels: Vec<Vec<i32>> = p.relators.clone();
    let mut steps = 0usize;
    loop {
        if steps >= budget {
            break;
        }
        steps += 1;
        normalize_relators(&mut rels);
        if eliminate_generator(&mut gens, &mut rels) {
            continue;
        }
        if substitute_relator(&mut rels) {
            continue;
        }
        break;
    }
    normalize_relators(&mut rels);
    PresentationGroup { generators: gens, relators: rels }
}

fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclic_reduce(mut w: Vec<i32>) -> Vec<i32> {
    loop {
        w = free_reduce(&w);
        if w.len() >= 2 && w.first() == w.last().map(|&x| -x).as_ref() {
            w = w[1..w.len() - 1].to_vec();
        } else {
            return w;
        }
    }
}

/// Canonical form of a cyclic word up to rotation and inversion.
fn cyclic_canon(w: &[i32]) -> Vec<i32> {
    if w.is_empty() {
        return Vec::new();
    }
    let inv: Vec<i32> = w.iter().rev().map(|&x| -x).collect();
    let mut best: Option<Vec<i32>> = None;
    for cand in [w.to_vec(), inv] {
        for r in 0..cand.len() {
            let rot: Vec<i32> = cand[r..].iter().chain(cand[..r].iter()).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

fn normalize_relators(rels: &mut Vec<Vec<i32>>) {
    for r in rels.iter_mut() {
        *r = cyclic_reduce(std::mem::take(r));
    }
    rels.retain(|r| !r.is_empty());
    let mut seen = std::collections::BTreeSet::new();
    rels.retain(|r| seen.insert(cyclic_canon(r)));
    rels.sort_by_key(|r| (r.len(), cyclic_canon(r)));
}

/// Remove a generator occurring exactly once in some relator by solving the
/// relator for it and substituting everywhere.
fn eliminate_generator(gens: &mut usize, rels: &mut Vec<Vec<i32>>) -> bool {
    for (ri, r) in rels.iter().enumerate() {
        for g in 1..=(*gens as i32) {
            let occurrences = r.iter().filter(|&&x| x.abs() == g).count();
            if occurrences != 1 {
                continue;
            }
            // rotate so the +-g occurrence is first, then g = inverse(rest)
            let pos = r.iter().position(|&x| x.abs() == g).unwrap();
            let rot: Vec<i32> = r[pos..].iter().chain(r[..pos].iter()).copied().collect();
            let mut replacement: Vec<i32> = rot[1..].iter().rev().map(|&x| -x).collect();
            if rot[0] < 0 {
                replacement = replacement.iter().rev().map(|&x| -x).collect();
            }
            let target = g;
            let mut new_rels = Vec::with_capacity(rels.len() - 1);
            for (rj, s) in rels.iter().enumerate() {
                if rj == ri {
                    continue;
                }
                let mut out: Vec<i32> = Vec::with_capacity(s.len());
                for &x in s {
                    if x == target {
                        out.extend(replacement.iter().copied());
                    } else if x == -target {
                        out.extend(replacement.iter().rev().map(|&y| -y));
                    } else {
                        out.push(x);
                    }
                }
                new_rels.push(out);
            }
            // renumber generators above g down by one
            let renumber = |w: &mut Vec<i32>| {
                for x in w.iter_mut() {
                    let a = x.abs();
                    if a > target {
                        *x = if *x > 0 { a - 1 } else { -(a - 1) };
                    }
                }
            };
            for w in new_rels.iter_mut() {
                renumber(w);
            }
            *gens -= 1;
            *rels = new_rels;
            return true;
        }
    }
    false
}

/// Replace in some relator a subword matching more than half of another
/// relator (or its inverse), shortening it.
fn substitute_relator(rels: &mut [Vec<i32>]) -> bool {
    let snapshot = rels.to_vec();
    for (ri, r) in snapshot.iter().enumerate() {
        if r.is_empty() {
            continue;
        }
        // both r and its inverse, all rotations
        let mut patterns: Vec<Vec<i32>> = Vec::new();
        let inv: Vec<i32> = r.iter().rev().map(|&x| -x).collect();
        for base in [r.clone(), inv] {
            for rot in 0..base.len() {
                patterns.push(
                    base[rot..].iter().chain(base[..rot].iter()).copied().collect(),
                );
            }
        }
        let half = r.len() / 2;
        for (si, s) in snapshot.iter().enumerate() {
            if si == ri || s.len() < half + 1 {
                continue;
            }
            for pat in &patterns {
                // longest prefix of pat appearing in s, longer than half
                let max_len = pat.len().min(s.len());
                for take in (half + 1..=max_len).rev() {
                    let prefix = &pat[..take];
                    if let Some(pos) = find_subword(s, prefix) {
                        // replace prefix by inverse of the remainder
                        let remainder = &pat[take..];
                        let repl: Vec<i32> =
                            remainder.iter().rev().map(|&x| -x).collect();
                        if repl.len() >= take {
                            continue;
                        }
                        let mut out = Vec::with_capacity(s.len() - take + repl.len());
                        out.extend_from_slice(&s[..pos]);
                        out.extend(repl.iter().copied());
                        out.extend_from_slice(&s[pos + take..]);
                        rels[si] = free_reduce(&out);
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn find_subword(hay: &[i32], needle: &[i32]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

/// First homology of the closed 4-manifold: cokernel of the matrix of all
/// curve classes of all three families.
pub fn homology_h1(d: &Diagram) -> Result<AbelianGroupDecomp> {
    let map = d.map.cap_all_boundaries()?;
    let h = map.homology()?;
    let g2 = 2 * h.genus;
    let mut cols: Vec<Vec<i128>> = Vec::new();
    for fam in Family::CURVES {
        for c in map.components(fam) {
            cols.push(map.curve_class(&h, fam, c)?);
        }
    }
    let mut m = IntMat::zeros(g2, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for i in 0..g2 {
            m[(i, j)] = col[i];
        }
    }
    Ok(cokernel(&m))
}

/// Betti numbers of the closed orientable 4-manifold.
pub fn betti_numbers(d: &Diagram) -> Result<[i64; 5]> {
    let t = d.infer_type()?;
    let chi = euler_char(&t);
    let h1 = homology_h1(d)?;
    let b1 = h1.free_rank as i64;
    let b2 = chi - 2 + 2 * b1;
    Ok([1, b1, b2, b1, 1])
}

/// Necessary condition for a pair of cut systems to present a connected sum
/// of copies of S2 x S1: the Smith form of the class matrix has all nonzero
/// invariant factors equal to one, and the k value is read from the nullity.
pub fn heegaard_pair_check(d: &Diagram, pair: (Family, Family)) -> Result<Option<usize>> {
    let map = d.map.cap_all_boundaries()?;
    let h = map.homology()?;
    let g2 = 2 * h.genus;
    let mut cols: Vec<Vec<i128>> = Vec::new();
    for fam in [pair.0, pair.1] {
        for c in map.components(fam) {
            cols.push(map.curve_class(&h, fam, c)?);
        }
    }
    let mut m = IntMat::zeros(g2, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for i in 0..g2 {
            m[(i, j)] = col[i];
        }
    }
    let s = smith_normal_form(&m);
    if s.invariant_factors().iter().any(|&f| f != 1) {
        return Ok(None);
    }
    let t = d.infer_type()?;
    let free = g2 - s.rank();
    // free rank is k + 2p for relative diagrams
    if free < 2 * t.p {
        return Ok(None);
    }
    Ok(Some(free - 2 * t.p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{trivial_model, Diagram, DiagramKind};

    #[test]
    fn euler_char_values() {
        assert_eq!(euler_char(&TrisectionType::closed(0, 0, 0, 0)), 2);
        assert_eq!(euler_char(&TrisectionType::closed(1, 1, 1, 1)), 0);
        assert_eq!(euler_char(&TrisectionType::closed(2, 0, 0, 0)), 4);
    }

    #[test]
    fn tietze_basics() {
        // <x | x> is trivial
        let p = PresentationGroup { generators: 1, relators: vec![vec![1]] };
        let q = tietze_simplify(&p, 1000);
        assert_eq!(q.generators, 0);
        assert!(q.relators.is_empty());
        // <x,y | [x,y]> abelianizes to Z^2 and stays rank 2
        let p = PresentationGroup { generators: 2, relators: vec![vec![1, 2, -1, -2]] };
        let q = tietze_simplify(&p, 1000);
        assert_eq!(q.abelianization(), AbelianGroupDecomp::free(2));
        assert_eq!(p.abelianization(), q.abelianization());
    }

    #[test]
    fn sphere_diagram_trivial_group() {
        let d = Diagram::new(crate::builder::sphere(), DiagramKind::Closed).unwrap();
        let p = pi1_presentation(&d).unwrap();
        let q = tietze_simplify(&p, 10_000);
        assert_eq!(q.generators, 0);
        assert!(homology_h1(&d).unwrap().is_trivial());
        assert_eq!(betti_numbers(&d).unwrap(), [1, 0, 0, 0, 1]);
    }

    #[test]
    fn trivial_pair_model_group() {
        // alpha, beta pair of the trivial (1,1): one surviving generator (Z)
        let d = trivial_model(1, 1, 0, 0).unwrap();
        let p = pi1_presentation(&d).unwrap();
        let q = tietze_simplify(&p, 10_000);
        let ab = q.abelianization();
        assert_eq!(ab, AbelianGroupDecomp::free(1));
        assert_eq!(ab, homology_h1(&d).unwrap());
    }

    #[test]
    fn pair_check_values() {
        let d = trivial_model(2, 1, 0, 0).unwrap();
        let k = heegaard_pair_check(&d, (Family::Alpha, Family::Beta)).unwrap();
        assert_eq!(k, Some(1));
    }

    #[test]
    fn abelianization_matches_h1_on_models() {
        for (g, k) in [(1, 0), (1, 1), (2, 1)] {
            let d = trivial_model(g, k, 0, 0).unwrap();
            let p = pi1_presentation(&d).unwrap();
            assert_eq!(p.abelianization(), homology_h1(&d).unwrap(), "({g},{k})");
        }
    }
}
