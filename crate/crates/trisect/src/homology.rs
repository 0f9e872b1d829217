//! First homology of the closed-off surface of a cell map: a deterministic
//! basis, homology classes of curves, and the algebraic intersection pairing.
//!
//! Boundary circles are capped off, a spanning tree is contracted to produce
//! a one-vertex map whose loops generate H1 of the surface; face boundaries
//! give the relations. The intersection pairing of two loops at the single
//! vertex is the signed chord-crossing rule: +1 when the second loop's ends
//! interleave the first's in counterclockwise order (d, g, d_bar, g_bar).

use crate::cellmap::{CellMap, Dart, Family};
use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, IntMat};
use std::collections::BTreeMap;

/// Homology bookkeeping for one cell map.
#[derive(Debug, Clone)]
pub struct HomologyData {
    /// Genus of the closed-off surface.
    pub genus: usize,
    /// One dart per generator loop (non-tree edge), in the original map.
    pub loop_darts: Vec<Dart>,
    /// Pairing of generator loops (chord rule), loops x loops.
    pub loop_pairing: IntMat,
    /// Row transform from the Smith form of the relation matrix.
    u: IntMat,
    u_inv: IntMat,
    /// Rank of the relation matrix; the free quotient lives in rows rank..
    rank: usize,
    /// Parent dart per vertex for tree walks: walking along this dart leads
    /// toward the root. Keyed by vertex id (minimal dart).
    tree_parent: BTreeMap<Dart, Dart>,
    /// Index of each non-tree edge (keyed by minimal dart of the edge).
    loop_index: BTreeMap<Dart, usize>,
}

/// A 2g-element homology basis with its intersection pairing.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    /// Closed dart walks in the capped map generating first homology.
    pub cycles: Vec<Vec<Dart>>,
    /// 2g x 2g antisymmetric unimodular pairing matrix.
    pub pairing: IntMat,
}

impl CellMap {
    /// Compute homology bookkeeping (boundaries capped off internally must be
    /// done by the caller; this expects a map without Boundary edges or
    /// treats them like scaffold).
    pub fn homology(&self) -> Result<HomologyData> {
        if !self.is_connected() {
            return Err(Error::DisconnectedWithoutFlag);
        }
        let capped = self;
        let genus = {
            let chi = capped.euler_characteristic_capped();
            let twice = 2 - chi;
            if twice < 0 || twice % 2 != 0 {
                return Err(Error::NonOrientable);
            }
            (twice / 2) as usize
        };

        // spanning tree over vertices, deterministic BFS by dart id
        let mut tree_parent: BTreeMap<Dart, Dart> = BTreeMap::new();
        let mut tree_edges: Vec<Dart> = Vec::new(); // minimal dart per tree edge
        if capped.dart_count() > 0 {
            let root = capped.vertex_id(0);
            let mut seen = std::collections::BTreeSet::new();
            seen.insert(root);
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                let mut d = v;
                loop {
                    let head = capped.vertex_id(capped.alpha(d));
                    if !seen.contains(&head) {
                        seen.insert(head);
                        // from head, walking along alpha(d) leads to v
                        tree_parent.insert(head, capped.alpha(d));
                        tree_edges.push(d.min(capped.alpha(d)));
                        queue.push_back(head);
                    }
                    d = capped.sigma(d);
                    if d == v {
                        break;
                    }
                }
            }
        }

        // contract the tree to a single vertex
        let mut sigma: Vec<Dart> = (0..capped.dart_count() as Dart)
            .map(|d| capped.sigma(d))
            .collect();
        let mut sigma_prev = vec![0 as Dart; sigma.len()];
        for d in 0..sigma.len() as Dart {
            sigma_prev[sigma[d as usize] as usize] = d;
        }
        let mut alive = vec![true; sigma.len()];
        for &e in &tree_edges {
            let d = e;
            let db = capped.alpha(d);
            let pd = sigma_prev[d as usize];
            let pdb = sigma_prev[db as usize];
            let sd = sigma[d as usize];
            let sdb = sigma[db as usize];
            if sd == d && sdb == db {
                alive[d as usize] = false;
                alive[db as usize] = false;
                continue;
            }
            if sd == d {
                sigma[pdb as usize] = sdb;
                sigma_prev[sdb as usize] = pdb;
            } else if sdb == db {
                sigma[pd as usize] = sd;
                sigma_prev[sd as usize] = pd;
            } else {
                sigma[pd as usize] = sdb;
                sigma_prev[sdb as usize] = pd;
                sigma[pdb as usize] = sd;
                sigma_prev[sd as usize] = pdb;
            }
            alive[d as usize] = false;
            alive[db as usize] = false;
        }

        // surviving loops in ascending dart order
        let mut loop_darts: Vec<Dart> = Vec::new();
        let mut loop_index: BTreeMap<Dart, usize> = BTreeMap::new();
        for d in 0..capped.dart_count() as Dart {
            if alive[d as usize] && d < capped.alpha(d) {
                loop_index.insert(d, loop_darts.len());
                loop_darts.push(d);
            }
        }
        let n_loops = loop_darts.len();

        // rotation order around the single vertex
        let mut pos: BTreeMap<Dart, usize> = BTreeMap::new();
        if let Some(start) = (0..capped.dart_count() as Dart).find(|&d| alive[d as usize]) {
            let mut d = start;
            let mut i = 0;
            loop {
                pos.insert(d, i);
                i += 1;
                d = sigma[d as usize];
                if d == start {
                    break;
                }
            }
            if i != alive.iter().filter(|&&a| a).count() {
                return Err(Error::InvalidMap(
                    "tree contraction left several vertices".into(),
                ));
            }
        }

        // chord-rule pairing of loops
        let mut loop_pairing = IntMat::zeros(n_loops, n_loops);
        for (i, &di) in loop_darts.iter().enumerate() {
            for (j, &dj) in loop_darts.iter().enumerate() {
                if i == j {
                    continue;
                }
                loop_pairing[(i, j)] = chord_sign(
                    pos[&di],
                    pos[&capped.alpha(di)],
                    pos[&dj],
                    pos[&capped.alpha(dj)],
                );
            }
        }

        // face relations (faces are unchanged by tree contraction)
        let faces = capped.faces();
        let mut relations = IntMat::zeros(n_loops, faces.len());
        for (f, face) in faces.iter().enumerate() {
            for &d in face {
                let e = d.min(capped.alpha(d));
                if let Some(&k) = loop_index.get(&e) {
                    let sign = if d == e { 1 } else { -1 };
                    relations[(k, f)] += sign;
                }
            }
        }
        let s = smith_normal_form(&relations);
        let rank = s.rank();
        for f in s.invariant_factors() {
            if f != 1 {
                return Err(Error::InvalidMap(
                    "torsion in surface homology; map is not a surface".into(),
                ));
            }
        }
        if n_loops - rank != 2 * genus {
            return Err(Error::InvalidMap("homology rank does not match genus".into()));
        }
        Ok(HomologyData {
            genus,
            loop_darts,
            loop_pairing,
            u: s.u,
            u_inv: s.u_inv,
            rank,
            tree_parent,
            loop_index,
        })
    }

    /// V - E + F counting all faces (treats Boundary caps as filled disks).
    fn euler_characteristic_capped(&self) -> i64 {
        let v = self.vertices().len() as i64;
        let e = (self.dart_count() / 2) as i64;
        let f = self.faces().len() as i64;
        v - e + f
    }

    /// Class of a closed dart walk in generator-loop coordinates.
    pub fn walk_loop_coords(&self, h: &HomologyData, walk: &[Dart]) -> Vec<i128> {
        let mut x = vec![0i128; h.loop_darts.len()];
        for &d in walk {
            let e = d.min(self.alpha(d));
            if let Some(&k) = h.loop_index.get(&e) {
                x[k] += if d == e { 1 } else { -1 };
            }
        }
        x
    }

    /// Coordinates of a closed walk in the 2g-dimensional homology quotient.
    pub fn walk_class(&self, h: &HomologyData, walk: &[Dart]) -> Vec<i128> {
        let x = self.walk_loop_coords(h, walk);
        h.quotient_coords(&x)
    }

    /// Homology class of a closed curve component against the basis.
    pub fn curve_class(
        &self,
        h: &HomologyData,
        family: Family,
        component: u32,
    ) -> Result<Vec<i128>> {
        let (walk, closed) = self.walk_component(family, component)?;
        if !closed {
            return Err(Error::ComponentIsArc);
        }
        Ok(self.walk_class(h, &walk))
    }

    /// Algebraic intersection number of two closed walks.
    pub fn walk_pairing(&self, h: &HomologyData, a: &[Dart], b: &[Dart]) -> i128 {
        let xa = self.walk_loop_coords(h, a);
        let xb = self.walk_loop_coords(h, b);
        let mut total = 0i128;
        for i in 0..xa.len() {
            if xa[i] == 0 {
                continue;
            }
            for j in 0..xb.len() {
                if xb[j] != 0 {
                    total += xa[i] * h.loop_pairing[(i, j)] * xb[j];
                }
            }
        }
        total
    }

    /// Matrix of algebraic intersections between the components of two
    /// families (rows: fam_a components ascending, cols: fam_b).
    pub fn algebraic_intersections(&self, fam_a: Family, fam_b: Family) -> Result<IntMat> {
        let capped = self.cap_all_boundaries()?;
        let h = capped.homology()?;
        let ca = capped.components(fam_a);
        let cb = capped.components(fam_b);
        let mut m = IntMat::zeros(ca.len(), cb.len());
        let walks_a: Vec<Vec<Dart>> = ca
            .iter()
            .map(|&c| capped.walk_component(fam_a, c).map(|(w, _)| w))
            .collect::<Result<_>>()?;
        let walks_b: Vec<Vec<Dart>> = cb
            .iter()
            .map(|&c| capped.walk_component(fam_b, c).map(|(w, _)| w))
            .collect::<Result<_>>()?;
        for (i, wa) in walks_a.iter().enumerate() {
            for (j, wb) in walks_b.iter().enumerate() {
                m[(i, j)] = capped.walk_pairing(&h, wa, wb);
            }
        }
        Ok(m)
    }

    /// Homology basis of the closed-off surface: 2g dart cycles plus the
    /// pairing matrix, deterministic given dart ordering.
    pub fn homology_basis(&self) -> Result<HomologyBasis> {
        let capped = self.cap_all_boundaries()?;
        let h = capped.homology()?;
        let n = h.loop_darts.len();
        let g2 = 2 * h.genus;
        // basis vectors: columns of u_inv at rows rank.., realized as walks
        let mut cycles = Vec::with_capacity(g2);
        for k in 0..g2 {
            let col = h.rank + k;
            let mut walk = Vec::new();
            for i in 0..n {
                let c = h.u_inv[(i, col)];
                if c == 0 {
                    continue;
                }
                let loop_walk = capped.loop_walk(&h, i);
                for _ in 0..c.unsigned_abs() {
                    if c > 0 {
                        walk.extend(loop_walk.iter().copied());
                    } else {
                        walk.extend(loop_walk.iter().rev().map(|&d| capped.alpha(d)));
                    }
                }
            }
            cycles.push(walk);
        }
        // pairing of the basis cycles
        let mut pairing = IntMat::zeros(g2, g2);
        for i in 0..g2 {
            for j in 0..g2 {
                pairing[(i, j)] = capped.walk_pairing(&h, &cycles[i], &cycles[j]);
            }
        }
        Ok(HomologyBasis { cycles, pairing })
    }

    /// Closed walk in the map realizing generator loop `i`: tree path from
    /// root to the loop edge's tail, the edge, and back.
    fn loop_walk(&self, h: &HomologyData, i: usize) -> Vec<Dart> {
        let e = h.loop_darts[i];
        let to_root = |mut v: Dart| -> Vec<Dart> {
            let mut path = Vec::new();
            while let Some(&d) = h.tree_parent.get(&v) {
                path.push(d);
                v = self.vertex_id(self.alpha(d));
            }
            path
        };
        let tail = self.vertex_id(e);
        let head = self.vertex_id(self.alpha(e));
        let down = to_root(tail); // tail -> root
        let up = to_root(head); // head -> root
        let mut walk: Vec<Dart> = down.iter().rev().map(|&d| self.alpha(d)).collect();
        walk.push(e);
        walk.extend(up.iter().copied());
        walk
    }
}

impl HomologyData {
    /// Word of a closed walk in the generator loops: signed 1-based indices
    /// in traversal order (tree darts contribute nothing).
    pub fn walk_word(&self, map: &CellMap, walk: &[Dart]) -> Vec<i32> {
        let mut word = Vec::new();
        for &d in walk {
            let e = d.min(map.alpha(d));
            if let Some(&k) = self.loop_index.get(&e) {
                let idx = (k + 1) as i32;
                word.push(if d == e { idx } else { -idx });
            }
        }
        word
    }

    pub fn generator_count(&self) -> usize {
        self.loop_darts.len()
    }

    /// Project loop coordinates to the free quotient (length 2g).
    pub fn quotient_coords(&self, x: &[i128]) -> Vec<i128> {
        let n = x.len();
        let g2 = n - self.rank;
        let mut out = vec![0i128; g2];
        for (k, slot) in out.iter_mut().enumerate() {
            let row = self.rank + k;
            let mut s = 0i128;
            for (i, &xi) in x.iter().enumerate() {
                s += self.u[(row, i)] * xi;
            }
            *slot = s;
        }
        out
    }
}

/// Sign of the crossing of two chords (p1, p2) and (q1, q2) on a circle of
/// rotation positions: +1 for counterclockwise interleaving p1 q1 p2 q2.
fn chord_sign(p1: usize, p2: usize, q1: usize, q2: usize) -> i128 {
    let between = |a: usize, b: usize, x: usize| -> bool {
        if a < b {
            a < x && x < b
        } else {
            x > a || x < b
        }
    };
    let q1_in = between(p1, p2, q1);
    let q2_in = between(p1, p2, q2);
    match (q1_in, q2_in) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use crate::cellmap::tests::{doubly_pointed_sphere, torus_map};
    use crate::cellmap::{EdgeLabel, Family, Route, RouteEnd};

    #[test]
    fn torus_basis_symplectic() {
        let t = torus_map();
        let b = t.homology_basis().unwrap();
        assert_eq!(b.cycles.len(), 2);
        assert_eq!(b.pairing.data, vec![0, 1, -1, 0]);
    }

    #[test]
    fn sphere_empty_basis() {
        let s = doubly_pointed_sphere();
        let b = s.homology_basis().unwrap();
        assert!(b.cycles.is_empty());
    }

    #[test]
    fn genus2_basis_unimodular() {
        let t1 = torus_map();
        let t2 = torus_map();
        let g2 = t1.connected_sum(0, &t2, 0).unwrap();
        let b = g2.homology_basis().unwrap();
        assert_eq!(b.cycles.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b.pairing[(i, j)], -b.pairing[(j, i)]);
            }
        }
        // determinant of an antisymmetric 4x4 matrix is the pfaffian squared
        let m = &b.pairing;
        let pf = m[(0, 1)] * m[(2, 3)] - m[(0, 2)] * m[(1, 3)] + m[(0, 3)] * m[(1, 2)];
        assert_eq!(pf.abs(), 1);
    }

    #[test]
    fn meridian_class_primitive() {
        let t = torus_map();
        let mut w = t.to_work();
        let s = t.darts().find(|&d| t.label(d).component == 1).unwrap();
        let route = Route { start: RouteEnd::Closed, crossings: vec![s], end: RouteEnd::Closed };
        w.draw(&route, EdgeLabel::new(Family::Alpha, 0)).unwrap();
        let m = w.finish().unwrap();
        let h = m.homology().unwrap();
        let class = m.curve_class(&h, Family::Alpha, 0).unwrap();
        assert_eq!(class.iter().map(|x| x.abs()).max().unwrap(), 1);
        assert_eq!(class.iter().filter(|&&x| x != 0).count(), 1);
    }

    #[test]
    fn null_homotopic_zero_class() {
        let t = torus_map();
        let mut w = t.to_work();
        w.insert_tethered_loop(0, EdgeLabel::new(Family::Alpha, 0));
        let m = w.finish().unwrap();
        let h = m.homology().unwrap();
        let class = m.curve_class(&h, Family::Alpha, 0).unwrap();
        assert!(class.iter().all(|&x| x == 0));
    }

    #[test]
    fn meridian_longitude_pairing() {
        // alpha crossing one scaffold loop, beta crossing the other and
        // alpha: algebraic intersection of the two curves is +-1
        let t = torus_map();
        let mut w = t.to_work();
        let s1 = t.darts().find(|&d| t.label(d).component == 1).unwrap();
        let r1 = Route { start: RouteEnd::Closed, crossings: vec![s1], end: RouteEnd::Closed };
        w.draw(&r1, EdgeLabel::new(Family::Alpha, 0)).unwrap();
        let m = w.finish().unwrap();
        // the scaffold component not yet crossed by alpha
        let crossed: std::collections::BTreeSet<u32> = m
            .vertices()
            .into_iter()
            .filter(|v| v.iter().any(|&d| m.label(d).family == Family::Alpha))
            .flat_map(|v| {
                v.iter()
                    .filter(|&&d| m.label(d).family == Family::Scaffold)
                    .map(|&d| m.label(d).component)
                    .collect::<Vec<_>>()
            })
            .collect();
        let target = m
            .components(Family::Scaffold)
            .into_iter()
            .find(|c| !crossed.contains(c))
            .unwrap();
        let m = crate::builder::draw_closed_curve(
            &m,
            &[
                crate::builder::cross(Family::Scaffold, target),
                crate::builder::cross(Family::Alpha, 0),
            ],
            EdgeLabel::new(Family::Beta, 0),
            |_| true,
        )
        .unwrap();
        let ab = m.algebraic_intersections(Family::Alpha, Family::Beta).unwrap();
        assert_eq!(ab.rows, 1);
        assert_eq!(ab[(0, 0)].abs(), 1);
    }
}
