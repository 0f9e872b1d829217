//! Structural operations on cell maps: mirroring, curve surgery, puncturing,
//! capping, connected sum, parallel-copy routing, and bigon removal.

use super::{CellMap, Dart, EdgeLabel, Family, Route, RouteEnd, Sign, Work};
use crate::error::{Error, Result};

/// Which side of a directed strand a parallel copy runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParallelSide {
    Left,
    Right,
}

use serde::{Deserialize, Serialize};

/// A passage of a component through a vertex: incoming dart at the vertex
/// (the alpha of the arriving edge dart) and the outgoing dart.
#[derive(Debug, Clone, Copy)]
pub struct Passage {
    pub incoming: Dart,
    pub outgoing: Dart,
}

impl CellMap {
    /// Passages of a walked component. For a closed walk of m darts there
    /// are m passages; for an arc, m-1 interior passages.
    pub fn passages(&self, walk: &[Dart], closed: bool) -> Vec<Passage> {
        let m = walk.len();
        let mut out = Vec::new();
        let upper = if closed { m } else { m - 1 };
        for i in 0..upper {
            out.push(Passage {
                incoming: self.alpha(walk[i]),
                outgoing: walk[(i + 1) % m],
            });
        }
        out
    }

    /// Stub darts strictly between the strand's arms at a passage, on the
    /// requested side, ordered as a parallel copy traveling with the strand
    /// would cross them.
    pub fn passage_stubs(&self, p: &Passage, side: ParallelSide) -> Vec<Dart> {
        let mut stubs = Vec::new();
        match side {
            ParallelSide::Left => {
                // ccw from outgoing to incoming, then reversed for travel order
                let mut x = self.sigma(p.outgoing);
                while x != p.incoming {
                    stubs.push(x);
                    x = self.sigma(x);
                }
                stubs.reverse();
            }
            ParallelSide::Right => {
                let mut x = self.sigma(p.incoming);
                while x != p.outgoing {
                    stubs.push(x);
                    x = self.sigma(x);
                }
            }
        }
        stubs
    }

    /// Route for a full parallel copy of a closed component, or None if it
    /// crosses nothing (callers fall back to a tethered loop).
    pub fn parallel_route(
        &self,
        family: Family,
        component: u32,
        side: ParallelSide,
    ) -> Result<(Route, Option<Dart>)> {
        let (walk, closed) = self.walk_component(family, component)?;
        if !closed {
            return Err(Error::ComponentIsArc);
        }
        let mut crossings = Vec::new();
        for p in self.passages(&walk, true) {
            for s in self.passage_stubs(&p, side) {
                crossings.push(self.alpha(s));
            }
        }
        if crossings.is_empty() {
            // anchor corner for a tethered loop beside the curve
            let anchor = match side {
                ParallelSide::Left => walk[0],
                ParallelSide::Right => self.alpha(walk[0]),
            };
            return Ok((
                Route { start: RouteEnd::Closed, crossings, end: RouteEnd::Closed },
                Some(anchor),
            ));
        }
        Ok((Route { start: RouteEnd::Closed, crossings, end: RouteEnd::Closed }, None))
    }

    /// Insert a parallel copy of a closed component with the given label.
    pub fn with_parallel_copy(
        &self,
        family: Family,
        component: u32,
        side: ParallelSide,
        label: EdgeLabel,
    ) -> Result<CellMap> {
        let (route, tether_at) = self.parallel_route(family, component, side)?;
        let mut w = self.to_work();
        match tether_at {
            None => {
                w.draw(&route, label)?;
            }
            Some(corner) => {
                w.insert_tethered_loop(corner, label);
            }
        }
        w.finish()
    }

    /// Deterministically minimize auxiliary scaffold: repeatedly delete the
    /// lowest scaffold edge whose two sides lie in distinct faces (so the
    /// surface is unchanged), dissolve unmarked degree-2 scaffold vertices,
    /// and prune dangling scaffold ends. Marked points and their host edges
    /// are kept. Curves, arcs, and boundary are untouched.
    pub fn normalize_scaffold(&self) -> Result<CellMap> {
        let mut m = self.clone();
        loop {
            let mut w = m.to_work();
            w.cleanup_degree2();
            w.prune_dangling_scaffold();
            m = w.finish()?;
            let mut deleted = false;
            for d in m.darts() {
                if m.label(d).family != Family::Scaffold || d > m.alpha(d) {
                    continue;
                }
                // never delete a component's last cells
                if m.sigma(d) == m.alpha(d) && m.sigma(m.alpha(d)) == d {
                    continue;
                }
                // both endpoints unmarked
                if m.marked_sign_at(d).is_some() || m.marked_sign_at(m.alpha(d)).is_some() {
                    continue;
                }
                // distinct faces on the two sides
                if m.face_id(d) == m.face_id(m.alpha(d)) {
                    continue;
                }
                let mut w = m.to_work();
                w.delete_edge(d);
                w.prune_dangling_scaffold();
                w.cleanup_degree2();
                if let Ok(next) = w.finish() {
                    m = next;
                    deleted = true;
                    break;
                }
            }
            if !deleted {
                return Ok(m);
            }
        }
    }

    /// Mirror image: all vertex rotations inverted, labels and marks kept.
    pub fn mirror(&self) -> CellMap {
        let n = self.dart_count();
        let mut sigma = vec![0 as Dart; n];
        for d in self.darts() {
            sigma[self.sigma(d) as usize] = d;
        }
        let m = CellMap {
            alpha: self.alpha.clone(),
            sigma,
            label: self.label.clone(),
            marked: self
                .marked
                .iter()
                .map(|&(d, s)| (d, s))
                .collect(),
            multi_ok: self.multi_ok,
        };
        // marked vertices keep their orbits (orbit sets are sigma-invariant)
        let marked = m
            .marked
            .iter()
            .map(|&(d, s)| (m.vertex_id(d), s))
            .collect();
        CellMap { marked, ..m }
    }

    /// Surger the surface along a closed curve disjoint from all other
    /// non-scaffold components: the curve is removed and each side is capped,
    /// leaving a scaffold cycle around each scar.
    pub fn surger_curve(&self, family: Family, component: u32) -> Result<CellMap> {
        let (walk, closed) = self.walk_component(family, component)?;
        if !closed {
            return Err(Error::ComponentIsArc);
        }
        // every vertex on the curve must involve no other curve/arc component
        for &d in &walk {
            for x in [d, self.alpha(d)] {
                let mut y = self.sigma(x);
                while y != x {
                    let l = self.label(y);
                    if l.family != Family::Scaffold && l != self.label(d) {
                        return Err(Error::CurveNotEmbedded);
                    }
                    y = self.sigma(y);
                }
            }
        }
        let mut w = self.to_work();
        let m = walk.len();
        let passages = self.passages(&walk, true);
        let fresh = w.fresh_components(Family::Scaffold, 2);
        let scaf_l = EdgeLabel::new(Family::Scaffold, fresh[0]);
        let scaf_r = EdgeLabel::new(Family::Scaffold, fresh[1]);
        // collect stubs per passage before surgery
        let left_stubs: Vec<Vec<Dart>> = passages
            .iter()
            .map(|p| {
                let mut s = self.passage_stubs(p, ParallelSide::Left);
                s.reverse(); // ccw order from outgoing
                s
            })
            .collect();
        let right_stubs: Vec<Vec<Dart>> =
            passages.iter().map(|p| self.passage_stubs(p, ParallelSide::Right)).collect();
        // new scaffold cycles: left copy darts l[i] (at split vertex i,
        // running toward i+1), right copy darts r[i]
        let mut l = Vec::with_capacity(m);
        let mut r = Vec::with_capacity(m);
        for _ in 0..m {
            l.push(w.new_edge_raw(scaf_l));
            r.push(w.new_edge_raw(scaf_r));
        }
        // detach stubs and rebuild rotations
        for i in 0..m {
            for &s in left_stubs[i].iter().chain(right_stubs[i].iter()) {
                w.unsplice_raw(s);
            }
        }
        // kill the curve's darts
        for &d in &walk {
            let a = w.alpha(d);
            w.unsplice_raw(d);
            w.unsplice_raw(a);
            w.delete_edge(d);
        }
        for i in 0..m {
            let prev = (i + m - 1) % m;
            // left vertex i: cyclic (l[i].0, stubs ccw.., alpha(l[prev].0))
            let (li, _) = l[i];
            let lp_bar = l[prev].1;
            let mut chain: Vec<Dart> = vec![li];
            chain.extend(left_stubs[i].iter().copied());
            chain.push(lp_bar);
            w.make_cycle(&chain);
            // right vertex i: cyclic (r[i].0, alpha(r[prev].0), stubs ccw..)
            let (ri, _) = r[i];
            let rp_bar = r[prev].1;
            let mut chain: Vec<Dart> = vec![ri, rp_bar];
            chain.extend(right_stubs[i].iter().copied());
            w.make_cycle(&chain);
        }
        w.multi_ok = true;
        let out = w.finish()?;
        Ok(out)
    }

    /// Puncture at a marked point: the degree-2 scaffold vertex becomes a
    /// boundary circle with two boundary edges, carrying the two former
    /// scaffold attachments.
    pub fn cut_disk_at(&self, sign: Sign) -> Result<CellMap> {
        let &(v, _) = self
            .marked
            .iter()
            .find(|(_, s)| *s == sign)
            .ok_or(Error::NoSuchMarkedPoint)?;
        let u1 = v;
        let u2 = self.sigma(v);
        if u2 == u1 || self.sigma(u2) != u1 {
            return Err(Error::InvalidMap("marked vertex is not degree 2".into()));
        }
        let mut w = self.to_work();
        let bl = EdgeLabel::new(Family::Boundary, w.fresh_component(Family::Boundary));
        let (x1, x1b) = w.new_edge_raw(bl);
        let (x2, x2b) = w.new_edge_raw(bl);
        w.unsplice_raw(u1);
        w.unsplice_raw(u2);
        // w1: (x1, u1, x2b), w2: (x2, u2, x1b)
        w.make_cycle(&[x1, u1, x2b]);
        w.make_cycle(&[x2, u2, x1b]);
        let marked = self
            .marked
            .iter()
            .filter(|(m, _)| *m != v)
            .map(|&(m, s)| (m, s))
            .collect::<Vec<_>>();
        w.set_marked_raw(marked);
        w.finish()
    }

    /// Close one boundary circle: boundary edges become scaffold. With a
    /// sign, one of the former boundary edges is subdivided by a new marked
    /// point sitting on the cap.
    pub fn cap_boundary(&self, boundary_component: u32, sign: Option<Sign>) -> Result<CellMap> {
        let mut w = self.to_work();
        let scaf = EdgeLabel::new(Family::Scaffold, w.fresh_component(Family::Scaffold));
        let mut first: Option<Dart> = None;
        for d in self.darts() {
            let l = self.label(d);
            if l.family == Family::Boundary && l.component == boundary_component {
                if first.is_none() {
                    first = Some(d);
                }
                w.set_label(d, scaf);
            }
        }
        let Some(d0) = first else {
            return Err(Error::InvalidOperand("no such boundary circle".into()));
        };
        if let Some(s) = sign {
            let (p, _) = w.subdivide(d0);
            w.add_mark(p, s);
        }
        w.finish()
    }

    /// Close every boundary circle (used before homology computations).
    pub fn cap_all_boundaries(&self) -> Result<CellMap> {
        let mut m = self.clone();
        loop {
            let comps = m.components(Family::Boundary);
            match comps.first() {
                Some(&c) => m = m.cap_boundary(c, None)?,
                None => return Ok(m),
            }
        }
    }

    /// Interior connected sum at two face corners. The corners must lie in
    /// different maps' faces (the maps are first placed side by side); a
    /// scaffold neck edge joins the two faces into one.
    pub fn connected_sum(
        &self,
        corner_self: Dart,
        other: &CellMap,
        corner_other: Dart,
    ) -> Result<CellMap> {
        for (m, c) in [(self, corner_self), (other, corner_other)] {
            let face = m.faces().into_iter().find(|f| f.contains(&m.sigma(c)));
            let face = face.ok_or(Error::InvalidOperand("bad corner".into()))?;
            if m.is_cap_face(&face) {
                return Err(Error::InvalidOperand("cannot sum at a boundary cap".into()));
            }
            for &d in &face {
                if m.marked_sign_at(d).is_some() {
                    return Err(Error::MarkedFace);
                }
            }
        }
        let shift = self.dart_count() as Dart;
        let mut w = self.to_work();
        w.append_shifted(other, shift);
        let c1 = w.attachment_corner(corner_self);
        let c2 = w.attachment_corner(corner_other + shift);
        let scaf = EdgeLabel::new(Family::Scaffold, w.fresh_component(Family::Scaffold));
        w.chord(c1, c2, scaf);
        w.finish()
    }

    /// Next dart along a face walk that treats the given families as
    /// transparent (crossed over rather than bounding).
    fn next_opaque(&self, d: Dart, transparent: &[Family]) -> Dart {
        let mut y = self.phi(d);
        while transparent.contains(&self.label(y).family) {
            y = self.phi(self.alpha(y));
        }
        y
    }

    /// Boundary walks of merged faces: map faces glued across edges of the
    /// transparent families, each walk listing its opaque darts.
    pub fn merged_faces(&self, transparent: &[Family]) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for start in self.darts() {
            if seen[start as usize] || transparent.contains(&self.label(start).family) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                seen[d as usize] = true;
                orbit.push(d);
                d = self.next_opaque(d, transparent);
                if d == start {
                    break;
                }
            }
            out.push(orbit);
        }
        out
    }

    /// Boundary walks of diagram faces (scaffold-transparent).
    pub fn diagram_faces(&self) -> Vec<Vec<Dart>> {
        self.merged_faces(&[Family::Scaffold])
    }

    /// Remove all empty bigons between two families: disk regions bounded by
    /// one arc of each family whose interiors carry only scaffold. Classes
    /// of all components are unchanged.
    pub fn remove_bigons(&self, fam_a: Family, fam_b: Family) -> Result<CellMap> {
        self.reduce_pair(fam_a, fam_b, &[Family::Scaffold])
    }

    /// Reduce crossings between two families by pulling strands across
    /// regions whose interiors contain only the transparent families; each
    /// pull is verified to drop the crossing count by two and preserve the
    /// surface, otherwise the candidate is skipped.
    pub fn reduce_pair(
        &self,
        fam_a: Family,
        fam_b: Family,
        transparent: &[Family],
    ) -> Result<CellMap> {
        let mut m = self.clone();
        loop {
            let mut progressed = false;
            let candidates = m.find_bigons(fam_a, fam_b, transparent);
            for bigon in candidates {
                if let Ok(next) = m.remove_one_bigon(&bigon, transparent) {
                    m = next;
                    progressed = true;
                    break;
                }
            }
            if !progressed {
                return Ok(m);
            }
        }
    }

    /// Bigon candidates between the families: merged faces whose boundary
    /// consists of one run of a single fam_a component and one run of a
    /// single fam_b component. Returns (a-run darts, b-run darts) each.
    pub fn find_bigons(
        &self,
        fam_a: Family,
        fam_b: Family,
        transparent: &[Family],
    ) -> Vec<(Vec<Dart>, Vec<Dart>)> {
        let mut found = Vec::new();
        for orbit in self.merged_faces(transparent) {
            let labels: Vec<EdgeLabel> = orbit.iter().map(|&d| self.label(d)).collect();
            let mut distinct = labels.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != 2 {
                continue;
            }
            let (la, lb) = (distinct[0], distinct[1]);
            let ok = (la.family == fam_a && lb.family == fam_b)
                || (la.family == fam_b && lb.family == fam_a);
            if !ok || la == lb {
                continue;
            }
            // exactly two maximal runs around the cycle
            let n = orbit.len();
            let switches = (0..n)
                .filter(|&i| labels[i] != labels[(i + 1) % n])
                .count();
            if switches != 2 {
                continue;
            }
            // rotate so the la-run comes first
            let start = (0..n)
                .find(|&i| labels[i] == la && labels[(i + n - 1) % n] == lb)
                .unwrap();
            let rotated: Vec<Dart> = (0..n).map(|i| orbit[(start + i) % n]).collect();
            let a_len = rotated
                .iter()
                .position(|&d| self.label(d) == lb)
                .unwrap_or(n);
            let (a_run, b_run) = rotated.split_at(a_len);
            let (a_run, b_run) = if la.family == fam_a {
                (a_run.to_vec(), b_run.to_vec())
            } else {
                (b_run.to_vec(), a_run.to_vec())
            };
            // corners must be honest crossings: no hop between the runs
            let honest = self.phi(*a_run.last().unwrap()) == b_run[0]
                && self.phi(*b_run.last().unwrap()) == a_run[0];
            if !honest {
                continue;
            }
            found.push((a_run, b_run));
        }
        found
    }

    /// First bigon candidate with only scaffold inside, when one exists.
    pub fn find_bigon(&self, fam_a: Family, fam_b: Family) -> Option<(Vec<Dart>, Vec<Dart>)> {
        self.find_bigons(fam_a, fam_b, &[Family::Scaffold]).into_iter().next()
    }

    /// Remove one bigon: delete the A-side chain and redraw the component
    /// along the far side of the B-side chain, crossing the far halves of
    /// the strands that pierce the B chain.
    fn remove_one_bigon(
        &self,
        bigon: &(Vec<Dart>, Vec<Dart>),
        transparent: &[Family],
    ) -> Result<CellMap> {
        let _ = transparent;
        let (a_run, b_run) = bigon;
        let la = self.label(a_run[0]);
        let lb = self.label(b_run[0]);
        let before = self.count_crossings(la, lb);
        let gb = self.genus_boundary()?;

        // the A component's edges inside the chain
        let chain: std::collections::BTreeSet<Dart> =
            a_run.iter().map(|&d| d.min(self.alpha(d))).collect();
        let (a_walk, _) = self.walk_component(la.family, la.component)?;
        let whole = a_walk
            .iter()
            .all(|&d| chain.contains(&d.min(self.alpha(d))));

        // far-side stubs along the B chain, ordered from the end shared with
        // a_run[0] (vertex P) toward the other corner (Q)
        let far_stubs: Vec<Dart> = {
            let mut out = Vec::new();
            for i in 0..b_run.len().saturating_sub(1) {
                let b_i = b_run[i];
                // interior vertex between b_i and b_{i+1}: at head(b_i)
                let at = self.alpha(b_i);
                let v = self.vertex_darts_of(at);
                let near = self.phi(b_i); // hop into the bigon
                let far = v
                    .iter()
                    .copied()
                    .find(|&x| self.label(x).family != lb.family && x != near)
                    .ok_or_else(|| Error::InvalidMap("bigon chain vertex malformed".into()))?;
                out.push(far);
            }
            // b_run runs from Q to P; the route runs P to Q, so reverse
            out.reverse();
            out
        };

        if whole {
            let b_whole = {
                let chain_b: std::collections::BTreeSet<Dart> =
                    b_run.iter().map(|&d| d.min(self.alpha(d))).collect();
                let (b_walk, _) = self.walk_component(lb.family, lb.component)?;
                b_walk
                    .iter()
                    .all(|&d| chain_b.contains(&d.min(self.alpha(d))))
            };
            if b_whole {
                return Err(Error::InvalidMap(
                    "bigon removal on an isolated curve pair is not supported".into(),
                ));
            }
            // the component is a trivial circle hugging the B chain
            let anchor = self.alpha(b_run[0]);
            let mut w = self.to_work();
            w.delete_component(la.family, la.component);
            if !w.alive(anchor) {
                return Err(Error::InvalidMap("no anchor for degenerate bigon".into()));
            }
            w.insert_tethered_loop(anchor, la);
            let m = w.finish()?;
            return Ok(m);
        }

        // corners P (tail of a_run[0]) and Q (head of last a dart)
        let p_vertex = self.vertex_id(a_run[0]);
        let q_vertex = self.vertex_id(self.alpha(*a_run.last().unwrap()));
        let outer_at = |v: Dart| -> Result<Dart> {
            let darts = self.vertex_darts_of(v);
            darts
                .iter()
                .copied()
                .find(|&x| {
                    self.label(x) == la
                        && !chain.contains(&x.min(self.alpha(x)))
                })
                .ok_or_else(|| Error::InvalidMap("bigon corner lacks outer strand".into()))
        };
        let outer_p = outer_at(p_vertex)?;
        let outer_q = outer_at(q_vertex)?;

        let mut w = self.to_work();
        // loose ends: subdivide the outer edges, then delete the short
        // segments at the corners together with the chain
        let (pp, _pq) = w.subdivide(outer_p);
        let (qp, _qq) = w.subdivide(outer_q);
        for &e in &chain {
            w.delete_edge(e);
        }
        // segments from the corners to the new vertices
        w.delete_edge(outer_p);
        w.delete_edge(outer_q);
        let _ = (pp, qp);
        w.cleanup_degree2();
        // the loose ends are the partners of the deleted stubs: the darts at
        // the new vertices that survived
        let loose_p = _pq;
        let loose_q = _qq;
        if !w.alive(loose_p) || !w.alive(loose_q) {
            return Err(Error::InvalidMap("bigon reroute lost its ends".into()));
        }
        let route = Route {
            start: RouteEnd::Corner(loose_p),
            crossings: far_stubs,
            end: RouteEnd::Corner(loose_q),
        };
        w.draw(&route, la)?;
        w.cleanup_degree2();
        let m = w.finish()?;
        if m.genus_boundary()? != gb {
            return Err(Error::InvalidMap("bigon removal changed the surface".into()));
        }
        let after = m.count_crossings(la, lb);
        if after + 2 != before {
            return Err(Error::InvalidMap(
                "bigon removal did not reduce crossings".into(),
            ));
        }
        Ok(m)
    }

    fn vertex_darts_of(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.sigma(d);
        while x != d {
            out.push(x);
            x = self.sigma(x);
        }
        out
    }

    /// Crossing vertices between two specific components.
    fn count_crossings(&self, la: EdgeLabel, lb: EdgeLabel) -> usize {
        self.vertices()
            .into_iter()
            .filter(|v| {
                v.len() == 4 && {
                    let labs: Vec<EdgeLabel> = v.iter().map(|&x| self.label(x)).collect();
                    labs.contains(&la) && labs.contains(&lb)
                }
            })
            .count()
    }
}

impl Work {
    /// Arrange the given darts into one fresh vertex with this exact
    /// counterclockwise rotation (darts must be detached first).
    pub(crate) fn make_cycle(&mut self, darts: &[Dart]) {
        let n = darts.len();
        for i in 0..n {
            let d = darts[i];
            let nx = darts[(i + 1) % n];
            self.set_sigma_raw(d, nx);
        }
    }

    pub(crate) fn set_sigma_raw(&mut self, d: Dart, next: Dart) {
        self.sigma_raw_mut()[d as usize] = next;
        self.sigma_prev_raw_mut()[next as usize] = d;
    }

    /// Make two darts partners (both must already be alive).
    pub(crate) fn reglue(&mut self, a: Dart, b: Dart) {
        self.alpha_raw_mut()[a as usize] = b;
        self.alpha_raw_mut()[b as usize] = a;
    }

    pub(crate) fn kill_raw(&mut self, d: Dart) {
        self.label_raw_mut()[d as usize] = None;
        self.set_sigma_raw(d, d);
    }

    /// Append another map's darts, shifted by `shift`.
    pub(crate) fn append_shifted(&mut self, other: &CellMap, shift: Dart) {
        let n = other.dart_count();
        for d in 0..n as Dart {
            let l = other.label(d);
            self.push_raw(
                other.alpha(d) + shift,
                other.sigma(d) + shift,
                Some(l),
            );
        }
        // fix sigma_prev for the appended block
        for d in 0..n as Dart {
            let s = other.sigma(d) + shift;
            self.sigma_prev_raw_mut()[s as usize] = d + shift;
        }
        let mut marked = self.marked().to_vec();
        for &(v, s) in other.marked_points() {
            marked.push((v + shift, s));
        }
        self.set_marked_raw(marked);
        // component indices could collide across families; disambiguate
        self.renumber_components_raw(shift, other);
    }

    fn renumber_components_raw(&mut self, shift: Dart, other: &CellMap) {
        use std::collections::BTreeMap;
        // components of the appended block get fresh indices per family
        let mut remap: BTreeMap<(Family, u32), u32> = BTreeMap::new();
        let families: Vec<Family> = other
            .darts()
            .map(|d| other.label(d).family)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        for fam in families {
            let mut next = self
                .label_raw()
                .iter()
                .take(shift as usize)
                .flatten()
                .filter(|l| l.family == fam)
                .map(|l| l.component + 1)
                .max()
                .unwrap_or(0);
            for c in other.components(fam) {
                remap.insert((fam, c), next);
                next += 1;
            }
        }
        let n = other.dart_count() as Dart;
        for d in 0..n {
            let l = other.label(d);
            let new = EdgeLabel::new(l.family, remap[&(l.family, l.component)]);
            self.label_raw_mut()[(d + shift) as usize] = Some(new);
        }
    }
}
