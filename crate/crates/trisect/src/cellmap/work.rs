//! Mutable working buffer for structural edits of a cell map.
//!
//! A `Work` holds the permutations with tombstoned darts so edits can create
//! and delete darts freely; `finish` compacts, validates, and canonically
//! renumbers back into an immutable `CellMap`.
//!
//! The strand drawer is the single primitive behind handleslides, arc
//! slides, twists, parallel copies, and arc completion: a route starts at a
//! corner (or closes up), crosses a list of edges transversally, and ends at
//! a corner. Corners are addressed by darts: corner `w` is the angular
//! sector between `w` and `sigma(w)` at the tail vertex of `w`, which is a
//! corner of the face containing `sigma(w)`.

use super::{CellMap, Dart, EdgeLabel, Family, Sign};
use crate::error::{Error, Result};

/// One end of a routed strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteEnd {
    /// Attach at an existing vertex, inserting the strand dart after this
    /// dart in the vertex rotation.
    Corner(Dart),
    /// The strand closes up on itself (both ends must be `Closed`).
    Closed,
}

/// A transversal route for a new strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub start: RouteEnd,
    /// Each entry is a dart `s`; the strand crosses the edge of `s` entering
    /// from the side of `face(s)`, at a point near the tail of `s`.
    pub crossings: Vec<Dart>,
    pub end: RouteEnd,
}

#[derive(Debug, Clone)]
pub struct Work {
    alpha: Vec<Dart>,
    sigma: Vec<Dart>,
    sigma_prev: Vec<Dart>,
    label: Vec<Option<EdgeLabel>>,
    marked: Vec<(Dart, Sign)>,
    pub multi_ok: bool,
}

impl Work {
    pub fn new() -> Work {
        Work {
            alpha: Vec::new(),
            sigma: Vec::new(),
            sigma_prev: Vec::new(),
            label: Vec::new(),
            marked: Vec::new(),
            multi_ok: false,
        }
    }

    pub fn from_map(m: &CellMap) -> Work {
        let n = m.dart_count();
        let mut sigma_prev = vec![0; n];
        for d in 0..n as Dart {
            sigma_prev[m.sigma[d as usize] as usize] = d;
        }
        Work {
            alpha: m.alpha.clone(),
            sigma: m.sigma.clone(),
            sigma_prev,
            label: m.label.iter().map(|&l| Some(l)).collect(),
            marked: m.marked.clone(),
            multi_ok: m.multi_ok,
        }
    }

    /// Compact dead darts and validate. Dart order and component labels are
    /// preserved (canonical renumbering is a separate, explicit step taken
    /// by the public move operations).
    pub fn finish(self) -> Result<CellMap> {
        let n = self.label.len();
        let mut remap = vec![Dart::MAX; n];
        let mut alive = Vec::new();
        for d in 0..n {
            if self.label[d].is_some() {
                remap[d] = alive.len() as Dart;
                alive.push(d);
            }
        }
        let alpha = alive.iter().map(|&d| remap[self.alpha[d] as usize]).collect();
        let sigma = alive.iter().map(|&d| remap[self.sigma[d] as usize]).collect();
        let label = alive.iter().map(|&d| self.label[d].unwrap()).collect();
        let m0 = CellMap {
            alpha,
            sigma,
            label,
            marked: Vec::new(),
            multi_ok: self.multi_ok,
        };
        // marked vertices re-addressed by minimal alive dart of the orbit
        let mut marked: Vec<(Dart, Sign)> = self
            .marked
            .iter()
            .map(|&(d, s)| (m0.vertex_id(remap[d as usize]), s))
            .collect();
        marked.sort_unstable();
        let m = CellMap { marked, ..m0 };
        m.validate()?;
        Ok(m)
    }

    pub fn alive(&self, d: Dart) -> bool {
        self.label.get(d as usize).is_some_and(|l| l.is_some())
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d as usize]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d as usize]
    }

    pub fn sigma_prev(&self, d: Dart) -> Dart {
        self.sigma_prev[d as usize]
    }

    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma(self.alpha(d))
    }

    pub fn label(&self, d: Dart) -> EdgeLabel {
        self.label[d as usize].expect("dead dart")
    }

    pub fn set_label(&mut self, d: Dart, l: EdgeLabel) {
        let a = self.alpha(d);
        self.label[d as usize] = Some(l);
        self.label[a as usize] = Some(l);
    }

    pub fn darts(&self) -> Vec<Dart> {
        (0..self.label.len() as Dart).filter(|&d| self.alive(d)).collect()
    }

    pub fn marked(&self) -> &[(Dart, Sign)] {
        &self.marked
    }

    pub fn add_mark(&mut self, dart_at_vertex: Dart, sign: Sign) {
        self.marked.push((dart_at_vertex, sign));
    }

    pub fn clear_marks(&mut self) {
        self.marked.clear();
    }

    pub fn vertex_darts(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.sigma(d);
        while x != d {
            out.push(x);
            x = self.sigma(x);
        }
        out
    }

    pub fn face_darts(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.phi(d);
        while x != d {
            out.push(x);
            x = self.phi(x);
        }
        out
    }

    pub fn same_face(&self, a: Dart, b: Dart) -> bool {
        let mut x = a;
        loop {
            if x == b {
                return true;
            }
            x = self.phi(x);
            if x == a {
                return false;
            }
        }
    }

    /// The face a corner opens into: corner `w` lies in the face of `sigma(w)`.
    pub fn corner_face_dart(&self, w: Dart) -> Dart {
        self.sigma(w)
    }

    /// Fresh edge; both darts initially form an isolated 2-cycle vertex pair
    /// (callers must splice them into rotations).
    fn new_edge(&mut self, l: EdgeLabel) -> (Dart, Dart) {
        let d = self.label.len() as Dart;
        let e = d + 1;
        self.alpha.push(e);
        self.alpha.push(d);
        self.sigma.push(d);
        self.sigma.push(e);
        self.sigma_prev.push(d);
        self.sigma_prev.push(e);
        self.label.push(Some(l));
        self.label.push(Some(l));
        (d, e)
    }

    /// Insert dart `n` into the rotation right after `w`.
    fn splice_after(&mut self, w: Dart, n: Dart) {
        let next = self.sigma(w);
        self.sigma[w as usize] = n;
        self.sigma[n as usize] = next;
        self.sigma_prev[next as usize] = n;
        self.sigma_prev[n as usize] = w;
    }

    /// Remove dart `d` from its vertex rotation (leaving it self-cyclic).
    fn unsplice(&mut self, d: Dart) {
        let prev = self.sigma_prev(d);
        let next = self.sigma(d);
        if prev == d {
            return;
        }
        self.sigma[prev as usize] = next;
        self.sigma_prev[next as usize] = prev;
        self.sigma[d as usize] = d;
        self.sigma_prev[d as usize] = d;
    }

    /// Subdivide the edge of `s` at a new degree-2 vertex.
    ///
    /// Returns `(p, q)`: both at the new vertex, `p` opposite `s` (pointing
    /// back toward the tail of `s`), `q` continuing toward the old head.
    pub fn subdivide(&mut self, s: Dart) -> (Dart, Dart) {
        let l = self.label(s);
        let s_bar = self.alpha(s);
        let (p, q) = self.new_edge(l);
        // p partners s, q partners s_bar
        self.alpha[s as usize] = p;
        self.alpha[p as usize] = s;
        self.alpha[q as usize] = s_bar;
        self.alpha[s_bar as usize] = q;
        // rotation at the new vertex: (p, q)
        self.sigma[p as usize] = q;
        self.sigma[q as usize] = p;
        self.sigma_prev[p as usize] = q;
        self.sigma_prev[q as usize] = p;
        (p, q)
    }

    /// Insert a chord edge between corner `w1` and corner `w2`.
    ///
    /// Splits the common face when `w1` and `w2` are corners of the same
    /// face; merges two faces (connected sum) when they differ. Returns the
    /// dart at `w1`'s vertex.
    pub fn chord(&mut self, w1: Dart, w2: Dart, l: EdgeLabel) -> (Dart, Dart) {
        let (n, nb) = self.new_edge(l);
        if w1 == w2 {
            // loop chord: rotation (w1, n, nb, ...)
            self.splice_after(w1, nb);
            self.splice_after(w1, n);
        } else {
            self.splice_after(w1, n);
            self.splice_after(w2, nb);
        }
        (n, nb)
    }

    /// Chord that must stay inside one face.
    pub fn chord_checked(&mut self, w1: Dart, w2: Dart, l: EdgeLabel) -> Result<(Dart, Dart)> {
        if !self.same_face(self.corner_face_dart(w1), self.corner_face_dart(w2)) {
            return Err(Error::InvalidOperand(
                "chord corners do not share a face".into(),
            ));
        }
        Ok(self.chord(w1, w2, l))
    }

    /// Draw a new strand along `route`. Returns one dart of the new strand.
    ///
    /// Every crossing subdivides the crossed edge at a new degree-4 vertex
    /// with strictly alternating rotation, so transversality is built in.
    /// A crossing entry names an edge by one of its darts; when the named
    /// side does not border the strand's current face but the other side
    /// does, the other side is used (route generators only need to name the
    /// right edges in the right order).
    pub fn draw(&mut self, route: &Route, l: EdgeLabel) -> Result<Dart> {
        let mut first_new: Option<Dart> = None;
        // state: current corner dart, and the closing corner for closed routes
        let (mut cur, closing): (Dart, Option<Dart>) = match route.start {
            RouteEnd::Corner(w) => {
                if !self.alive(w) {
                    return Err(Error::InvalidOperand("route start is dead".into()));
                }
                (w, None)
            }
            RouteEnd::Closed => {
                let Some((&s0, _)) = route.crossings.split_first() else {
                    return Err(Error::InvalidOperand(
                        "closed route needs at least one crossing".into(),
                    ));
                };
                if !self.alive(s0) {
                    return Err(Error::InvalidOperand("route crossing is dead".into()));
                }
                let (p, q) = self.subdivide(s0);
                (q, Some(p))
            }
        };
        let skip = if matches!(route.start, RouteEnd::Closed) { 1 } else { 0 };
        for (step, &s) in route.crossings.iter().enumerate().skip(skip) {
            if !self.alive(s) {
                return Err(Error::InvalidOperand(format!(
                    "route crossing {step} is dead"
                )));
            }
            // cross the edge of s from the strand's current face
            let here = self.corner_face_dart(cur);
            let s_eff = if self.same_face(here, s) {
                s
            } else if self.same_face(here, self.alpha(s)) {
                self.alpha(s)
            } else {
                return Err(Error::InvalidOperand(format!(
                    "route crossing {step}/{} unreachable from current face",
                    route.crossings.len()
                )));
            };
            let (p, q) = self.subdivide(s_eff);
            let (n, _) = self.chord_checked(cur, p, l)?;
            if first_new.is_none() {
                first_new = Some(n);
            }
            cur = q;
        }
        let end_corner = match route.end {
            RouteEnd::Corner(w) => w,
            RouteEnd::Closed => closing.ok_or_else(|| {
                Error::InvalidOperand("closed end without closed start".into())
            })?,
        };
        let (n, _) = self.chord_checked(cur, end_corner, l)?;
        if first_new.is_none() {
            first_new = Some(n);
        }
        Ok(first_new.unwrap())
    }

    /// A corner in the same face as corner `w` whose vertex can accept a new
    /// attachment without breaking the crossing-vertex invariant. When the
    /// vertex of `w` hosts two crossing components, the edge of `w` is
    /// subdivided and the fresh degree-2 vertex is used instead.
    pub fn attachment_corner(&mut self, w: Dart) -> Dart {
        let vd = self.vertex_darts(w);
        let mut comps: Vec<EdgeLabel> = vd
            .iter()
            .map(|&d| self.label(d))
            .filter(|l| l.family != Family::Scaffold)
            .collect();
        comps.sort_unstable();
        comps.dedup();
        if comps.len() < 2 {
            return w;
        }
        let (_, q) = self.subdivide(w);
        q
    }

    /// Insert a crossing-free closed loop of label `l` inside the face at
    /// corner `w`, tethered to the corner by a scaffold edge.
    pub fn insert_tethered_loop(&mut self, w: Dart, l: EdgeLabel) -> (Dart, Dart) {
        let w = self.attachment_corner(w);
        let (t, t_bar) = self.new_edge(EdgeLabel::new(Family::Scaffold, self.fresh_component(Family::Scaffold)));
        let (n, nb) = self.new_edge(l);
        // tether tail at corner w
        self.splice_after(w, t);
        // loop vertex rotation: (t_bar, n, nb)
        self.sigma[t_bar as usize] = n;
        self.sigma[n as usize] = nb;
        self.sigma[nb as usize] = t_bar;
        self.sigma_prev[n as usize] = t_bar;
        self.sigma_prev[nb as usize] = n;
        self.sigma_prev[t_bar as usize] = nb;
        (n, t)
    }

    /// Smallest unused component index in a family.
    pub fn fresh_component(&self, family: Family) -> u32 {
        self.fresh_components(family, 1)[0]
    }

    /// The `k` smallest unused component indices in a family.
    pub fn fresh_components(&self, family: Family, k: usize) -> Vec<u32> {
        let mut used: Vec<u32> = self
            .label
            .iter()
            .flatten()
            .filter(|l| l.family == family)
            .map(|l| l.component)
            .collect();
        used.sort_unstable();
        used.dedup();
        let mut out = Vec::with_capacity(k);
        let mut c = 0;
        let mut it = used.into_iter().peekable();
        while out.len() < k {
            match it.peek() {
                Some(&u) if u == c => {
                    it.next();
                }
                Some(&u) if u < c => {
                    it.next();
                    continue;
                }
                _ => out.push(c),
            }
            c += 1;
        }
        out
    }

    /// Kill a single dart (caller is responsible for permutation hygiene).
    fn kill(&mut self, d: Dart) {
        self.unsplice(d);
        self.label[d as usize] = None;
    }

    /// Delete one edge entirely, merging its two adjacent faces.
    pub fn delete_edge(&mut self, d: Dart) {
        let a = self.alpha(d);
        self.kill(d);
        self.kill(a);
    }

    /// Dissolve a degree-2 vertex by merging its two distinct edges.
    /// Both edges must carry the same label.
    pub fn dissolve_degree2(&mut self, d: Dart) -> Result<()> {
        let e = self.sigma(d);
        if e == d || self.sigma(e) != d {
            return Err(Error::InvalidOperand("not a degree-2 vertex".into()));
        }
        let da = self.alpha(d);
        let ea = self.alpha(e);
        if da == e {
            return Err(Error::InvalidOperand("cannot dissolve a bare loop".into()));
        }
        if self.label(d) != self.label(e) {
            return Err(Error::InvalidOperand("dissolve label mismatch".into()));
        }
        // merge: da -- ea become partners
        self.alpha[da as usize] = ea;
        self.alpha[ea as usize] = da;
        self.label[d as usize] = None;
        self.label[e as usize] = None;
        self.sigma[d as usize] = d;
        self.sigma[e as usize] = e;
        self.sigma_prev[d as usize] = d;
        self.sigma_prev[e as usize] = e;
        Ok(())
    }

    /// Delete every edge of a component, dissolving crossing vertices left
    /// at degree 2 and pruning any dangling scaffold this exposes.
    pub fn delete_component(&mut self, family: Family, component: u32) {
        let target = EdgeLabel { family, component };
        let doomed: Vec<Dart> = self
            .darts()
            .into_iter()
            .filter(|&d| self.label(d) == target && d < self.alpha(d))
            .collect();
        for d in doomed {
            self.delete_edge(d);
        }
        self.cleanup_degree2();
    }

    /// Dissolve all mergeable degree-2 vertices (same label both sides,
    /// not marked, not bare loops, not boundary-adjacent junctions).
    /// Scaffold edges of different components are merged onto one label.
    pub fn cleanup_degree2(&mut self) {
        loop {
            let mut again = false;
            for d in self.darts() {
                if !self.alive(d) {
                    continue;
                }
                let e = self.sigma(d);
                if e == d || self.sigma(e) != d || self.alpha(d) == e {
                    continue;
                }
                let (ld, le) = (self.label(d), self.label(e));
                if ld != le {
                    if ld.family == Family::Scaffold && le.family == Family::Scaffold {
                        let low = ld.component.min(le.component);
                        self.set_label(d, EdgeLabel::new(Family::Scaffold, low));
                        self.set_label(e, EdgeLabel::new(Family::Scaffold, low));
                    } else {
                        continue;
                    }
                }
                if self.is_marked_vertex(d) {
                    continue;
                }
                if self.dissolve_degree2(d).is_ok() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
    }

    fn is_marked_vertex(&self, d: Dart) -> bool {
        let vd = self.vertex_darts(d);
        self.marked.iter().any(|&(m, _)| vd.contains(&m))
    }

    /// Remove dangling scaffold edges (an end of degree 1), repeatedly.
    /// Fully isolated edges are kept; deleting them would drop a component.
    pub fn prune_dangling_scaffold(&mut self) {
        loop {
            let mut removed = false;
            for d in self.darts() {
                if !self.alive(d) {
                    continue;
                }
                if self.label(d).family != Family::Scaffold {
                    continue;
                }
                // degree-1 vertex at d, and the far end is not also bare
                if self.sigma(d) == d
                    && self.sigma(self.alpha(d)) != self.alpha(d)
                    && !self.is_marked_vertex(d)
                {
                    self.delete_edge(d);
                    removed = true;
                }
            }
            if !removed {
                break;
            }
        }
    }

    /// Raw splice access for gluing code.
    pub(crate) fn splice_after_raw(&mut self, w: Dart, n: Dart) {
        self.splice_after(w, n);
    }

    pub(crate) fn unsplice_raw(&mut self, d: Dart) {
        self.unsplice(d);
    }

    pub(crate) fn new_edge_raw(&mut self, l: EdgeLabel) -> (Dart, Dart) {
        self.new_edge(l)
    }

    pub(crate) fn set_marked_raw(&mut self, marked: Vec<(Dart, Sign)>) {
        self.marked = marked;
    }

    pub(crate) fn alpha_raw_mut(&mut self) -> &mut Vec<Dart> {
        &mut self.alpha
    }

    pub(crate) fn sigma_raw_mut(&mut self) -> &mut Vec<Dart> {
        &mut self.sigma
    }

    pub(crate) fn sigma_prev_raw_mut(&mut self) -> &mut Vec<Dart> {
        &mut self.sigma_prev
    }

    pub(crate) fn label_raw(&self) -> &Vec<Option<EdgeLabel>> {
        &self.label
    }

    pub(crate) fn label_raw_mut(&mut self) -> &mut Vec<Option<EdgeLabel>> {
        &mut self.label
    }

    pub(crate) fn push_raw(&mut self, alpha: Dart, sigma: Dart, label: Option<EdgeLabel>) {
        self.alpha.push(alpha);
        self.sigma.push(sigma);
        self.sigma_prev.push(0);
        self.label.push(label);
    }
}

impl Default for Work {
    fn default() -> Self {
        Work::new()
    }
}
