//! Dart-based combinatorial maps encoding compact oriented surfaces together
//! with labeled curve and arc systems, boundary circles, and marked points.
//!
//! A map is a pair of permutations on a dense set of darts: `alpha` (the
//! fixed-point-free edge involution) and `sigma` (counterclockwise dart order
//! around each vertex). Vertices are sigma-orbits, faces are orbits of
//! `sigma . alpha`. Every face of a valid map is a disk; surfaces with
//! boundary are modeled by capping each boundary circle with a face whose
//! darts all lie on `Boundary` edges, and those cap faces are excluded from
//! the interior face count.

mod canonical;
mod ops;
mod work;

pub use ops::ParallelSide;
pub use work::{Route, RouteEnd, Work};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub type Dart = u32;

/// Label family of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Alpha,
    Beta,
    Gamma,
    ArcA,
    ArcB,
    ArcC,
    Boundary,
    Scaffold,
}

impl Family {
    pub const CURVES: [Family; 3] = [Family::Alpha, Family::Beta, Family::Gamma];
    pub const ARCS: [Family; 3] = [Family::ArcA, Family::ArcB, Family::ArcC];

    pub fn is_curve(self) -> bool {
        matches!(self, Family::Alpha | Family::Beta | Family::Gamma)
    }

    pub fn is_arc(self) -> bool {
        matches!(self, Family::ArcA | Family::ArcB | Family::ArcC)
    }

    /// Arc family associated to a curve family and vice versa.
    pub fn partner(self) -> Option<Family> {
        match self {
            Family::Alpha => Some(Family::ArcA),
            Family::Beta => Some(Family::ArcB),
            Family::Gamma => Some(Family::ArcC),
            Family::ArcA => Some(Family::Alpha),
            Family::ArcB => Some(Family::Beta),
            Family::ArcC => Some(Family::Gamma),
            _ => None,
        }
    }

    pub fn rank(self) -> u8 {
        match self {
            Family::Alpha => 0,
            Family::Beta => 1,
            Family::Gamma => 2,
            Family::ArcA => 3,
            Family::ArcB => 4,
            Family::ArcC => 5,
            Family::Boundary => 6,
            Family::Scaffold => 7,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
            Family::Gamma => "gamma",
            Family::ArcA => "arc_a",
            Family::ArcB => "arc_b",
            Family::ArcC => "arc_c",
            Family::Boundary => "boundary",
            Family::Scaffold => "scaffold",
        };
        write!(f, "{s}")
    }
}

/// Sign of a marked point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Per-edge label; both darts of an edge carry the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub family: Family,
    pub component: u32,
}

impl EdgeLabel {
    pub fn new(family: Family, component: u32) -> Self {
        EdgeLabel { family, component }
    }
}

/// Immutable combinatorial map. All structural operations return new values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMap {
    pub(crate) alpha: Vec<Dart>,
    pub(crate) sigma: Vec<Dart>,
    pub(crate) label: Vec<EdgeLabel>,
    /// Marked vertices, addressed by the minimal dart of their sigma-orbit.
    pub(crate) marked: Vec<(Dart, Sign)>,
    /// Whether the map is allowed to have several connected components.
    pub(crate) multi_ok: bool,
}

impl CellMap {
    /// Build a map from raw permutation data and validate it.
    pub fn build(
        alpha: Vec<Dart>,
        sigma: Vec<Dart>,
        label: Vec<EdgeLabel>,
        marked: Vec<(Dart, Sign)>,
        multi_ok: bool,
    ) -> Result<CellMap> {
        let m = CellMap { alpha, sigma, label, marked, multi_ok };
        m.validate()?;
        Ok(m)
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        0..self.alpha.len() as Dart
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d as usize]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d as usize]
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        // darts are few; scan of the orbit is fine
        let mut x = d;
        loop {
            let n = self.sigma(x);
            if n == d {
                return x;
            }
            x = n;
        }
    }

    /// Next dart along the face boundary.
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma(self.alpha(d))
    }

    pub fn label(&self, d: Dart) -> EdgeLabel {
        self.label[d as usize]
    }

    pub fn marked_points(&self) -> &[(Dart, Sign)] {
        &self.marked
    }

    pub fn is_multi_ok(&self) -> bool {
        self.multi_ok
    }

    fn orbits(&self, next: impl Fn(Dart) -> Dart) -> Vec<Vec<Dart>> {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as Dart {
            if seen[start as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                seen[d as usize] = true;
                orbit.push(d);
                d = next(d);
                if d == start {
                    break;
                }
            }
            out.push(orbit);
        }
        out
    }

    /// Vertices as sigma-orbits, in order of minimal dart.
    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        self.orbits(|d| self.sigma(d))
    }

    /// Faces as orbits of sigma . alpha, in order of minimal dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        self.orbits(|d| self.phi(d))
    }

    /// Minimal dart of the vertex containing `d`.
    pub fn vertex_id(&self, d: Dart) -> Dart {
        let mut min = d;
        let mut x = self.sigma(d);
        while x != d {
            min = min.min(x);
            x = self.sigma(x);
        }
        min
    }

    /// Minimal dart of the face containing `d`.
    pub fn face_id(&self, d: Dart) -> Dart {
        let mut min = d;
        let mut x = self.phi(d);
        while x != d {
            min = min.min(x);
            x = self.phi(x);
        }
        min
    }

    pub fn vertex_degree(&self, d: Dart) -> usize {
        let mut n = 1;
        let mut x = self.sigma(d);
        while x != d {
            n += 1;
            x = self.sigma(x);
        }
        n
    }

    pub fn marked_sign_at(&self, d: Dart) -> Option<Sign> {
        let v = self.vertex_id(d);
        self.marked.iter().find(|(m, _)| *m == v).map(|(_, s)| *s)
    }

    /// A face is a boundary cap when every dart lies on a Boundary edge.
    pub fn is_cap_face(&self, face: &[Dart]) -> bool {
        !face.is_empty() && face.iter().all(|&d| self.label(d).family == Family::Boundary)
    }

    /// Boundary cap faces.
    pub fn cap_faces(&self) -> Vec<Vec<Dart>> {
        self.faces().into_iter().filter(|f| self.is_cap_face(f)).collect()
    }

    /// Number of boundary circles.
    pub fn boundary_count(&self) -> usize {
        self.cap_faces().len()
    }

    /// V - E + F counting interior faces only; equals 2 - 2g - b.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices().len() as i64;
        let e = (self.dart_count() / 2) as i64;
        let f = self.faces().iter().filter(|f| !self.is_cap_face(f)).count() as i64;
        v - e + f
    }

    /// Genus and boundary count of a connected map.
    pub fn genus_boundary(&self) -> Result<(usize, usize)> {
        let b = self.boundary_count();
        let chi = self.euler_characteristic();
        let twice_g = 2 - chi - b as i64;
        if twice_g < 0 || twice_g % 2 != 0 {
            return Err(Error::NonOrientable);
        }
        Ok(((twice_g / 2) as usize, b))
    }

    /// Connected components of the underlying graph of darts.
    pub fn connected_components(&self) -> Vec<Vec<Dart>> {
        let n = self.dart_count();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<Dart>> = Vec::new();
        for start in 0..n as Dart {
            if comp[start as usize] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            while let Some(d) = stack.pop() {
                if comp[d as usize] != usize::MAX {
                    continue;
                }
                comp[d as usize] = id;
                members.push(d);
                stack.push(self.alpha(d));
                stack.push(self.sigma(d));
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.dart_count() == 0 || self.connected_components().len() == 1
    }

    /// Component indices present in a family, ascending.
    pub fn components(&self, family: Family) -> Vec<u32> {
        let mut set: Vec<u32> = self
            .darts()
            .filter(|&d| self.label(d).family == family)
            .map(|d| self.label(d).component)
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    pub fn component_count(&self, family: Family) -> usize {
        self.components(family).len()
    }

    fn component_dart_set(&self, family: Family, component: u32) -> Vec<Dart> {
        self.darts()
            .filter(|&d| self.label(d) == EdgeLabel { family, component })
            .collect()
    }

    /// The unique continuation of a component through the head vertex of `d`,
    /// or None at an arc endpoint.
    pub fn component_step(&self, d: Dart) -> Option<Dart> {
        let lab = self.label(d);
        let at_head = self.alpha(d);
        let mut x = self.sigma(at_head);
        while x != at_head {
            if self.label(x) == lab {
                return Some(x);
            }
            x = self.sigma(x);
        }
        None
    }

    /// Walk a component from its minimal dart. For a closed component this is
    /// a cyclic dart sequence; for an arc it runs endpoint to endpoint.
    /// Returns (darts in traversal order, is_closed).
    pub fn walk_component(&self, family: Family, component: u32) -> Result<(Vec<Dart>, bool)> {
        let set = self.component_dart_set(family, component);
        if set.is_empty() {
            return Err(Error::InvalidOperand(format!("no component {component} in {family}")));
        }
        // find endpoint darts: darts whose tail vertex has exactly one dart of the component
        let mut tail_count: BTreeMap<Dart, Vec<Dart>> = BTreeMap::new();
        for &d in &set {
            tail_count.entry(self.vertex_id(d)).or_default().push(d);
        }
        let endpoints: Vec<Dart> = tail_count
            .values()
            .filter(|v| v.len() == 1)
            .map(|v| v[0])
            .collect();
        let closed = endpoints.is_empty();
        let start = if closed { *set.iter().min().unwrap() } else { *endpoints.iter().min().unwrap() };
        let mut order = vec![start];
        let mut cur = start;
        loop {
            match self.component_step(cur) {
                Some(next) => {
                    if next == start {
                        break;
                    }
                    order.push(next);
                    cur = next;
                }
                None => break,
            }
            if order.len() > set.len() / 2 + 1 {
                return Err(Error::InvalidMap(format!(
                    "component {family}:{component} is not a simple curve or arc"
                )));
            }
        }
        if order.len() != set.len() / 2 {
            return Err(Error::InvalidMap(format!(
                "component {family}:{component} does not form a single strand"
            )));
        }
        Ok((order, closed))
    }

    pub fn is_closed_component(&self, family: Family, component: u32) -> Result<bool> {
        Ok(self.walk_component(family, component)?.1)
    }

    /// Entry (i, j): number of crossing vertices between component i of
    /// family a and component j of family b.
    pub fn geometric_intersections(&self, fam_a: Family, fam_b: Family) -> Vec<Vec<u64>> {
        assert_ne!(fam_a, fam_b, "families must differ");
        let comps_a = self.components(fam_a);
        let comps_b = self.components(fam_b);
        let index_a: BTreeMap<u32, usize> = comps_a.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let index_b: BTreeMap<u32, usize> = comps_b.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = vec![vec![0u64; comps_b.len()]; comps_a.len()];
        for vertex in self.vertices() {
            if vertex.len() != 4 {
                continue;
            }
            let l0 = self.label(vertex[0]);
            let l1 = self.label(vertex[1]);
            if self.label(vertex[2]) != l0 || self.label(vertex[3]) != l1 || l0 == l1 {
                continue;
            }
            for (x, y) in [(l0, l1), (l1, l0)] {
                if x.family == fam_a && y.family == fam_b {
                    out[index_a[&x.component]][index_b[&y.component]] += 1;
                }
            }
        }
        out
    }

    /// Full structural validation.
    pub fn validate(&self) -> Result<()> {
        let n = self.dart_count();
        if n == 0 {
            return Err(Error::InvalidMap("empty map".into()));
        }
        if n % 2 != 0 {
            return Err(Error::PermutationMalformed);
        }
        // alpha: fixed-point-free involution; sigma: permutation
        let mut seen = vec![false; n];
        for d in self.darts() {
            let a = self.alpha[d as usize];
            if a as usize >= n || a == d || self.alpha[a as usize] != d {
                return Err(Error::PermutationMalformed);
            }
            let s = self.sigma[d as usize];
            if s as usize >= n {
                return Err(Error::PermutationMalformed);
            }
            if seen[s as usize] {
                return Err(Error::PermutationMalformed);
            }
            seen[s as usize] = true;
        }
        if self.label.len() != n {
            return Err(Error::PermutationMalformed);
        }
        // labels agree across each edge
        for d in self.darts() {
            if self.label(d) != self.label(self.alpha(d)) {
                return Err(Error::InvalidMap("edge label mismatch".into()));
            }
        }
        if !self.multi_ok && !self.is_connected() {
            return Err(Error::DisconnectedWithoutFlag);
        }
        // genus consistency
        if self.is_connected() && n > 0 {
            self.genus_boundary()?;
        }
        self.validate_vertices()?;
        self.validate_boundary()?;
        self.validate_family_disjointness()?;
        self.validate_marks()?;
        Ok(())
    }

    fn validate_vertices(&self) -> Result<()> {
        for vertex in self.vertices() {
            let labels: Vec<EdgeLabel> = vertex.iter().map(|&d| self.label(d)).collect();
            let mut distinct: Vec<EdgeLabel> = labels.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let non_scaffold: Vec<EdgeLabel> = distinct
                .iter()
                .copied()
                .filter(|l| l.family != Family::Scaffold && l.family != Family::Boundary)
                .collect();
            let has_boundary = labels.iter().any(|l| l.family == Family::Boundary);
            if has_boundary {
                // boundary vertex: exactly two boundary darts plus at most one attachment
                let b = labels.iter().filter(|l| l.family == Family::Boundary).count();
                if b != 2 || vertex.len() > 3 {
                    return Err(Error::InvalidMap("malformed boundary vertex".into()));
                }
                continue;
            }
            // interior vertex: components passing through must pair up
            if non_scaffold.len() > 2 {
                return Err(Error::InvalidMap("more than two components at a vertex".into()));
            }
            if non_scaffold.len() == 2 {
                // crossing vertex: degree 4, alternating labels
                if vertex.len() != 4 {
                    return Err(Error::InvalidMap("crossing vertex degree != 4".into()));
                }
                let l0 = labels[0];
                if !(labels[2] == l0 && labels[1] == labels[3] && labels[1] != l0) {
                    return Err(Error::InvalidMap("crossing vertex does not alternate".into()));
                }
            }
            if non_scaffold.len() == 1 {
                let lab = non_scaffold[0];
                let k = labels.iter().filter(|&&l| l == lab).count();
                if k != 2 && k != 1 {
                    return Err(Error::InvalidMap("component does not pass straight through".into()));
                }
                if k == 2 && vertex.len() == 4 {
                    // a transverse crossing with a scaffold strand must
                    // alternate; a one-sided scaffold attachment pair is fine
                    let pos: Vec<usize> = (0..4).filter(|&i| labels[i] == lab).collect();
                    let scaffold_comps: std::collections::BTreeSet<u32> = (0..4)
                        .filter(|&i| labels[i] != lab)
                        .map(|i| labels[i].component)
                        .collect();
                    if scaffold_comps.len() == 1 && pos[1] - pos[0] != 2 {
                        return Err(Error::InvalidMap("crossing vertex does not alternate".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_boundary(&self) -> Result<()> {
        // each Boundary edge must have exactly one dart in a cap face
        let faces = self.faces();
        let mut in_cap = vec![false; self.dart_count()];
        for f in &faces {
            if self.is_cap_face(f) {
                for &d in f {
                    in_cap[d as usize] = true;
                }
            }
        }
        for d in self.darts() {
            if self.label(d).family == Family::Boundary {
                let mine = in_cap[d as usize];
                let other = in_cap[self.alpha(d) as usize];
                if mine == other {
                    return Err(Error::InvalidMap(
                        "boundary edge is not adjacent to exactly one cap".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn validate_family_disjointness(&self) -> Result<()> {
        // curves of one cut system are embedded and pairwise disjoint; arc
        // systems are only constrained at the diagram level (a transient
        // return arc may cross its family)
        for vertex in self.vertices() {
            let mut curve_comps: Vec<EdgeLabel> = vertex
                .iter()
                .map(|&d| self.label(d))
                .filter(|l| l.family.is_curve())
                .collect();
            curve_comps.sort_unstable();
            curve_comps.dedup();
            for i in 0..curve_comps.len() {
                for j in (i + 1)..curve_comps.len() {
                    if curve_comps[i].family == curve_comps[j].family {
                        return Err(Error::FamilyDisjointnessViolated(
                            curve_comps[i].family.to_string(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_marks(&self) -> Result<()> {
        if self.marked.len() > 2 {
            return Err(Error::InvalidMap("more than two marked points".into()));
        }
        let mut signs: Vec<Sign> = self.marked.iter().map(|(_, s)| *s).collect();
        signs.sort();
        signs.dedup();
        if signs.len() != self.marked.len() {
            return Err(Error::InvalidMap("duplicate marked sign".into()));
        }
        for &(v, _) in &self.marked {
            if v as usize >= self.dart_count() || self.vertex_id(v) != v {
                return Err(Error::NoSuchMarkedPoint);
            }
            if self.vertex_degree(v) != 2 {
                return Err(Error::InvalidMap("marked point not a degree-2 vertex".into()));
            }
            let mut x = v;
            loop {
                if self.label(x).family != Family::Scaffold {
                    return Err(Error::InvalidMap("marked point not on scaffold".into()));
                }
                x = self.sigma(x);
                if x == v {
                    break;
                }
            }
        }
        Ok(())
    }

    /// Open a mutable working copy.
    pub fn to_work(&self) -> Work {
        Work::from_map(self)
    }
}

#[cfg(test)]
pub mod tests;
