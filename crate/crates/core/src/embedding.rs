//! 1-plane embeddings stored as planarized rotation systems.
//!
//! A [`OnePlaneGraph`] is the plane graph obtained from a 1-plane drawing by
//! putting a degree-4 *virtual* vertex on every crossing. Each undirected
//! edge of that plane graph is a pair of darts `2e` and `2e + 1`; every
//! vertex lists its outgoing darts in counterclockwise order.
//!
//! Real vertices always occupy ids `0..real_count()`, virtual vertices come
//! after them, so real ids coincide with vertex ids of [`underlying_graph`].
//!
//! [`underlying_graph`]: OnePlaneGraph::underlying_graph

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A half-edge. The twin of dart `d` is `d ^ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart(pub usize);

impl Dart {
    #[inline]
    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    /// Index of the undirected planarization edge this dart belongs to.
    #[inline]
    pub fn edge(self) -> usize {
        self.0 >> 1
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Real,
    Virtual,
}

/// A face of the planarization: the cyclic dart sequence of its boundary walk,
/// starting at its smallest dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    darts: Vec<Dart>,
}

impl Face {
    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    /// Length of the boundary walk, `d(f)`.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Stable identifier: the smallest dart on the boundary.
    pub fn id(&self) -> Dart {
        self.darts[0]
    }
}

/// An original edge of the underlying graph as it appears in the planarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OriginalEdge {
    pub u: VertexId,
    pub v: VertexId,
    /// Virtual vertex where the edge is crossed, if any.
    pub crossing: Option<VertexId>,
    /// Dart leaving `u` along this edge.
    pub dart_u: Dart,
    /// Dart leaving `v` along this edge.
    pub dart_v: Dart,
}

/// A broken 1-plane invariant, with the witness that breaks it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    VirtualDegree {
        vertex: VertexId,
        degree: usize,
    },
    AdjacentVirtual {
        a: VertexId,
        b: VertexId,
    },
    Loop {
        vertex: VertexId,
    },
    /// The two darts of one original edge at a virtual vertex lead to the same real vertex.
    UnderlyingLoop {
        crossing: VertexId,
        vertex: VertexId,
    },
    ParallelEdges {
        u: VertexId,
        v: VertexId,
    },
    Euler {
        root: VertexId,
        vertices: usize,
        edges: usize,
        faces: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePlaneGraph {
    kinds: Vec<VertexKind>,
    rotation: Vec<Vec<Dart>>,
    origin: Vec<VertexId>,
    position: Vec<usize>,
    real_count: usize,
}

impl OnePlaneGraph {
    /// Builds an embedding from per-vertex counterclockwise dart lists.
    ///
    /// Only the bookkeeping is checked here: real vertices precede virtual
    /// ones and the darts are exactly `0..2m`, each used once. Everything
    /// else is left to [`validate`](Self::validate).
    pub fn from_rotations(kinds: Vec<VertexKind>, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        if kinds.len() != rotation.len() {
            return Err(Error::MalformedRotation(format!(
                "{} vertex kinds but {} rotations",
                kinds.len(),
                rotation.len()
            )));
        }
        let real_count = kinds.iter().take_while(|k| **k == VertexKind::Real).count();
        if kinds[real_count..].contains(&VertexKind::Real) {
            return Err(Error::MalformedRotation(
                "real vertices must precede virtual vertices".into(),
            ));
        }
        let total: usize = rotation.iter().map(Vec::len).sum();
        if !total.is_multiple_of(2) {
            return Err(Error::MalformedRotation(format!("odd number of darts ({total})")));
        }
        let mut origin = vec![usize::MAX; total];
        let mut position = vec![0; total];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, d) in rot.iter().enumerate() {
                if d.0 >= total {
                    return Err(Error::MalformedRotation(format!(
                        "dart {} out of range at vertex {v}",
                        d.0
                    )));
                }
                if origin[d.0] != usize::MAX {
                    return Err(Error::MalformedRotation(format!("dart {} appears twice", d.0)));
                }
                origin[d.0] = v;
                position[d.0] = i;
            }
        }
        Ok(OnePlaneGraph {
            kinds,
            rotation,
            origin,
            position,
            real_count,
        })
    }

    /// Builds an embedding from per-vertex counterclockwise *neighbor* lists.
    ///
    /// The `k`-th occurrence of `v` in `u`'s list is paired with the `k`-th
    /// occurrence of `u` in `v`'s list, so parallel planarization edges are
    /// only meaningful when that pairing is the intended one.
    pub fn from_neighbor_rotations(kinds: Vec<VertexKind>, rotation: &[Vec<VertexId>]) -> Result<Self> {
        let n = rotation.len();
        let mut pending: BTreeMap<(VertexId, VertexId), Vec<Dart>> = BTreeMap::new();
        let mut next_edge = 0;
        let mut darts: Vec<Vec<Dart>> = vec![Vec::new(); n];
        // First pass: the smaller endpoint allocates the edge.
        for u in 0..n {
            for &v in &rotation[u] {
                if v >= n {
                    return Err(Error::MalformedRotation(format!("neighbor {v} of {u} out of range")));
                }
                if u == v {
                    return Err(Error::MalformedRotation(format!("loop at {u}")));
                }
                if u < v {
                    let d = Dart(2 * next_edge);
                    next_edge += 1;
                    darts[u].push(d);
                    pending.entry((u, v)).or_default().push(d.twin());
                } else {
                    darts[u].push(Dart(usize::MAX));
                }
            }
        }
        for u in 0..n {
            for (i, &v) in rotation[u].iter().enumerate() {
                if u > v {
                    let queue = pending.get_mut(&(v, u)).filter(|q| !q.is_empty()).ok_or_else(|| {
                        Error::MalformedRotation(format!("{u} lists {v} more often than {v} lists {u}"))
                    })?;
                    darts[u][i] = queue.remove(0);
                }
            }
        }
        if let Some(((u, v), _)) = pending.iter().find(|(_, q)| !q.is_empty()) {
            return Err(Error::MalformedRotation(format!(
                "{u} lists {v} more often than {v} lists {u}"
            )));
        }
        Self::from_rotations(kinds, darts)
    }

    /// Builds the rotation system of a straight-line drawing: neighbors are
    /// ordered counterclockwise by angle. `segments` are planarization edges,
    /// so a crossing must already be a virtual vertex at the intersection.
    pub fn from_straight_line(
        kinds: Vec<VertexKind>,
        points: &[(f64, f64)],
        segments: &[(VertexId, VertexId)],
    ) -> Result<Self> {
        if points.len() != kinds.len() {
            return Err(Error::MalformedRotation(format!(
                "{} points for {} vertices",
                points.len(),
                kinds.len()
            )));
        }
        let mut nb: Vec<Vec<VertexId>> = vec![Vec::new(); points.len()];
        for &(a, b) in segments {
            if a >= points.len() || b >= points.len() {
                return Err(Error::MalformedRotation(format!("segment {a}-{b} out of range")));
            }
            nb[a].push(b);
            nb[b].push(a);
        }
        for (v, list) in nb.iter_mut().enumerate() {
            let (x, y) = points[v];
            list.sort_by(|&a, &b| {
                let ang = |u: VertexId| (points[u].1 - y).atan2(points[u].0 - x);
                ang(a).total_cmp(&ang(b))
            });
        }
        Self::from_neighbor_rotations(kinds, &nb)
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn real_count(&self) -> usize {
        self.real_count
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    /// Number of planarization edges.
    pub fn edge_count(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kinds[v]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn is_virtual(&self, v: VertexId) -> bool {
        self.kinds[v] == VertexKind::Virtual
    }

    pub fn virtual_vertices(&self) -> std::ops::Range<VertexId> {
        self.real_count..self.kinds.len()
    }

    /// Number of crossings, i.e. virtual vertices.
    pub fn crossing_count(&self) -> usize {
        self.kinds.len() - self.real_count
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    /// Degree in the planarization, `d_H(v)`.
    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn origin(&self, d: Dart) -> VertexId {
        self.origin[d.0]
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.origin[d.twin().0]
    }

    pub fn position(&self, d: Dart) -> usize {
        self.position[d.0]
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.origin.len()).map(Dart)
    }

    /// Counterclockwise successor of `d` around its origin.
    pub fn rot_next(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.origin(d)];
        rot[(self.position(d) + 1) % rot.len()]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.origin(d)];
        rot[(self.position(d) + rot.len() - 1) % rot.len()]
    }

    /// The dart after `d` on the boundary walk of the face to its right.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next(d.twin())
    }

    /// For a dart entering a degree-4 vertex, the dart leaving it on the
    /// opposite side, i.e. the continuation of the same original edge.
    pub fn straight_through(&self, incoming: Dart) -> Dart {
        let t = incoming.twin();
        let rot = &self.rotation[self.origin(t)];
        rot[(self.position(t) + 2) % rot.len()]
    }

    /// All faces, each starting at its smallest dart, ordered by that dart.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = vec![false; self.dart_count()];
        let mut faces = Vec::new();
        for start in self.darts() {
            if seen[start.0] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while !seen[d.0] {
                seen[d.0] = true;
                darts.push(d);
                d = self.face_next(d);
            }
            faces.push(Face { darts });
        }
        faces
    }

    /// Index into [`faces`](Self::faces) of the face to the right of each dart.
    pub fn face_index(&self, faces: &[Face]) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.dart_count()];
        for (i, f) in faces.iter().enumerate() {
            for d in f.darts() {
                idx[d.0] = i;
            }
        }
        idx
    }

    /// Follows a dart leaving real vertex `u` to the other real endpoint of
    /// its original edge. Returns `None` if the structure around the crossing
    /// is broken (wrong degree or two adjacent virtual vertices).
    pub fn original_edge_from(&self, d: Dart) -> Option<OriginalEdge> {
        let u = self.origin(d);
        let h = self.head(d);
        if !self.is_virtual(h) {
            return Some(OriginalEdge {
                u,
                v: h,
                crossing: None,
                dart_u: d,
                dart_v: d.twin(),
            });
        }
        if self.degree(h) != 4 {
            return None;
        }
        let out = self.straight_through(d);
        let v = self.head(out);
        if self.is_virtual(v) {
            return None;
        }
        Some(OriginalEdge {
            u,
            v,
            crossing: Some(h),
            dart_u: d,
            dart_v: out.twin(),
        })
    }

    /// Original edges at real vertex `u`, in rotation order.
    pub fn original_edges_at(&self, u: VertexId) -> Vec<OriginalEdge> {
        self.rotation[u]
            .iter()
            .filter_map(|&d| self.original_edge_from(d))
            .collect()
    }

    /// The original edge joining `u` and `v`, if present.
    pub fn find_original_edge(&self, u: VertexId, v: VertexId) -> Option<OriginalEdge> {
        self.original_edges_at(u).into_iter().find(|e| e.v == v)
    }

    /// The two original edges through virtual vertex `w`, as
    /// `[(a, b), (c, d)]` where rotation positions 0,2 hold `a, b` and 1,3
    /// hold `c, d`.
    pub fn crossing_pair(&self, w: VertexId) -> Option<[(VertexId, VertexId); 2]> {
        let rot = &self.rotation[w];
        if !self.is_virtual(w) || rot.len() != 4 {
            return None;
        }
        let h: Vec<VertexId> = rot.iter().map(|&d| self.head(d)).collect();
        Some([(h[0], h[2]), (h[1], h[3])])
    }

    /// All original edges, each reported once from its smaller endpoint.
    pub fn original_edges(&self) -> Vec<OriginalEdge> {
        let mut out = Vec::new();
        for u in 0..self.real_count {
            for &d in &self.rotation[u] {
                if let Some(e) = self.original_edge_from(d) {
                    if e.u < e.v || (e.u == e.v && d.0 < e.dart_v.0) {
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    /// Checks every 1-plane invariant; the empty list means the embedding is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for w in self.virtual_vertices() {
            if self.degree(w) != 4 {
                out.push(Violation::VirtualDegree {
                    vertex: w,
                    degree: self.degree(w),
                });
            }
        }
        for d in self.darts() {
            let (a, b) = (self.origin(d), self.head(d));
            if a == b && d.0 & 1 == 0 {
                out.push(Violation::Loop { vertex: a });
            }
            if a < b && self.is_virtual(a) && self.is_virtual(b) {
                out.push(Violation::AdjacentVirtual { a, b });
            }
        }
        for w in self.virtual_vertices() {
            if let Some(pair) = self.crossing_pair(w) {
                for (a, b) in pair {
                    if a == b && !self.is_virtual(a) {
                        out.push(Violation::UnderlyingLoop { crossing: w, vertex: a });
                    }
                }
            }
        }
        let mut multiplicity: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for u in 0..self.real_count {
            for &d in &self.rotation[u] {
                if let Some(e) = self.original_edge_from(d) {
                    if e.u != e.v {
                        *multiplicity.entry((e.u.min(e.v), e.u.max(e.v))).or_default() += 1;
                    }
                }
            }
        }
        for ((u, v), m) in multiplicity {
            if m > 2 {
                out.push(Violation::ParallelEdges { u, v });
            }
        }
        out.extend(self.euler_violations());
        out.sort();
        out.dedup();
        out
    }

    /// Per-component Euler check on the planarization.
    fn euler_violations(&self) -> Vec<Violation> {
        let faces = self.faces();
        let face_idx = self.face_index(&faces);
        let mut out = Vec::new();
        for comp in self.components() {
            let vertices = comp.len();
            let mut darts = 0;
            let mut face_set = std::collections::BTreeSet::new();
            for &v in &comp {
                darts += self.degree(v);
                for d in &self.rotation[v] {
                    face_set.insert(face_idx[d.0]);
                }
            }
            let edges = darts / 2;
            // An isolated vertex bounds one (implicit) face.
            let faces = face_set.len().max(1);
            if vertices + faces != edges + 2 {
                out.push(Violation::Euler {
                    root: comp[0],
                    vertices,
                    edges,
                    faces,
                });
            }
        }
        out
    }

    /// Connected components of the planarization (sorted vertex lists).
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &d in &self.rotation[u] {
                    let h = self.head(d);
                    if !seen[h] {
                        seen[h] = true;
                        comp.push(h);
                        stack.push(h);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Recovers the abstract graph `G` by smoothing every crossing.
    pub fn underlying_graph(&self) -> Result<Graph> {
        let mut g = Graph::new(self.real_count);
        let mut seen = 0usize;
        for u in 0..self.real_count {
            for &d in &self.rotation[u] {
                let e = self
                    .original_edge_from(d)
                    .ok_or_else(|| Error::InvalidEmbedding(format!("broken crossing next to vertex {u}")))?;
                if e.u == e.v {
                    return Err(Error::InvalidEmbedding(format!("smoothing creates a loop at {u}")));
                }
                g.add_edge(e.u, e.v)?;
                seen += 1;
            }
        }
        if seen != 2 * g.edge_count() {
            let e = self
                .original_edges()
                .into_iter()
                .find(|e| self.original_edges_at(e.u).iter().filter(|f| f.v == e.v).count() > 1)
                .map(|e| (e.u, e.v))
                .unwrap_or((0, 0));
            return Err(Error::InvalidEmbedding(format!(
                "smoothing creates parallel edges {}-{}",
                e.0, e.1
            )));
        }
        Ok(g)
    }

    /// Deletes real vertices (and their original edges, re-fusing any edge
    /// they crossed). Returns the new embedding and the map from new real ids
    /// to old real ids.
    pub fn delete_real_vertices(&self, remove: &[VertexId]) -> Result<(OnePlaneGraph, Vec<VertexId>)> {
        let mut ed = Editor::new(self);
        for &x in remove {
            if x >= self.real_count {
                return Err(Error::NotAVertex(x));
            }
        }
        for &x in remove {
            ed.delete_real_vertex(x);
        }
        Ok(ed.finish_with_real_map())
    }

    /// Removes the original edge `uv`; a crossing on it disappears and the
    /// edge it crossed becomes uncrossed.
    pub fn remove_original_edge(&self, u: VertexId, v: VertexId) -> Result<OnePlaneGraph> {
        let e = self.find_original_edge(u, v).ok_or(Error::NotAnEdge(u, v))?;
        let mut ed = Editor::new(self);
        ed.remove_original_edge(e);
        Ok(ed.finish_with_real_map().0)
    }

    /// Components of the underlying graph as sorted real vertex lists,
    /// ordered by smallest vertex. Two edges crossing each other do not
    /// connect their endpoints.
    pub fn real_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.real_count;
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = out.len();
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &d in &self.rotation[u] {
                    if let Some(e) = self.original_edge_from(d) {
                        if comp[e.v] == usize::MAX {
                            comp[e.v] = out.len();
                            members.push(e.v);
                            stack.push(e.v);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Splits the embedding along the components of the underlying graph,
    /// each with the map from its real ids to ours. Crossings between edges
    /// of different components disappear.
    pub fn split_components(&self) -> Vec<(OnePlaneGraph, Vec<VertexId>)> {
        let comps = self.real_components();
        if comps.len() <= 1 {
            return vec![(self.clone(), (0..self.real_count).collect())];
        }
        let mut out = Vec::with_capacity(comps.len());
        for comp in &comps {
            let mut keep = vec![false; self.real_count];
            for &v in comp {
                keep[v] = true;
            }
            let mut ed = Editor::new(self);
            for v in (0..self.real_count).filter(|&v| !keep[v]) {
                ed.delete_real_vertex(v);
            }
            out.push(ed.finish_with_real_map());
        }
        out
    }

    /// Contracts the uncrossed original edge `xy` in the planarization:
    /// `x` disappears and its rotation is spliced into `y`'s at the position
    /// of the contracted edge. Real ids above `x` shift down by one.
    pub fn contract_uncrossed(&self, x: VertexId, y: VertexId) -> Result<(OnePlaneGraph, Vec<VertexId>)> {
        let d = self.rotation[x]
            .iter()
            .copied()
            .find(|&d| self.head(d) == y)
            .ok_or(Error::NotAnEdge(x, y))?;
        if self.is_virtual(x) || self.is_virtual(y) {
            return Err(Error::NotAnEdge(x, y));
        }
        let mut ed = Editor::new(self);
        ed.contract_dart(d);
        Ok(ed.finish_with_real_map())
    }
}

/// Mutable scratch form of an embedding used by the surgery operations.
/// Dead darts and vertices are compacted away by `finish`.
#[derive(Debug, Clone)]
pub(crate) struct Editor {
    kinds: Vec<VertexKind>,
    alive: Vec<bool>,
    rotation: Vec<Vec<Dart>>,
    origin: Vec<Option<VertexId>>,
}

impl Editor {
    pub(crate) fn new(e: &OnePlaneGraph) -> Self {
        Editor {
            kinds: e.kinds.clone(),
            alive: vec![true; e.vertex_count()],
            rotation: e.rotation.clone(),
            origin: e.origin.iter().map(|&v| Some(v)).collect(),
        }
    }

    pub(crate) fn head(&self, d: Dart) -> VertexId {
        self.origin[d.twin().0].expect("live dart")
    }

    pub(crate) fn origin(&self, d: Dart) -> VertexId {
        self.origin[d.0].expect("live dart")
    }

    pub(crate) fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    pub(crate) fn is_virtual(&self, v: VertexId) -> bool {
        self.kinds[v] == VertexKind::Virtual
    }

    fn pos(&self, d: Dart) -> usize {
        let v = self.origin(d);
        self.rotation[v]
            .iter()
            .position(|&x| x == d)
            .expect("dart in its rotation")
    }

    pub(crate) fn add_vertex(&mut self, kind: VertexKind) -> VertexId {
        self.kinds.push(kind);
        self.alive.push(true);
        self.rotation.push(Vec::new());
        self.kinds.len() - 1
    }

    /// Allocates an edge `u -> v` without placing it in any rotation.
    /// Returns the dart leaving `u`.
    pub(crate) fn new_edge(&mut self, u: VertexId, v: VertexId) -> Dart {
        let d = Dart(self.origin.len());
        self.origin.push(Some(u));
        self.origin.push(Some(v));
        d
    }

    /// Puts `d` into its origin's rotation directly after `anchor`.
    pub(crate) fn insert_after(&mut self, anchor: Dart, d: Dart) {
        let v = self.origin(anchor);
        debug_assert_eq!(self.origin(d), v);
        let p = self.pos(anchor);
        self.rotation[v].insert(p + 1, d);
    }

    /// Appends `d` to the (possibly empty) rotation of its origin.
    pub(crate) fn push_dart(&mut self, d: Dart) {
        let v = self.origin(d);
        self.rotation[v].push(d);
    }

    /// Replaces `old` by `new` in the rotation of `old`'s origin; `old` dies.
    pub(crate) fn replace(&mut self, old: Dart, new: Dart) {
        let v = self.origin(old);
        let p = self.pos(old);
        self.rotation[v][p] = new;
        self.origin[new.0] = Some(v);
        self.origin[old.0] = None;
    }

    fn kill_dart(&mut self, d: Dart) {
        if let Some(v) = self.origin[d.0] {
            if let Some(p) = self.rotation[v].iter().position(|&x| x == d) {
                self.rotation[v].remove(p);
            }
            self.origin[d.0] = None;
        }
    }

    pub(crate) fn remove_edge(&mut self, d: Dart) {
        self.kill_dart(d);
        self.kill_dart(d.twin());
    }

    /// Joins the far ends of two darts leaving virtual vertex `w` by a direct
    /// edge placed where the old segments were. The old segments die.
    pub(crate) fn fuse_through(&mut self, di: Dart, dj: Dart) {
        let (ti, tj) = (di.twin(), dj.twin());
        let (ni, nj) = (self.origin(ti), self.origin(tj));
        let a = self.new_edge(ni, nj);
        self.replace(ti, a);
        self.replace(tj, a.twin());
        self.kill_dart(di);
        self.kill_dart(dj);
    }

    /// Removes virtual vertex `w` by fusing rotation positions `(i, j)` and
    /// the remaining two positions into direct edges.
    pub(crate) fn resolve_virtual(&mut self, w: VertexId, i: usize, j: usize) {
        let rot = self.rotation[w].clone();
        debug_assert_eq!(rot.len(), 4);
        let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
        self.fuse_through(rot[i], rot[j]);
        self.fuse_through(rot[rest[0]], rot[rest[1]]);
        self.alive[w] = false;
    }

    /// Removes an original edge given by its dart at one endpoint.
    pub(crate) fn remove_original_edge(&mut self, e: OriginalEdge) {
        match e.crossing {
            None => self.remove_edge(e.dart_u),
            Some(w) => {
                let rot = self.rotation[w].clone();
                let k = rot
                    .iter()
                    .position(|&x| x == e.dart_u.twin())
                    .expect("edge through crossing");
                let (a, b) = (rot[(k + 1) % 4], rot[(k + 3) % 4]);
                self.fuse_through(a, b);
                self.remove_edge(e.dart_u);
                self.remove_edge(e.dart_v);
                self.alive[w] = false;
            }
        }
    }

    pub(crate) fn original_edge_from(&self, d: Dart) -> OriginalEdge {
        let u = self.origin(d);
        let h = self.head(d);
        if !self.is_virtual(h) {
            return OriginalEdge {
                u,
                v: h,
                crossing: None,
                dart_u: d,
                dart_v: d.twin(),
            };
        }
        let rot = &self.rotation[h];
        let k = rot.iter().position(|&x| x == d.twin()).expect("dart at crossing");
        let out = rot[(k + 2) % rot.len()];
        OriginalEdge {
            u,
            v: self.head(out),
            crossing: Some(h),
            dart_u: d,
            dart_v: out.twin(),
        }
    }

    pub(crate) fn delete_real_vertex(&mut self, x: VertexId) {
        while let Some(&d) = self.rotation[x].first() {
            let e = self.original_edge_from(d);
            self.remove_original_edge(e);
        }
        self.alive[x] = false;
    }

    /// Contracts the planarization edge of dart `d` (from `x` to `y`) into `y`.
    pub(crate) fn contract_dart(&mut self, d: Dart) {
        let x = self.origin(d);
        let rot = self.rotation[x].clone();
        let p = rot.iter().position(|&a| a == d).expect("dart at origin");
        let seq: Vec<Dart> = rot[p + 1..].iter().chain(rot[..p].iter()).copied().collect();
        let td = d.twin();
        let y = self.origin(td);
        let q = self.pos(td);
        for &a in &seq {
            self.origin[a.0] = Some(y);
        }
        self.rotation[y].splice(q..q + 1, seq);
        self.origin[td.0] = None;
        self.origin[d.0] = None;
        self.rotation[x].clear();
        self.alive[x] = false;
    }

    /// Exchanges the positions of two vertices in the drawing: afterwards `a`
    /// sits where `b` was and vice versa.
    pub(crate) fn swap_positions(&mut self, a: VertexId, b: VertexId) {
        self.rotation.swap(a, b);
        for v in [a, b] {
            for &d in &self.rotation[v] {
                self.origin[d.0] = Some(v);
            }
        }
    }

    /// Compacts ids (real vertices first, both groups in old id order; edges
    /// in old edge order) and returns the embedding with the new-to-old map
    /// for real vertices.
    pub(crate) fn finish_with_real_map(self) -> (OnePlaneGraph, Vec<VertexId>) {
        let n = self.kinds.len();
        let mut order: Vec<VertexId> = (0..n)
            .filter(|&v| self.alive[v] && self.kinds[v] == VertexKind::Real)
            .collect();
        let real_map = order.clone();
        order.extend((0..n).filter(|&v| self.alive[v] && self.kinds[v] == VertexKind::Virtual));

        let edges = self.origin.len() / 2;
        let mut edge_map = vec![usize::MAX; edges];
        let mut next = 0;
        for (e, slot) in edge_map.iter_mut().enumerate() {
            if self.origin[2 * e].is_some() && self.origin[2 * e + 1].is_some() {
                *slot = next;
                next += 1;
            }
        }
        let kinds = order.iter().map(|&v| self.kinds[v]).collect();
        let rotation = order
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .map(|d| Dart(2 * edge_map[d.edge()] + (d.0 & 1)))
                    .collect()
            })
            .collect();
        let g = OnePlaneGraph::from_rotations(kinds, rotation).expect("editor keeps darts consistent");
        (g, real_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use VertexKind::{Real, Virtual};

    fn cycle(n: usize) -> OnePlaneGraph {
        let rot: Vec<Vec<VertexId>> = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        OnePlaneGraph::from_neighbor_rotations(vec![Real; n], &rot).unwrap()
    }

    /// Square 0-1-2-3 with both diagonals crossing at virtual vertex 4.
    /// Coordinates: 0 (0,0), 1 (1,0), 2 (1,1), 3 (0,1), 4 (.5,.5).
    fn crossed_square() -> OnePlaneGraph {
        let rot = vec![
            vec![1, 4, 3],
            vec![2, 4, 0],
            vec![3, 4, 1],
            vec![0, 4, 2],
            vec![0, 1, 2, 3],
        ];
        OnePlaneGraph::from_neighbor_rotations(vec![Real, Real, Real, Real, Virtual], &rot).unwrap()
    }

    #[test]
    fn pentagon_is_valid() {
        let c5 = cycle(5);
        assert!(c5.validate().is_empty());
        assert_eq!(c5.crossing_count(), 0);
        let faces = c5.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 5));
    }

    #[test]
    fn triangle_and_k2_faces() {
        let tri = cycle(3);
        let faces = tri.faces();
        assert_eq!(faces.iter().map(Face::len).collect::<Vec<_>>(), vec![3, 3]);

        let k2 = OnePlaneGraph::from_neighbor_rotations(vec![Real, Real], &[vec![1], vec![0]]).unwrap();
        let faces = k2.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 2);
        assert!(k2.validate().is_empty());
    }

    #[test]
    fn faces_partition_darts_and_walk_back() {
        let e = crossed_square();
        let faces = e.faces();
        let total: usize = faces.iter().map(Face::len).sum();
        assert_eq!(total, e.dart_count());
        for f in &faces {
            for (i, &d) in f.darts().iter().enumerate() {
                assert_eq!(e.face_next(d), f.darts()[(i + 1) % f.len()]);
            }
        }
    }

    #[test]
    fn crossed_square_smooths_to_k4() {
        let e = crossed_square();
        assert!(e.validate().is_empty(), "{:?}", e.validate());
        assert_eq!(e.crossing_count(), 1);
        let g = e.underlying_graph().unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.has_edge(0, 2) && g.has_edge(1, 3));
        assert_eq!(e.crossing_pair(4), Some([(0, 2), (1, 3)]));
    }

    #[test]
    fn degree_three_virtual_is_reported() {
        // Star with a "virtual" center of degree 3.
        let rot = vec![vec![3], vec![3], vec![3], vec![0, 1, 2]];
        let e = OnePlaneGraph::from_neighbor_rotations(vec![Real, Real, Real, Virtual], &rot).unwrap();
        let v = e.validate();
        assert!(v.contains(&Violation::VirtualDegree { vertex: 3, degree: 3 }), "{v:?}");
        assert!(e.underlying_graph().is_err());
    }

    #[test]
    fn twisted_rotation_breaks_euler() {
        // K4 drawn with an inconsistent rotation at one vertex has genus 1.
        let rot = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]];
        let e = OnePlaneGraph::from_neighbor_rotations(vec![Real; 4], &rot).unwrap();
        assert!(e.validate().iter().any(|v| matches!(v, Violation::Euler { .. })));
    }

    #[test]
    fn adjacent_virtual_vertices_reported() {
        // Two virtual vertices joined directly.
        let rot = vec![
            vec![6],
            vec![6],
            vec![6],
            vec![7],
            vec![7],
            vec![7],
            vec![0, 1, 7, 2],
            vec![3, 6, 4, 5],
        ];
        let mut kinds = vec![Real; 6];
        kinds.extend([Virtual, Virtual]);
        let e = OnePlaneGraph::from_neighbor_rotations(kinds, &rot).unwrap();
        assert!(e.validate().contains(&Violation::AdjacentVirtual { a: 6, b: 7 }));
    }

    #[test]
    fn malformed_rotations_rejected() {
        assert!(OnePlaneGraph::from_rotations(vec![Real, Real], vec![vec![Dart(0)], vec![Dart(0)]]).is_err());
        assert!(OnePlaneGraph::from_rotations(vec![Real, Real], vec![vec![Dart(0)], vec![]]).is_err());
        assert!(OnePlaneGraph::from_rotations(vec![Virtual, Real], vec![vec![], vec![]]).is_err());
        assert!(OnePlaneGraph::from_neighbor_rotations(vec![Real, Real], &[vec![1, 1], vec![0]]).is_err());
    }

    #[test]
    fn removing_crossed_edge_refuses_other() {
        let e = crossed_square();
        let r = e.remove_original_edge(0, 2).unwrap();
        assert!(r.validate().is_empty());
        assert_eq!(r.crossing_count(), 0);
        let g = r.underlying_graph().unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(g.has_edge(1, 3) && !g.has_edge(0, 2));
    }

    #[test]
    fn deleting_vertex_from_crossed_square() {
        let e = crossed_square();
        let (r, map) = e.delete_real_vertices(&[0]).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert!(r.validate().is_empty());
        assert_eq!(r.crossing_count(), 0);
        assert_eq!(r.underlying_graph().unwrap().edge_count(), 3);
    }

    #[test]
    fn contracting_uncrossed_edge() {
        let e = crossed_square();
        let (r, map) = e.contract_uncrossed(0, 1).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        // 0's edges 0-2 (crossed) and 0-3 now hang off the old 1: 1-2 becomes
        // parallel in G, so validation must notice.
        assert!(r
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::ParallelEdges { .. })));

        let (r, _) = cycle(5).contract_uncrossed(2, 3).unwrap();
        assert!(r.validate().is_empty());
        assert_eq!(r.faces().iter().map(Face::len).collect::<Vec<_>>(), vec![4, 4]);
    }

    #[test]
    fn split_separates_crossing_components() {
        // Two disjoint edges 0-2 and 1-3 crossing at 4.
        let rot = vec![vec![4], vec![4], vec![4], vec![4], vec![0, 1, 2, 3]];
        let e = OnePlaneGraph::from_neighbor_rotations(vec![Real, Real, Real, Real, Virtual], &rot).unwrap();
        assert!(e.validate().is_empty(), "{:?}", e.validate());
        assert_eq!(e.components().len(), 1);
        assert_eq!(e.real_components(), vec![vec![0, 2], vec![1, 3]]);
        let parts = e.split_components();
        assert_eq!(parts.len(), 2);
        for (p, map) in &parts {
            assert!(p.validate().is_empty());
            assert_eq!((p.real_count(), p.crossing_count(), p.edge_count()), (2, 0, 1));
            assert_eq!(map.len(), 2);
        }
        assert_eq!(parts[1].1, vec![1, 3]);
    }

    #[test]
    fn split_components_keeps_embeddings() {
        let rot = vec![vec![1], vec![0], vec![3, 4], vec![4, 2], vec![2, 3]];
        let e = OnePlaneGraph::from_neighbor_rotations(vec![Real; 5], &rot).unwrap();
        let parts = e.split_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].1, vec![0, 1]);
        assert_eq!(parts[1].1, vec![2, 3, 4]);
        assert!(parts.iter().all(|(p, _)| p.validate().is_empty()));
    }
}
