//! Combinatorial 1-drawings.
//!
//! A drawing is a graph, a list of crossing pairs of edges, and a rotation
//! system on the planarization: the original vertices plus one dummy node
//! per crossing. Node `v < n` is vertex `v`; node `n + i` is the dummy of
//! crossing `i`, written `x<i>` in text.
//!
//! Each crossed edge is split into segments through its dummies; a dart is
//! a segment with a direction, numbered `2 * segment + dir`.

pub mod fixtures;
pub mod format;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::connectivity::is_separator;
use crate::graph::{Graph, GraphError, VertexSet};
use crate::planarity::PlaneEmbedding;

pub type Edge = (usize, usize);

pub fn norm(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A node of the planarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    V(usize),
    X(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::V(v) => write!(f, "{v}"),
            Node::X(i) => write!(f, "x{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    /// Planarization node ids of the two ends.
    pub ends: [usize; 2],
    /// Index into [`OneDrawing::edges`].
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("crossing uses {0:?}, which is not an edge")]
    UnknownEdge(Edge),
    #[error("rotation has {found} nodes, planarization has {expected}")]
    NodeCount { expected: usize, found: usize },
    #[error("no segment of edge {edge:?} joins {tail} to {head}")]
    UnknownDart { tail: Node, head: Node, edge: Edge },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Invalid(String),
}

/// First violated drawing invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("matching: {0}")]
    Matching(String),
    #[error("dart mismatch at {node}: {detail}")]
    DartMismatch { node: Node, detail: String },
    #[error("touching, not crossing at x{0}")]
    Touching(usize),
    #[error("genus: component with {nodes} nodes, {segments} segments, {faces} faces")]
    Genus { nodes: usize, segments: usize, faces: usize },
}

/// A face of the planarization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<usize>,
    /// Tail node of each dart, in order.
    pub nodes: Vec<usize>,
    pub contains_crossing: bool,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneDrawing {
    graph: Graph,
    edges: Vec<Edge>,
    crossings: Vec<(Edge, Edge)>,
    segments: Vec<Segment>,
    rotation: Vec<Vec<usize>>,
}

impl OneDrawing {
    /// Builds a drawing. `rotation[p]` lists, for planarization node `p`,
    /// the far end and the edge of each incident segment in cyclic order.
    /// Structural problems other than unresolvable entries are left for
    /// [`OneDrawing::validate`].
    pub fn new(graph: Graph, crossings: Vec<(Edge, Edge)>, rotation: Vec<Vec<(Node, Edge)>>) -> Result<OneDrawing, DrawingError> {
        let mut d = Self::skeleton_only(graph, crossings)?;
        let expected = d.node_count();
        if rotation.len() != expected {
            return Err(DrawingError::NodeCount { expected, found: rotation.len() });
        }
        let index = d.dart_index();
        let mut rot = Vec::with_capacity(expected);
        for (p, entries) in rotation.iter().enumerate() {
            let mut list = Vec::with_capacity(entries.len());
            for &(head, e) in entries {
                let e = norm(e.0, e.1);
                match d.node_id(head).and_then(|q| index.get(&(p, q, e))) {
                    Some(&dart) => list.push(dart),
                    None => return Err(DrawingError::UnknownDart { tail: d.node_of(p), head, edge: e }),
                }
            }
            rot.push(list);
        }
        d.rotation = rot;
        Ok(d)
    }

    /// Crossing-free drawing from a plane embedding.
    pub fn planar(graph: Graph, emb: &PlaneEmbedding) -> Result<OneDrawing, DrawingError> {
        let rotation = (0..graph.n())
            .map(|v| emb.rotation[v].iter().map(|&u| (Node::V(u), norm(u, v))).collect())
            .collect();
        OneDrawing::new(graph, Vec::new(), rotation)
    }

    /// Builds a simple drawing from an embedding of its planarization graph
    /// (see [`planarization_graph`]).
    pub fn from_planarization(graph: Graph, crossings: Vec<(Edge, Edge)>, rotation: &[Vec<usize>]) -> Result<OneDrawing, DrawingError> {
        let n = graph.n();
        let mut rot = Vec::with_capacity(rotation.len());
        for (p, list) in rotation.iter().enumerate() {
            let mut entries = Vec::with_capacity(list.len());
            for &q in list {
                let entry = match (p < n, q < n) {
                    (true, true) => (Node::V(q), norm(p, q)),
                    (true, false) => (Node::X(q - n), crossing_edge_at(&crossings[q - n], p)?),
                    (false, true) => (Node::V(q), crossing_edge_at(&crossings[p - n], q)?),
                    (false, false) => return Err(DrawingError::Invalid("two dummies adjacent".into())),
                };
                entries.push(entry);
            }
            rot.push(entries);
        }
        OneDrawing::new(graph, crossings, rot)
    }

    fn skeleton_only(graph: Graph, crossings: Vec<(Edge, Edge)>) -> Result<OneDrawing, DrawingError> {
        let edges = graph.edges();
        let crossings: Vec<(Edge, Edge)> = crossings.into_iter().map(|(a, b)| (norm(a.0, a.1), norm(b.0, b.1))).collect();
        let n = graph.n();
        let mut along: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        for (i, &(a, b)) in crossings.iter().enumerate() {
            for e in [a, b] {
                let k = edges.binary_search(&e).map_err(|_| DrawingError::UnknownEdge(e))?;
                along[k].push(n + i);
            }
        }
        let mut segments = Vec::new();
        for (k, &(u, v)) in edges.iter().enumerate() {
            let mut prev = u;
            for &x in &along[k] {
                segments.push(Segment { ends: [prev, x], edge: k });
                prev = x;
            }
            segments.push(Segment { ends: [prev, v], edge: k });
        }
        Ok(OneDrawing { graph, edges, crossings, segments, rotation: Vec::new() })
    }

    fn dart_index(&self) -> HashMap<(usize, usize, Edge), usize> {
        let mut m = HashMap::new();
        for (s, seg) in self.segments.iter().enumerate() {
            let e = self.edges[seg.edge];
            m.insert((seg.ends[0], seg.ends[1], e), 2 * s);
            m.insert((seg.ends[1], seg.ends[0], e), 2 * s + 1);
        }
        m
    }

    // -- accessors --------------------------------------------------------

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn crossings(&self) -> &[(Edge, Edge)] {
        &self.crossings
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Darts around each planarization node.
    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn node_count(&self) -> usize {
        self.graph.n() + self.crossings.len()
    }

    pub fn node_of(&self, p: usize) -> Node {
        if p < self.graph.n() {
            Node::V(p)
        } else {
            Node::X(p - self.graph.n())
        }
    }

    pub fn node_id(&self, node: Node) -> Option<usize> {
        match node {
            Node::V(v) if v < self.graph.n() => Some(v),
            Node::X(i) if i < self.crossings.len() => Some(self.graph.n() + i),
            _ => None,
        }
    }

    pub fn is_dummy(&self, p: usize) -> bool {
        p >= self.graph.n()
    }

    pub fn tail(&self, dart: usize) -> usize {
        self.segments[dart / 2].ends[dart % 2]
    }

    pub fn head(&self, dart: usize) -> usize {
        self.segments[dart / 2].ends[1 - dart % 2]
    }

    pub fn dart_edge(&self, dart: usize) -> Edge {
        self.edges[self.segments[dart / 2].edge]
    }

    /// Rotation as `(far end, edge)` entries, the form accepted by `new`.
    pub fn rotation_entries(&self) -> Vec<Vec<(Node, Edge)>> {
        self.rotation
            .iter()
            .map(|list| list.iter().map(|&d| (self.node_of(self.head(d)), self.dart_edge(d))).collect())
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_crossed(&self, e: Edge) -> bool {
        let e = norm(e.0, e.1);
        self.crossings.iter().any(|&(a, b)| a == e || b == e)
    }

    /// The edge crossing `e`, if any.
    pub fn partner(&self, e: Edge) -> Option<Edge> {
        let e = norm(e.0, e.1);
        self.crossings.iter().find_map(|&(a, b)| {
            if a == e {
                Some(b)
            } else if b == e {
                Some(a)
            } else {
                None
            }
        })
    }

    // -- validation -------------------------------------------------------

    pub fn validate(&self) -> Result<(), Violation> {
        self.check_matching()?;
        self.check_darts()?;
        self.check_alternation()?;
        self.check_euler()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn check_matching(&self) -> Result<(), Violation> {
        let mut seen: HashMap<Edge, usize> = HashMap::new();
        for (i, &(a, b)) in self.crossings.iter().enumerate() {
            if a == b {
                return Err(Violation::Matching(format!("crossing x{i} pairs edge {a:?} with itself")));
            }
            for e in [a, b] {
                if let Some(j) = seen.insert(e, i) {
                    return Err(Violation::Matching(format!("edge {e:?} appears in crossings x{j} and x{i}")));
                }
            }
        }
        Ok(())
    }

    fn check_darts(&self) -> Result<(), Violation> {
        let mut seen = vec![false; 2 * self.segments.len()];
        for (p, list) in self.rotation.iter().enumerate() {
            for &d in list {
                if self.tail(d) != p {
                    return Err(Violation::DartMismatch { node: self.node_of(p), detail: format!("dart {d} leaves another node") });
                }
                if std::mem::replace(&mut seen[d], true) {
                    return Err(Violation::DartMismatch { node: self.node_of(p), detail: "repeated entry".into() });
                }
            }
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            return Err(Violation::DartMismatch { node: self.node_of(self.tail(d)), detail: "missing entry".into() });
        }
        Ok(())
    }

    fn check_alternation(&self) -> Result<(), Violation> {
        let n = self.graph.n();
        for i in 0..self.crossings.len() {
            let list = &self.rotation[n + i];
            if list.len() != 4 {
                return Err(Violation::Touching(i));
            }
            let e: Vec<usize> = list.iter().map(|&d| self.segments[d / 2].edge).collect();
            if !(e[0] == e[2] && e[1] == e[3] && e[0] != e[1]) {
                return Err(Violation::Touching(i));
            }
        }
        Ok(())
    }

    fn check_euler(&self) -> Result<(), Violation> {
        let nodes = self.node_count();
        let mut parent: Vec<usize> = (0..nodes).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for seg in &self.segments {
            let (a, b) = (find(&mut parent, seg.ends[0]), find(&mut parent, seg.ends[1]));
            if a != b {
                parent[a] = b;
            }
        }
        let mut stats: HashMap<usize, (usize, usize, usize)> = HashMap::new();
        for p in 0..nodes {
            stats.entry(find(&mut parent, p)).or_default().0 += 1;
        }
        for seg in &self.segments {
            stats.entry(find(&mut parent, seg.ends[0])).or_default().1 += 1;
        }
        for f in self.faces() {
            stats.entry(find(&mut parent, f.nodes[0])).or_default().2 += 1;
        }
        let mut roots: Vec<_> = stats.into_iter().collect();
        roots.sort();
        for (_, (v, e, f)) in roots {
            let f_eff = if e == 0 { 1 } else { f };
            if v as i64 - e as i64 + f_eff as i64 != 2 {
                return Err(Violation::Genus { nodes: v, segments: e, faces: f });
            }
        }
        Ok(())
    }

    // -- faces ------------------------------------------------------------

    /// Position of every dart in its node's rotation.
    fn dart_positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; 2 * self.segments.len()];
        for list in &self.rotation {
            for (i, &d) in list.iter().enumerate() {
                pos[d] = i;
            }
        }
        pos
    }

    /// Dart following `d` on its face: the successor of the reverse of `d`
    /// in the rotation at the head of `d`. `None` when the reverse is not
    /// listed, which only an invalid drawing allows.
    fn face_next(&self, d: usize, pos: &[usize]) -> Option<usize> {
        let r = d ^ 1;
        if pos[r] == usize::MAX {
            return None;
        }
        let list = &self.rotation[self.tail(r)];
        list.get((pos[r] + 1) % list.len()).copied()
    }

    pub fn faces(&self) -> Vec<Face> {
        let pos = self.dart_positions();
        let mut used = vec![false; 2 * self.segments.len()];
        let mut out = Vec::new();
        for list in &self.rotation {
            for &start in list {
                if used[start] {
                    continue;
                }
                let mut darts = Vec::new();
                let mut d = start;
                while !used[d] {
                    used[d] = true;
                    darts.push(d);
                    match self.face_next(d, &pos) {
                        Some(next) => d = next,
                        None => break,
                    }
                }
                let nodes: Vec<usize> = darts.iter().map(|&d| self.tail(d)).collect();
                let contains_crossing = nodes.iter().any(|&p| self.is_dummy(p));
                out.push(Face { darts, nodes, contains_crossing });
            }
        }
        out
    }

    /// Vertex sets of faces bounded by a 3-cycle of the graph with no
    /// crossing on the boundary; sorted, without repeats.
    pub fn facial_triangles(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self
            .faces()
            .into_iter()
            .filter(|f| !f.contains_crossing && f.degree() == 3)
            .map(|f| VertexSet::from_slice(&f.nodes))
            .filter(|s| s.len() == 3)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Uncrossed edges with their inherited rotation system.
    pub fn true_planar_skeleton(&self) -> (Graph, PlaneEmbedding) {
        let n = self.graph.n();
        let mut g = Graph::empty(n).expect("same size");
        let mut rotation = vec![Vec::new(); n];
        for v in 0..n {
            for &d in &self.rotation[v] {
                let h = self.head(d);
                if h < n {
                    g.add_edge(v, h);
                    rotation[v].push(h);
                }
            }
        }
        (g, PlaneEmbedding { rotation })
    }

    // -- properties -------------------------------------------------------

    /// No two adjacent edges cross.
    pub fn is_simple(&self) -> bool {
        self.crossings.iter().all(|&(a, b)| a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1)
    }

    /// For every crossing pair, no other edge among its four endpoints is
    /// crossed.
    pub fn is_quasi_rich(&self) -> bool {
        self.crossings.iter().all(|&(a, b)| {
            let q = [a.0, a.1, b.0, b.1];
            let mut ok = true;
            for i in 0..4 {
                for j in i + 1..4 {
                    let e = norm(q[i], q[j]);
                    if e != a && e != b && self.graph.has_edge(e.0, e.1) && self.is_crossed(e) {
                        ok = false;
                    }
                }
            }
            ok
        })
    }

    /// Quasi-rich and the endpoints of every crossing pair induce `K_4`.
    pub fn is_rich(&self) -> bool {
        self.is_simple()
            && self.is_quasi_rich()
            && self.crossings.iter().all(|&(a, b)| {
                let q = [a.0, a.1, b.0, b.1];
                (0..4).all(|i| (i + 1..4).all(|j| self.graph.has_edge(q[i], q[j])))
            })
    }

    /// Skeleton triangles that separate the whole graph.
    pub fn skeleton_separating_triangles(&self) -> Vec<VertexSet> {
        let (s, _) = self.true_planar_skeleton();
        crate::connectivity::triangles(&s).into_iter().filter(|&t| is_separator(&self.graph, t)).collect()
    }

    // -- transformations --------------------------------------------------

    /// All rotations reversed.
    pub fn mirror(&self) -> OneDrawing {
        let mut d = self.clone();
        for list in &mut d.rotation {
            list.reverse();
        }
        d
    }

    /// Vertex `v` becomes `perm[v]`; crossing order is kept.
    pub fn relabel(&self, perm: &[usize]) -> OneDrawing {
        let n = self.graph.n();
        let g = self.graph.permute(perm);
        let map_e = |e: Edge| norm(perm[e.0], perm[e.1]);
        let crossings = self.crossings.iter().map(|&(a, b)| (map_e(a), map_e(b))).collect();
        let old = self.rotation_entries();
        let mut rot = vec![Vec::new(); old.len()];
        for (p, list) in old.into_iter().enumerate() {
            let target = if p < n { perm[p] } else { p };
            rot[target] = list
                .into_iter()
                .map(|(q, e)| {
                    let q = match q {
                        Node::V(v) => Node::V(perm[v]),
                        x => x,
                    };
                    (q, map_e(e))
                })
                .collect();
        }
        OneDrawing::new(g, crossings, rot).expect("relabelling preserves structure")
    }

    /// Drawing of `G - e`. If `e` was crossed, its partner becomes uncrossed
    /// and the dummy disappears; later dummies shift down by one.
    pub fn delete_edge(&self, e: Edge) -> Result<OneDrawing, DrawingError> {
        let e = norm(e.0, e.1);
        if !self.graph.has_edge(e.0, e.1) {
            return Err(DrawingError::UnknownEdge(e));
        }
        let g = self.graph.without_edge(e.0, e.1);
        let n = self.graph.n();
        let mut entries = self.rotation_entries();
        let gone = self.crossings.iter().position(|&(a, b)| a == e || b == e);
        let mut crossings = self.crossings.clone();
        if let Some(i) = gone {
            let (a, b) = crossings.remove(i);
            let other = if a == e { b } else { a };
            // The partner's two halves through x_i merge into one segment.
            for (p, q) in [(other.0, other.1), (other.1, other.0)] {
                for entry in entries[p].iter_mut() {
                    if *entry == (Node::X(i), other) {
                        *entry = (Node::V(q), other);
                    }
                }
            }
            entries.remove(n + i);
        }
        for list in entries.iter_mut() {
            list.retain(|&(_, f)| f != e);
            for entry in list.iter_mut() {
                if let (Node::X(j), f) = *entry {
                    if gone.is_some_and(|i| j > i) {
                        *entry = (Node::X(j - 1), f);
                    }
                }
            }
        }
        OneDrawing::new(g, crossings, entries)
    }

    // -- equivalence ------------------------------------------------------

    /// Isomorphism-invariant code of the planarization map, taken over both
    /// orientations. Equal codes mean the drawings agree up to relabelling
    /// and reflection.
    pub fn map_code(&self) -> Vec<u32> {
        map_code(self)
    }

    pub fn weak_equivalent(&self, other: &OneDrawing) -> bool {
        self.graph.n() == other.graph.n()
            && self.graph.m() == other.graph.m()
            && self.crossings.len() == other.crossings.len()
            && self.map_code() == other.map_code()
    }
}

fn crossing_edge_at(pair: &(Edge, Edge), v: usize) -> Result<Edge, DrawingError> {
    let (a, b) = (norm(pair.0 .0, pair.0 .1), norm(pair.1 .0, pair.1 .1));
    let in_a = a.0 == v || a.1 == v;
    let in_b = b.0 == v || b.1 == v;
    match (in_a, in_b) {
        (true, false) => Ok(a),
        (false, true) => Ok(b),
        _ => Err(DrawingError::Invalid(format!("vertex {v} does not identify one edge of crossing {a:?} x {b:?}"))),
    }
}

/// Planarization of a simple drawing: vertices `0..n`, dummy `n + i` for
/// crossing `i`, uncrossed edges kept, crossed edges routed through their
/// dummy.
pub fn planarization_graph(g: &Graph, crossings: &[(Edge, Edge)]) -> Result<Graph, GraphError> {
    let n = g.n();
    let mut p = Graph::empty(n + crossings.len())?;
    let mut crossed = std::collections::HashSet::new();
    for (i, &(a, b)) in crossings.iter().enumerate() {
        for e in [a, b] {
            let e = norm(e.0, e.1);
            crossed.insert(e);
            p.try_add_edge(e.0, n + i)?;
            p.try_add_edge(e.1, n + i)?;
        }
    }
    for (u, v) in g.edges() {
        if !crossed.contains(&(u, v)) {
            p.add_edge(u, v);
        }
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Map codes
// ---------------------------------------------------------------------------

fn map_code(d: &OneDrawing) -> Vec<u32> {
    let nodes = d.node_count();
    let pos = d.dart_positions();
    // Components of the planarization.
    let mut comp = vec![usize::MAX; nodes];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..nodes {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let p = members[i];
            for &dart in &d.rotation[p] {
                let q = d.head(dart);
                if comp[q] == usize::MAX {
                    comp[q] = id;
                    members.push(q);
                }
            }
            i += 1;
        }
        comps.push(members);
    }
    let mut codes: Vec<Vec<u32>> = comps
        .iter()
        .map(|members| {
            let starts: Vec<usize> = members.iter().flat_map(|&p| d.rotation[p].iter().copied()).collect();
            if starts.is_empty() {
                return vec![d.is_dummy(members[0]) as u32, 0];
            }
            let sig = |dart: usize| {
                let (t, h) = (d.tail(dart), d.head(dart));
                (d.is_dummy(t), d.rotation[t].len(), d.is_dummy(h), d.rotation[h].len())
            };
            let best_sig = starts.iter().map(|&s| sig(s)).min().unwrap();
            let mut best: Option<Vec<u32>> = None;
            for &s in starts.iter().filter(|&&s| sig(s) == best_sig) {
                for forward in [true, false] {
                    if let Some(code) = code_from(d, &pos, s, forward, best.as_deref()) {
                        best = Some(code);
                    }
                }
            }
            best.unwrap()
        })
        .collect();
    codes.sort();
    let mut out = Vec::new();
    for c in codes {
        out.push(c.len() as u32);
        out.extend(c);
    }
    out
}

/// BFS code from a start dart; returns `None` as soon as the code is known
/// to exceed `bound`.
fn code_from(d: &OneDrawing, pos: &[usize], start: usize, forward: bool, bound: Option<&[u32]>) -> Option<Vec<u32>> {
    let nodes = d.node_count();
    let mut number = vec![u32::MAX; nodes];
    let mut entry = vec![usize::MAX; nodes];
    let mut order = Vec::new();
    let t = d.tail(start);
    number[t] = 0;
    entry[t] = start;
    order.push(t);
    let mut code: Vec<u32> = Vec::new();
    let mut less = false;
    let push = |code: &mut Vec<u32>, x: u32, less: &mut bool| -> bool {
        if let Some(b) = bound {
            if !*less {
                let i = code.len();
                if x > b[i] {
                    return false;
                }
                if x < b[i] {
                    *less = true;
                }
            }
        }
        code.push(x);
        true
    };
    let mut i = 0;
    while i < order.len() {
        let p = order[i];
        let list = &d.rotation[p];
        let k = list.len();
        let e = pos[entry[p]];
        if !push(&mut code, d.is_dummy(p) as u32, &mut less) || !push(&mut code, k as u32, &mut less) {
            return None;
        }
        for j in 0..k {
            let idx = if forward { (e + j) % k } else { (e + k - j) % k };
            let dart = list[idx];
            let q = d.head(dart);
            if number[q] == u32::MAX {
                number[q] = order.len() as u32;
                entry[q] = dart ^ 1;
                order.push(q);
            }
            let kq = d.rotation[q].len();
            let eq = pos[entry[q]];
            let r = pos[dart ^ 1];
            let offset = if forward { (r + kq - eq) % kq } else { (eq + kq - r) % kq };
            if !push(&mut code, number[q], &mut less) || !push(&mut code, offset as u32, &mut less) {
                return None;
            }
        }
        i += 1;
    }
    if bound.is_some() && !less {
        return None;
    }
    Some(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::planarity::planarity_test;

    fn k4_planar() -> OneDrawing {
        let g = complete(4).unwrap();
        let emb = planarity_test(&g).unwrap();
        OneDrawing::planar(g, &emb).unwrap()
    }

    #[test]
    fn planar_k4() {
        let d = k4_planar();
        assert_eq!(d.validate(), Ok(()));
        assert_eq!(d.facial_triangles().len(), 4);
        assert!(d.is_simple() && d.is_rich() && d.is_quasi_rich());
        assert_eq!(d.crossing_count(), 0);
        assert!(d.weak_equivalent(&d.mirror()));
    }

    #[test]
    fn crossing_k4() {
        // Square 0-1-2-3 with both diagonals crossing inside.
        let g = complete(4).unwrap();
        let crossings = vec![((0, 2), (1, 3))];
        let p = planarization_graph(&g, &crossings).unwrap();
        let emb = planarity_test(&p).unwrap();
        let d = OneDrawing::from_planarization(g, crossings, &emb.rotation).unwrap();
        assert_eq!(d.validate(), Ok(()));
        assert_eq!(d.facial_triangles().len(), 0);
        assert!(d.is_rich());
        let (s, _) = d.true_planar_skeleton();
        assert_eq!(s.m(), 4);
        let without = d.delete_edge((1, 3)).unwrap();
        assert_eq!(without.validate(), Ok(()));
        assert_eq!(without.crossing_count(), 0);
        assert!(!d.weak_equivalent(&k4_planar()));
    }

    #[test]
    fn relabelled_drawings_are_equivalent() {
        let d = k4_planar();
        let r = d.relabel(&[2, 0, 3, 1]);
        assert_eq!(r.validate(), Ok(()));
        assert!(d.weak_equivalent(&r));
    }
}
