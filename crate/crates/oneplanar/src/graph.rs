//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` row per vertex, so neighbourhood
//! intersections and clique extensions are single word operations.

use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph would have {0} vertices, limit is {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0}")]
    Invalid(String),
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// A subset of `0..64`, stored as a bitmask.
///
/// Sets are ordered by size first and then lexicographically by their
/// sorted member lists, which is the order used for every list of
/// separators or triangles returned by this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_slice(vs: &[usize]) -> VertexSet {
        let mut m = 0u64;
        for &v in vs {
            assert!(v < MAX_VERTICES, "vertex {v} out of range");
            m |= 1 << v;
        }
        VertexSet(m)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn union(self, o: VertexSet) -> VertexSet {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: VertexSet) -> VertexSet {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: VertexSet) -> VertexSet {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: VertexSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under a vertex map.
    pub fn map(self, f: &[usize]) -> VertexSet {
        let mut m = 0u64;
        for v in self.iter() {
            m |= 1 << f[v];
        }
        VertexSet(m)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for BitIter {}

/// Bits strictly above `v`.
pub(crate) fn above(v: usize) -> u64 {
    u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0)
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// A labelled simple graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows; rows must be symmetric.
    pub fn from_rows(rows: Vec<u64>) -> Result<Graph, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mask = low_mask(n);
        for (v, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(GraphError::VertexOutOfRange { vertex: (r & !mask).trailing_zeros() as usize, n });
            }
            if r >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            for u in BitIter(r) {
                if rows[u] >> v & 1 == 0 {
                    return Err(GraphError::Invalid(format!("asymmetric adjacency between {v} and {u}")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet(low_mask(self.n))
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & above(u)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub(crate) fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Copy of the graph with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.try_add_edge(u, v)?;
        Ok(g)
    }

    /// Copy of the graph with the edge `uv` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if u < self.n && v < self.n {
            g.remove_edge(u, v);
        }
        g
    }

    /// Induced subgraph on `set`, relabelled in increasing vertex order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let verts = set.to_vec();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![0u64; verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for u in BitIter(self.adj[v] & set.0) {
                adj[i] |= 1 << pos[u];
            }
        }
        Graph { n: verts.len(), adj }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            for u in BitIter(self.adj[v]) {
                adj[perm[v]] |= 1 << perm[u];
            }
        }
        Graph { n: self.n, adj }
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for u in BitIter(self.adj[v]) {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        stack.push(u);
                    } else if color[u] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether `self` is a subgraph of `other` under the identity labelling.
    pub fn is_labelled_subgraph_of(&self, other: &Graph) -> bool {
        self.n <= other.n && (0..self.n).all(|v| self.adj[v] & !other.adj[v] == 0)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

// ---------------------------------------------------------------------------
// Named graphs
// ---------------------------------------------------------------------------

pub fn complete(k: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(k)?;
    let mask = low_mask(k);
    for v in 0..k {
        g.adj[v] = mask & !(1 << v);
    }
    Ok(g)
}

/// Path on `k >= 1` vertices.
pub fn path(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::Invalid("path needs at least one vertex".into()));
    }
    let mut g = Graph::empty(k)?;
    for v in 1..k {
        g.add_edge(v - 1, v);
    }
    Ok(g)
}

/// Cycle on `k >= 3` vertices.
pub fn cycle(k: usize) -> Result<Graph, GraphError> {
    if k < 3 {
        return Err(GraphError::Invalid("cycle needs at least three vertices".into()));
    }
    let mut g = path(k)?;
    g.add_edge(0, k - 1);
    Ok(g)
}

/// Complete multipartite graph; parts are consecutive label ranges.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
    let n: usize = parts.iter().sum();
    let mut g = Graph::empty(n)?;
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// The 3-cube Q3 with vertices labelled by their bit strings.
pub fn cube() -> Graph {
    let mut g = Graph::empty(8).unwrap();
    for v in 0..8usize {
        for b in 0..3 {
            let u = v ^ (1 << b);
            if u > v {
                g.add_edge(v, u);
            }
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

pub fn complement(g: &Graph) -> Graph {
    let mask = low_mask(g.n);
    let adj = (0..g.n).map(|v| !g.adj[v] & mask & !(1 << v)).collect();
    Graph { n: g.n, adj }
}

/// Disjoint union; vertices of `h` are shifted by `g.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let n = g.n + h.n;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let mut adj = g.adj.clone();
    adj.extend(h.adj.iter().map(|r| r << g.n));
    Ok(Graph { n, adj })
}

/// Join `g + h`: disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let mut out = disjoint_union(g, h)?;
    let left = low_mask(g.n);
    let right = low_mask(g.n + h.n) & !left;
    for v in 0..g.n {
        out.adj[v] |= right;
    }
    for v in g.n..out.n {
        out.adj[v] |= left;
    }
    Ok(out)
}

/// Strong product; vertex `(a, b)` gets label `a * h.n() + b`.
pub fn strong_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let n = g.n * h.n;
    let mut out = Graph::empty(n)?;
    let id = |a: usize, b: usize| a * h.n + b;
    for a1 in 0..g.n {
        for b1 in 0..h.n {
            for a2 in 0..g.n {
                for b2 in 0..h.n {
                    let (x, y) = (id(a1, b1), id(a2, b2));
                    if x >= y {
                        continue;
                    }
                    let adjacent = (a1 == a2 && h.has_edge(b1, b2))
                        || (b1 == b2 && g.has_edge(a1, a2))
                        || (g.has_edge(a1, a2) && h.has_edge(b1, b2));
                    if adjacent {
                        out.add_edge(x, y);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graph_sizes() {
        assert_eq!(complete(6).unwrap().m(), 15);
        let k2222 = complete_multipartite(&[2, 2, 2, 2]).unwrap();
        assert_eq!((k2222.n(), k2222.m()), (8, 24));
        assert_eq!(cycle(4).unwrap().m(), 4);
        assert_eq!(cube().m(), 12);
        assert!(complete(65).is_err());
        assert!(cycle(2).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn operations() {
        let k3c4 = join(&complete(3).unwrap(), &cycle(4).unwrap()).unwrap();
        assert_eq!((k3c4.n(), k3c4.m()), (7, 19));
        let k2p6 = join(&complete(2).unwrap(), &complement(&path(6).unwrap())).unwrap();
        assert_eq!(k2p6.n(), 8);
        let strip = strong_product(&complete(3).unwrap(), &path(3).unwrap()).unwrap();
        assert_eq!((strip.n(), strip.m()), (9, 27));
        assert!(disjoint_union(&complete(40).unwrap(), &complete(30).unwrap()).is_err());
    }

    #[test]
    fn vertex_set_order() {
        let a = VertexSet::from_slice(&[0, 5, 7]);
        let b = VertexSet::from_slice(&[1, 2, 3]);
        let c = VertexSet::from_slice(&[9]);
        let mut v = vec![a, b, c];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn from_rows_checks_symmetry() {
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b1]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
    }
}
