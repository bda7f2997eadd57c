//! Tree-decompositions, their text format, and the structural check used
//! as a membership certificate.
//!
//! ```text
//! td v1
//! node 0: 0 1 2 3 4 5
//! node 1: 3 4 5 6 7 8
//! edge 0 1
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::parts::PartKind;
use super::ClassId;
use crate::connectivity::is_connected;
use crate::count::count_cliques_size;
use crate::formulas::ft;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Tree on the node ids `0..parts.len()`.
    pub tree: Graph,
    pub parts: Vec<VertexSet>,
}

pub const HEADER: &str = "td v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TdParseError {
    pub line: usize,
    pub message: String,
}

/// First failed condition found by [`check_td`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdViolation {
    #[error("the node graph is not a tree")]
    NotATree,
    #[error("vertex {0} is in no part")]
    Uncovered(usize),
    #[error("edge {0}-{1} is in no part")]
    EdgeUncovered(usize, usize),
    #[error("nodes containing vertex {0} are not connected")]
    NotSubtree(usize),
    #[error("part {0} is not an allowed part")]
    BadPart(usize),
    #[error("adhesion of {0}-{1} is not an allowed clique")]
    BadAdhesion(usize, usize),
    #[error("part counts are not allowed: {0}")]
    PartCounts(String),
    #[error("triangle {0:?} is the adhesion of more than one tree edge")]
    SharedTriangle(VertexSet),
    #[error("part {0} has no drawing with its adhesions facial and uncrossed")]
    NoDrawing(usize),
    #[error("clique count {found} differs from the extremal {expected}")]
    Count { expected: u64, found: u64 },
}

impl TreeDecomposition {
    pub fn new(parts: Vec<VertexSet>, edges: &[(usize, usize)]) -> Result<TreeDecomposition, crate::GraphError> {
        Ok(TreeDecomposition { tree: Graph::from_edges(parts.len(), edges)?, parts })
    }

    pub fn single(part: VertexSet) -> TreeDecomposition {
        TreeDecomposition { tree: Graph::empty(1).expect("one node"), parts: vec![part] }
    }

    /// Tree edges with their adhesion sets.
    pub fn adhesions(&self) -> Vec<(usize, usize, VertexSet)> {
        self.tree.edges().into_iter().map(|(s, t)| (s, t, self.parts[s].intersection(self.parts[t]))).collect()
    }

    /// Relabels vertices: `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> TreeDecomposition {
        TreeDecomposition { tree: self.tree.clone(), parts: self.parts.iter().map(|p| p.map(perm)).collect() }
    }

    /// (T1)–(T3) and the tree shape.
    pub fn check_axioms(&self, g: &Graph) -> Result<(), TdViolation> {
        let k = self.parts.len();
        if k == 0 || self.tree.n() != k || self.tree.m() + 1 != k || !is_connected(&self.tree) {
            return Err(TdViolation::NotATree);
        }
        let cover = self.parts.iter().fold(VertexSet::EMPTY, |a, &p| a.union(p));
        if let Some(v) = g.vertices().difference(cover).iter().next() {
            return Err(TdViolation::Uncovered(v));
        }
        if !cover.is_subset(g.vertices()) {
            return Err(TdViolation::Uncovered(cover.difference(g.vertices()).iter().next().expect("nonempty")));
        }
        for (u, v) in g.edges() {
            if !self.parts.iter().any(|p| p.contains(u) && p.contains(v)) {
                return Err(TdViolation::EdgeUncovered(u, v));
            }
        }
        for v in 0..g.n() {
            let nodes: u64 = (0..k).filter(|&t| self.parts[t].contains(v)).fold(0, |m, t| m | 1 << t);
            let start = nodes.trailing_zeros() as usize;
            if crate::connectivity::reach(&self.tree, start, nodes) != nodes {
                return Err(TdViolation::NotSubtree(v));
            }
        }
        Ok(())
    }
}

pub fn write(td: &TreeDecomposition) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for (i, p) in td.parts.iter().enumerate() {
        let _ = write!(out, "node {i}:");
        for v in p.iter() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for (s, t) in td.tree.edges() {
        let _ = writeln!(out, "edge {s} {t}");
    }
    out
}

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T, TdParseError> {
    Err(TdParseError { line, message: message.into() })
}

fn num(tok: &str, line: usize, limit: usize, what: &str) -> Result<usize, TdParseError> {
    match tok.parse::<usize>() {
        Ok(x) if x < limit => Ok(x),
        Ok(x) => perr(line, format!("{what} {x} out of range")),
        Err(_) => perr(line, format!("bad {what} `{tok}`")),
    }
}

pub fn parse(text: &str) -> Result<TreeDecomposition, TdParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((ln, _)) => return perr(ln, format!("expected `{HEADER}`")),
        None => return perr(0, "empty input"),
    }
    let mut parts: Vec<Option<VertexSet>> = Vec::new();
    let mut edges = Vec::new();
    for (ln, l) in lines {
        if l.trim().is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("node ") {
            let Some((id, list)) = rest.split_once(':') else {
                return perr(ln, "missing `:`");
            };
            let id = num(id.trim(), ln, 64, "node id")?;
            if parts.len() <= id {
                parts.resize(id + 1, None);
            }
            if parts[id].is_some() {
                return perr(ln, format!("node {id} listed twice"));
            }
            let mut set = VertexSet::EMPTY;
            for tok in list.split_whitespace() {
                set.insert(num(tok, ln, crate::graph::MAX_VERTICES, "vertex")?);
            }
            parts[id] = Some(set);
        } else if let Some(rest) = l.strip_prefix("edge ") {
            let ids: Vec<&str> = rest.split_whitespace().collect();
            if ids.len() != 2 {
                return perr(ln, "an edge needs two node ids");
            }
            edges.push((num(ids[0], ln, 64, "node id")?, num(ids[1], ln, 64, "node id")?, ln));
        } else {
            return perr(ln, "expected `node` or `edge`");
        }
    }
    let parts: Vec<VertexSet> = parts
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.map_or_else(|| perr(0, format!("node {i} missing")), Ok))
        .collect::<Result<_, _>>()?;
    if parts.is_empty() {
        return perr(0, "no nodes");
    }
    let mut tree = Graph::empty(parts.len()).or_else(|e| perr(0, e.to_string()))?;
    for (s, t, ln) in edges {
        if s >= parts.len() || t >= parts.len() || s == t {
            return perr(ln, format!("bad edge {s} {t}"));
        }
        if tree.has_edge(s, t) {
            return perr(ln, format!("repeated edge {s} {t}"));
        }
        tree.add_edge(s, t);
    }
    Ok(TreeDecomposition { tree, parts })
}

fn is_clique(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|u| s.iter().all(|v| u == v || g.has_edge(u, v)))
}

/// Checks `td` against the structure that characterises members of `c`.
pub fn check_td(g: &Graph, td: &TreeDecomposition, c: ClassId) -> Result<(), TdViolation> {
    td.check_axioms(g)?;
    let n = g.n();
    if td.parts.len() == 1 && super::base_members(c, n).is_some_and(|b| b.iter().any(|h| crate::canon::is_isomorphic(h, g))) {
        return Ok(());
    }
    let allowed = c.allowed_parts();
    let mut kinds = Vec::with_capacity(td.parts.len());
    for (t, &p) in td.parts.iter().enumerate() {
        match PartKind::identify(&g.induced(p)) {
            Some(k) if allowed.contains(&k) => kinds.push(k),
            _ => return Err(TdViolation::BadPart(t)),
        }
    }
    let adhesions = td.adhesions();
    for &(s, t, a) in &adhesions {
        let ok_size = match c {
            ClassId::E5 | ClassId::E6 => a.len() == 2 || a.len() == 3,
            _ => a.len() == 3,
        };
        if !ok_size || !is_clique(g, a) {
            return Err(TdViolation::BadAdhesion(s, t));
        }
    }
    check_counts(c, n, &kinds)?;
    for (i, &(_, _, a)) in adhesions.iter().enumerate() {
        if a.len() == 3 && adhesions[i + 1..].iter().any(|&(_, _, b)| b == a) {
            return Err(TdViolation::SharedTriangle(a));
        }
    }
    for (t, &p) in td.parts.iter().enumerate() {
        if !part_drawable(g, p, kinds[t], &adhesions) {
            return Err(TdViolation::NoDrawing(t));
        }
    }
    if c == ClassId::E5 {
        let expected = ft(n, 5).expect("valid size");
        let found = count_cliques_size(g, 5);
        if found != expected {
            return Err(TdViolation::Count { expected, found });
        }
    }
    Ok(())
}

pub fn verify_td(g: &Graph, td: &TreeDecomposition, c: ClassId) -> bool {
    check_td(g, td, c).is_ok()
}

pub(crate) fn check_counts(c: ClassId, n: usize, kinds: &[PartKind]) -> Result<(), TdViolation> {
    let others: Vec<PartKind> = kinds.iter().copied().filter(|&k| k != PartKind::K6).collect();
    let ok = match c {
        ClassId::E3 => others.len() <= 1 || others == [PartKind::K3C4, PartKind::K3C4],
        ClassId::E4 | ClassId::E => others.len() <= 1,
        ClassId::E5 | ClassId::E6 => kinds.len() - others.len() == n.saturating_sub(3) / 3,
    };
    if ok {
        Ok(())
    } else {
        let names: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
        Err(TdViolation::PartCounts(names.join(",")))
    }
}

/// Clause (e): some drawing of the part has every adhesion triangle inside
/// it facial and every adhesion edge inside it uncrossed.
fn part_drawable(g: &Graph, part: VertexSet, kind: PartKind, adhesions: &[(usize, usize, VertexSet)]) -> bool {
    let info = kind.info();
    let verts = part.to_vec();
    let sub = g.induced(part);
    let Some(iso) = crate::canon::find_isomorphism(&sub, &info.graph) else {
        return false;
    };
    let local = |v: usize| iso[verts.iter().position(|&x| x == v).expect("in part")];
    let mut tris = Vec::new();
    let mut edges = Vec::new();
    for &(_, _, a) in adhesions {
        if !a.is_subset(part) {
            continue;
        }
        let l: Vec<usize> = a.iter().map(local).collect();
        if l.len() == 3 {
            tris.push(VertexSet::from_slice(&l));
        }
        for i in 0..l.len() {
            for j in i + 1..l.len() {
                edges.push((l[i], l[j]));
            }
        }
    }
    info.masks(&tris, &edges).is_some_and(|(t, e)| info.feasible(t, e))
}
