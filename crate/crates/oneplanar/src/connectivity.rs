//! Components, separations, separators and k-connectivity.

use crate::graph::{BitIter, Graph, VertexSet};

/// A separation `(a, b)` of a graph: every edge lies inside `a` or inside `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    /// Checks the covering conditions against `g`.
    pub fn new(g: &Graph, a: VertexSet, b: VertexSet) -> Option<Separation> {
        if a.union(b) != g.vertices() {
            return None;
        }
        for (u, v) in g.edges() {
            let inside = |s: VertexSet| s.contains(u) && s.contains(v);
            if !inside(a) && !inside(b) {
                return None;
            }
        }
        Some(Separation { a, b })
    }

    pub fn order(&self) -> usize {
        self.a.intersection(self.b).len()
    }

    pub fn separator(&self) -> VertexSet {
        self.a.intersection(self.b)
    }

    pub fn is_nontrivial(&self) -> bool {
        !self.a.difference(self.b).is_empty() && !self.b.difference(self.a).is_empty()
    }
}

/// Vertices reachable from `start` inside `allowed`.
pub fn reach(g: &Graph, start: usize, allowed: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in BitIter(frontier) {
            next |= g.row(v);
        }
        next &= allowed & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Number of connected components of `g` restricted to `allowed`.
pub fn component_count(g: &Graph, allowed: u64) -> usize {
    let mut rest = allowed;
    let mut count = 0;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        rest &= !reach(g, s, allowed);
        count += 1;
    }
    count
}

/// Vertex sets of the components of `g[allowed]`, ordered by least vertex.
pub fn components(g: &Graph, allowed: u64) -> Vec<VertexSet> {
    let mut rest = allowed;
    let mut out = Vec::new();
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        let c = reach(g, s, allowed);
        out.push(VertexSet(c));
        rest &= !c;
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || reach(g, 0, g.vertices().bits()) == g.vertices().bits()
}

/// Whether deleting `s` leaves at least two components.
pub fn is_separator(g: &Graph, s: VertexSet) -> bool {
    let rest = g.vertices().bits() & !s.bits();
    if rest == 0 {
        return false;
    }
    let first = rest.trailing_zeros() as usize;
    reach(g, first, rest) != rest
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if !f(mask) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All vertex sets of the given size whose deletion disconnects `g`.
pub fn nontrivial_separators(g: &Graph, size: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for_each_subset(g.n(), size, |m| {
        if is_separator(g, VertexSet(m)) {
            out.push(VertexSet(m));
        }
        true
    });
    out
}

/// Number of nontrivial separators of the given size.
pub fn count_nontrivial_separators(g: &Graph, size: usize) -> usize {
    let mut count = 0;
    for_each_subset(g.n(), size, |m| {
        count += is_separator(g, VertexSet(m)) as usize;
        true
    });
    count
}

/// `n >= k + 1` and no separator with fewer than `k` vertices.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.n() < k + 1 {
        return false;
    }
    for size in 0..k {
        let mut ok = true;
        for_each_subset(g.n(), size, |m| {
            ok = !is_separator(g, VertexSet(m));
            ok
        });
        if !ok {
            return false;
        }
    }
    true
}

/// All triangles of `g`, sorted.
pub fn triangles(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in BitIter(g.row(u) & crate::graph::above(u)) {
            for w in BitIter(g.row(u) & g.row(v) & crate::graph::above(v)) {
                out.push(VertexSet::from_slice(&[u, v, w]));
            }
        }
    }
    out
}

/// Triangles whose vertex set is a nontrivial separator.
pub fn separating_triangles(g: &Graph) -> Vec<VertexSet> {
    triangles(g).into_iter().filter(|&t| is_separator(g, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn separators_of_named_graphs() {
        let q = cube();
        let seps = nontrivial_separators(&q, 3);
        assert_eq!(seps.len(), 8);
        for s in &seps {
            assert!((0..8).any(|v| q.neighbors(v) == *s));
        }
        assert!(nontrivial_separators(&complete(6).unwrap(), 3).is_empty());
        let strip = strong_product(&complete(3).unwrap(), &path(3).unwrap()).unwrap();
        assert_eq!(separating_triangles(&strip), vec![VertexSet::from_slice(&[1, 4, 7])]);
        assert!(separating_triangles(&complete_multipartite(&[2, 2, 2, 2]).unwrap()).is_empty());
    }

    #[test]
    fn connectivity() {
        assert!(is_k_connected(&complete(6).unwrap(), 5));
        assert!(!is_k_connected(&complete(6).unwrap(), 6));
        assert!(is_k_connected(&complete_multipartite(&[2, 2, 2, 2]).unwrap(), 4));
        assert!(!is_k_connected(&path(5).unwrap(), 2));
        assert!(is_k_connected(&path(5).unwrap(), 1));
        assert!(!is_k_connected(&Graph::empty(2).unwrap(), 1));
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |m| {
            seen.push(m);
            true
        });
        assert_eq!(seen, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        let mut count = 0;
        for_each_subset(5, 0, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn separation_checks() {
        let p = path(3).unwrap();
        let s = Separation::new(&p, VertexSet::from_slice(&[0, 1]), VertexSet::from_slice(&[1, 2])).unwrap();
        assert_eq!(s.order(), 1);
        assert!(s.is_nontrivial());
        assert!(Separation::new(&p, VertexSet::from_slice(&[0]), VertexSet::from_slice(&[1, 2])).is_none());
    }
}
