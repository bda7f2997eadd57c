//! Canonical labelling by ordered partition refinement and individualisation.
//!
//! The search explores the usual individualisation-refinement tree, keeps
//! the leaf whose relabelled adjacency matrix is lexicographically smallest
//! (row-major, column 0 most significant), and prunes children with the
//! automorphisms discovered along the way.

use crate::graph::{BitIter, Graph};
use crate::graph6;

/// Isomorphism certificate: the graph6 encoding of the canonically
/// relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }
}

/// Permutation `perm` with `perm[v]` the canonical label of `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    canonical_labeling_colored(g, &vec![0; g.n()])
}

/// Canonical labelling of a vertex-coloured graph; isomorphisms must
/// preserve colours, and lower colours receive lower labels.
pub fn canonical_labeling_colored(g: &Graph, colors: &[u32]) -> Vec<usize> {
    assert_eq!(colors.len(), g.n());
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let cells: Vec<u64> = palette
        .iter()
        .map(|&c| (0..n).filter(|&v| colors[v] == c).fold(0u64, |m, v| m | 1 << v))
        .collect();
    let mut search = Search { g, best: None, autos: Vec::new() };
    let cells = refine(g, cells);
    search.visit(cells, &mut Vec::new());
    let (_, order, _) = search.best.expect("at least one leaf");
    let mut perm = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    perm
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.permute(&canonical_labeling(g))
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(graph6::encode(&canonical_graph(g)).into_bytes())
}

/// Canonical form of a coloured graph; colours are appended so that equal
/// graphs with different colourings differ.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> CanonicalForm {
    let perm = canonical_labeling_colored(g, colors);
    let mut bytes = graph6::encode(&g.permute(&perm)).into_bytes();
    let mut relabelled = vec![0u32; g.n()];
    for v in 0..g.n() {
        relabelled[perm[v]] = colors[v];
    }
    for c in relabelled {
        bytes.push(b' ');
        bytes.extend(c.to_string().bytes());
    }
    CanonicalForm(bytes)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.m() == h.m() && g.degree_sequence() == h.degree_sequence() && canonical_form(g) == canonical_form(h)
}

/// An isomorphism `f` from `g` to `h` (`h.has_edge(f[u], f[v])` iff
/// `g.has_edge(u, v)`), if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.m() != h.m() {
        return None;
    }
    let pg = canonical_labeling(g);
    let ph = canonical_labeling(h);
    if g.permute(&pg) != h.permute(&ph) {
        return None;
    }
    let mut inv_h = vec![0; h.n()];
    for v in 0..h.n() {
        inv_h[ph[v]] = v;
    }
    Some((0..g.n()).map(|v| inv_h[pg[v]]).collect())
}

// ---------------------------------------------------------------------------
// Refinement
// ---------------------------------------------------------------------------

/// Refines an ordered partition until it is equitable. Each cell is split
/// by the number of neighbours in a splitter cell, pieces in increasing
/// count order, so the result depends only on the partition's structure.
fn refine(g: &Graph, mut cells: Vec<u64>) -> Vec<u64> {
    let mut counts = [0u32; 64];
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < cells.len() {
            let w = cells[i];
            let mut next = Vec::with_capacity(cells.len() + 4);
            let mut split_any = false;
            for &x in &cells {
                if x.count_ones() == 1 {
                    next.push(x);
                    continue;
                }
                let mut distinct: Vec<u32> = Vec::new();
                for v in BitIter(x) {
                    let c = (g.row(v) & w).count_ones();
                    counts[v] = c;
                    if !distinct.contains(&c) {
                        distinct.push(c);
                    }
                }
                if distinct.len() == 1 {
                    next.push(x);
                    continue;
                }
                split_any = true;
                distinct.sort_unstable();
                for c in distinct {
                    next.push(BitIter(x).filter(|&v| counts[v] == c).fold(0u64, |m, v| m | 1 << v));
                }
            }
            if split_any {
                cells = next;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            return cells;
        }
    }
}

// ---------------------------------------------------------------------------
// Search tree
// ---------------------------------------------------------------------------

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf_code(&self, order: &[usize]) -> Vec<u64> {
        let n = order.len();
        let mut pos = [0usize; 64];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        (0..n)
            .map(|i| BitIter(self.g.row(order[i])).fold(0u64, |r, u| r | 1u64 << (63 - pos[u])))
            .collect()
    }

    /// Returns the level to which the search should unwind (`usize::MAX`
    /// for no unwinding).
    fn visit(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> usize {
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells, path);
        };
        let level = path.len();
        let mut tried: Vec<usize> = Vec::new();
        for v in BitIter(cells[target]) {
            if !tried.is_empty() && self.equivalent_to_tried(path, &tried, v) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cells[target] & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            let child = refine(self.g, child);
            path.push(v);
            let back = self.visit(child, path);
            path.pop();
            tried.push(v);
            if back < level {
                return back;
            }
        }
        usize::MAX
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> usize {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = self.leaf_code(&order);
        match &self.best {
            None => {
                self.best = Some((code, order, path.to_vec()));
                usize::MAX
            }
            Some((best_code, best_order, best_path)) => match code.cmp(best_code) {
                std::cmp::Ordering::Less => {
                    self.best = Some((code, order, path.to_vec()));
                    usize::MAX
                }
                std::cmp::Ordering::Greater => usize::MAX,
                std::cmp::Ordering::Equal => {
                    let mut gamma = vec![0; order.len()];
                    for (i, &v) in best_order.iter().enumerate() {
                        gamma[v] = order[i];
                    }
                    let back = Self::unwind_level(&gamma, best_path, path);
                    self.autos.push(gamma);
                    back
                }
            },
        }
    }

    /// If `gamma` maps the best leaf's path onto `path` and fixes the common
    /// prefix, the subtree below the divergence point is an image of an
    /// explored one and can be abandoned.
    fn unwind_level(gamma: &[usize], best_path: &[usize], path: &[usize]) -> usize {
        let Some(d) = (0..path.len().min(best_path.len())).find(|&i| best_path[i] != path[i]) else {
            return usize::MAX;
        };
        if (0..=d).all(|i| gamma[best_path[i]] == path[i]) {
            d
        } else {
            usize::MAX
        }
    }

    fn equivalent_to_tried(&self, path: &[usize], tried: &[usize], v: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let z = p[y];
                p[y] = r;
                y = z;
            }
            r
        }
        let mut any = false;
        for gamma in &self.autos {
            if path.iter().all(|&u| gamma[u] == u) {
                any = true;
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn small_isomorphisms() {
        assert!(is_isomorphic(&cycle(4).unwrap(), &complete_multipartite(&[2, 2]).unwrap()));
        let k3c4 = join(&complete(3).unwrap(), &cycle(4).unwrap()).unwrap();
        let k1_3 = complete_multipartite(&[1, 3]).unwrap();
        let k3k13 = join(&complete(3).unwrap(), &complement(&k1_3)).unwrap();
        assert!(!is_isomorphic(&k3c4, &k3k13));
        assert!(is_isomorphic(&strong_product(&complete(3).unwrap(), &path(2).unwrap()).unwrap(), &complete(6).unwrap()));
    }

    #[test]
    fn isomorphism_map_is_valid() {
        let g = strong_product(&complete(3).unwrap(), &path(4).unwrap()).unwrap();
        let perm: Vec<usize> = (0..12).map(|v| (v * 5 + 3) % 12).collect();
        let h = g.permute(&perm);
        let f = find_isomorphism(&g, &h).unwrap();
        for u in 0..12 {
            for v in 0..12 {
                assert_eq!(g.has_edge(u, v), h.has_edge(f[u], f[v]));
            }
        }
    }

    #[test]
    fn colours_matter() {
        let p = path(3).unwrap();
        let a = canonical_form_colored(&p, &[1, 0, 0]);
        let b = canonical_form_colored(&p, &[0, 0, 1]);
        let c = canonical_form_colored(&p, &[0, 1, 0]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
