//! Clique and subgraph counting.

use thiserror::Error;

use crate::graph::{above, BitIter, Graph};

/// Largest pattern accepted by [`count_subgraphs_iso`].
pub const MAX_PATTERN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pattern has {0} vertices, limit is {MAX_PATTERN}")]
pub struct PatternTooLarge(pub usize);

/// Number of cliques of every size; entry `t` counts `t`-vertex cliques,
/// entry 0 is the empty clique.
pub fn clique_profile(g: &Graph) -> Vec<u64> {
    let mut hist = vec![0u64; g.n() + 1];
    hist[0] = 1;
    fn rec(g: &Graph, cand: u64, depth: usize, hist: &mut [u64]) {
        for v in BitIter(cand) {
            hist[depth + 1] += 1;
            let next = cand & g.row(v) & above(v);
            if next != 0 {
                rec(g, next, depth + 1, hist);
            }
        }
    }
    rec(g, g.vertices().bits(), 0, &mut hist);
    hist
}

/// Number of `t`-vertex cliques; `t = 0` gives 1.
pub fn count_cliques_size(g: &Graph, t: usize) -> u64 {
    if t == 0 {
        return 1;
    }
    if t > g.n() {
        return 0;
    }
    fn rec(g: &Graph, cand: u64, need: usize) -> u64 {
        if need == 1 {
            return cand.count_ones() as u64;
        }
        let mut total = 0;
        for v in BitIter(cand) {
            let next = cand & g.row(v) & above(v);
            if next.count_ones() as usize >= need - 1 {
                total += rec(g, next, need - 1);
            }
        }
        total
    }
    rec(g, g.vertices().bits(), t)
}

/// Number of cliques of all sizes, including the empty clique.
pub fn count_all_cliques(g: &Graph) -> u128 {
    clique_profile(g).iter().map(|&c| c as u128).sum()
}

/// Number of (not necessarily induced) subgraphs of `g` isomorphic to `h`.
pub fn count_subgraphs_iso(g: &Graph, h: &Graph) -> Result<u64, PatternTooLarge> {
    if h.n() > MAX_PATTERN {
        return Err(PatternTooLarge(h.n()));
    }
    if h.n() > g.n() {
        return Ok(0);
    }
    let order = search_order(h);
    let embeddings = count_embeddings(h, g, &order);
    let aut = count_embeddings(h, h, &order);
    Ok(embeddings / aut)
}

/// Pattern vertices in an order where each vertex has as many earlier
/// neighbours as possible, so adjacency constraints bite early.
fn search_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(h.n());
    let mut placed = 0u64;
    while order.len() < h.n() {
        let v = (0..h.n())
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((h.row(v) & placed).count_ones(), h.degree(v), usize::MAX - v))
            .unwrap();
        order.push(v);
        placed |= 1 << v;
    }
    order
}

/// Injective edge-preserving maps from `h` into `g`.
fn count_embeddings(h: &Graph, g: &Graph, order: &[usize]) -> u64 {
    fn rec(h: &Graph, g: &Graph, order: &[usize], i: usize, map: &mut [usize], used: u64) -> u64 {
        if i == order.len() {
            return 1;
        }
        let v = order[i];
        let mut cand = g.vertices().bits() & !used;
        for &u in &order[..i] {
            if h.has_edge(u, v) {
                cand &= g.row(map[u]);
            }
        }
        let mut total = 0;
        for w in BitIter(cand) {
            if g.degree(w) < h.degree(v) {
                continue;
            }
            map[v] = w;
            total += rec(h, g, order, i + 1, map, used | 1 << w);
        }
        total
    }
    let mut map = vec![0; h.n()];
    rec(h, g, order, 0, &mut map, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn clique_counts() {
        let k2222 = complete_multipartite(&[2, 2, 2, 2]).unwrap();
        assert_eq!(count_cliques_size(&k2222, 3), 32);
        assert_eq!(count_all_cliques(&k2222), 81);
        let k3c4 = join(&complete(3).unwrap(), &cycle(4).unwrap()).unwrap();
        assert_eq!(count_cliques_size(&k3c4, 3), 25);
        let strip = strong_product(&complete(3).unwrap(), &path(4).unwrap()).unwrap();
        assert_eq!(count_cliques_size(&strip, 6), 3);
        assert_eq!(count_all_cliques(&complete(3).unwrap()), 8);
        assert_eq!(count_all_cliques(&complete(0).unwrap()), 1);
        assert_eq!(count_cliques_size(&complete(2).unwrap(), 3), 0);
    }

    #[test]
    fn subgraph_counts() {
        let c5k3 = join(&cycle(5).unwrap(), &complete(3).unwrap()).unwrap();
        assert_eq!(count_subgraphs_iso(&c5k3, &complete(3).unwrap()).unwrap(), 31);
        assert_eq!(count_subgraphs_iso(&complete(6).unwrap(), &complete(3).unwrap()).unwrap(), 20);
        let k2222 = complete_multipartite(&[2, 2, 2, 2]).unwrap();
        assert_eq!(count_subgraphs_iso(&k2222, &complete(4).unwrap()).unwrap(), 16);
        assert_eq!(count_subgraphs_iso(&complete(4).unwrap(), &cycle(4).unwrap()).unwrap(), 3);
        assert_eq!(count_subgraphs_iso(&complete(4).unwrap(), &path(3).unwrap()).unwrap(), 12);
        assert!(count_subgraphs_iso(&complete(9).unwrap(), &complete(9).unwrap()).is_err());
    }
}
